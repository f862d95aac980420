#pragma once

#include "chebyshev.hpp"
#include "document.hpp"
#include "dual.hpp"
#include "errors.hpp"
#include "homotopy.hpp"
#include "interval.hpp"
#include "job.hpp"
#include "linalg.hpp"
#include "mpoly.hpp"
#include "oracle.hpp"
#include "pade.hpp"
#include "poly.hpp"
#include "quotient.hpp"
#include "rational.hpp"
#include "resolution.hpp"
#include "sampler.hpp"
#include "series.hpp"
#include "signs.hpp"
#include "slp.hpp"
#include "symmetric.hpp"
#include "systems.hpp"
