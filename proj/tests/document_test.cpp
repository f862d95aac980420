#include <gtest/gtest.h>

#include "homsign/job.hpp"

using namespace homsign;

namespace {

Job circle_job() {
    Job job;
    job.polynomials = {"x1^2 + x2^2 - 1"};
    job.list_conditions = true;
    return job;
}

}  // namespace

TEST(Document, CircleJob) {
    const Document doc = run_job(circle_job());
    EXPECT_EQ(doc.variables, (std::vector<std::string>{"x1", "x2"}));
    EXPECT_EQ(doc.degrees, std::vector<int>{2});
    EXPECT_GE(doc.points.resolutions.size(), 3u);
    ASSERT_EQ(doc.conditions.size(), 3u);
    EXPECT_TRUE(doc.conditions[0].derived);
    EXPECT_FALSE(doc.conditions[1].derived);
    EXPECT_NO_THROW(verify_document(doc));
}

TEST(Document, RoundTrip) {
    for (Mode mode : {Mode::Regular, Mode::Closed}) {
        Job job = circle_job();
        job.mode = mode;
        const Document doc = run_job(job);
        const std::string text = to_string(doc);
        const Document back = parse_document(text);
        EXPECT_EQ(back, doc);
        EXPECT_EQ(to_string(back), text);
    }
}

TEST(Document, EmptyConditionListAndEmptyResolution) {
    Job job;
    job.polynomials = {"x1^2 + 1"};
    const Document doc = run_job(job);
    EXPECT_TRUE(doc.conditions.empty());
    // the slice x1^2 + 1 has no real roots but is a valid resolution
    EXPECT_EQ(parse_document(to_string(doc)), doc);
    Document bare;
    bare.variables = {"x1"};
    bare.points.n = 1;
    bare.points.M = QMatrix::identity(1, Rational(0));
    bare.points.p = {Rational(0)};
    bare.points.resolutions.push_back({empty_resolution(1), {}});
    EXPECT_EQ(parse_document(to_string(bare)), bare);
}

TEST(Document, BigRationals) {
    Document doc;
    doc.variables = {"x1", "x2"};
    doc.polynomials = {"x1 - x2"};
    doc.degrees = {1};
    doc.points.n = 2;
    doc.points.M = QMatrix::identity(2, Rational(0));
    Rational big(1);
    for (int i = 0; i < 200; ++i) big *= 2;
    big /= Rational(Integer("515377520732011331036461129765621272702107522001"));  // 3^100
    doc.points.p = {big, -big};
    GeometricResolution r{poly_from_ints({-2, 0, 1}), QPoly{big}, {QPoly{Rational(0), big}, QPoly{-big}}};
    doc.points.resolutions.push_back({r, Provenance{Provenance::Kind::Critical, 1, {0}, {1}}});
    doc.conditions.push_back({ConditionKind::Strict, {1}, false, {Witness{0, 1, {big, Rational(-3, 7)}}}});
    EXPECT_EQ(parse_document(to_string(doc)), doc);
}

TEST(Document, ByteIdenticalAcrossRunsAndSchedules) {
    Job job;
    job.polynomials = {"x1^2 + x2^2 - 1", "x1*x2 - 1/4"};
    job.list_conditions = true;
    job.seed = 11;
    const std::string first = to_string(run_job(job));
    EXPECT_EQ(to_string(run_job(job)), first);
    job.threads = 3;
    job.schedule_seed = 5;
    EXPECT_EQ(to_string(run_job(job)), first);
    job.schedule_seed = 6;
    EXPECT_EQ(to_string(run_job(job)), first);
}

TEST(Document, MalformedInputReportsLine) {
    const std::string text = to_string(run_job(circle_job()));
    EXPECT_THROW(parse_document(""), DocumentError);
    EXPECT_THROW(parse_document("homsign-document 2\n"), DocumentError);
    // cut the document short
    EXPECT_THROW(parse_document(text.substr(0, text.size() / 2)), DocumentError);
    std::string bad = text;
    bad.replace(bad.find("mode "), 5, "mood ");
    try {
        parse_document(bad);
        FAIL();
    } catch (const DocumentError& e) {
        EXPECT_EQ(e.line, 2u);
    }
}

TEST(Job, ParseErrorNamesThePolynomial) {
    Job job;
    job.polynomials = {"x1 + 1", "x1 + * x2"};
    try {
        run_job(job);
        FAIL();
    } catch (const JobParseError& e) {
        EXPECT_EQ(e.index, 1u);
        EXPECT_EQ(e.position, 5u);
    }
}

TEST(Job, InferredVariables) {
    EXPECT_EQ(infer_variables({"x3 - 1", "x1"}), (std::vector<std::string>{"x1", "x2", "x3"}));
    EXPECT_EQ(infer_variables({"7"}), std::vector<std::string>{"x1"});
}

TEST(Verify, DetectsTampering) {
    Document doc = run_job(circle_job());
    ASSERT_FALSE(doc.conditions[1].witnesses.empty());
    doc.conditions[1].signs = {1};  // the '0' witness now claims '+'
    EXPECT_THROW(verify_document(doc), Disagreement);
    Document broken = run_job(circle_job());
    for (auto& tr : broken.points.resolutions)
        if (tr.res.degree() >= 1) tr.res.q = tr.res.q * tr.res.q;
    EXPECT_THROW(verify_document(broken), Disagreement);
}
