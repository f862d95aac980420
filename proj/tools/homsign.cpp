#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "homsign/homsign.hpp"

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') continue;
        out.push_back(line);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sample points and feasible sign conditions of polynomial families"};
    homsign::Job job;
    std::string mode = "regular", vars, out, input;
    std::vector<int> degrees;
    bool verify = false;
    app.add_option("polynomials", job.polynomials, "Polynomials, e.g. \"x1^2+x2^2-1\"");
    app.add_option("--input", input, "File with one polynomial per line");
    app.add_option("--mode", mode, "regular, closed, bivariate or single")
        ->check(CLI::IsMember({"regular", "closed", "bivariate", "single"}));
    app.add_option("--seed", job.seed, "Random seed");
    app.add_option("--vars", vars, "Comma-separated variable names (default x1..xn)");
    app.add_option("--degrees", degrees, "Degree bounds d1,...,dm")->delimiter(',');
    app.add_flag("--list-conditions", job.list_conditions, "List feasible sign conditions");
    app.add_option("--sigma", job.sigma, "Target pattern over <,=,>,* restricting the subsets");
    app.add_flag("--verify", verify, "Re-check every point and witness independently");
    app.add_option("--out", out, "Output file (default stdout)");
    app.add_option("--threads", job.threads, "Worker threads for the deformations");
    CLI11_PARSE(app, argc, argv);

    try {
        job.mode = homsign::parse_mode(mode);
        job.degrees = degrees;
        if (!vars.empty()) job.variables = homsign::detail::split(vars, ',');
        if (!input.empty())
            for (auto& line : read_lines(input)) job.polynomials.push_back(line);
        if (job.polynomials.empty()) {
            std::cerr << "no polynomials given\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }

    homsign::Document doc;
    try {
        doc = homsign::run_job(job);
    } catch (const homsign::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const homsign::BadRandomness& e) {
        std::cerr << "random choices exhausted (seed " << job.seed << "): " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error (seed " << job.seed << "): " << e.what() << '\n';
        return 4;
    }

    if (verify) {
        try {
            homsign::verify_document(doc);
        } catch (const homsign::Disagreement& e) {
            std::cerr << "verification failed (seed " << job.seed << "): " << e.what() << '\n';
            return 3;
        }
    }

    if (out.empty()) {
        homsign::write_document(std::cout, doc);
    } else {
        std::ofstream os(out);
        if (!os) {
            std::cerr << "cannot write " << out << '\n';
            return 1;
        }
        homsign::write_document(os, doc);
    }
    return 0;
}
