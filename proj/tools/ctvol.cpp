#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ctvol/errors.hpp"
#include "ctvol/run.hpp"

namespace {

ctvol::VectorXz parseBeta(const std::string& text)
{
    std::vector<ctvol::Integer> parts;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        const auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw ctvol::ParseError("--beta: empty entry");
        ctvol::Rational q =
            ctvol::parseRational(token.substr(first, last - first + 1), "--beta");
        if (denominator(q) != 1)
            throw ctvol::ParseError("--beta: entries must be integers, got " +
                                    ctvol::toString(q));
        parts.push_back(numerator(q));
    }
    if (parts.empty())
        throw ctvol::ParseError("--beta: empty vector");
    ctvol::VectorXz beta(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        beta(static_cast<Eigen::Index>(i)) = parts[i];
    return beta;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact volumes of rational convex polytopes via signed simplicial cones"};
    ctvol::RunConfig cfg;
    std::string betaText;
    long dilate = 1;

    app.add_option("input", cfg.input, "Polytope file (JSON; kind std, hrep, or vrep)")
        ->required();
    app.add_option("--method", cfg.method,
                   "simpcone | lawrence | triangulation | fulldim-brion | "
                   "ehrhart-oracle | all")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for the pairing-vector sampler")
        ->capture_default_str();
    app.add_option("--beta", betaText, "Explicit pairing vector: comma-separated integers");
    app.add_option("--dilate", dilate, "Dilate the polytope by this positive integer first")
        ->capture_default_str();
    app.add_option("--emit-decomposition", cfg.emitDecomposition,
                   "Write the signed-cone decomposition to this path");
    app.add_flag("--verify", cfg.verify, "Cross-check against the lattice-point oracle");
    CLI11_PARSE(app, argc, argv);

    cfg.dilate = dilate;
    if (!betaText.empty()) {
        try {
            cfg.beta = parseBeta(betaText);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    try {
        return ctvol::run(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
