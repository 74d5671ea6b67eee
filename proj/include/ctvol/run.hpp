#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "ctvol/rational.hpp"

namespace ctvol {

/**
 * One command-line invocation: which input, which method, and how randomness
 * and output are controlled.
 */
struct RunConfig {
    std::string input;

    /** simpcone | lawrence | triangulation | fulldim-brion | ehrhart-oracle | all. */
    std::string method = "simpcone";

    unsigned long seed = 0;

    /** Explicit pairing vector; must be admissible or the run fails. Single
     *  methods only — with method = all the per-method lengths differ. */
    std::optional<VectorXz> beta;

    /** Dilation factor applied to the input before any computation. */
    Integer dilate = 1;

    /** Write the signed-cone decomposition here (simpcone runs only). */
    std::string emitDecomposition;

    /** Cross-check the result against the lattice-point counting oracle. */
    bool verify = false;
};

/**
 * Execute one run: parse the input, dispatch the method(s), and print a
 * report with stable field order (wall_ms last; it is the only line that may
 * differ between identical runs). With method = all, every applicable method
 * is listed with its value — a method whose preconditions fail at runtime is
 * shown as skipped — followed by an agreement verdict over the computed
 * values.
 *
 * @return 0 on success (including verification, if requested); 1 when a
 *         computation, agreement, or verification fails; 2 on configuration
 *         or input errors.
 */
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ctvol
