#pragma once
// Discrepancy report: published formulas and claims next to what the model
// actually gives.

#include <string>
#include <vector>

#include "cvsteer/key_security.hpp"
#include "cvsteer/steering.hpp"

namespace cvsteer::cli {

/// Printed sinh form vs derived odd-parity form on an (alpha, beta, eta) grid,
/// both checked against the Fock-truncation oracle.
struct PrintedFormComparison {
    std::size_t points = 0;
    double max_diff_p01 = 0.0; // |printed - derived| over the grid
    double max_diff_q01 = 0.0;
    double worst_alpha = 0.0;
    double worst_beta = 0.0;
    double worst_eta = 0.0;
    double derived_vs_truncation = 0.0; // max over every delta on the grid
    double printed_vs_truncation = 0.0;
};

std::vector<double> report_alphas();
std::vector<double> report_betas();
std::vector<double> report_etas();

PrintedFormComparison compare_printed_form(const std::vector<double>& alphas, const std::vector<double>& betas,
                                           const std::vector<double>& etas);

struct BoundaryComparisonRow {
    double beta = 0.0;
    BoundaryPoint formula;
    std::vector<VerdictCrossing> crossings;
};

/// Sweep under GaussianClone(pi/4) at the given alpha; crossings per beta.
std::vector<BoundaryComparisonRow> compare_boundary(double alpha, const std::vector<double>& betas, int p_steps);

struct EveOptimumRow {
    double alpha = 0.0;
    double beta = 0.0;
    EveOptimum unconstrained;
    EveOptimum symmetric;
};

std::vector<EveOptimumRow> eve_optima();

} // namespace cvsteer::cli
