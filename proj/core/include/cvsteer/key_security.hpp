#pragma once

// Security of the BB84-like key exchange under the cloning attack
//   |mu>_A |0>_E -> |mu cos|eta|>_A |mu (eta/|eta|) sin|eta|>_E.
//
// Alice prepares |alpha +- beta> with equal weights and announces the
// vacuum-targeting displacement; any odd parity seen after that displacement
// is an error. All entropies are in bits (H(A) = 1).

#include <vector>

#include "cvsteer/coherent.hpp"

namespace cvsteer {

struct CloneOutput {
    ComplexAmplitude bob;
    ComplexAmplitude eve;
};

/// eta = 0 maps to (input, vacuum) by continuity.
CloneOutput clone(ComplexAmplitude input, double eta);

struct ErrorPair {
    double p01 = 0.0; // Bob
    double q01 = 0.0; // Eve
};

/// Odd-parity probability of the coherent state |delta>: (1 - exp(-2|delta|^2)) / 2.
double odd_probability(double delta);

/// The printed alternative sinh(|delta|^2) exp(-|delta|^2 / 2). It does not
/// follow from the Poisson statistics and can exceed 1; kept for comparison.
double printed_odd_probability(double delta);

/// delta_+- = (alpha +- beta)(cos|eta| - 1).
double bob_delta(double alpha, double beta, double eta, int sign);
/// delta'_+- = (alpha +- beta)(sign(eta) sin|eta| - 1).
double eve_delta(double alpha, double beta, double eta, int sign);

/// P01 = (p_odd(delta_+) + p_odd(delta_-)) / 2. Throws DomainError when
/// alpha and beta both lie in the excluded region around the origin.
double bob_error(double alpha, double beta, double eta);
/// Q01, same construction with delta'.
double eve_error(double alpha, double beta, double eta);

double bob_error_printed(double alpha, double beta, double eta);
double eve_error_printed(double alpha, double beta, double eta);

ErrorPair error_pair(double alpha, double beta, double eta);

/// Binary Shannon entropy in bits, 0 log 0 = 0. Throws DomainError outside [0, 1].
double binary_entropy(double x);

struct KeyRatePoint {
    double eta = 0.0;
    double p01 = 0.0;
    double q01 = 0.0;
    double i_ab = 0.0; // 1 - H2(p01)
    double i_ae = 0.0; // 1 - H2(q01)
    double rate = 0.0; // i_ab - i_ae
};

KeyRatePoint key_rate_point(double alpha, double beta, double eta);

/// Throws DomainError if the grid is empty or not sorted ascending.
std::vector<KeyRatePoint> key_rate_curve(double alpha, double beta, const std::vector<double>& eta_grid);

struct EveOptimum {
    double eta_star = 0.0;
    double i_ae_star = 0.0;
    double rate_at_star = 0.0;
};

/// Maximises I(A:E) over eta in [eta_lo, eta_hi] (requires
/// 0 <= eta_lo < eta_hi <= pi/2): a scan with step 1e-3, then golden-section
/// refinement around the best grid node until the bracket is below 1e-8.
/// Ties go to the smaller eta.
EveOptimum optimize_eve(double alpha, double beta, double eta_lo, double eta_hi);

/// As optimize_eve, restricted to clones that leave Bob at least as well
/// informed as Eve (P01 <= Q01).
EveOptimum optimize_eve_symmetric(double alpha, double beta, double eta_lo, double eta_hi);

} // namespace cvsteer
