#pragma once
// Subcommand bodies. Each returns the rendered artifact; the caller decides
// where it goes. Invalid arguments throw UsageError.

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cvsteer/steering.hpp"
#include "output.hpp"

namespace cvsteer::cli {

struct ChannelOptions {
    std::string kind = "ideal"; // ideal | clone | lhs
    double eta = std::numbers::pi / 4;
    std::vector<std::string> lhs; // "re,im,weight" per component
};

/// Throws UsageError on an unknown kind or malformed component.
ChannelModel make_channel(const ChannelOptions& options);

struct ParityOptions {
    double re = 0.0;
    double im = 0.0;
    bool oracle = false;
    std::optional<int> cutoff;
};

struct RegionOptions {
    double alpha = 1.0;
    double beta_min = 0.05;
    double beta_max = 3.0;
    double p_min = 0.0;
    double p_max = 1.0;
    int steps = 100;
    ChannelOptions channel;
};

struct KeyRateOptions {
    double alpha = 1.0;
    double beta = 0.5;
    int eta_steps = 91;
    double eta_min = 0.0;
    double eta_max = std::numbers::pi / 2;
};

struct ProtocolOptions {
    double alpha = 1.0;
    double beta = 0.5;
    double p_plus = 0.5;
    ChannelOptions channel;
    std::uint64_t rounds = 10000;
    std::uint64_t seed = 0;
    std::string transcript; // empty: none
};

struct UncertaintyOptions {
    double sigma_x = 1.0;
    double x0 = 0.0;
    double k0 = 0.0;
    std::optional<double> sigma_p;
    double alpha = 1.0;
    double beta = 0.5;
    double p_beta = 0.5;
    double lambda_bar = 1.0;
    int points = 4096;
};

/// Evenly spaced grid with exact endpoints: lo + (hi - lo) * i / (n - 1).
std::vector<double> linear_grid(double lo, double hi, int n);

std::string cmd_parity(const ParityOptions& options, Format format);
std::string cmd_steer_region(const RegionOptions& options, Format format);
std::string cmd_keyrate(const KeyRateOptions& options, Format format);
/// Writes the transcript file (if requested) before returning the stats.
std::string cmd_protocol(const ProtocolOptions& options, Format format);
std::string cmd_uncertainty(const UncertaintyOptions& options, Format format);
/// Markdown discrepancy report; depends on nothing but the library.
std::string cmd_report();

} // namespace cvsteer::cli
