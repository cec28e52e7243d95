#include "cli.hpp"

#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"
#include "cvsteer/version.hpp"
#include "output.hpp"

namespace cvsteer::cli {

namespace {

struct Common {
    std::string out = "-";
    std::string format = "csv";
    std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c, bool with_format = true)
{
    sub->add_option("--out", c.out, "Output path, - for standard output")->capture_default_str();
    if (with_format) {
        sub->add_option("--format", c.format, "csv, json or svg")
            ->check(CLI::IsMember({"csv", "json", "svg"}))
            ->capture_default_str();
    }
    sub->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

void add_channel(CLI::App* sub, ChannelOptions& c)
{
    sub->add_option("--channel", c.kind, "ideal, clone or lhs")
        ->check(CLI::IsMember({"ideal", "clone", "lhs"}))
        ->capture_default_str();
    sub->add_option("--eta", c.eta, "Cloning angle for --channel clone")->capture_default_str();
    sub->add_option("--lhs", c.lhs, "Mixture component re,im,weight (repeatable)");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Coherent-state temporal steering and key-distribution toolkit", "cvsteer"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Common common;

    ParityOptions parity;
    double cutoff = 0;
    auto* cmd_par = app.add_subcommand("parity", "Parity distribution of a coherent state");
    cmd_par->add_option("--re", parity.re, "Real part of the amplitude")->capture_default_str();
    cmd_par->add_option("--im", parity.im, "Imaginary part of the amplitude")->capture_default_str();
    cmd_par->add_flag("--oracle", parity.oracle, "Also evaluate the truncated Fock sum");
    auto* cutoff_opt = cmd_par->add_option("--cutoff", cutoff, "Fock cutoff for --oracle")->check(CLI::NonNegativeNumber);
    add_common(cmd_par, common);

    RegionOptions region;
    auto* cmd_region = app.add_subcommand("steer-region", "Steering verdict over a (beta, p+) grid");
    cmd_region->add_option("--alpha", region.alpha)->capture_default_str();
    cmd_region->add_option("--beta-min", region.beta_min)->capture_default_str();
    cmd_region->add_option("--beta-max", region.beta_max)->capture_default_str();
    cmd_region->add_option("--p-min", region.p_min)->capture_default_str();
    cmd_region->add_option("--p-max", region.p_max)->capture_default_str();
    cmd_region->add_option("--steps", region.steps, "Grid points per axis")->capture_default_str();
    add_channel(cmd_region, region.channel);
    add_common(cmd_region, common);

    KeyRateOptions keyrate;
    auto* cmd_key = app.add_subcommand("keyrate", "Key rate under the cloning attack over eta");
    cmd_key->add_option("--alpha", keyrate.alpha)->capture_default_str();
    cmd_key->add_option("--beta", keyrate.beta)->capture_default_str();
    cmd_key->add_option("--eta-steps", keyrate.eta_steps)->capture_default_str();
    cmd_key->add_option("--eta-min", keyrate.eta_min)->capture_default_str();
    cmd_key->add_option("--eta-max", keyrate.eta_max)->capture_default_str();
    add_common(cmd_key, common);

    ProtocolOptions protocol;
    auto* cmd_proto = app.add_subcommand("protocol", "Monte Carlo run of the key exchange");
    cmd_proto->add_option("--alpha", protocol.alpha)->capture_default_str();
    cmd_proto->add_option("--beta", protocol.beta)->capture_default_str();
    cmd_proto->add_option("--p-plus", protocol.p_plus)->capture_default_str();
    cmd_proto->add_option("--rounds", protocol.rounds)->capture_default_str();
    cmd_proto->add_option("--transcript", protocol.transcript, "Write the round transcript as JSONL");
    add_channel(cmd_proto, protocol.channel);
    add_common(cmd_proto, common);

    UncertaintyOptions unc;
    double sigma_p = 0;
    auto* cmd_unc = app.add_subcommand("uncertainty", "Uncertainty relations for a beam profile and parity pair");
    cmd_unc->add_option("--sigma-x", unc.sigma_x)->capture_default_str();
    cmd_unc->add_option("--x0", unc.x0)->capture_default_str();
    cmd_unc->add_option("--k0", unc.k0)->capture_default_str();
    auto* sigma_p_opt = cmd_unc->add_option("--sigma-p", sigma_p, "Momentum spread (default: minimum uncertainty)");
    cmd_unc->add_option("--alpha", unc.alpha)->capture_default_str();
    cmd_unc->add_option("--beta", unc.beta)->capture_default_str();
    cmd_unc->add_option("--p-beta", unc.p_beta)->capture_default_str();
    cmd_unc->add_option("--lambda-bar", unc.lambda_bar)->capture_default_str();
    cmd_unc->add_option("--points", unc.points)->capture_default_str();
    add_common(cmd_unc, common);

    auto* cmd_rep = app.add_subcommand("report", "Markdown discrepancy report");
    add_common(cmd_rep, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        OutputSpec spec{parse_format(common.format), common.out};
        std::string content;
        if (cmd_par->parsed()) {
            spec.require_svg_allowed(false);
            if (cutoff_opt->count()) parity.cutoff = static_cast<int>(cutoff);
            content = cmd_parity(parity, spec.format);
        } else if (cmd_region->parsed()) {
            content = cmd_steer_region(region, spec.format);
        } else if (cmd_key->parsed()) {
            content = cmd_keyrate(keyrate, spec.format);
        } else if (cmd_proto->parsed()) {
            spec.require_svg_allowed(false);
            protocol.seed = common.seed;
            content = cmd_protocol(protocol, spec.format);
        } else if (cmd_unc->parsed()) {
            spec.require_svg_allowed(false);
            if (sigma_p_opt->count()) unc.sigma_p = sigma_p;
            content = cmd_uncertainty(unc, spec.format);
        } else if (cmd_rep->parsed()) {
            content = cmd_report();
        }
        emit(spec, content, out);
        return 0;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace cvsteer::cli
