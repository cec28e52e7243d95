#include "commands.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>

#include "cvsteer/coherent.hpp"
#include "cvsteer/key_security.hpp"
#include "cvsteer/protocol.hpp"
#include "cvsteer/uncertainty.hpp"
#include "svg.hpp"

namespace cvsteer::cli {

namespace {

using nlohmann::json;

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v)) throw UsageError(std::string(name) + " must be finite");
}

void require_range(double lo, double hi, const char* what)
{
    require_finite(lo, what);
    require_finite(hi, what);
    if (!(lo < hi)) throw UsageError(std::string(what) + ": minimum must be below maximum");
}

std::string render(const std::string& command, const json& inputs, const Table& table, Format format)
{
    if (format == Format::Json) return dump(json_document(command, inputs, table));
    return table.to_csv();
}

double parse_number(const std::string& text, const std::string& context)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("malformed number '" + text + "' in " + context);
    }
    if (used != text.size() || !std::isfinite(v)) throw UsageError("malformed number '" + text + "' in " + context);
    return v;
}

json channel_json(const ChannelOptions& c)
{
    json j{{"kind", c.kind}};
    if (c.kind == "clone") j["eta"] = c.eta;
    if (c.kind == "lhs") j["components"] = c.lhs;
    return j;
}

} // namespace

ChannelModel make_channel(const ChannelOptions& options)
{
    if (options.kind == "ideal") return channel::Ideal{};
    if (options.kind == "clone") {
        require_finite(options.eta, "--eta");
        return channel::GaussianClone{options.eta};
    }
    if (options.kind == "lhs") {
        if (options.lhs.empty()) throw UsageError("--channel lhs needs at least one --lhs re,im,weight");
        channel::LhsMixture m;
        for (const auto& item : options.lhs) {
            std::vector<std::string> parts;
            std::stringstream ss(item);
            std::string part;
            while (std::getline(ss, part, ',')) parts.push_back(part);
            if (parts.size() != 3) throw UsageError("--lhs expects re,im,weight, got '" + item + "'");
            m.states.push_back({parse_number(parts[0], "--lhs"), parse_number(parts[1], "--lhs")});
            m.weights.push_back(parse_number(parts[2], "--lhs"));
        }
        return m;
    }
    throw UsageError("unknown channel '" + options.kind + "' (expected ideal, clone or lhs)");
}

std::vector<double> linear_grid(double lo, double hi, int n)
{
    if (n < 2) throw UsageError("grid needs at least 2 points");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        g[static_cast<std::size_t>(i)] = i == n - 1 ? hi : lo + (hi - lo) * t;
    }
    return g;
}

std::string cmd_parity(const ParityOptions& o, Format format)
{
    require_finite(o.re, "--re");
    require_finite(o.im, "--im");
    const ComplexAmplitude mu{o.re, o.im};
    const auto closed = parity_probabilities(mu);
    const bool oracle = o.oracle || o.cutoff.has_value();

    Table t;
    t.header = {"mu_re", "mu_im", "p_even", "p_odd"};
    std::vector<Cell> row{o.re, o.im, closed.p_even, closed.p_odd};
    json inputs{{"re", o.re}, {"im", o.im}, {"oracle", oracle}};
    if (oracle) {
        const int cutoff = o.cutoff.value_or(default_truncation_cutoff(mu));
        TruncatedParity truncated;
        try {
            truncated = parity_by_truncation(mu, cutoff);
        } catch (const CutoffTooSmall& e) {
            throw UsageError("--cutoff " + std::to_string(e.requested()) + " is too small; minimal admissible cutoff is "
                             + std::to_string(e.minimal_cutoff()));
        }
        inputs["cutoff"] = cutoff;
        t.header.insert(t.header.end(), {"trunc_p_even", "trunc_p_odd", "tail_bound", "cutoff", "abs_diff"});
        const double diff = std::max(std::fabs(truncated.distribution.p_even - closed.p_even),
                                     std::fabs(truncated.distribution.p_odd - closed.p_odd));
        row.insert(row.end(), {truncated.distribution.p_even, truncated.distribution.p_odd, truncated.tail_bound,
                               static_cast<std::int64_t>(truncated.cutoff), diff});
    }
    t.rows.push_back(std::move(row));
    return render("parity", inputs, t, format);
}

std::string cmd_steer_region(const RegionOptions& o, Format format)
{
    require_finite(o.alpha, "--alpha");
    require_range(o.beta_min, o.beta_max, "beta range");
    require_range(o.p_min, o.p_max, "p range");
    if (o.p_min < 0.0 || o.p_max > 1.0) throw UsageError("p range must lie within [0, 1]");
    if (o.steps < 2 || o.steps > 2000) throw UsageError("--steps must be between 2 and 2000");
    const auto channel = make_channel(o.channel);

    const auto betas = linear_grid(o.beta_min, o.beta_max, o.steps);
    const auto ps = linear_grid(o.p_min, o.p_max, o.steps);
    const auto rows = region_sweep(betas, ps, o.alpha, channel);

    std::vector<std::optional<BoundaryPoint>> boundary;
    boundary.reserve(betas.size());
    for (double b : betas) {
        if (std::fabs(b) < 1e-6) boundary.emplace_back();
        else boundary.emplace_back(paper_boundary(b));
    }

    if (format == Format::Svg) {
        SvgPlot plot(o.beta_min, o.beta_max, o.p_min, o.p_max);
        plot.set_labels("Steering verdict, alpha = " + fmt(o.alpha) + ", channel " + o.channel.kind, "beta", "p+");
        const double hb = (o.beta_max - o.beta_min) / (2.0 * (o.steps - 1));
        const double hp = (o.p_max - o.p_min) / (2.0 * (o.steps - 1));
        const std::string steer_fill = "#f4a582";
        const std::string local_fill = "#d1e5f0";
        // Merge runs of equal class along p into one rectangle per run.
        for (std::size_t i = 0; i < betas.size(); ++i) {
            const double b0 = std::max(o.beta_min, betas[i] - hb);
            const double b1 = std::min(o.beta_max, betas[i] + hb);
            std::size_t start = 0;
            for (std::size_t j = 1; j <= ps.size(); ++j) {
                const auto cls = [&](std::size_t k) {
                    return rows[i * ps.size() + k].verdict != SteeringVerdict::WithinBounds;
                };
                if (j < ps.size() && cls(j) == cls(start)) continue;
                const double p0 = std::max(o.p_min, ps[start] - hp);
                const double p1 = std::min(o.p_max, ps[j - 1] + hp);
                plot.rect(b0, p0, b1, p1, cls(start) ? steer_fill : local_fill);
                start = j;
            }
        }
        const double nan = std::nan("");
        std::vector<std::pair<double, double>> low_real, high_real, low_complex, high_complex;
        for (std::size_t i = 0; i < betas.size(); ++i) {
            if (!boundary[i]) continue;
            const auto& bp = *boundary[i];
            auto& low = bp.real_valued ? low_real : low_complex;
            auto& high = bp.real_valued ? high_real : high_complex;
            auto& other_low = bp.real_valued ? low_complex : low_real;
            auto& other_high = bp.real_valued ? high_complex : high_real;
            low.emplace_back(betas[i], bp.p_low);
            high.emplace_back(betas[i], bp.p_high);
            other_low.emplace_back(nan, nan);
            other_high.emplace_back(nan, nan);
        }
        plot.polyline(low_real, "#2166ac");
        plot.polyline(high_real, "#2166ac");
        plot.polyline(low_complex, "#2166ac", 2.0, true);
        plot.polyline(high_complex, "#2166ac", 2.0, true);
        plot.legend("steerable", steer_fill);
        plot.legend("within bounds", local_fill);
        plot.legend("boundary formula", "#2166ac");
        return plot.render();
    }

    Table t;
    t.header = {"beta", "p", "sum", "verdict"};
    t.rows.reserve(rows.size());
    for (const auto& r : rows) t.rows.push_back({r.beta, r.p, r.sum, std::string(to_string(r.verdict))});

    const json inputs{{"alpha", o.alpha}, {"beta_min", o.beta_min}, {"beta_max", o.beta_max}, {"p_min", o.p_min},
                      {"p_max", o.p_max}, {"steps", o.steps}, {"channel", channel_json(o.channel)}};
    if (format == Format::Json) {
        auto doc = json_document("steer-region", inputs, t);
        auto b = json::array();
        for (std::size_t i = 0; i < betas.size(); ++i) {
            if (!boundary[i]) {
                b.push_back({{"beta", betas[i]}, {"p_low", nullptr}, {"p_high", nullptr}, {"imag", nullptr},
                             {"real_valued", nullptr}});
                continue;
            }
            const auto& bp = *boundary[i];
            b.push_back({{"beta", betas[i]}, {"p_low", bp.p_low}, {"p_high", bp.p_high}, {"imag", bp.imag},
                         {"real_valued", bp.real_valued}});
        }
        doc["boundary"] = std::move(b);
        return dump(doc);
    }
    return t.to_csv();
}

std::string cmd_keyrate(const KeyRateOptions& o, Format format)
{
    require_finite(o.alpha, "--alpha");
    require_finite(o.beta, "--beta");
    require_range(o.eta_min, o.eta_max, "eta range");
    if (o.eta_min < 0.0 || o.eta_max > std::numbers::pi / 2) throw UsageError("eta range must lie within [0, pi/2]");
    if (o.eta_steps < 2 || o.eta_steps > 1'000'000) throw UsageError("--eta-steps must be between 2 and 1000000");

    const auto grid = linear_grid(o.eta_min, o.eta_max, o.eta_steps);
    const auto curve = key_rate_curve(o.alpha, o.beta, grid);

    if (format == Format::Svg) {
        SvgPlot plot(o.eta_min, o.eta_max, -1.0, 1.0);
        plot.set_labels("Key rate, alpha = " + fmt(o.alpha) + ", beta = " + fmt(o.beta), "eta", "value");
        struct Series {
            const char* name;
            const char* colour;
            double KeyRatePoint::*field;
        };
        for (const Series& s : {Series{"P01", "#2166ac", &KeyRatePoint::p01}, Series{"Q01", "#b2182b", &KeyRatePoint::q01},
                                Series{"I(A:B)", "#4393c3", &KeyRatePoint::i_ab},
                                Series{"I(A:E)", "#d6604d", &KeyRatePoint::i_ae},
                                Series{"rate", "#1b7837", &KeyRatePoint::rate}}) {
            std::vector<std::pair<double, double>> pts;
            pts.reserve(curve.size());
            for (const auto& k : curve) pts.emplace_back(k.eta, k.*s.field);
            plot.polyline(pts, s.colour);
            plot.legend(s.name, s.colour);
        }
        return plot.render();
    }

    Table t;
    t.header = {"eta", "p01", "q01", "p01_printed", "q01_printed", "i_ab", "i_ae", "rate"};
    for (const auto& k : curve) {
        t.rows.push_back({k.eta, k.p01, k.q01, bob_error_printed(o.alpha, o.beta, k.eta),
                          eve_error_printed(o.alpha, o.beta, k.eta), k.i_ab, k.i_ae, k.rate});
    }
    const json inputs{{"alpha", o.alpha}, {"beta", o.beta}, {"eta_steps", o.eta_steps}, {"eta_min", o.eta_min},
                      {"eta_max", o.eta_max}};
    return render("keyrate", inputs, t, format);
}

std::string cmd_protocol(const ProtocolOptions& o, Format format)
{
    if (o.rounds < 1 || o.rounds > 1'000'000'000ULL) throw UsageError("--rounds must be between 1 and 1e9");
    SimConfig cfg;
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.p_plus = o.p_plus;
    cfg.channel = make_channel(o.channel);
    cfg.rounds = o.rounds;
    cfg.seed = o.seed;
    cfg.validate();

    const auto run = run_protocol(cfg);
    if (!o.transcript.empty()) {
        std::ostringstream buf;
        write_transcript(run.transcript, buf);
        write_atomically(o.transcript, buf.str());
    }

    // Expected error rates under the same preparation weights.
    const ComplexAmplitude plus{o.alpha + o.beta, 0.0};
    const ComplexAmplitude minus{o.alpha - o.beta, 0.0};
    const double analytic_p01 = o.p_plus * received_parity(cfg.channel, plus, -plus).p_odd
                                + (1.0 - o.p_plus) * received_parity(cfg.channel, minus, -minus).p_odd;
    std::optional<double> analytic_q01;
    if (const auto* c = std::get_if<channel::GaussianClone>(&cfg.channel)) {
        analytic_q01 = o.p_plus * odd_probability(eve_delta(o.alpha, o.beta, c->eta, +1))
                       + (1.0 - o.p_plus) * odd_probability(eve_delta(o.alpha, o.beta, c->eta, -1));
    }

    const auto& s = run.stats;
    auto opt = [](const std::optional<double>& v) -> Cell { return v ? Cell{*v} : Cell{}; };
    Table t;
    t.header = {"quantity", "value", "stderr", "analytic"};
    t.rows.push_back({std::string("n_plus"), static_cast<std::int64_t>(s.n_plus), {}, {}});
    t.rows.push_back({std::string("n_minus"), static_cast<std::int64_t>(s.n_minus), {}, {}});
    t.rows.push_back({std::string("p01"), s.empirical_p01, s.stderr_p01, analytic_p01});
    if (s.empirical_q01) {
        t.rows.push_back({std::string("q01"), *s.empirical_q01, opt(s.stderr_q01), opt(analytic_q01)});
        Cell analytic_rate;
        if (analytic_q01) analytic_rate = binary_entropy(*analytic_q01) - binary_entropy(analytic_p01);
        t.rows.push_back({std::string("rate"), opt(s.empirical_rate), {}, analytic_rate});
    }

    const json inputs{{"alpha", o.alpha},   {"beta", o.beta}, {"p_plus", o.p_plus},
                      {"channel", channel_json(o.channel)}, {"rounds", o.rounds}, {"seed", o.seed},
                      {"transcript", o.transcript.empty() ? json(nullptr) : json(o.transcript)}};
    return render("protocol", inputs, t, format);
}

std::string cmd_uncertainty(const UncertaintyOptions& o, Format format)
{
    const std::initializer_list<std::pair<double, const char*>> finite{
        {o.sigma_x, "--sigma-x"}, {o.x0, "--x0"},         {o.k0, "--k0"},          {o.alpha, "--alpha"},
        {o.beta, "--beta"},       {o.p_beta, "--p-beta"}, {o.lambda_bar, "--lambda-bar"}};
    for (const auto& [v, name] : finite) {
        require_finite(v, name);
    }
    if (!(o.sigma_x > 0.0)) throw UsageError("--sigma-x must be positive");
    if (!(o.lambda_bar > 0.0)) throw UsageError("--lambda-bar must be positive");
    if (o.p_beta < 0.0 || o.p_beta > 1.0) throw UsageError("--p-beta must lie in [0, 1]");
    if (o.points < 64 || o.points > (1 << 22)) throw UsageError("--points must be between 64 and 4194304");

    const auto profile = o.sigma_p ? GaussianBeamProfile::with_momentum_spread(o.x0, o.k0, o.sigma_x, *o.sigma_p)
                                   : GaussianBeamProfile::minimum_uncertainty(o.x0, o.k0, o.sigma_x);
    const auto psi = sample_profile(profile, static_cast<std::size_t>(o.points));
    const auto entropic = entropic_sum_check(psi);
    const double vp = variance_product(profile);
    const double vpd = variance_product_dimensional(profile, o.lambda_bar);

    const ComplexAmplitude state{o.alpha, 0.0};
    const ComplexAmplitude beta{o.beta, 0.0};
    auto fine = [&](ParityOutcome b) {
        return fine_grained_sum({state, beta, o.p_beta, b}, {state, -beta, 1.0 - o.p_beta, b});
    };
    const auto even = fine(ParityOutcome::Even);
    const auto odd = fine(ParityOutcome::Odd);
    const auto minent = min_entropy_bound_check(state, beta);

    const double tol = 1e-12;
    auto within = [&](double v) { return v >= kSteeringLower - tol && v <= kSteeringUpper + tol; };
    Table t;
    t.header = {"quantity", "value", "lower", "upper", "satisfied", "excluded_region"};
    t.rows.push_back({std::string("variance_product"), vp, 0.25, {}, vp >= 0.25 - tol, false});
    const double dim_bound = o.lambda_bar * o.lambda_bar / 4.0;
    t.rows.push_back({std::string("variance_product_dimensional"), vpd, dim_bound, {}, vpd >= dim_bound * (1 - tol),
                      false});
    t.rows.push_back({std::string("entropy_x"), entropic.h_x, {}, {}, {}, false});
    t.rows.push_back({std::string("entropy_p"), entropic.h_p, {}, {}, {}, false});
    t.rows.push_back({std::string("entropic_sum"), entropic.sum, entropic.bound, {}, entropic.satisfied, false});
    t.rows.push_back({std::string("fine_grained_even"), even.value, kSteeringLower, kSteeringUpper, within(even.value),
                      even.excluded_region});
    t.rows.push_back({std::string("fine_grained_odd"), odd.value, kSteeringLower, kSteeringUpper, within(odd.value),
                      odd.excluded_region});
    t.rows.push_back({std::string("min_entropy_sum"), minent.sum, minent.bound, {}, minent.satisfied,
                      minent.excluded_region});

    json inputs{{"sigma_x", o.sigma_x}, {"x0", o.x0},       {"k0", o.k0},
                {"alpha", o.alpha},     {"beta", o.beta},   {"p_beta", o.p_beta},
                {"lambda_bar", o.lambda_bar}, {"points", o.points}};
    inputs["sigma_p"] = o.sigma_p ? json(*o.sigma_p) : json(nullptr);
    return render("uncertainty", inputs, t, format);
}

} // namespace cvsteer::cli
