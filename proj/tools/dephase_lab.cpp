// dephase_lab - command-line front end for the qubit dephasing library.
//
//   dephase_lab series   [--config F] [--preset fig1e] [--out F] [model/grid flags]
//   dephase_lab classify [...]
//   dephase_lab measure  [...] [--truncation T]
//   dephase_lab compare  [...] [--quantity Xi|Gamma]
//
// Exit codes: 0 ok, 2 configuration error, 3 accuracy failure, 4 indeterminate flow.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dephase/compare.hpp"
#include "dephase/csv.hpp"
#include "dephase/dynamics.hpp"
#include "dephase/flow.hpp"
#include "dephase/presets.hpp"
#include "dephase/run_config.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kAccuracy = 3;
constexpr int kIndeterminate = 4;

struct Overrides {
    std::string config;
    std::string preset;
    std::string out;
    std::optional<double> theta, alpha, log_power, cutoff, amplitude;
    std::optional<std::string> family, quantity;
    std::optional<double> tau_start, tau_stop, truncation;
    std::optional<int> tau_points;
    bool tau_log = false;
    bool tau_linear = false;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "JSON run configuration");
    cmd->add_option("--preset", o.preset, "figure preset, e.g. fig1e");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--theta", o.theta, "dimensionless temperature 2kT/(hbar Delta)");
    cmd->add_option("--alpha", o.alpha, "Ohmicity alpha0");
    cmd->add_option("--log-power", o.log_power, "log power p");
    cmd->add_option("--family", o.family, "CanonicalEvenLog or GeneralLog");
    cmd->add_option("--cutoff", o.cutoff, "cutoff lambda");
    cmd->add_option("--amplitude", o.amplitude, "amplitude A");
    cmd->add_option("--tau-start", o.tau_start, "first grid point");
    cmd->add_option("--tau-stop", o.tau_stop, "last grid point");
    cmd->add_option("--tau-points", o.tau_points, "number of grid points");
    cmd->add_flag("--tau-log", o.tau_log, "logarithmic grid spacing");
    cmd->add_flag("--tau-linear", o.tau_linear, "linear grid spacing");
    cmd->add_option("--quantity", o.quantity, "Xi or Gamma (compare)");
    cmd->add_option("--truncation", o.truncation, "truncation time of the measure");
}

dephase::RunConfig resolve(const Overrides& o, const std::string& default_out) {
    using namespace dephase;
    RunConfig c;
    if (!o.config.empty()) c = load_run_config(o.config);
    if (!o.preset.empty()) apply_preset(c, find_preset(o.preset));
    if (o.theta) c.theta = *o.theta;
    if (o.alpha) c.model.alpha0 = *o.alpha;
    if (o.log_power) c.model.log_power = *o.log_power;
    if (o.family) c.model.family = parse_log_family(*o.family);
    if (o.cutoff) c.model.cutoff = *o.cutoff;
    if (o.amplitude) c.model.amplitude = *o.amplitude;
    if (o.tau_start) c.tau_grid.start = *o.tau_start;
    if (o.tau_stop) c.tau_grid.stop = *o.tau_stop;
    if (o.tau_points) c.tau_grid.points = *o.tau_points;
    if (o.tau_log && o.tau_linear) throw InvalidParameter("--tau-log and --tau-linear are exclusive");
    if (o.tau_log) c.tau_grid.spacing = GridSpacing::Log;
    if (o.tau_linear) c.tau_grid.spacing = GridSpacing::Linear;
    if (o.quantity) {
        if (*o.quantity == "Xi") c.quantity = Quantity::Xi;
        else if (*o.quantity == "Gamma") c.quantity = Quantity::Gamma;
        else throw InvalidParameter("--quantity must be Xi or Gamma");
    }
    if (o.truncation) c.truncation_tau = *o.truncation;
    if (!o.out.empty()) c.output = o.out;
    if (c.output.empty()) c.output = default_out;
    c.validate();
    return c;
}

int cmd_series(const dephase::RunConfig& c) {
    using namespace dephase;
    const SpectralModel model(c.model);
    const auto series = compute_series(model, BathSpec(c.theta), c.tau_grid.build(), c.quadrature);
    csv::series_table(series).write_atomic(c.output);
    std::size_t failed = 0;
    for (const auto& f : series.failures) failed += !f.empty();
    std::cout << "wrote " << series.tau_grid.size() << " rows to " << c.output << "\n";
    if (failed) {
        std::cerr << "accuracy failure on " << failed << " of " << series.tau_grid.size()
                  << " points (rows flagged with err=inf)\n";
        for (std::size_t i = 0; i < series.failures.size(); ++i)
            if (!series.failures[i].empty()) {
                std::cerr << "  first: tau=" << csv::format(series.tau_grid[i]) << ": " << series.failures[i] << "\n";
                break;
            }
        return kAccuracy;
    }
    return kOk;
}

int cmd_classify(const dephase::RunConfig& c) {
    using namespace dephase;
    const SpectralModel model(c.model);
    const BathSpec bath(c.theta);
    const auto f = classify_long_time_flow(model, bath);
    std::cout << to_string(f.direction);
    if (f.interval_index) std::cout << " n=" << *f.interval_index;
    std::cout << "\n";
    std::cout << "regime: " << (f.regime ? to_string(*f.regime) : std::string("none")) << "\n";
    std::cout << "leading_sign: " << f.leading_sign << "\n";
    std::cout << "leading_coefficient: " << csv::format(f.leading_coefficient) << "\n";
    std::cout << "temperature_class: " << (f.temperature_class == TemperatureClass::Zero ? "Zero" : "Positive") << "\n";
    if (!special::is_integer(model.alpha0())) {
        const auto t = transition_table(model.alpha0());
        std::cout << "transition: " << to_string(t.flow_at_zero_T) << " -> " << to_string(t.flow_at_positive_T)
                  << " (" << to_string(t.stability) << ")\n";
    }
    if (f.direction == FlowDirection::Indeterminate) {
        std::cerr << "indeterminate: " << (f.note.empty() ? "leading coefficient vanishes" : f.note) << "\n";
        return kIndeterminate;
    }
    return kOk;
}

int cmd_measure(const dephase::RunConfig& c) {
    using namespace dephase;
    const SpectralModel model(c.model);
    const BathSpec bath(c.theta);
    const auto m = non_markovianity_measure(model, bath, c.truncation_tau, c.quadrature);
    const auto mk = markovian_sufficient_check(model, bath);
    std::cout << "N: " << csv::format(m.value) << "\n";
    std::cout << "error_estimate: " << csv::format(m.error_estimate) << "\n";
    std::cout << "truncation_tau: " << csv::format(m.truncation_tau) << "\n";
    std::cout << "tail: " << csv::format(m.tail) << "\n";
    std::cout << "negative_intervals: " << m.negative_intervals.size() << "\n";
    for (const auto& [a, b] : m.negative_intervals)
        std::cout << "  " << csv::format(a) << " " << csv::format(b) << "\n";
    std::cout << "markovian_sufficient: " << (mk.markovian ? "true" : "false");
    if (mk.first_interval)
        std::cout << " (violated on " << csv::format(mk.first_interval->first) << " .. "
                  << csv::format(mk.first_interval->second) << ")";
    std::cout << "\n";
    return kOk;
}

int cmd_compare(const dephase::RunConfig& c) {
    using namespace dephase;
    const SpectralModel model(c.model);
    const BathSpec bath(c.theta);
    const auto rep = compare_asymptotic(model, bath, c.quantity, c.tau_grid.build(), c.quadrature);
    csv::Table t({"tau", "numeric", "asymptotic", "rel_err"});
    double worst = 0.0;
    for (const auto& r : rep.rows) {
        t.add_row({r.tau, r.numeric, r.asymptotic, r.rel_err});
        worst = std::max(worst, r.rel_err);
    }
    t.write_atomic(c.output);
    std::cout << "quantity: " << to_string(c.quantity) << "\n";
    std::cout << "regime: " << to_string(rep.law.regime) << "\n";
    if (rep.law.constant) std::cout << "constant: " << csv::format(*rep.law.constant) << "\n";
    for (const auto& term : rep.law.terms)
        std::cout << "term: " << csv::format(term.coeff) << " tau^" << csv::format(term.tau_power) << " ln^"
                  << csv::format(term.log_power) << "(tau)\n";
    std::cout << "numeric_column: " << (rep.relative_to_constant ? "xi_minus_xi_inf" : "value") << "\n";
    if (!rep.rows.empty()) std::cout << "last_rel_err: " << csv::format(rep.rows.back().rel_err) << "\n";
    std::cout << "max_rel_err: " << csv::format(worst) << "\n";
    if (rep.slope_numeric) {
        std::cout << "slope_lnln_numeric: " << csv::format(*rep.slope_numeric) << "\n";
        std::cout << "slope_lnln_asymptotic: " << csv::format(*rep.slope_asymptotic) << "\n";
        std::cout << "slope_lnln_leading: " << csv::format(rep.law.leading().log_power) << "\n";
    }
    std::cout << "wrote " << rep.rows.size() << " rows to " << c.output << "\n";
    if (rep.failures) {
        std::cerr << "accuracy failure on " << rep.failures << " points\n";
        return kAccuracy;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical lab for qubit pure dephasing with log-modified Ohmic baths"};
    app.require_subcommand(1);
    Overrides o;
    auto* series = app.add_subcommand("series", "tau, Xi, gamma/Delta and coherence on a grid (CSV)");
    auto* classify = app.add_subcommand("classify", "direction of the long-time information flow");
    auto* measure = app.add_subcommand("measure", "non-Markovianity measure N");
    auto* compare = app.add_subcommand("compare", "numeric vs long-time law (CSV)");
    auto* presets = app.add_subcommand("presets", "list figure presets");
    for (auto* cmd : {series, classify, measure, compare}) add_common_options(cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (presets->parsed()) {
            for (const auto& p : dephase::all_presets())
                std::cout << p.name << " alpha=" << dephase::csv::format(p.alpha)
                          << " lambda=" << dephase::csv::format(p.lambda) << "\n";
            return kOk;
        }
        if (series->parsed()) return cmd_series(resolve(o, "series.csv"));
        if (classify->parsed()) return cmd_classify(resolve(o, ""));
        if (measure->parsed()) return cmd_measure(resolve(o, ""));
        if (compare->parsed()) return cmd_compare(resolve(o, "compare.csv"));
    } catch (const dephase::InvalidParameter& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const dephase::UnsupportedRegime& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const dephase::AccuracyError& e) {
        std::cerr << "accuracy failure: " << e.what() << "\n";
        return kAccuracy;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kOk;
}
