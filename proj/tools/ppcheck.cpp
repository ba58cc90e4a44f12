// ppcheck: visual predictive checks from the command line.
//
// Exit codes: 0 all checks passed, 1 usage error, 2 data error, 3 at least
// one check failed (plots are still written).

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppc/calibration.hpp"
#include "ppc/data.hpp"
#include "ppc/detect.hpp"
#include "ppc/estimators.hpp"
#include "ppc/io.hpp"
#include "ppc/overlay.hpp"
#include "ppc/pit.hpp"
#include "ppc/report.hpp"
#include "ppc/rootogram.hpp"
#include "ppc/svg.hpp"
#include "ppc/synthetic.hpp"
#include "ppc/uniformity.hpp"

namespace {

using namespace ppc;

struct Options {
    std::string input;
    std::string column = "value";
    std::string draws;
    std::string viz = "kde";
    std::string bw = "sj";
    std::string bounds = "auto";
    double alpha = 0.05;
    std::uint64_t seed = 42;
    std::string out = "ppcheck.svg";
    std::string report = "report.json";
    std::size_t replicates = 10000;
    std::size_t k_points = 0;  // 0 = default min(N, 100)
    std::string ecdf_style = "ecdf";

    // rootogram
    std::string style = "discrete";
    double interval_mass = 0.9;

    // calibration
    std::string mode = "binary";
    std::string prob_column = "prob";
    std::vector<std::string> prob_columns;
    std::string outcome_column = "outcome";
    std::size_t resample_draws = 2000;
    int bins = 10;

    // demo
    std::string dist = "smooth_normal";
    std::size_t n = 1000;
};

KdeConfig make_kde_config(const Options& o) {
    KdeConfig cfg;
    if (o.bw == "sj") {
        cfg.bandwidth = BandwidthRule::SheatherJones;
    } else if (o.bw == "silverman") {
        cfg.bandwidth = BandwidthRule::Silverman;
    } else {
        try {
            std::size_t used = 0;
            const double h = std::stod(o.bw, &used);
            if (used != o.bw.size() || !(h > 0.0)) throw std::invalid_argument(o.bw);
            cfg.bandwidth = h;
        } catch (const std::exception&) {
            throw CLI::ValidationError("--bw", "expected sj, silverman, or a positive number");
        }
    }
    if (o.bounds == "auto") {
        cfg.boundary = BoundaryMode::Auto;
    } else if (o.bounds == "none") {
        cfg.boundary = BoundaryMode::None;
    } else {
        const auto comma = o.bounds.find(',');
        if (comma == std::string::npos)
            throw CLI::ValidationError("--bounds", "expected auto, none, or LO,HI");
        const std::string lo = o.bounds.substr(0, comma);
        const std::string hi = o.bounds.substr(comma + 1);
        cfg.boundary = BoundaryMode::Reflect;
        try {
            if (!lo.empty() && lo != "-inf") cfg.declared_bounds.left = std::stod(lo);
            if (!hi.empty() && hi != "inf") cfg.declared_bounds.right = std::stod(hi);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--bounds", "could not parse bound values");
        }
    }
    return cfg;
}

CalibrationConfig make_gof_config(const Options& o) {
    CalibrationConfig cfg;
    cfg.replicates = o.replicates;
    return cfg;
}

DensityEstimate fit_estimator(const ObservationSample& sample, const Options& o) {
    if (o.viz == "kde") return fit_kde(sample, make_kde_config(o));
    if (o.viz == "hist") return fit_histogram(sample);
    if (o.viz == "qdot") return fit_qdot(sample);
    throw CLI::ValidationError("--viz", "expected kde, hist, or qdot");
}

Json estimator_json(const DensityEstimate& est, const Options& o) {
    Json j;
    j["viz"] = o.viz;
    if (const auto* kde = std::get_if<KdeEstimate>(&est)) {
        j["bandwidth"] = kde->bandwidth;
        j["bandwidth_fallback"] = kde->bandwidth_fallback;
        j["display_lo"] = kde->display_lo;
        j["display_hi"] = kde->display_hi;
        j["left_bound"] = kde->boundary.left ? Json(*kde->boundary.left) : Json(nullptr);
        j["right_bound"] = kde->boundary.right ? Json(*kde->boundary.right) : Json(nullptr);
    } else if (const auto* hist = std::get_if<HistogramEstimate>(&est)) {
        j["bin_width"] = hist->bin_width;
        j["bins"] = hist->densities.size();
        j["rule_fallback"] = hist->rule_fallback;
    } else if (const auto* qdot = std::get_if<QuantileDotPlot>(&est)) {
        j["n_q"] = qdot->n_q;
        j["radius"] = qdot->radius;
    }
    return j;
}

Json pit_json(const PitSet& pits) {
    double lo = 1.0, hi = 0.0, sum = 0.0;
    for (double u : pits.values) {
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    Json j;
    j["n"] = pits.values.size();
    j["randomized"] = pits.randomized;
    j["source"] = pits.source;
    j["min"] = pits.values.empty() ? Json(nullptr) : Json(lo);
    j["max"] = pits.values.empty() ? Json(nullptr) : Json(hi);
    j["mean"] = pits.values.empty() ? Json(nullptr) : Json(sum / pits.values.size());
    return j;
}

PlotSpec density_plot(const DensityEstimate& est, const std::string& label) {
    PlotSpec plot;
    plot.x_label = label;
    if (const auto* kde = std::get_if<KdeEstimate>(&est)) {
        plot.title = "Kernel density estimate";
        plot.y_label = "density";
        Layer line;
        line.kind = Layer::Kind::Line;
        line.name = "density";
        line.color = "#204a87";
        line.x = kde->grid;
        line.y = kde->density;
        plot.layers.push_back(std::move(line));
    } else if (const auto* hist = std::get_if<HistogramEstimate>(&est)) {
        plot.title = "Histogram";
        plot.y_label = "density";
        Layer bars;
        bars.kind = Layer::Kind::Bars;
        bars.name = "histogram";
        bars.color = "#c4d7ee";
        bars.width = hist->bin_width;
        for (std::size_t j = 0; j < hist->densities.size(); ++j) {
            bars.x.push_back(0.5 * (hist->edges[j] + hist->edges[j + 1]));
            bars.y.push_back(hist->densities[j]);
        }
        plot.layers.push_back(std::move(bars));
    } else if (const auto* qdot = std::get_if<QuantileDotPlot>(&est)) {
        plot.title = "Quantile dot plot";
        plot.y_label = "stack height";
        Layer dots;
        dots.kind = Layer::Kind::Dots;
        dots.name = "quantiles";
        dots.color = "#c4d7ee";
        dots.width = qdot->radius;
        std::size_t d = 0;
        for (std::size_t s = 0; s < qdot->stack_centers.size(); ++s)
            for (int k = 0; k < qdot->stack_heights[s]; ++k, ++d) {
                dots.x.push_back(qdot->stack_centers[s]);
                dots.y.push_back(static_cast<double>(k + 1));
            }
        plot.layers.push_back(std::move(dots));
    }
    return plot;
}

PlotSpec gof_plot(const GofVerdict& verdict) {
    const bool diff = verdict.style == EcdfStyle::EcdfDifference;
    PlotSpec plot;
    plot.title = diff ? "PIT ECDF difference" : "PIT ECDF";
    plot.x_label = "PIT value";
    plot.y_label = diff ? "ECDF - uniform" : "ECDF";

    auto adjust = [&](double v, double z) { return diff ? v - z : v; };

    Layer band;
    band.kind = Layer::Kind::Ribbon;
    band.name = "simultaneous band";
    band.color = "#9bb9dc";
    band.opacity = 0.5;
    for (std::size_t k = 0; k < verdict.ecdf.points.size(); ++k) {
        const double z = verdict.ecdf.points[k];
        band.x.push_back(z);
        band.y.push_back(adjust(verdict.bands.lower[k], z));
        band.y2.push_back(adjust(verdict.bands.upper[k], z));
    }
    plot.layers.push_back(std::move(band));

    Layer ref;
    ref.kind = Layer::Kind::Line;
    ref.name = "uniform";
    ref.color = "#888a85";
    ref.x = {0.0, 1.0};
    ref.y = {diff ? 0.0 : 0.0, diff ? 0.0 : 1.0};
    plot.layers.push_back(std::move(ref));

    Layer ecdf;
    ecdf.kind = Layer::Kind::Line;
    ecdf.name = "ecdf";
    ecdf.color = verdict.pass ? "#204a87" : "#cc0000";
    for (std::size_t k = 0; k < verdict.ecdf.points.size(); ++k) {
        const double z = verdict.ecdf.points[k];
        ecdf.x.push_back(z);
        ecdf.y.push_back(adjust(verdict.ecdf.ecdf[k], z));
    }
    plot.layers.push_back(std::move(ecdf));
    return plot;
}

const char* kDiscreteAdvice =
    "data look discrete (binary or low-cardinality); KDE overlays and bar-style density "
    "checks are unreliable here. Consider a rootogram (standing, hanging, suspended, or "
    "discrete style), a randomized-PIT check, or a PAV-adjusted calibration plot.";

// Warns when a smooth-density view was requested on discrete data; returns
// whether the warning fired so the report can carry the recommendation.
bool maybe_warn_discrete(const DataDiagnosis& diagnosis, const std::string& viz,
                         DiagnosticReport& report) {
    if (!diagnosis.discrete_flag || (viz != "kde" && viz != "hist")) return false;
    std::cerr << "warning: " << kDiscreteAdvice << "\n";
    report.set_recommendation(kDiscreteAdvice);
    return true;
}

std::string numbered_path(const std::string& path, std::size_t index) {
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) return path + "_" + std::to_string(index + 1);
    return path.substr(0, dot) + "_" + std::to_string(index + 1) + path.substr(dot);
}

std::optional<std::size_t> k_opt(const Options& o) {
    if (o.k_points == 0) return std::nullopt;
    return o.k_points;
}

EcdfStyle ecdf_style(const Options& o) {
    if (o.ecdf_style == "ecdf") return EcdfStyle::Ecdf;
    if (o.ecdf_style == "diff") return EcdfStyle::EcdfDifference;
    throw CLI::ValidationError("--ecdf-style", "expected ecdf or diff");
}

int run_density(const Options& o, bool plot_ecdf) {
    const ObservationSample sample = load_observations(o.input, o.column);
    const DataDiagnosis diagnosis = diagnose(sample);

    DiagnosticReport report(plot_ecdf ? "pit" : "density", o.seed);
    report.add_input("observations", o.input);
    report.set("diagnosis", diagnosis_json(diagnosis));
    maybe_warn_discrete(diagnosis, o.viz, report);

    const DensityEstimate est = fit_estimator(sample, o);
    report.set("estimator", estimator_json(est, o));

    const PitSet pits = pit_sample(est, sample, o.seed);
    report.set("pit", pit_json(pits));

    const GofVerdict verdict = gof_test(pits, o.alpha, k_opt(o), ecdf_style(o), make_gof_config(o));
    Json check = verdict_json(verdict);
    check["name"] = "pit_ecdf_uniformity";
    report.add_check(std::move(check));

    render_svg(plot_ecdf ? gof_plot(verdict) : density_plot(est, sample.label), o.out);
    report.write(o.report);
    return report.all_passed() ? 0 : 3;
}

int run_detect(const Options& o) {
    const ObservationSample sample = load_observations(o.input, o.column);
    const DataDiagnosis diagnosis = diagnose(sample);

    DiagnosticReport report("detect", o.seed);
    report.add_input("observations", o.input);
    report.set("diagnosis", diagnosis_json(diagnosis));
    if (diagnosis.discrete_flag) report.set_recommendation(kDiscreteAdvice);
    report.write(o.report);
    return 0;
}

int run_overlay(const Options& o) {
    const ObservationSample sample = load_observations(o.input, o.column);
    const PredictiveDraws draws = load_draws(o.draws);
    const DataDiagnosis diagnosis = diagnose(sample);

    DiagnosticReport report("overlay", o.seed);
    report.add_input("observations", o.input);
    report.add_input("draws", o.draws);
    report.set("diagnosis", diagnosis_json(diagnosis));
    maybe_warn_discrete(diagnosis, o.viz, report);

    OverlaySpec spec;
    spec.seed = o.seed;
    spec.kde = make_kde_config(o);
    if (o.viz == "kde")
        spec.style = OverlayStyle::Kde;
    else if (o.viz == "hist")
        spec.style = OverlayStyle::Histogram;
    else if (o.viz == "qdot")
        spec.style = OverlayStyle::Qdot;
    else
        throw CLI::ValidationError("--viz", "expected kde, hist, or qdot");

    const OverlayResult result = overlay(sample, draws, spec);
    report.set("overlay", Json{{"style", o.viz},
                               {"overflow_low", result.overflow_low},
                               {"overflow_high", result.overflow_high}});
    render_svg(result.plot, o.out);
    report.write(o.report);
    return 0;
}

int run_rootogram(const Options& o) {
    const ObservationSample sample = load_observations(o.input, o.column);
    const PredictiveDraws draws = load_draws(o.draws);

    RootogramSpec spec;
    spec.interval_mass = o.interval_mass;
    if (o.style == "standing")
        spec.style = RootogramStyle::Standing;
    else if (o.style == "hanging")
        spec.style = RootogramStyle::Hanging;
    else if (o.style == "suspended")
        spec.style = RootogramStyle::Suspended;
    else if (o.style == "discrete")
        spec.style = RootogramStyle::Discrete;
    else
        throw CLI::ValidationError("--style", "expected standing, hanging, suspended, or discrete");

    const CountFrequencyTable table = count_frequencies(sample, draws, std::nullopt, o.interval_mass);
    const RootogramResult result = rootogram(table, spec);

    DiagnosticReport report("rootogram", o.seed);
    report.add_input("observations", o.input);
    report.add_input("draws", o.draws);
    Json check;
    check["name"] = "rootogram_intervals";
    check["pass"] = result.flagged_counts.empty();
    check["flagged_counts"] = result.flagged_counts;
    check["interval_mass"] = o.interval_mass;
    report.add_check(std::move(check));

    render_svg(result.plot, o.out);
    report.write(o.report);
    return report.all_passed() ? 0 : 3;
}

Json curve_json(const CalibrationCurve& curve) {
    Json j;
    j["label"] = curve.label;
    j["kind"] = curve.kind == CalibrationCurve::Kind::Pav ? "pav" : "binned";
    j["x"] = curve.x;
    j["y"] = curve.y;
    j["interval_lo"] = curve.interval_lo;
    j["interval_hi"] = curve.interval_hi;
    std::vector<int> flags;
    bool any = false;
    for (bool f : curve.outside_flags) {
        flags.push_back(f ? 1 : 0);
        any = any || f;
    }
    j["outside_flags"] = flags;
    j["pass"] = !any;
    return j;
}

int run_calibration(const Options& o) {
    DiagnosticReport report("calibration", o.seed);
    report.add_input("table", o.input);

    PavConfig cfg;
    cfg.seed = o.seed;
    cfg.resample_draws = o.resample_draws;

    std::vector<CalibrationCurve> curves;
    if (o.mode == "binary") {
        const BinaryPredictionTable table = load_binary_table(o.input, o.prob_column, o.outcome_column);
        curves.push_back(pav_calibration_plot(table, cfg));
    } else if (o.mode == "ovo" || o.mode == "ordinal") {
        if (o.prob_columns.empty())
            throw CLI::ValidationError("--prob-columns", "required for ovo/ordinal modes");
        const CategoricalPredictionTable table =
            load_categorical_table(o.input, o.prob_columns, o.outcome_column, o.mode == "ordinal");
        curves = o.mode == "ovo" ? ovo_calibration(table, cfg) : cumulative_ordinal_calibration(table, cfg);
    } else {
        throw CLI::ValidationError("--mode", "expected binary, ovo, or ordinal");
    }

    bool all_pass = true;
    Json curve_list = Json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        Json cj = curve_json(curves[i]);
        all_pass = all_pass && cj["pass"].get<bool>();
        curve_list.push_back(std::move(cj));
        render_svg(calibration_plot_spec(curves[i]),
                   curves.size() == 1 ? o.out : numbered_path(o.out, i));
    }
    Json check;
    check["name"] = "calibration_consistency";
    check["pass"] = all_pass;
    check["mode"] = o.mode;
    check["curves"] = std::move(curve_list);
    report.add_check(std::move(check));
    report.write(o.report);
    return report.all_passed() ? 0 : 3;
}

int run_demo(const Options& o) {
    const auto kind = synthetic::kind_from_name(o.dist);
    const ObservationSample sample = synthetic::generate(kind, o.n, o.seed);

    Table table;
    table.columns = {o.column};
    table.data = {sample.values};
    write_csv(table, o.out);

    const DataDiagnosis diagnosis = diagnose(sample);
    DiagnosticReport report("demo", o.seed);
    report.set("distribution", o.dist);
    report.set("n", o.n);
    report.set("output", Json{{"path", o.out}, {"digest", file_digest(o.out)}});
    report.set("diagnosis", diagnosis_json(diagnosis));
    report.write(o.report);
    return 0;
}

void add_common(CLI::App* cmd, Options& o, bool needs_input) {
    auto* input = cmd->add_option("--input", o.input, "input table (CSV or JSON records)");
    if (needs_input) input->required();
    cmd->add_option("--column", o.column, "observation column name")->envname("PPC_COLUMN");
    cmd->add_option("--alpha", o.alpha, "simultaneous test level")->envname("PPC_ALPHA");
    cmd->add_option("--seed", o.seed, "RNG seed")->envname("PPC_SEED");
    cmd->add_option("--out", o.out, "output SVG path")->envname("PPC_OUT");
    cmd->add_option("--report", o.report, "output JSON report path")->envname("PPC_REPORT");
}

void add_density_opts(CLI::App* cmd, Options& o) {
    cmd->add_option("--viz", o.viz, "estimator: kde, hist, or qdot")->envname("PPC_VIZ");
    cmd->add_option("--bw", o.bw, "bandwidth: sj, silverman, or a number")->envname("PPC_BW");
    cmd->add_option("--bounds", o.bounds, "auto, none, or LO,HI")->envname("PPC_BOUNDS");
    cmd->add_option("--replicates", o.replicates, "band calibration replicates")
        ->envname("PPC_REPLICATES");
    cmd->add_option("--k-points", o.k_points, "ECDF evaluation points (0 = auto)");
    cmd->add_option("--ecdf-style", o.ecdf_style, "ecdf or diff");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"visual predictive checks for model fit"};
    app.require_subcommand(1);
    Options o;

    auto* density = app.add_subcommand("density", "fit a density estimator and test PIT uniformity");
    add_common(density, o, true);
    add_density_opts(density, o);

    auto* pit = app.add_subcommand("pit", "PIT ECDF plot with simultaneous bands");
    add_common(pit, o, true);
    add_density_opts(pit, o);

    auto* detect = app.add_subcommand("detect", "discreteness and bound diagnostics");
    add_common(detect, o, true);

    auto* overlay_cmd = app.add_subcommand("overlay", "overlaid predictive checks against draws");
    add_common(overlay_cmd, o, true);
    add_density_opts(overlay_cmd, o);
    overlay_cmd->add_option("--draws", o.draws, "predictive draws table (rows = draws)")->required();

    auto* rootogram_cmd = app.add_subcommand("rootogram", "rootogram for count data");
    add_common(rootogram_cmd, o, true);
    rootogram_cmd->add_option("--draws", o.draws, "predictive draws table (rows = draws)")->required();
    rootogram_cmd->add_option("--style", o.style, "standing, hanging, suspended, or discrete");
    rootogram_cmd->add_option("--interval-mass", o.interval_mass, "central predictive interval mass");

    auto* calibration_cmd = app.add_subcommand("calibration", "PAV-adjusted calibration plots");
    add_common(calibration_cmd, o, true);
    calibration_cmd->add_option("--mode", o.mode, "binary, ovo, or ordinal");
    calibration_cmd->add_option("--prob-column", o.prob_column, "predicted probability column");
    calibration_cmd->add_option("--prob-columns", o.prob_columns,
                                "per-category probability columns, in category order");
    calibration_cmd->add_option("--outcome-column", o.outcome_column, "outcome column");
    calibration_cmd->add_option("--resample-draws", o.resample_draws,
                                "consistency band draws when no outcome draws are given");

    auto* demo = app.add_subcommand("demo", "generate a synthetic ground-truth sample");
    add_common(demo, o, false);
    demo->add_option("--dist", o.dist, "smooth_normal, stepped, bounded_exp, or point_mass");
    demo->add_option("--n", o.n, "sample size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (density->parsed()) return run_density(o, false);
        if (pit->parsed()) return run_density(o, true);
        if (detect->parsed()) return run_detect(o);
        if (overlay_cmd->parsed()) return run_overlay(o);
        if (rootogram_cmd->parsed()) return run_rootogram(o);
        if (calibration_cmd->parsed()) return run_calibration(o);
        if (demo->parsed()) {
            if (demo->count("--out") == 0) o.out = "demo.csv";
            return run_demo(o);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
