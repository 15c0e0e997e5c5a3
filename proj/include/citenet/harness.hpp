#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "citenet/config.hpp"
#include "citenet/edge_list.hpp"
#include "citenet/estimate.hpp"
#include "citenet/format.hpp"
#include "citenet/generate.hpp"
#include "citenet/report.hpp"

namespace citenet {

namespace detail {

constexpr std::uint64_t kLouvainSeedTag = 0x1007a11ull;

struct MeanStd {
    std::optional<double> mean;
    std::optional<double> stddev;  // sample std-dev; 0 when only one value
    int used = 0;

    double std_error() const {
        if (!stddev || used < 1) return 0.0;
        return *stddev / std::sqrt(static_cast<double>(used));
    }
};

inline MeanStd mean_std(const std::vector<double>& values) {
    MeanStd out;
    out.used = static_cast<int>(values.size());
    if (values.empty()) return out;
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    if (values.size() > 1) {
        for (const double v : values) var += (v - mean) * (v - mean);
        var /= static_cast<double>(values.size() - 1);
    }
    out.mean = mean;
    out.stddev = std::sqrt(var);
    return out;
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

inline std::vector<std::string> doubles_to_strings(const std::vector<double>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const double x : v) out.push_back(format_double(x));
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// model parameter blocks
// ---------------------------------------------------------------------------

/// Reads a ModelParams block: model, n, p, q (optional for ff), seed
/// (optional). The inverse of model_params_to_config.
inline ModelParams model_params_from_config(const ConfigMap& cfg) {
    static const std::vector<std::string> known = {"model", "n", "p", "q", "seed"};
    for (const auto& [key, value] : cfg) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("model config: unknown key '" + key + "'");
    }
    const auto require = [&](const char* key) -> const std::string& {
        const auto it = cfg.find(key);
        if (it == cfg.end())
            throw std::invalid_argument("model config: missing key '" + std::string(key) + "'");
        return it->second;
    };
    ModelParams params;
    params.kind = parse_model(require("model"));
    params.n = static_cast<NodeId>(parse_int(require("n"), "model config n"));
    params.p = parse_double(require("p"), "model config p");
    if (const auto it = cfg.find("q"); it != cfg.end())
        params.q = parse_double(it->second, "model config q");
    if (const auto it = cfg.find("seed"); it != cfg.end())
        params.seed = static_cast<std::uint64_t>(parse_int(it->second, "model config seed"));
    params.validate();
    return params;
}

inline std::string model_params_to_config(const ModelParams& params) {
    std::ostringstream os;
    os << "model = " << model_name(params.kind) << '\n'
       << "n = " << params.n << '\n'
       << "p = " << format_double(params.p) << '\n';
    if (params.kind != ModelKind::FF) os << "q = " << format_double(params.q) << '\n';
    os << "seed = " << params.seed << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// parameter sweeps (model comparison tables)
// ---------------------------------------------------------------------------

struct SweepSpec {
    std::vector<ModelKind> models = {ModelKind::CIT};
    std::vector<double> p_grid = {0.3};
    std::vector<double> q_grid = {0.75};
    NodeId n = 1000;
    int realizations = 100;
    std::uint64_t base_seed = 0;
    // default: the five comparison statistics
    std::vector<std::string> metrics = {"mean_degree", "mixing", "mean_distance", "clustering",
                                        "modularity"};
    int k_min = 2;
    int jobs = 1;

    void validate() const {
        if (models.empty()) throw std::invalid_argument("sweep: no models given");
        if (p_grid.empty()) throw std::invalid_argument("sweep: empty p grid");
        if (q_grid.empty()) throw std::invalid_argument("sweep: empty q grid");
        if (n < 2) throw std::invalid_argument("sweep: n must be >= 2");
        if (realizations < 1) throw std::invalid_argument("sweep: realizations must be >= 1");
        if (metrics.empty()) throw std::invalid_argument("sweep: no metrics requested");
        for (const auto& name : metrics)
            if (!is_metric_name(name))
                throw std::invalid_argument("sweep: unknown metric '" + name + "'");
    }
};

struct SweepRow {
    ModelKind model = ModelKind::CIT;
    double p = 0.0;
    double q = 0.0;
    NodeId n = 0;
    std::string metric;
    std::optional<double> mean;
    std::optional<double> stddev;
    int realizations_used = 0;  // realizations with a defined value
    int skipped = 0;            // metric undefined on that realization
    int failed = 0;             // generation failed
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    std::vector<std::string> errors;  // one entry per failed realization
};

/// Runs every (model, p, q) grid point for `realizations` seeds and
/// aggregates the requested metrics. Per-realization seeds derive from
/// (base_seed, flat task index), so parallel and serial runs agree
/// exactly. Generation failures are recorded, not fatal.
inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();

    struct GridPoint {
        ModelKind model;
        double p, q;
    };
    std::vector<GridPoint> points;
    for (const ModelKind model : spec.models)
        for (const double p : spec.p_grid)
            for (const double q : spec.q_grid) points.push_back({model, p, q});

    struct Outcome {
        bool failed = false;
        std::string error;
        std::vector<std::optional<double>> values;
    };
    const std::int64_t total =
        static_cast<std::int64_t>(points.size()) * static_cast<std::int64_t>(spec.realizations);
    std::vector<Outcome> outcomes(static_cast<std::size_t>(total));

    ReportOptions ropts;
    const auto wants = [&](const char* name) {
        return std::find(spec.metrics.begin(), spec.metrics.end(), name) != spec.metrics.end();
    };
    ropts.with_neighbor_degree = wants("mean_neighbor_degree");
    ropts.with_mixing = wants("mixing");
    ropts.with_clustering = wants("clustering");
    ropts.with_distance = wants("mean_distance");
    ropts.with_modularity = wants("modularity");
    ropts.with_alpha = wants("alpha");
    ropts.k_min = spec.k_min;
    ropts.jobs = 1;  // parallelism lives across realizations

    detail::parallel_for_index(total, spec.jobs, [&](std::int64_t task) {
        const std::size_t point_idx = static_cast<std::size_t>(task / spec.realizations);
        const GridPoint& gp = points[point_idx];
        Outcome& out = outcomes[static_cast<std::size_t>(task)];

        ModelParams params;
        params.kind = gp.model;
        params.n = spec.n;
        params.p = gp.p;
        params.q = gp.q;
        params.seed = derive_seed(spec.base_seed, static_cast<std::uint64_t>(task));
        try {
            const auto [graph, log] = generate(params);
            ReportOptions opts = ropts;
            opts.louvain_seed = derive_seed(params.seed, detail::kLouvainSeedTag);
            const MetricsReport rep = compute_report(graph, opts);
            out.values.reserve(spec.metrics.size());
            for (const auto& name : spec.metrics) out.values.push_back(metric_value(rep, name));
        } catch (const std::exception& e) {
            out.failed = true;
            out.error = params.describe() + ": " + e.what();
        }
    });

    SweepResult result;
    result.spec = spec;
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        for (std::size_t mi = 0; mi < spec.metrics.size(); ++mi) {
            SweepRow row;
            row.model = points[pi].model;
            row.p = points[pi].p;
            row.q = points[pi].q;
            row.n = spec.n;
            row.metric = spec.metrics[mi];
            std::vector<double> values;
            for (int r = 0; r < spec.realizations; ++r) {
                const Outcome& out =
                    outcomes[pi * static_cast<std::size_t>(spec.realizations) +
                             static_cast<std::size_t>(r)];
                if (out.failed) {
                    ++row.failed;
                    continue;
                }
                const auto& v = out.values[mi];
                if (v)
                    values.push_back(*v);
                else
                    ++row.skipped;
            }
            const detail::MeanStd agg = detail::mean_std(values);
            row.mean = agg.mean;
            row.stddev = agg.stddev;
            row.realizations_used = agg.used;
            result.rows.push_back(std::move(row));
        }
    }
    for (const auto& out : outcomes)
        if (out.failed) result.errors.push_back(out.error);
    return result;
}

inline std::vector<std::string> sweep_provenance(const SweepSpec& spec) {
    std::vector<std::string> models;
    for (const ModelKind m : spec.models) models.push_back(model_name(m));
    return {
        "citenet sweep",
        "models=" + detail::join(models) + " p=" + detail::join(detail::doubles_to_strings(spec.p_grid)) +
            " q=" + detail::join(detail::doubles_to_strings(spec.q_grid)) +
            " n=" + std::to_string(spec.n) + " realizations=" + std::to_string(spec.realizations) +
            " seed=" + std::to_string(spec.base_seed),
        "metrics=" + detail::join(spec.metrics),
    };
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    for (const auto& c : sweep_provenance(result.spec)) out << "# " << c << '\n';
    out << "model,p,q,n,metric,mean,stddev,realizations,skipped,failed\n";
    for (const auto& row : result.rows) {
        out << model_name(row.model) << ',' << format_double(row.p) << ',' << format_double(row.q)
            << ',' << row.n << ',' << row.metric << ',' << format_optional(row.mean) << ','
            << format_optional(row.stddev) << ',' << row.realizations_used << ',' << row.skipped
            << ',' << row.failed << '\n';
    }
}

inline nlohmann::json sweep_to_json(const SweepResult& result) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    std::vector<std::string> models;
    for (const ModelKind m : result.spec.models) models.push_back(model_name(m));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"model", model_name(row.model)},
                        {"p", row.p},
                        {"q", row.q},
                        {"n", row.n},
                        {"metric", row.metric},
                        {"mean", opt(row.mean)},
                        {"stddev", opt(row.stddev)},
                        {"realizations", row.realizations_used},
                        {"skipped", row.skipped},
                        {"failed", row.failed}});
    }
    return nlohmann::json{{"spec",
                           {{"models", models},
                            {"p", result.spec.p_grid},
                            {"q", result.spec.q_grid},
                            {"n", result.spec.n},
                            {"realizations", result.spec.realizations},
                            {"seed", result.spec.base_seed},
                            {"metrics", result.spec.metrics}}},
                          {"rows", rows},
                          {"errors", result.errors}};
}

/// Builds a sweep spec from a parsed config block. Recognized keys:
/// models, p, q, n, realizations, seed, metrics, kmin.
inline SweepSpec sweep_spec_from_config(const ConfigMap& cfg) {
    static const std::vector<std::string> known = {"models", "p",    "q",       "n",
                                                   "realizations", "seed", "metrics", "kmin"};
    for (const auto& [key, value] : cfg) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw std::invalid_argument("sweep config: unknown key '" + key + "'");
    }
    SweepSpec spec;
    const auto get = [&](const char* key) -> const std::string* {
        const auto it = cfg.find(key);
        return it == cfg.end() ? nullptr : &it->second;
    };
    if (const auto* v = get("models")) {
        spec.models.clear();
        for (const auto& name : split_list(*v)) spec.models.push_back(parse_model(name));
    }
    if (const auto* v = get("p")) spec.p_grid = parse_double_list(*v, "sweep config p");
    if (const auto* v = get("q")) spec.q_grid = parse_double_list(*v, "sweep config q");
    if (const auto* v = get("n")) spec.n = static_cast<NodeId>(parse_int(*v, "sweep config n"));
    if (const auto* v = get("realizations"))
        spec.realizations = static_cast<int>(parse_int(*v, "sweep config realizations"));
    if (const auto* v = get("seed"))
        spec.base_seed = static_cast<std::uint64_t>(parse_int(*v, "sweep config seed"));
    if (const auto* v = get("metrics")) spec.metrics = split_list(*v);
    if (const auto* v = get("kmin")) spec.k_min = static_cast<int>(parse_int(*v, "sweep config kmin"));
    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// bound-tightness experiment
// ---------------------------------------------------------------------------

struct BoundsSpec {
    ModelKind model = ModelKind::CIT;
    std::vector<double> p_grid = {0.1, 0.2, 0.3, 0.4};
    double q_fixed = 0.75;   // linking probability for the p sweep
    std::vector<double> q_grid;  // optional degree sweep over q
    double p_fixed = 0.3;    // burning probability for the q sweep
    std::vector<NodeId> n_list = {1000};
    int realizations = 100;
    std::uint64_t base_seed = 0;
    int jobs = 1;

    void validate() const {
        if (p_grid.empty() && q_grid.empty())
            throw std::invalid_argument("bounds: both grids empty");
        if (n_list.empty()) throw std::invalid_argument("bounds: empty n list");
        if (realizations < 1) throw std::invalid_argument("bounds: realizations must be >= 1");
    }
};

struct BoundsRow {
    std::string quantity;  // "burned" or "degree"
    double p = 0.0;
    double q = 0.0;
    NodeId n = 0;
    std::optional<double> measured_mean;
    double std_error = 0.0;
    double bound = 0.0;
    int realizations_used = 0;
    int failed = 0;
    bool within_2se = false;
};

struct BoundsResult {
    BoundsSpec spec;
    std::vector<BoundsRow> rows;
    std::vector<std::string> errors;
};

/// Measures mean burned-per-episode and mean degree against their
/// closed-form bounds: a sweep over p at fixed q (both quantities) and an
/// optional sweep over q at fixed p (degree only).
inline BoundsResult run_bounds_experiment(const BoundsSpec& spec) {
    spec.validate();

    struct Cell {
        double p, q;
        NodeId n;
        bool include_burned;
    };
    std::vector<Cell> cells;
    for (const double p : spec.p_grid)
        for (const NodeId n : spec.n_list) cells.push_back({p, spec.q_fixed, n, true});
    for (const double q : spec.q_grid)
        for (const NodeId n : spec.n_list) cells.push_back({spec.p_fixed, q, n, false});

    struct Sample {
        bool failed = false;
        std::string error;
        double burned = 0.0;
        double degree = 0.0;
    };
    const std::int64_t total =
        static_cast<std::int64_t>(cells.size()) * static_cast<std::int64_t>(spec.realizations);
    std::vector<Sample> samples(static_cast<std::size_t>(total));

    detail::parallel_for_index(total, spec.jobs, [&](std::int64_t task) {
        const Cell& cell = cells[static_cast<std::size_t>(task / spec.realizations)];
        Sample& sample = samples[static_cast<std::size_t>(task)];
        ModelParams params;
        params.kind = spec.model;
        params.n = cell.n;
        params.p = cell.p;
        params.q = cell.q;
        params.seed = derive_seed(spec.base_seed, static_cast<std::uint64_t>(task));
        try {
            const auto [graph, log] = generate(params);
            sample.burned = log.burned_per_episode();
            sample.degree = mean_degree(graph);
        } catch (const std::exception& e) {
            sample.failed = true;
            sample.error = params.describe() + ": " + e.what();
        }
    });

    BoundsResult result;
    result.spec = spec;
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell& cell = cells[ci];
        std::vector<double> burned, degree;
        int failed = 0;
        for (int r = 0; r < spec.realizations; ++r) {
            const Sample& s = samples[ci * static_cast<std::size_t>(spec.realizations) +
                                      static_cast<std::size_t>(r)];
            if (s.failed) {
                ++failed;
                result.errors.push_back(s.error);
                continue;
            }
            burned.push_back(s.burned);
            degree.push_back(s.degree);
        }
        const auto emit = [&](const char* quantity, const std::vector<double>& values,
                              double bound) {
            const detail::MeanStd agg = detail::mean_std(values);
            BoundsRow row;
            row.quantity = quantity;
            row.p = cell.p;
            row.q = cell.q;
            row.n = cell.n;
            row.measured_mean = agg.mean;
            row.std_error = agg.std_error();
            row.bound = bound;
            row.realizations_used = agg.used;
            row.failed = failed;
            row.within_2se = agg.mean && *agg.mean <= bound + 2.0 * row.std_error;
            result.rows.push_back(std::move(row));
        };
        if (cell.include_burned) emit("burned", burned, expected_burned(cell.p));
        emit("degree", degree, expected_degree(cell.p, cell.q));
    }
    return result;
}

inline nlohmann::json bounds_to_json(const BoundsResult& result) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"quantity", row.quantity},
                        {"p", row.p},
                        {"q", row.q},
                        {"n", row.n},
                        {"measured_mean", opt(row.measured_mean)},
                        {"std_error", row.std_error},
                        {"bound", row.bound},
                        {"realizations", row.realizations_used},
                        {"failed", row.failed},
                        {"within_2se", row.within_2se}});
    }
    return nlohmann::json{{"spec",
                           {{"model", model_name(result.spec.model)},
                            {"p_grid", result.spec.p_grid},
                            {"q_fixed", result.spec.q_fixed},
                            {"q_grid", result.spec.q_grid},
                            {"p_fixed", result.spec.p_fixed},
                            {"n_list", result.spec.n_list},
                            {"realizations", result.spec.realizations},
                            {"seed", result.spec.base_seed}}},
                          {"rows", rows},
                          {"errors", result.errors}};
}

inline void write_bounds_csv(std::ostream& out, const BoundsResult& result) {
    const BoundsSpec& spec = result.spec;
    out << "# citenet bounds\n";
    out << "# model=" << model_name(spec.model)
        << " p_grid=" << detail::join(detail::doubles_to_strings(spec.p_grid))
        << " q_fixed=" << format_double(spec.q_fixed)
        << " q_grid=" << detail::join(detail::doubles_to_strings(spec.q_grid))
        << " p_fixed=" << format_double(spec.p_fixed) << " realizations=" << spec.realizations
        << " seed=" << spec.base_seed << '\n';
    out << "quantity,p,q,n,measured_mean,std_error,bound,realizations,failed,within_2se\n";
    for (const auto& row : result.rows) {
        out << row.quantity << ',' << format_double(row.p) << ',' << format_double(row.q) << ','
            << row.n << ',' << format_optional(row.measured_mean) << ','
            << format_double(row.std_error) << ',' << format_double(row.bound) << ','
            << row.realizations_used << ',' << row.failed << ',' << (row.within_2se ? 1 : 0)
            << '\n';
    }
}

// ---------------------------------------------------------------------------
// dataset comparison (fit models to a citation network and regenerate)
// ---------------------------------------------------------------------------

struct CoraSpec {
    std::string edge_list_path;
    double q = 0.593;       // fixed linking probability for the copying-model fit
    int realizations = 100;
    std::uint64_t base_seed = 0;
    int k_min = 2;
    int knn_bins = 50;
    bool data_distance = true;    // all-source BFS on the dataset can be slow
    bool data_modularity = true;
    int jobs = 1;
};

struct FitOutcome {
    std::optional<FitResult> fit;
    std::string error;
};

struct EnsembleSummary {
    std::string label;
    std::optional<double> p, q;
    int realizations = 0;
    int failed = 0;
    std::optional<double> m_mean, m_std;
    std::optional<double> k_mean, k_std;
    std::optional<double> r_mean, r_std;
    std::optional<double> alpha_mean, alpha_std;
    int r_skipped = 0;
    int alpha_skipped = 0;
};

struct LabeledCurves {
    std::string label;
    std::map<int, std::int64_t> histogram;
    BinnedSeries knn;
};

struct CoraResult {
    NodeId full_n = 0;  // nodes in the raw file, before component extraction
    EdgeListStats load_stats;
    MetricsReport data_report;
    FitOutcome cit_fit;
    FitOutcome ff_fit;
    std::vector<EnsembleSummary> rows;    // data first, then fitted models
    std::vector<LabeledCurves> curves;    // data + first realization per model
    std::vector<std::string> errors;
};

/// Ingests a citation network, fits the copying model (at fixed q) and
/// the burning model to its mean degree, regenerates matched ensembles,
/// and reports side-by-side statistics plus degree-distribution and
/// neighbor-degree curves.
inline CoraResult run_cora_experiment(const CoraSpec& spec) {
    if (spec.realizations < 1)
        throw std::invalid_argument("cora experiment: realizations must be >= 1");
    CoraResult result;

    const LoadResult loaded = read_edge_list_file(spec.edge_list_path);
    result.full_n = loaded.graph.node_count();
    result.load_stats = loaded.stats;
    if (loaded.graph.node_count() == 0)
        throw std::runtime_error("cora experiment: input network is empty");
    const Graph data = loaded.graph.largest_component();

    ReportOptions ropts;
    ropts.k_min = spec.k_min;
    ropts.with_distance = spec.data_distance;
    ropts.with_modularity = spec.data_modularity;
    ropts.jobs = spec.jobs;
    ropts.louvain_seed = derive_seed(spec.base_seed, detail::kLouvainSeedTag);
    result.data_report = compute_report(data, ropts);

    EnsembleSummary data_row;
    data_row.label = "data";
    data_row.realizations = 1;
    data_row.m_mean = static_cast<double>(result.data_report.m);
    data_row.m_std = 0.0;
    data_row.k_mean = result.data_report.mean_degree;
    data_row.k_std = 0.0;
    data_row.r_mean = result.data_report.mixing;
    data_row.alpha_mean = result.data_report.alpha;
    result.rows.push_back(data_row);
    result.curves.push_back(
        {"data", degree_histogram(data), mean_neighbor_degree_curve(data, spec.knn_bins)});

    const auto try_fit = [](auto&& fn) {
        FitOutcome outcome;
        try {
            outcome.fit = fn();
        } catch (const std::exception& e) {
            outcome.error = e.what();
        }
        return outcome;
    };
    const double k_data = result.data_report.mean_degree;
    result.cit_fit = try_fit([&] { return fit_cit(k_data, spec.q); });
    result.ff_fit = try_fit([&] { return fit_ff(k_data); });

    struct ModelRun {
        std::string label;
        ModelParams params;
    };
    std::vector<ModelRun> runs;
    if (result.cit_fit.fit) {
        ModelParams mp;
        mp.kind = ModelKind::CIT;
        mp.n = data.node_count();
        mp.p = result.cit_fit.fit->p_hat;
        mp.q = spec.q;
        runs.push_back({"cit", mp});
    }
    if (result.ff_fit.fit) {
        ModelParams mp;
        mp.kind = ModelKind::FF;
        mp.n = data.node_count();
        mp.p = result.ff_fit.fit->p_hat;
        mp.q = 0.0;
        runs.push_back({"ff", mp});
    }

    for (std::size_t run_idx = 0; run_idx < runs.size(); ++run_idx) {
        const ModelRun& run = runs[run_idx];
        struct Sample {
            bool failed = false;
            std::string error;
            double m = 0.0, k = 0.0;
            std::optional<double> r, alpha;
        };
        std::vector<Sample> samples(static_cast<std::size_t>(spec.realizations));
        std::vector<Graph> first_graph(1);

        detail::parallel_for_index(spec.realizations, spec.jobs, [&](std::int64_t rix) {
            Sample& sample = samples[static_cast<std::size_t>(rix)];
            ModelParams params = run.params;
            params.seed = derive_seed(
                spec.base_seed,
                (run_idx + 1) * 0x100000ull + static_cast<std::uint64_t>(rix));
            try {
                auto [graph, log] = generate(params);
                sample.m = static_cast<double>(graph.edge_count());
                sample.k = mean_degree(graph);
                try {
                    sample.r = degree_mixing(graph);
                } catch (const std::domain_error&) {
                }
                try {
                    sample.alpha = power_law_alpha(graph, spec.k_min);
                } catch (const std::domain_error&) {
                }
                if (rix == 0) first_graph[0] = std::move(graph);
            } catch (const std::exception& e) {
                sample.failed = true;
                sample.error = params.describe() + ": " + e.what();
            }
        });

        EnsembleSummary row;
        row.label = run.label;
        row.p = run.params.p;
        if (run.params.kind != ModelKind::FF) row.q = run.params.q;
        row.realizations = spec.realizations;
        std::vector<double> ms, ks, rs, alphas;
        for (const Sample& s : samples) {
            if (s.failed) {
                ++row.failed;
                result.errors.push_back(s.error);
                continue;
            }
            ms.push_back(s.m);
            ks.push_back(s.k);
            if (s.r)
                rs.push_back(*s.r);
            else
                ++row.r_skipped;
            if (s.alpha)
                alphas.push_back(*s.alpha);
            else
                ++row.alpha_skipped;
        }
        const auto m_agg = detail::mean_std(ms);
        const auto k_agg = detail::mean_std(ks);
        const auto r_agg = detail::mean_std(rs);
        const auto a_agg = detail::mean_std(alphas);
        row.m_mean = m_agg.mean;
        row.m_std = m_agg.stddev;
        row.k_mean = k_agg.mean;
        row.k_std = k_agg.stddev;
        row.r_mean = r_agg.mean;
        row.r_std = r_agg.stddev;
        row.alpha_mean = a_agg.mean;
        row.alpha_std = a_agg.stddev;
        result.rows.push_back(std::move(row));

        if (!samples.empty() && !samples[0].failed && first_graph[0].node_count() > 0) {
            result.curves.push_back({run.label, degree_histogram(first_graph[0]),
                                     mean_neighbor_degree_curve(first_graph[0], spec.knn_bins)});
        }
    }
    return result;
}

inline void write_cora_comparison_csv(std::ostream& out, const CoraResult& result,
                                      const CoraSpec& spec) {
    out << "# citenet cora comparison\n";
    out << "# input=" << spec.edge_list_path << " q=" << format_double(spec.q)
        << " realizations=" << spec.realizations << " seed=" << spec.base_seed
        << " kmin=" << spec.k_min << '\n';
    out << "# full_n=" << result.full_n << " component_n=" << result.data_report.n
        << " dropped_duplicates=" << result.load_stats.duplicate_edges
        << " dropped_self_loops=" << result.load_stats.self_loops << '\n';
    if (!result.cit_fit.fit && !result.cit_fit.error.empty())
        out << "# cit fit failed: " << result.cit_fit.error << '\n';
    if (!result.ff_fit.fit && !result.ff_fit.error.empty())
        out << "# ff fit failed: " << result.ff_fit.error << '\n';
    out << "label,p,q,realizations,failed,m_mean,m_std,mean_degree,mean_degree_std,"
           "mixing,mixing_std,alpha,alpha_std\n";
    for (const auto& row : result.rows) {
        out << row.label << ',' << format_optional(row.p) << ',' << format_optional(row.q) << ','
            << row.realizations << ',' << row.failed << ',' << format_optional(row.m_mean) << ','
            << format_optional(row.m_std) << ',' << format_optional(row.k_mean) << ','
            << format_optional(row.k_std) << ',' << format_optional(row.r_mean) << ','
            << format_optional(row.r_std) << ',' << format_optional(row.alpha_mean) << ','
            << format_optional(row.alpha_std) << '\n';
    }
}

inline nlohmann::json fit_to_json(const FitResult& fit) {
    nlohmann::json j{{"model", model_name(fit.kind)},
                     {"p", fit.p_hat},
                     {"v_bar", fit.v_bar},
                     {"k_pred", fit.k_pred},
                     {"read_fraction", fit.read_fraction}};
    j["q"] = fit.q_fixed ? nlohmann::json(*fit.q_fixed) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json cora_to_json(const CoraResult& result, const CoraSpec& spec) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : result.rows) {
        rows.push_back({{"label", row.label},
                        {"p", opt(row.p)},
                        {"q", opt(row.q)},
                        {"realizations", row.realizations},
                        {"failed", row.failed},
                        {"m_mean", opt(row.m_mean)},
                        {"m_std", opt(row.m_std)},
                        {"mean_degree", opt(row.k_mean)},
                        {"mean_degree_std", opt(row.k_std)},
                        {"mixing", opt(row.r_mean)},
                        {"mixing_std", opt(row.r_std)},
                        {"alpha", opt(row.alpha_mean)},
                        {"alpha_std", opt(row.alpha_std)}});
    }
    nlohmann::json j{{"spec",
                      {{"input", spec.edge_list_path},
                       {"q", spec.q},
                       {"realizations", spec.realizations},
                       {"seed", spec.base_seed},
                       {"kmin", spec.k_min}}},
                     {"full_n", result.full_n},
                     {"dropped_duplicates", result.load_stats.duplicate_edges},
                     {"dropped_self_loops", result.load_stats.self_loops},
                     {"data_report", report_to_json(result.data_report)},
                     {"rows", rows},
                     {"errors", result.errors}};
    j["cit_fit"] = result.cit_fit.fit ? fit_to_json(*result.cit_fit.fit)
                                      : nlohmann::json{{"error", result.cit_fit.error}};
    j["ff_fit"] = result.ff_fit.fit ? fit_to_json(*result.ff_fit.fit)
                                    : nlohmann::json{{"error", result.ff_fit.error}};
    return j;
}

}  // namespace citenet
