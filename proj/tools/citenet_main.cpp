// citenet command-line tool: grow citation-style random networks, measure
// them, sweep parameters and fit model parameters to real networks.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "citenet/edge_list.hpp"
#include "citenet/estimate.hpp"
#include "citenet/generate.hpp"
#include "citenet/harness.hpp"
#include "citenet/report.hpp"

namespace {

using namespace citenet;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct GenerateArgs {
    std::string model = "cit";
    std::int64_t n = 1000;
    double p = 0.3;
    double q = 0.75;
    std::uint64_t seed = 0;
    std::string config;
    std::string out;
    bool model_set = false, n_set = false, p_set = false, q_set = false, seed_set = false;
};

int cmd_generate(const GenerateArgs& args) {
    ModelParams params;
    if (!args.config.empty()) {
        std::ifstream in(args.config);
        if (!in) throw std::runtime_error("cannot open model config: " + args.config);
        params = model_params_from_config(parse_config(in));
    }
    // explicit flags override the config block
    if (args.config.empty() || args.model_set) params.kind = parse_model(args.model);
    if (args.config.empty() || args.n_set) params.n = static_cast<NodeId>(args.n);
    if (args.config.empty() || args.p_set) params.p = args.p;
    if (args.config.empty() || args.q_set) params.q = args.q;
    if (args.config.empty() || args.seed_set) params.seed = args.seed;

    const auto [graph, log] = generate(params);

    if (!args.out.empty()) {
        write_edge_list_file(args.out, graph, {"citenet generate", params.describe()});
    } else {
        write_edge_list(std::cout, graph, {"citenet generate", params.describe()});
    }
    std::ostream& info = args.out.empty() ? std::cerr : std::cout;
    info << params.describe() << " -> n=" << graph.node_count() << " m=" << graph.edge_count()
         << " mean_degree=" << format_double(mean_degree(graph))
         << " episodes=" << log.episodes << " isolated=" << log.isolated_discards
         << " burned_per_episode=" << format_double(log.burned_per_episode()) << '\n';
    return 0;
}

struct StatsArgs {
    std::string input;
    std::string format = "csv";
    std::string out;
    std::string hist_out;
    std::string knn_out;
    int knn_bins = 50;
    int k_min = 2;
    bool largest = false;
    std::uint64_t seed = 1;
    int jobs = default_jobs();
};

int cmd_stats(const StatsArgs& args) {
    const LoadResult loaded = read_edge_list_file(args.input);
    if (loaded.stats.dropped() > 0)
        std::cerr << "warning: dropped " << loaded.stats.duplicate_edges << " duplicate and "
                  << loaded.stats.self_loops << " self-loop line(s)\n";
    Graph g = args.largest ? loaded.graph.largest_component() : loaded.graph;

    ReportOptions opts;
    opts.k_min = args.k_min;
    opts.louvain_seed = args.seed;
    opts.jobs = args.jobs;
    const MetricsReport rep = compute_report(g, opts);

    std::ostringstream body;
    if (args.format == "json") {
        body << report_to_json(rep).dump(2) << '\n';
    } else {
        body << "# citenet stats input=" << args.input << " kmin=" << args.k_min
             << " largest_component=" << (args.largest ? 1 : 0) << '\n';
        body << report_csv_header() << '\n' << report_csv_row(rep) << '\n';
    }
    if (!args.out.empty())
        open_out(args.out) << body.str();
    else
        std::cout << body.str();

    if (!args.hist_out.empty()) {
        auto out = open_out(args.hist_out);
        write_histogram_csv(out, degree_histogram(g), {"citenet stats input=" + args.input});
    }
    if (!args.knn_out.empty()) {
        auto out = open_out(args.knn_out);
        write_binned_series_csv(out, mean_neighbor_degree_curve(g, args.knn_bins),
                                {"citenet stats input=" + args.input,
                                 "bins=" + std::to_string(args.knn_bins)});
    }
    return 0;
}

struct SweepArgs {
    std::string config;
    std::string out;
    std::string format = "csv";
    int jobs = default_jobs();
    std::optional<int> realizations;  // override for quick runs
    std::optional<std::uint64_t> seed;
};

int cmd_sweep(const SweepArgs& args) {
    std::ifstream in(args.config);
    if (!in) throw std::runtime_error("cannot open sweep config: " + args.config);
    const ConfigMap cfg = parse_config(in);
    SweepSpec spec = sweep_spec_from_config(cfg);
    if (args.realizations) spec.realizations = *args.realizations;
    if (args.seed) spec.base_seed = *args.seed;
    spec.jobs = args.jobs;
    spec.validate();

    const SweepResult result = run_sweep(spec);
    for (const auto& err : result.errors) std::cerr << "warning: " << err << '\n';

    std::ostringstream body;
    if (args.format == "json")
        body << sweep_to_json(result).dump(2) << '\n';
    else
        write_sweep_csv(body, result);
    if (!args.out.empty())
        open_out(args.out) << body.str();
    else
        std::cout << body.str();
    return 0;
}

struct BoundsArgs {
    std::string model = "cit";
    std::vector<double> p_grid = {0.1, 0.2, 0.3, 0.4};
    double q_fixed = 0.75;
    std::vector<double> q_grid;
    double p_fixed = 0.3;
    std::vector<std::int64_t> n_list = {1000};
    int realizations = 100;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    int jobs = default_jobs();
};

int cmd_bounds(const BoundsArgs& args) {
    BoundsSpec spec;
    spec.model = parse_model(args.model);
    spec.p_grid = args.p_grid;
    spec.q_fixed = args.q_fixed;
    spec.q_grid = args.q_grid;
    spec.p_fixed = args.p_fixed;
    spec.n_list.clear();
    for (const auto n : args.n_list) spec.n_list.push_back(static_cast<NodeId>(n));
    spec.realizations = args.realizations;
    spec.base_seed = args.seed;
    spec.jobs = args.jobs;

    const BoundsResult result = run_bounds_experiment(spec);
    for (const auto& err : result.errors) std::cerr << "warning: " << err << '\n';
    std::ostringstream body;
    if (args.format == "json")
        body << bounds_to_json(result).dump(2) << '\n';
    else
        write_bounds_csv(body, result);
    if (!args.out.empty())
        open_out(args.out) << body.str();
    else
        std::cout << body.str();
    return 0;
}

struct FitArgs {
    double degree = 0.0;
    double q = 0.0;
    bool q_set = false;
    std::string model = "cit";
    std::int64_t n = 1000;
    std::uint64_t seed = 0;
    std::string format = "json";
};

int cmd_fit(const FitArgs& args) {
    FitResult fit;
    if (args.model == "cit") {
        // there is no principled default for the fixed linking probability
        if (!args.q_set)
            throw std::invalid_argument("fit --model cit needs an explicit --q in (0, 1)");
        fit = fit_cit(args.degree, args.q);
    } else if (args.model == "ff") {
        fit = fit_ff(args.degree);
    } else {
        throw std::invalid_argument("fit supports models 'cit' and 'ff'");
    }

    if (args.format == "json") {
        nlohmann::json j = fit_to_json(fit);
        j["degree_target"] = args.degree;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "model,p,q,v_bar,k_pred,read_fraction,degree_target\n"
                  << model_name(fit.kind) << ',' << format_double(fit.p_hat) << ','
                  << format_optional(fit.q_fixed) << ',' << format_double(fit.v_bar) << ','
                  << format_double(fit.k_pred) << ',' << format_double(fit.read_fraction) << ','
                  << format_double(args.degree) << '\n';
    }
    // ready-to-use parameter block for `generate --config`
    ModelParams matched;
    matched.kind = fit.kind;
    matched.n = static_cast<NodeId>(args.n);
    matched.p = fit.p_hat;
    matched.q = fit.q_fixed.value_or(0.0);
    matched.seed = args.seed;
    std::cout << model_params_to_config(matched);
    return 0;
}

struct CoraArgs {
    std::string input;
    double q = 0.0;
    int realizations = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    int k_min = 2;
    int knn_bins = 50;
    bool fast = false;
    int jobs = default_jobs();
};

int cmd_cora(const CoraArgs& args) {
    CoraSpec spec;
    spec.edge_list_path = args.input;
    spec.q = args.q;
    spec.realizations = args.realizations;
    spec.base_seed = args.seed;
    spec.k_min = args.k_min;
    spec.knn_bins = args.knn_bins;
    spec.data_distance = !args.fast;
    spec.data_modularity = !args.fast;
    spec.jobs = args.jobs;

    const CoraResult result = run_cora_experiment(spec);
    for (const auto& err : result.errors) std::cerr << "warning: " << err << '\n';
    if (!result.cit_fit.fit)
        std::cerr << "warning: copying-model fit failed: " << result.cit_fit.error << '\n';
    if (!result.ff_fit.fit)
        std::cerr << "warning: burning-model fit failed: " << result.ff_fit.error << '\n';

    {
        auto out = open_out(args.out_dir + "/comparison.csv");
        write_cora_comparison_csv(out, result, spec);
    }
    open_out(args.out_dir + "/comparison.json") << cora_to_json(result, spec).dump(2) << '\n';
    {
        auto out = open_out(args.out_dir + "/report_data.csv");
        out << "# citenet cora input=" << args.input << '\n';
        out << report_csv_header() << '\n' << report_csv_row(result.data_report) << '\n';
    }
    for (const auto& curves : result.curves) {
        const std::vector<std::string> header = {"citenet cora input=" + args.input,
                                                 "label=" + curves.label};
        {
            auto out = open_out(args.out_dir + "/degree_hist_" + curves.label + ".csv");
            write_histogram_csv(out, curves.histogram, header);
        }
        {
            auto out = open_out(args.out_dir + "/knn_curve_" + curves.label + ".csv");
            write_binned_series_csv(out, curves.knn, header);
        }
    }

    std::cout << "wrote " << args.out_dir << "/comparison.csv (" << result.rows.size()
              << " rows, component n=" << result.data_report.n << ")\n";
    if (result.cit_fit.fit)
        std::cout << "cit fit: p=" << format_double(result.cit_fit.fit->p_hat)
                  << " q=" << format_double(args.q)
                  << " read_fraction=" << format_double(result.cit_fit.fit->read_fraction) << '\n';
    if (result.ff_fit.fit)
        std::cout << "ff fit: p=" << format_double(result.ff_fit.fit->p_hat) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation-style random network models, statistics and fitting"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cmd_gen = app.add_subcommand("generate", "grow one network and write its edge list");
    auto* gen_model = cmd_gen->add_option("--model", gen.model, "ff, btf, cpy or cit");
    gen_model->capture_default_str();
    auto* gen_n = cmd_gen->add_option("--n", gen.n, "target component size");
    gen_n->capture_default_str();
    auto* gen_p = cmd_gen->add_option("--p", gen.p, "burning probability, [0, 0.5)");
    gen_p->capture_default_str();
    auto* gen_q = cmd_gen->add_option("--q", gen.q, "linking probability, [0, 1)");
    gen_q->capture_default_str();
    auto* gen_seed = cmd_gen->add_option("--seed", gen.seed, "rng seed");
    gen_seed->capture_default_str();
    cmd_gen->add_option("--config", gen.config, "model parameter block (key = value)");
    cmd_gen->add_option("--out", gen.out, "edge list path (default: stdout)");

    StatsArgs stats;
    auto* cmd_st = app.add_subcommand("stats", "compute the statistics of an edge-list network");
    cmd_st->add_option("input", stats.input, "edge list file")->required();
    cmd_st->add_option("--format", stats.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd_st->add_option("--out", stats.out, "report path (default: stdout)");
    cmd_st->add_option("--hist-out", stats.hist_out, "degree histogram CSV path");
    cmd_st->add_option("--knn-out", stats.knn_out, "neighbor-degree curve CSV path");
    cmd_st->add_option("--knn-bins", stats.knn_bins, "equal-count bins for the curve")
        ->capture_default_str();
    cmd_st->add_option("--kmin", stats.k_min, "power-law fit lower cutoff")->capture_default_str();
    cmd_st->add_flag("--largest-component", stats.largest,
                     "analyze only the largest connected component");
    cmd_st->add_option("--seed", stats.seed, "community detection seed")->capture_default_str();
    cmd_st->add_option("--jobs", stats.jobs, "worker threads")->capture_default_str();

    SweepArgs sweep;
    auto* cmd_sw = app.add_subcommand("sweep", "run a parameter sweep from a config file");
    cmd_sw->add_option("--config", sweep.config, "sweep config file")->required();
    cmd_sw->add_option("--out", sweep.out, "CSV/JSON path (default: stdout)");
    cmd_sw->add_option("--format", sweep.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    int sweep_realizations = -1;
    cmd_sw->add_option("--realizations", sweep_realizations, "override config realizations");
    std::int64_t sweep_seed = -1;
    cmd_sw->add_option("--seed", sweep_seed, "override config seed");
    cmd_sw->add_option("--jobs", sweep.jobs, "worker threads")->capture_default_str();

    BoundsArgs bounds;
    auto* cmd_bd = app.add_subcommand("bounds", "measured statistics against closed-form bounds");
    cmd_bd->add_option("--model", bounds.model, "ff, btf, cpy or cit")->capture_default_str();
    cmd_bd->add_option("--p-grid", bounds.p_grid, "burning probabilities for the p sweep")
        ->delimiter(',');
    cmd_bd->add_option("--q", bounds.q_fixed, "linking probability for the p sweep")
        ->capture_default_str();
    cmd_bd->add_option("--q-grid", bounds.q_grid, "linking probabilities for the q sweep")
        ->delimiter(',');
    cmd_bd->add_option("--p", bounds.p_fixed, "burning probability for the q sweep")
        ->capture_default_str();
    cmd_bd->add_option("--n-list", bounds.n_list, "network sizes")->delimiter(',');
    cmd_bd->add_option("--realizations", bounds.realizations, "realizations per grid point")
        ->capture_default_str();
    cmd_bd->add_option("--seed", bounds.seed, "base seed")->capture_default_str();
    cmd_bd->add_option("--out", bounds.out, "output path (default: stdout)");
    cmd_bd->add_option("--format", bounds.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd_bd->add_option("--jobs", bounds.jobs, "worker threads")->capture_default_str();

    FitArgs fit;
    auto* cmd_ft = app.add_subcommand("fit", "solve model parameters from a mean degree");
    cmd_ft->add_option("--degree", fit.degree, "target mean degree")->required();
    auto* fit_q = cmd_ft->add_option("--q", fit.q, "fixed linking probability (required for cit)");
    cmd_ft->add_option("--model", fit.model, "cit or ff")->capture_default_str();
    cmd_ft->add_option("--n", fit.n, "size echoed into the parameter block")
        ->capture_default_str();
    cmd_ft->add_option("--seed", fit.seed, "seed echoed into the parameter block")
        ->capture_default_str();
    cmd_ft->add_option("--format", fit.format, "json or csv")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CoraArgs cora;
    auto* cmd_co = app.add_subcommand("cora", "compare a citation network with fitted models");
    cmd_co->add_option("--input", cora.input, "edge list file")->required();
    cmd_co->add_option("--q", cora.q, "fixed linking probability for the cit fit")->required();
    cmd_co->add_option("--realizations", cora.realizations, "matched networks per model")
        ->capture_default_str();
    cmd_co->add_option("--seed", cora.seed, "base seed")->capture_default_str();
    cmd_co->add_option("--out-dir", cora.out_dir, "output directory")->capture_default_str();
    cmd_co->add_option("--kmin", cora.k_min, "power-law fit lower cutoff")->capture_default_str();
    cmd_co->add_option("--bins", cora.knn_bins, "equal-count bins for the neighbor-degree curve")
        ->capture_default_str();
    cmd_co->add_flag("--fast", cora.fast, "skip mean distance and modularity on the dataset");
    cmd_co->add_option("--jobs", cora.jobs, "worker threads")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_gen) {
            gen.model_set = gen_model->count() > 0;
            gen.n_set = gen_n->count() > 0;
            gen.p_set = gen_p->count() > 0;
            gen.q_set = gen_q->count() > 0;
            gen.seed_set = gen_seed->count() > 0;
            return cmd_generate(gen);
        }
        if (*cmd_st) return cmd_stats(stats);
        if (*cmd_sw) {
            if (sweep_realizations >= 0) sweep.realizations = sweep_realizations;
            if (sweep_seed >= 0) sweep.seed = static_cast<std::uint64_t>(sweep_seed);
            return cmd_sweep(sweep);
        }
        if (*cmd_bd) return cmd_bounds(bounds);
        if (*cmd_ft) {
            fit.q_set = fit_q->count() > 0;
            return cmd_fit(fit);
        }
        if (*cmd_co) return cmd_cora(cora);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
