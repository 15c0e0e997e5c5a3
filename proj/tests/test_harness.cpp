#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "citenet/harness.hpp"

using namespace citenet;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.models = {ModelKind::CIT, ModelKind::FF};
    spec.p_grid = {0.1, 0.3};
    spec.q_grid = {0.75};
    spec.n = 250;
    spec.realizations = 4;
    spec.base_seed = 99;
    spec.metrics = {"mean_degree", "mixing"};
    return spec;
}

std::string sweep_csv(const SweepSpec& spec) {
    std::ostringstream out;
    write_sweep_csv(out, run_sweep(spec));
    return out.str();
}

}  // namespace

TEST_CASE("config parsing", "[harness]") {
    std::istringstream in(
        "# comment\n"
        "models = cit, ff\n"
        "p = 0.1, 0.2  # inline comment\n"
        "q = 0.75\n"
        "n = 500\n"
        "realizations = 7\n"
        "seed = 11\n"
        "metrics = mixing, modularity\n");
    const ConfigMap cfg = parse_config(in);
    const SweepSpec spec = sweep_spec_from_config(cfg);
    REQUIRE(spec.models == std::vector<ModelKind>{ModelKind::CIT, ModelKind::FF});
    REQUIRE(spec.p_grid == std::vector<double>{0.1, 0.2});
    REQUIRE(spec.q_grid == std::vector<double>{0.75});
    REQUIRE(spec.n == 500);
    REQUIRE(spec.realizations == 7);
    REQUIRE(spec.base_seed == 11);
    REQUIRE(spec.metrics == std::vector<std::string>{"mixing", "modularity"});
}

TEST_CASE("model parameter blocks round-trip through config text", "[harness]") {
    ModelParams params;
    params.kind = ModelKind::CPY;
    params.n = 1234;
    params.p = 0.271;
    params.q = 0.62;
    params.seed = 99;
    std::istringstream in(model_params_to_config(params));
    const ModelParams back = model_params_from_config(parse_config(in));
    REQUIRE(back.kind == params.kind);
    REQUIRE(back.n == params.n);
    REQUIRE(back.p == params.p);
    REQUIRE(back.q == params.q);
    REQUIRE(back.seed == params.seed);

    // ff blocks omit q and still parse
    params.kind = ModelKind::FF;
    std::istringstream ff_in(model_params_to_config(params));
    const ModelParams ff = model_params_from_config(parse_config(ff_in));
    REQUIRE(ff.kind == ModelKind::FF);
    REQUIRE(ff.q == 0.0);

    std::istringstream missing("model = cit\nn = 10\n");
    REQUIRE_THROWS_WITH(model_params_from_config(parse_config(missing)),
                        Catch::Matchers::ContainsSubstring("missing key 'p'"));
    std::istringstream unknown("model = cit\nn = 10\np = 0.3\nq = 0.5\nfoo = 1\n");
    REQUIRE_THROWS_WITH(model_params_from_config(parse_config(unknown)),
                        Catch::Matchers::ContainsSubstring("unknown key 'foo'"));
}

TEST_CASE("config errors carry line numbers and key names", "[harness]") {
    std::istringstream missing_eq("models = cit\nbogus line\n");
    REQUIRE_THROWS_WITH(parse_config(missing_eq), Catch::Matchers::ContainsSubstring("line 2"));

    std::istringstream dup("n = 5\nn = 6\n");
    REQUIRE_THROWS_WITH(parse_config(dup), Catch::Matchers::ContainsSubstring("duplicate"));

    std::istringstream unknown("models = cit\nwhat = 3\n");
    const ConfigMap cfg = parse_config(unknown);
    REQUIRE_THROWS_WITH(sweep_spec_from_config(cfg),
                        Catch::Matchers::ContainsSubstring("unknown key 'what'"));

    std::istringstream bad_num("p = 0.x\n");
    REQUIRE_THROWS_AS(sweep_spec_from_config(parse_config(bad_num)), std::invalid_argument);

    std::istringstream bad_metric("metrics = sparkles\n");
    REQUIRE_THROWS_WITH(sweep_spec_from_config(parse_config(bad_metric)),
                        Catch::Matchers::ContainsSubstring("unknown metric"));
}

TEST_CASE("sweep output is deterministic and order-independent", "[harness]") {
    const SweepSpec spec = small_spec();
    const std::string first = sweep_csv(spec);
    const std::string second = sweep_csv(spec);
    REQUIRE(first == second);

    SweepSpec parallel = spec;
    parallel.jobs = 3;
    REQUIRE(sweep_csv(parallel) == first);

    SweepSpec other_seed = spec;
    other_seed.base_seed = 100;
    REQUIRE(sweep_csv(other_seed) != first);
}

TEST_CASE("sweep emits one row per grid point and metric", "[harness]") {
    const SweepSpec spec = small_spec();
    const SweepResult result = run_sweep(spec);
    REQUIRE(result.rows.size() == 2 * 2 * 1 * 2);  // models x p x q x metrics
    for (const auto& row : result.rows) {
        REQUIRE(row.realizations_used == spec.realizations);
        REQUIRE(row.mean.has_value());
        REQUIRE(row.stddev.has_value());
        REQUIRE(row.n == spec.n);
    }
    REQUIRE(result.errors.empty());
}

TEST_CASE("undefined metrics are skipped and counted, not zeroed", "[harness]") {
    SweepSpec spec;
    spec.models = {ModelKind::CIT};
    spec.p_grid = {0.2};
    spec.q_grid = {0.6};
    spec.n = 120;
    spec.realizations = 3;
    spec.base_seed = 5;
    spec.metrics = {"alpha", "mean_degree"};
    spec.k_min = 10000;  // no tail this large: alpha undefined everywhere
    const SweepResult result = run_sweep(spec);
    const auto& alpha_row = result.rows[0];
    REQUIRE(alpha_row.metric == "alpha");
    REQUIRE(alpha_row.realizations_used == 0);
    REQUIRE(alpha_row.skipped == 3);
    REQUIRE_FALSE(alpha_row.mean.has_value());

    std::ostringstream out;
    write_sweep_csv(out, result);
    REQUIRE(out.str().find("alpha,,,0,3,0") != std::string::npos);
}

TEST_CASE("generation failures are recorded per grid point, not fatal", "[harness]") {
    SweepSpec spec;
    spec.models = {ModelKind::CIT};
    spec.p_grid = {0.2};
    spec.q_grid = {0.0, 0.8};  // q=0 cannot ever link
    spec.n = 50;
    spec.realizations = 2;
    spec.metrics = {"mean_degree"};
    const SweepResult result = run_sweep(spec);
    REQUIRE(result.rows.size() == 2);
    REQUIRE(result.rows[0].failed == 2);
    REQUIRE_FALSE(result.rows[0].mean.has_value());
    REQUIRE(result.rows[1].failed == 0);
    REQUIRE(result.rows[1].mean.has_value());
    REQUIRE(result.errors.size() == 2);
}

TEST_CASE("mixing signs separate the models at every grid point", "[harness]") {
    SweepSpec spec;
    spec.models = {ModelKind::CIT, ModelKind::FF};
    spec.p_grid = {0.15, 0.3};
    spec.q_grid = {0.75};
    spec.n = 400;
    spec.realizations = 20;
    spec.base_seed = 31337;
    spec.metrics = {"mixing"};
    spec.jobs = 2;
    const SweepResult result = run_sweep(spec);
    for (const auto& row : result.rows) {
        REQUIRE(row.mean.has_value());
        if (row.model == ModelKind::CIT)
            REQUIRE(*row.mean < 0.0);
        else
            REQUIRE(*row.mean > 0.0);
    }
}

TEST_CASE("bounds experiment compares measurements against the formulas", "[harness]") {
    BoundsSpec spec;
    spec.p_grid = {0.1, 0.3};
    spec.q_fixed = 0.75;
    spec.q_grid = {0.5};
    spec.p_fixed = 0.3;
    spec.n_list = {300};
    spec.realizations = 10;
    spec.base_seed = 42;
    const BoundsResult result = run_bounds_experiment(spec);
    // p sweep: burned + degree per p; q sweep: degree only
    REQUIRE(result.rows.size() == 2 * 2 + 1);
    for (const auto& row : result.rows) {
        REQUIRE(row.realizations_used == 10);
        REQUIRE(row.measured_mean.has_value());
        if (row.quantity == "burned")
            REQUIRE(row.bound == Catch::Approx((1.0 - row.p) / (1.0 - 2.0 * row.p)));
        else
            REQUIRE(row.bound == Catch::Approx(expected_degree(row.p, row.q)));
        REQUIRE(row.within_2se);
    }

    std::ostringstream out;
    write_bounds_csv(out, result);
    REQUIRE(out.str().find("quantity,p,q,n,measured_mean") != std::string::npos);
}

TEST_CASE("bound gap shrinks as the network grows", "[harness]") {
    // The measured-vs-bound gap decays with n through the finite-size
    // regime and then plateaus at a structural deficit (the at-most caps
    // in the fan-out draws bind even in large networks), so the monotone
    // shrink is checked across doublings below the plateau.
    BoundsSpec spec;
    spec.p_grid = {0.3};
    spec.q_fixed = 0.75;
    spec.p_fixed = 0.3;
    spec.n_list = {50, 100, 200, 800};
    spec.realizations = 150;
    spec.base_seed = 7;
    spec.jobs = 2;
    const BoundsResult result = run_bounds_experiment(spec);
    std::vector<double> burned_gap, degree_gap;
    for (const auto& row : result.rows) {
        REQUIRE(row.measured_mean.has_value());
        const double gap = row.bound - *row.measured_mean;
        REQUIRE(gap > 0.0);
        if (row.quantity == "burned")
            burned_gap.push_back(gap);
        else
            degree_gap.push_back(gap);
    }
    REQUIRE(burned_gap.size() == 4);
    for (std::size_t i = 1; i < burned_gap.size(); ++i)
        REQUIRE(burned_gap[i] < burned_gap[i - 1]);
    for (std::size_t i = 1; i < degree_gap.size(); ++i)
        REQUIRE(degree_gap[i] < degree_gap[i - 1]);
}

TEST_CASE("dataset comparison runs end to end on a synthetic network", "[harness]") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "citenet_harness_test";
    fs::create_directories(dir);
    const fs::path edge_file = dir / "synthetic.txt";

    ModelParams params;
    params.kind = ModelKind::CIT;
    params.n = 2000;
    params.p = 0.3;
    params.q = 0.6;
    params.seed = 12345;
    const auto [g, log] = generate(params);
    write_edge_list_file(edge_file.string(), g, {"synthetic test network"});

    CoraSpec spec;
    spec.edge_list_path = edge_file.string();
    spec.q = 0.6;
    spec.realizations = 5;
    spec.base_seed = 2;
    spec.data_distance = false;   // keep the test fast
    spec.data_modularity = false;
    spec.jobs = 2;
    const CoraResult result = run_cora_experiment(spec);

    REQUIRE(result.rows.size() == 3);  // data, cit, ff
    REQUIRE(result.rows[0].label == "data");
    REQUIRE(result.cit_fit.fit.has_value());
    REQUIRE(result.ff_fit.fit.has_value());
    REQUIRE(result.curves.size() == 3);

    // the fit inverts the large-n degree formula, so at n=2000 the
    // regenerated ensembles land below the data's mean degree but in the
    // same regime; self-consistency of the summaries matters here
    const double k_data = result.data_report.mean_degree;
    const double k_cit = *result.rows[1].k_mean;
    REQUIRE(k_cit > 0.5 * k_data);
    REQUIRE(k_cit < 1.05 * k_data);
    REQUIRE(*result.rows[1].m_mean ==
            Catch::Approx(k_cit * static_cast<double>(result.data_report.n) / 2.0));
    REQUIRE(result.rows[1].realizations == 5);
    REQUIRE(result.rows[1].failed == 0);

    std::ostringstream out;
    write_cora_comparison_csv(out, result, spec);
    REQUIRE(out.str().find("label,p,q,") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("dataset comparison degrades gracefully on tiny inputs", "[harness]") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "citenet_harness_tiny";
    fs::create_directories(dir);
    const fs::path edge_file = dir / "p3.txt";
    {
        std::ofstream out(edge_file);
        out << "0 1\n1 2\n";
    }
    CoraSpec spec;
    spec.edge_list_path = edge_file.string();
    spec.q = 0.593;
    spec.realizations = 2;
    const CoraResult result = run_cora_experiment(spec);
    // mean degree 4/3 is below both fit floors: errors, no model rows
    REQUIRE_FALSE(result.cit_fit.fit.has_value());
    REQUIRE_FALSE(result.ff_fit.fit.has_value());
    REQUIRE_FALSE(result.cit_fit.error.empty());
    REQUIRE(result.rows.size() == 1);

    std::ostringstream out;
    write_cora_comparison_csv(out, result, spec);
    REQUIRE(out.str().find("fit failed") != std::string::npos);
    fs::remove_all(dir);
}
