#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "citenet/format.hpp"
#include "citenet/graph.hpp"
#include "citenet/louvain.hpp"
#include "citenet/metrics.hpp"

namespace citenet {

/// One network's statistics bundle. Metrics that are undefined on the
/// input (mixing on a regular graph, distance on a disconnected one, a
/// too-short degree tail) are left empty rather than zeroed.
struct MetricsReport {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double mean_degree = 0.0;
    std::optional<double> mean_neighbor_degree;
    std::optional<double> mixing;
    std::optional<double> clustering;
    std::optional<double> mean_distance;
    std::optional<double> modularity;
    std::optional<double> alpha;
};

struct ReportOptions {
    bool with_neighbor_degree = true;
    bool with_mixing = true;
    bool with_clustering = true;
    bool with_distance = true;
    bool with_modularity = true;
    bool with_alpha = true;
    int k_min = 2;
    std::uint64_t louvain_seed = 1;
    int jobs = 1;
};

inline MetricsReport compute_report(const Graph& g, const ReportOptions& opts = {}) {
    if (g.node_count() == 0) throw std::invalid_argument("compute_report: empty graph");
    MetricsReport rep;
    rep.n = g.node_count();
    rep.m = g.edge_count();
    rep.mean_degree = mean_degree(g);

    const auto guarded = [](auto&& fn) -> std::optional<double> {
        try {
            return fn();
        } catch (const std::domain_error&) {
            return std::nullopt;
        }
    };

    if (opts.with_neighbor_degree)
        rep.mean_neighbor_degree = guarded([&] { return mean_neighbor_degree(g); });
    if (opts.with_mixing) rep.mixing = guarded([&] { return degree_mixing(g); });
    if (opts.with_clustering) rep.clustering = guarded([&] { return clustering(g); });
    if (opts.with_distance)
        rep.mean_distance = guarded([&] { return mean_distance(g, opts.jobs); });
    if (opts.with_modularity)
        rep.modularity = guarded([&] {
            Rng rng(opts.louvain_seed);
            return modularity(g, louvain(g, rng));
        });
    if (opts.with_alpha) rep.alpha = guarded([&] { return power_law_alpha(g, opts.k_min); });
    return rep;
}

inline const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "m",          "mean_degree", "mean_neighbor_degree", "mixing",
        "clustering", "mean_distance", "modularity",         "alpha"};
    return names;
}

inline bool is_metric_name(const std::string& name) {
    for (const auto& m : metric_names())
        if (m == name) return true;
    return false;
}

inline std::optional<double> metric_value(const MetricsReport& rep, const std::string& name) {
    if (name == "m") return static_cast<double>(rep.m);
    if (name == "mean_degree") return rep.mean_degree;
    if (name == "mean_neighbor_degree") return rep.mean_neighbor_degree;
    if (name == "mixing") return rep.mixing;
    if (name == "clustering") return rep.clustering;
    if (name == "mean_distance") return rep.mean_distance;
    if (name == "modularity") return rep.modularity;
    if (name == "alpha") return rep.alpha;
    throw std::invalid_argument("unknown metric '" + name + "'");
}

inline std::string report_csv_header() {
    return "n,m,mean_degree,mean_neighbor_degree,mixing,clustering,mean_distance,modularity,alpha";
}

inline std::string report_csv_row(const MetricsReport& rep) {
    std::string row;
    row += std::to_string(rep.n);
    row += ',';
    row += std::to_string(rep.m);
    row += ',';
    row += format_double(rep.mean_degree);
    for (const auto* v : {&rep.mean_neighbor_degree, &rep.mixing, &rep.clustering,
                          &rep.mean_distance, &rep.modularity, &rep.alpha}) {
        row += ',';
        row += format_optional(*v);
    }
    return row;
}

inline nlohmann::json report_to_json(const MetricsReport& rep) {
    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    return nlohmann::json{{"n", rep.n},
                          {"m", rep.m},
                          {"mean_degree", rep.mean_degree},
                          {"mean_neighbor_degree", opt(rep.mean_neighbor_degree)},
                          {"mixing", opt(rep.mixing)},
                          {"clustering", opt(rep.clustering)},
                          {"mean_distance", opt(rep.mean_distance)},
                          {"modularity", opt(rep.modularity)},
                          {"alpha", opt(rep.alpha)}};
}

/// Two-column CSV for a degree histogram.
inline void write_histogram_csv(std::ostream& out, const std::map<int, std::int64_t>& hist,
                                const std::vector<std::string>& header_comments = {}) {
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "degree,count\n";
    for (const auto& [k, cnt] : hist) out << k << ',' << cnt << '\n';
}

/// CSV for a binned neighbor-degree curve. Bins are equal-count; the
/// isolated-node exclusion is recorded in the header.
inline void write_binned_series_csv(std::ostream& out, const BinnedSeries& series,
                                    std::vector<std::string> header_comments = {}) {
    header_comments.push_back("binning=equal_count");
    header_comments.push_back("isolated_excluded=" + std::to_string(series.isolated_excluded));
    for (const auto& c : header_comments) out << "# " << c << '\n';
    out << "degree,mean_neighbor_degree,count\n";
    for (const auto& b : series.bins)
        out << format_double(b.x_mean) << ',' << format_double(b.y_mean) << ',' << b.count << '\n';
}

}  // namespace citenet
