#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "citenet/graph.hpp"
#include "citenet/random.hpp"

namespace citenet {

inline double mean_degree(const Graph& g) {
    if (g.node_count() == 0) throw std::domain_error("mean_degree: empty graph");
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

/// Mean over non-isolated nodes of the average degree of their neighbors.
inline double mean_neighbor_degree(const Graph& g) {
    double sum = 0.0;
    std::int64_t used = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const auto& nbrs = g.neighbors(i);
        if (nbrs.empty()) continue;
        std::int64_t acc = 0;
        for (const NodeId j : nbrs) acc += g.degree(j);
        sum += static_cast<double>(acc) / static_cast<double>(nbrs.size());
        ++used;
    }
    if (used == 0) throw std::domain_error("mean_neighbor_degree: graph has no edges");
    return sum / static_cast<double>(used);
}

/// Degree mixing coefficient r: Pearson correlation of degrees over the
/// 2m ordered link endpoint pairs. Undefined when all endpoint degrees
/// are equal (detected exactly on integer sums).
inline double degree_mixing(const Graph& g) {
    if (g.edge_count() == 0) throw std::domain_error("degree_mixing: graph has no edges");
    std::int64_t sum = 0, sum_sq = 0, sum_prod = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const std::int64_t ki = g.degree(i);
        for (const NodeId j : g.neighbors(i)) {
            if (j < i) continue;  // each edge visited once, both orderings accumulated
            const std::int64_t kj = g.degree(j);
            sum += ki + kj;
            sum_sq += ki * ki + kj * kj;
            sum_prod += 2 * ki * kj;
        }
    }
    const std::int64_t pairs = 2 * g.edge_count();
    if (pairs * sum_sq == sum * sum)
        throw std::domain_error("degree_mixing: undefined (endpoint degrees have zero variance)");
    const double mean = static_cast<double>(sum) / static_cast<double>(pairs);
    const double var = static_cast<double>(sum_sq) / static_cast<double>(pairs) - mean * mean;
    const double cov = static_cast<double>(sum_prod) / static_cast<double>(pairs) - mean * mean;
    return cov / var;
}

namespace detail {

// Edges among the neighbors of each node; triangles appear three times
// across the node sum.
inline std::pair<std::vector<std::int64_t>, std::vector<int>> neighbor_link_counts(
    const Graph& g) {
    std::vector<std::int64_t> links(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<int> deg = g.degree_sequence();
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const auto& nbrs = g.neighbors(i);
        std::int64_t cnt = 0;
        for (std::size_t a = 0; a < nbrs.size(); ++a)
            for (std::size_t b = a + 1; b < nbrs.size(); ++b)
                if (g.has_edge(nbrs[a], nbrs[b])) ++cnt;
        links[static_cast<std::size_t>(i)] = cnt;
    }
    return {std::move(links), std::move(deg)};
}

}  // namespace detail

/// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
inline double clustering(const Graph& g) {
    if (g.node_count() == 0) throw std::domain_error("clustering: empty graph");
    const auto [links, deg] = detail::neighbor_link_counts(g);
    double sum = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const int k = deg[static_cast<std::size_t>(i)];
        if (k < 2) continue;
        const double possible = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
        sum += static_cast<double>(links[static_cast<std::size_t>(i)]) / possible;
    }
    return sum / static_cast<double>(g.node_count());
}

/// Global transitivity 3*triangles / open-triads. Not used in reports;
/// exposed alongside the mean-local definition.
inline double global_transitivity(const Graph& g) {
    const auto [links, deg] = detail::neighbor_link_counts(g);
    std::int64_t closed = 0, possible = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const std::int64_t k = deg[static_cast<std::size_t>(i)];
        closed += links[static_cast<std::size_t>(i)];
        possible += k * (k - 1) / 2;
    }
    if (possible == 0) throw std::domain_error("global_transitivity: no connected triples");
    return static_cast<double>(closed) / static_cast<double>(possible);
}

struct DistanceEstimate {
    double value = 0.0;
    bool exact = true;
    double std_error = 0.0;  // 0 for exact computation
    NodeId sources = 0;
};

namespace detail {

// Sum of BFS distances from `src`; throws if some node is unreachable.
inline std::int64_t bfs_distance_sum(const Graph& g, NodeId src, std::vector<int>& dist,
                                     std::vector<NodeId>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(src);
    dist[static_cast<std::size_t>(src)] = 0;
    std::int64_t sum = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        const int du = dist[static_cast<std::size_t>(u)];
        sum += du;
        for (const NodeId v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = du + 1;
                queue.push_back(v);
            }
        }
    }
    if (queue.size() != static_cast<std::size_t>(g.node_count()))
        throw std::domain_error("mean_distance: graph is disconnected");
    return sum;
}

template <class Fn>
inline void parallel_for_index(std::int64_t count, int jobs, Fn&& fn) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::size_t nworkers = static_cast<std::size_t>(std::min<std::int64_t>(jobs, count));
    workers.reserve(nworkers);
    for (std::size_t w = 0; w < nworkers; ++w) {
        workers.emplace_back([&, w]() {
            for (std::int64_t i = static_cast<std::int64_t>(w); i < count;
                 i += static_cast<std::int64_t>(nworkers))
                fn(i);
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace detail

struct MeanDistanceOptions {
    int jobs = 1;
    NodeId exact_limit = 50000;   // all-source BFS up to this size
    NodeId sample_sources = 1000; // sources drawn when above the limit
    std::uint64_t seed = 0;
};

/// Mean shortest-path length over unordered node pairs, by BFS from every
/// source (exact) or from a uniform sample of sources with a recorded
/// standard error. Requires a connected graph.
inline DistanceEstimate mean_distance_estimate(const Graph& g,
                                               const MeanDistanceOptions& opts = {}) {
    const NodeId n = g.node_count();
    if (n < 2) throw std::domain_error("mean_distance: need at least two nodes");

    const bool exact = n <= opts.exact_limit;
    std::vector<NodeId> sources;
    if (exact) {
        sources.resize(static_cast<std::size_t>(n));
        std::iota(sources.begin(), sources.end(), 0);
    } else {
        Rng rng(opts.seed);
        std::vector<NodeId> all(static_cast<std::size_t>(n));
        std::iota(all.begin(), all.end(), 0);
        sources = rng.sample_subset(std::move(all),
                                    static_cast<std::size_t>(opts.sample_sources));
    }

    // per-source integer sums keep the reduction independent of thread order
    std::vector<std::int64_t> per_source(sources.size(), 0);
    std::mutex failure_mutex;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    detail::parallel_for_index(static_cast<std::int64_t>(sources.size()), opts.jobs,
                               [&](std::int64_t idx) {
        thread_local std::vector<int> dist;
        thread_local std::vector<NodeId> queue;
        if (failed.load(std::memory_order_relaxed)) return;
        dist.resize(static_cast<std::size_t>(n));
        try {
            per_source[static_cast<std::size_t>(idx)] =
                detail::bfs_distance_sum(g, sources[static_cast<std::size_t>(idx)], dist, queue);
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            failed.store(true, std::memory_order_relaxed);
        }
    });
    if (failure) std::rethrow_exception(failure);

    DistanceEstimate est;
    est.exact = exact;
    est.sources = static_cast<NodeId>(sources.size());
    if (exact) {
        std::int64_t total = 0;
        for (const std::int64_t s : per_source) total += s;
        // each unordered pair counted twice
        est.value = static_cast<double>(total) /
                    (static_cast<double>(n) * static_cast<double>(n - 1));
        est.std_error = 0.0;
    } else {
        std::vector<double> means(per_source.size());
        for (std::size_t i = 0; i < per_source.size(); ++i)
            means[i] = static_cast<double>(per_source[i]) / static_cast<double>(n - 1);
        double mean = 0.0;
        for (const double v : means) mean += v;
        mean /= static_cast<double>(means.size());
        double var = 0.0;
        if (means.size() > 1) {
            for (const double v : means) var += (v - mean) * (v - mean);
            var /= static_cast<double>(means.size() - 1);
        }
        est.value = mean;
        est.std_error = std::sqrt(var / static_cast<double>(means.size()));
    }
    return est;
}

inline double mean_distance(const Graph& g, int jobs = 1) {
    MeanDistanceOptions opts;
    opts.jobs = jobs;
    return mean_distance_estimate(g, opts).value;
}

inline std::map<int, std::int64_t> degree_histogram(const Graph& g) {
    std::map<int, std::int64_t> hist;
    for (NodeId i = 0; i < g.node_count(); ++i) ++hist[g.degree(i)];
    return hist;
}

struct BinnedPoint {
    double x_mean = 0.0;  // mean own degree in the bin
    double y_mean = 0.0;  // mean neighbor degree in the bin
    std::int64_t count = 0;
};

struct BinnedSeries {
    std::vector<BinnedPoint> bins;
    std::int64_t isolated_excluded = 0;
};

/// Neighbor degree versus own degree, aggregated into `bins` contiguous
/// equal-count bins after sorting nodes by degree. Isolated nodes are
/// excluded and counted.
inline BinnedSeries mean_neighbor_degree_curve(const Graph& g, int bins) {
    if (bins < 1) throw std::invalid_argument("mean_neighbor_degree_curve: bins must be >= 1");
    struct Pt {
        int degree;
        double knn;
    };
    std::vector<Pt> pts;
    BinnedSeries series;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const auto& nbrs = g.neighbors(i);
        if (nbrs.empty()) {
            ++series.isolated_excluded;
            continue;
        }
        std::int64_t acc = 0;
        for (const NodeId j : nbrs) acc += g.degree(j);
        pts.push_back({static_cast<int>(nbrs.size()),
                       static_cast<double>(acc) / static_cast<double>(nbrs.size())});
    }
    if (pts.empty()) return series;

    std::stable_sort(pts.begin(), pts.end(),
                     [](const Pt& a, const Pt& b) { return a.degree < b.degree; });
    const std::size_t used = pts.size();
    const std::size_t nbins = std::min<std::size_t>(static_cast<std::size_t>(bins), used);
    const std::size_t base = used / nbins;
    const std::size_t extra = used % nbins;  // first bins take one more
    std::size_t pos = 0;
    for (std::size_t b = 0; b < nbins; ++b) {
        const std::size_t width = base + (b < extra ? 1 : 0);
        BinnedPoint bp;
        bp.count = static_cast<std::int64_t>(width);
        for (std::size_t k = 0; k < width; ++k, ++pos) {
            bp.x_mean += pts[pos].degree;
            bp.y_mean += pts[pos].knn;
        }
        bp.x_mean /= static_cast<double>(width);
        bp.y_mean /= static_cast<double>(width);
        series.bins.push_back(bp);
    }
    return series;
}

/// Discrete power-law exponent by the shifted-continuous maximum-
/// likelihood estimate over degrees >= k_min:
///   alpha = 1 + n_tail / sum(ln(k / (k_min - 1/2))).
/// Requires at least 10 tail observations.
inline double power_law_alpha(std::span<const int> degrees, int k_min = 2) {
    if (k_min < 1) throw std::invalid_argument("power_law_alpha: k_min must be >= 1");
    std::int64_t tail = 0;
    double log_sum = 0.0;
    const double shift = static_cast<double>(k_min) - 0.5;
    for (const int k : degrees) {
        if (k < k_min) continue;
        ++tail;
        log_sum += std::log(static_cast<double>(k) / shift);
    }
    if (tail < 10)
        throw std::domain_error("power_law_alpha: fewer than 10 samples with degree >= k_min");
    return 1.0 + static_cast<double>(tail) / log_sum;
}

inline double power_law_alpha(const Graph& g, int k_min = 2) {
    const std::vector<int> deg = g.degree_sequence();
    return power_law_alpha(std::span<const int>(deg), k_min);
}

}  // namespace citenet
