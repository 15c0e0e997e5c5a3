#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "citenet/generate.hpp"

namespace citenet {

/// Mean number of nodes burned per episode in the large-network limit:
///   v = (1 - p) / (1 - 2p),  p in [0, 1/2).
/// The geometric sum diverges at p = 1/2.
inline double expected_burned(double p) {
    if (!(p >= 0.0 && p < 0.5))
        throw std::domain_error("expected_burned: p must lie in [0, 0.5)");
    return (1.0 - p) / (1.0 - 2.0 * p);
}

/// Expected mean degree of the copying model with isolated-node
/// correction:
///   k = 2 q v / (1 - q - (1-q)^(v+1)),  v = expected_burned(p).
inline double expected_degree(double p, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::domain_error("expected_degree: q must lie in (0, 1)");
    const double v = expected_burned(p);
    const double denom = 1.0 - q - std::pow(1.0 - q, v + 1.0);
    return 2.0 * q * v / denom;
}

/// Expected mean degree of the plain burning model: every burned node is
/// linked, so k = 2 * expected_burned(p).
inline double ff_expected_degree(double p) { return 2.0 * expected_burned(p); }

namespace detail {

inline constexpr double kMaxBurnP = 0.5 - 1e-12;

}  // namespace detail

/// Burning probability such that expected_degree(p, q) = k_target, found
/// by bisection (the expected degree is monotone increasing in p). Raises
/// with the feasible range when the target cannot be met.
inline double estimate_p(double k_target, double q) {
    if (!(k_target > 0.0)) throw std::domain_error("estimate_p: degree target must be positive");
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("estimate_p: q must lie in (0, 1)");
    double lo = 0.0, hi = detail::kMaxBurnP;
    const double k_lo = expected_degree(lo, q);
    const double k_hi = expected_degree(hi, q);
    if (k_target < k_lo || k_target > k_hi) {
        std::ostringstream os;
        os << "estimate_p: degree " << k_target << " not reachable at q=" << q
           << "; feasible range is [" << k_lo << ", " << k_hi << ")";
        throw std::domain_error(os.str());
    }
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (expected_degree(mid, q) < k_target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Burning probability for the plain burning model from
/// 2 (1-p) / (1-2p) = k_target, in closed form.
inline double estimate_p_ff(double k_target) {
    // k = 2(1-p)/(1-2p) is increasing on [0, 1/2) with floor 2 at p=0
    if (!(k_target >= 2.0))
        throw std::domain_error("estimate_p_ff: degree target must be >= 2 (the p=0 floor)");
    const double p = (k_target - 2.0) / (2.0 * k_target - 2.0);
    if (!(p >= 0.0 && p < 0.5))
        throw std::domain_error("estimate_p_ff: no valid p for the given degree");
    return p;
}

/// Share of cited papers actually read: 2 v / k.
inline double read_fraction(double p, double k_network) {
    if (!(k_network > 0.0)) throw std::domain_error("read_fraction: degree must be positive");
    return 2.0 * expected_burned(p) / k_network;
}

struct FitResult {
    ModelKind kind = ModelKind::CIT;
    double p_hat = 0.0;
    std::optional<double> q_fixed;  // absent for the burning model
    double v_bar = 0.0;             // predicted mean ambassadors per node
    double k_pred = 0.0;            // degree reproduced by the fit
    double read_fraction = 0.0;
};

/// Fit the copying model to a measured mean degree at fixed q.
inline FitResult fit_cit(double k_target, double q) {
    FitResult fit;
    fit.kind = ModelKind::CIT;
    fit.p_hat = estimate_p(k_target, q);
    fit.q_fixed = q;
    fit.v_bar = expected_burned(fit.p_hat);
    fit.k_pred = expected_degree(fit.p_hat, q);
    fit.read_fraction = read_fraction(fit.p_hat, k_target);
    return fit;
}

/// Fit the plain burning model to a measured mean degree.
inline FitResult fit_ff(double k_target) {
    FitResult fit;
    fit.kind = ModelKind::FF;
    fit.p_hat = estimate_p_ff(k_target);
    fit.v_bar = expected_burned(fit.p_hat);
    fit.k_pred = ff_expected_degree(fit.p_hat);
    fit.read_fraction = read_fraction(fit.p_hat, k_target);
    return fit;
}

}  // namespace citenet
