#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "membias/errors.hpp"
#include "membias/matrix.hpp"

namespace membias {

enum class WeightFamily { polynomial, last_term_only };

// bias_integral: scale so the induced memory bias integrates to 1 over [0,T]
//   (the convention used when comparing bias curves across powers).
// weight_sum: scale so the weights sum to 1 (the convention used for the
//   weighted cross-entropy comparisons).
enum class WeightNormalization { bias_integral, weight_sum };

// Temporal weight w(t) over L output positions, materialized and normalized.
// Polynomial weights sample w(t) = t^p at t = (k+1)*dt, which keeps every
// weight finite and positive for all real p including p < 0; each weight is
// treated as a constant density on its grid cell [k*dt, (k+1)*dt).
// last_term_only is the p -> infinity limit: all weight on position L-1.
struct WeightScheme {
    WeightFamily family = WeightFamily::polynomial;
    double power = 0.0;
    std::size_t length = 0;
    double dt = 0.1;
    WeightNormalization normalization = WeightNormalization::bias_integral;
    std::vector<double> weights;
};

// Memory bias b(s) sampled at s = k*dt, k = 0..L-1.
struct BiasCurve {
    std::vector<double> values;
    double dt = 0.1;
};

inline WeightScheme make_weights(WeightFamily family, double power, std::size_t length,
                                 double dt,
                                 WeightNormalization normalization =
                                     WeightNormalization::bias_integral) {
    if (length < 1) throw DomainError("make_weights: length must be >= 1");
    if (!(dt > 0.0)) throw DomainError("make_weights: dt must be positive");

    WeightScheme scheme;
    scheme.family = family;
    scheme.power = (family == WeightFamily::last_term_only)
                       ? std::numeric_limits<double>::infinity()
                       : power;
    scheme.length = length;
    scheme.dt = dt;
    scheme.normalization = normalization;
    scheme.weights.assign(length, 0.0);

    if (family == WeightFamily::polynomial) {
        for (std::size_t k = 0; k < length; ++k) {
            const double t = static_cast<double>(k + 1) * dt;
            const double w = std::pow(t, power);
            if (!std::isfinite(w))
                throw NumericalError("make_weights: non-finite weight at position " +
                                     std::to_string(k));
            scheme.weights[k] = w;
        }
    } else {
        scheme.weights[length - 1] = 1.0;
    }

    double scale = 0.0;
    if (normalization == WeightNormalization::bias_integral) {
        // exact integral of the induced bias: int_0^T b(s) ds = sum_k w_k (k+1/2) dt^2
        // (Fubini over the cell-density weights). With this scale the uniform
        // scheme reproduces the normalized bias 2(T-s)/T^2 exactly at every
        // grid point.
        for (std::size_t k = 0; k < length; ++k)
            scale += scheme.weights[k] * (static_cast<double>(k) + 0.5) * dt * dt;
    } else {
        for (double w : scheme.weights) scale += w;
    }
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw NumericalError("make_weights: degenerate normalization constant");
    for (double& w : scheme.weights) w /= scale;
    return scheme;
}

// Tail sums b(s_k) = sum_{j >= k} w_j * dt, accumulated backward so that
// b(s_k) - b(s_{k+1}) = w_k * dt holds to the last bit.
inline BiasCurve analytic_bias(const WeightScheme& scheme) {
    BiasCurve curve;
    curve.dt = scheme.dt;
    curve.values.assign(scheme.length, 0.0);
    double tail = 0.0;
    for (std::size_t k = scheme.length; k-- > 0;) {
        tail += scheme.weights[k] * scheme.dt;
        curve.values[k] = tail;
    }
    return curve;
}

enum class ErrorKind { absolute, squared };

struct WeightedErrorResult {
    double value = 0.0;
    std::vector<double> grad;  // d value / d pred
};

// Temporally weighted error sum_k w_k * loss(pred_k, target_k) * dt with its
// exact (sub)gradient with respect to the predictions. The absolute-loss
// subgradient at zero residual is 0, so a perfect fit is a stationary point.
inline WeightedErrorResult weighted_error(std::span<const double> pred,
                                          std::span<const double> target,
                                          const WeightScheme& scheme, ErrorKind kind) {
    if (pred.size() != target.size() || pred.size() != scheme.length)
        throw ShapeError("weighted_error: pred/target/scheme lengths differ");
    WeightedErrorResult res;
    res.grad.assign(pred.size(), 0.0);
    double acc = 0.0;
    for (std::size_t k = 0; k < pred.size(); ++k) {
        const double r = pred[k] - target[k];
        const double wdt = scheme.weights[k] * scheme.dt;
        if (kind == ErrorKind::absolute) {
            acc += wdt * std::abs(r);
            res.grad[k] = r > 0.0 ? wdt : (r < 0.0 ? -wdt : 0.0);
        } else {
            acc += wdt * r * r;
            res.grad[k] = 2.0 * wdt * r;
        }
    }
    res.value = acc;
    return res;
}

struct WeightedCrossEntropyResult {
    double value = 0.0;
    Matrix grad;  // L x K, d value / d logits
};

// Per-position cross entropy combined with the temporal weights:
// value = sum_k w_k * CE(logits_k, label_k). Callers follow the convention
// that the weights sum to 1 (weight_sum normalization), which makes values
// comparable across powers. Gradient is w_k * (softmax(logits_k) - onehot).
inline WeightedCrossEntropyResult weighted_cross_entropy(const Matrix& logits,
                                                         std::span<const int> labels,
                                                         const WeightScheme& scheme) {
    const std::size_t L = logits.rows();
    const std::size_t K = logits.cols();
    if (K < 2) throw DomainError("weighted_cross_entropy: need at least 2 classes");
    if (labels.size() != L || scheme.length != L)
        throw ShapeError("weighted_cross_entropy: logits/labels/scheme lengths differ");

    WeightedCrossEntropyResult res;
    res.grad = Matrix(L, K);
    double acc = 0.0;
    for (std::size_t k = 0; k < L; ++k) {
        const int label = labels[k];
        if (label < 0 || static_cast<std::size_t>(label) >= K)
            throw DomainError("weighted_cross_entropy: label out of range at position " +
                              std::to_string(k));
        const double* z = logits.row(k);
        double zmax = z[0];
        for (std::size_t c = 1; c < K; ++c) zmax = std::max(zmax, z[c]);
        double denom = 0.0;
        for (std::size_t c = 0; c < K; ++c) denom += std::exp(z[c] - zmax);
        const double log_denom = std::log(denom);
        const double w = scheme.weights[k];
        acc += w * (log_denom - (z[label] - zmax));
        for (std::size_t c = 0; c < K; ++c) {
            const double p = std::exp(z[c] - zmax) / denom;
            res.grad(k, c) = w * (p - (static_cast<std::size_t>(label) == c ? 1.0 : 0.0));
        }
    }
    res.value = acc;
    return res;
}

}  // namespace membias
