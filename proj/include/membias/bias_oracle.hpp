#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "membias/errors.hpp"
#include "membias/kernels.hpp"
#include "membias/losses.hpp"
#include "membias/parallel.hpp"
#include "membias/rng.hpp"

namespace membias {

// Single-lag kernel perturbation: rho_hat equals rho except at lag_index,
// where it is shifted by +magnitude. Isolating one lag makes the expected
// weighted error exactly proportional to the bias value at that lag, so
// ratios across lags cancel the input-dependent constant.
struct DeltaPerturbation {
    std::size_t lag_index = 0;
    double magnitude = 1.0;
};

// Mean weighted absolute error between the target functional and its
// perturbed copy over n_samples iid Uniform[-1,1] input sequences.
// Deterministic given the seed: inputs are drawn per fixed-size chunk from
// splitmix-derived substreams and partial sums combine in chunk order, so the
// result is bitwise identical for any thread count.
inline double empirical_expected_error(const MemoryKernel& kernel,
                                       const DeltaPerturbation& perturbation,
                                       const WeightScheme& scheme, std::size_t n_samples,
                                       std::uint64_t seed) {
    if (n_samples < 1) throw DomainError("empirical_expected_error: n_samples must be >= 1");
    const std::size_t L = scheme.length;
    if (perturbation.lag_index >= L)
        throw DomainError("empirical_expected_error: lag_index past sequence length");

    MemoryKernel perturbed = MemoryKernel::tabulated(sample_kernel(kernel, L), scheme.dt);
    perturbed.values[perturbation.lag_index] += perturbation.magnitude;

    std::vector<double> partial(chunk_count(n_samples), 0.0);
    for_each_chunk(n_samples, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Rng rng(mix_seed(seed, c));
        std::vector<double> x(L);
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t k = 0; k < L; ++k) x[k] = rng.uniform(-1.0, 1.0);
            const auto y = apply_linear_functional(kernel, x, scheme.dt);
            const auto y_hat = apply_linear_functional(perturbed, x, scheme.dt);
            acc += weighted_error(y_hat, y, scheme, ErrorKind::absolute).value;
        }
        partial[c] = acc;
    });

    double total = 0.0;
    for (double p : partial) total += p;
    return total / static_cast<double>(n_samples);
}

struct BiasRatioEntry {
    std::size_t lag_a = 0;
    std::size_t lag_b = 0;
    double empirical_ratio = 0.0;
    double analytic_ratio = 0.0;
    double ratio_error = 0.0;  // |empirical/analytic - 1|
    bool pass = false;
};

struct BiasRatioReport {
    std::vector<BiasRatioEntry> entries;
    bool all_pass = true;
};

// Checks that empirical expected-error ratios across lag pairs match the
// analytic bias ratios b(s_a)/b(s_b) within the given tolerance.
inline BiasRatioReport bias_ratio_test(const MemoryKernel& kernel, const WeightScheme& scheme,
                                       std::span<const std::pair<std::size_t, std::size_t>> lag_pairs,
                                       std::size_t n_samples, std::uint64_t seed,
                                       double tolerance, double magnitude = 0.5) {
    const BiasCurve bias = analytic_bias(scheme);
    BiasRatioReport report;
    for (const auto& [lag_a, lag_b] : lag_pairs) {
        if (lag_a == lag_b) throw DomainError("bias_ratio_test: lags must be distinct");
        const double b_a = bias.values.at(lag_a);
        const double b_b = bias.values.at(lag_b);
        if (b_b == 0.0)
            throw ConfigError("bias_ratio_test: analytic bias is zero at lag " +
                              std::to_string(lag_b));
        // same seed for both lags: common random numbers tighten the ratio
        const double e_a = empirical_expected_error(kernel, {lag_a, magnitude}, scheme,
                                                    n_samples, seed);
        const double e_b = empirical_expected_error(kernel, {lag_b, magnitude}, scheme,
                                                    n_samples, seed);
        BiasRatioEntry entry;
        entry.lag_a = lag_a;
        entry.lag_b = lag_b;
        entry.empirical_ratio = e_a / e_b;
        entry.analytic_ratio = b_a / b_b;
        entry.ratio_error = std::abs(entry.empirical_ratio / entry.analytic_ratio - 1.0);
        entry.pass = entry.ratio_error <= tolerance;
        report.all_pass = report.all_pass && entry.pass;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace membias
