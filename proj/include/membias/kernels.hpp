#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "membias/errors.hpp"

namespace membias {

enum class KernelKind { exponential, polynomial_decay, tabulated };

// Decaying memory function rho(t) on [0, T]. Exponential is the EMA kernel
// alpha^t; polynomial decay is 1/(t + offset)^power, with the offset keeping
// the value finite at t = 0 while preserving the polynomial tail; tabulated
// kernels hold samples at multiples of dt and use nearest-grid lookup so that
// extraction round trips are bit-exact.
struct MemoryKernel {
    KernelKind kind = KernelKind::exponential;
    double alpha = 0.5;    // exponential: decay base per unit time, 0 < alpha < 1
    double power = 2.0;    // polynomial: positive exponent
    double offset = 0.1;   // polynomial: positive time shift
    std::vector<double> values;  // tabulated: samples at k*dt, k = 0..ceil(T/dt)
    double horizon = 1.0;  // T
    double dt = 0.1;

    static MemoryKernel exponential(double alpha, double horizon, double dt) {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw DomainError("MemoryKernel: alpha must be in (0,1)");
        check_grid(horizon, dt);
        MemoryKernel k;
        k.kind = KernelKind::exponential;
        k.alpha = alpha;
        k.horizon = horizon;
        k.dt = dt;
        return k;
    }

    static MemoryKernel polynomial(double power, double offset, double horizon, double dt) {
        if (!(power > 0.0)) throw DomainError("MemoryKernel: power must be positive");
        if (!(offset > 0.0)) throw DomainError("MemoryKernel: offset must be positive");
        check_grid(horizon, dt);
        MemoryKernel k;
        k.kind = KernelKind::polynomial_decay;
        k.power = power;
        k.offset = offset;
        k.horizon = horizon;
        k.dt = dt;
        return k;
    }

    static MemoryKernel tabulated(std::vector<double> samples, double dt) {
        if (samples.empty()) throw ShapeError("MemoryKernel: tabulated samples empty");
        if (!(dt > 0.0)) throw DomainError("MemoryKernel: dt must be positive");
        MemoryKernel k;
        k.kind = KernelKind::tabulated;
        k.values = std::move(samples);
        k.dt = dt;
        k.horizon = static_cast<double>(k.values.size() - 1) * dt;
        return k;
    }

    // rho at grid index i (lag i*dt); bypasses the time->index round trip so
    // tabulated kernels are read back exactly.
    double sample(std::size_t i) const {
        switch (kind) {
            case KernelKind::exponential:
                return std::pow(alpha, static_cast<double>(i) * dt);
            case KernelKind::polynomial_decay:
                return std::pow(static_cast<double>(i) * dt + offset, -power);
            case KernelKind::tabulated:
                if (i >= values.size())
                    throw DomainError("MemoryKernel: tabulated index past horizon");
                return values[i];
        }
        return 0.0;
    }

  private:
    static void check_grid(double horizon, double dt) {
        if (!(dt > 0.0)) throw DomainError("MemoryKernel: dt must be positive");
        if (!(horizon > 0.0)) throw DomainError("MemoryKernel: horizon must be positive");
    }
};

// One (input, target) sequence pair on a shared grid.
struct SeqSample {
    std::vector<double> inputs;
    std::vector<double> targets;
    double dt = 0.1;
};

// rho(t) for t in [0, T]. Tabulated kernels use nearest-grid lookup.
inline double eval_kernel(const MemoryKernel& kernel, double t) {
    if (!(t >= 0.0) || t > kernel.horizon * (1.0 + 1e-12) + 1e-15)
        throw DomainError("eval_kernel: t outside [0, T]");
    double value = 0.0;
    switch (kernel.kind) {
        case KernelKind::exponential:
            value = std::pow(kernel.alpha, t);
            break;
        case KernelKind::polynomial_decay:
            value = std::pow(t + kernel.offset, -kernel.power);
            break;
        case KernelKind::tabulated: {
            const auto idx = static_cast<std::size_t>(std::llround(t / kernel.dt));
            value = kernel.sample(std::min(idx, kernel.values.size() - 1));
            break;
        }
    }
    if (!std::isfinite(value)) throw NumericalError("eval_kernel: non-finite kernel value");
    return value;
}

// First n kernel samples rho(k*dt), k = 0..n-1.
inline std::vector<double> sample_kernel(const MemoryKernel& kernel, std::size_t n) {
    if (n > 0 && static_cast<double>(n - 1) * kernel.dt > kernel.horizon * (1.0 + 1e-12))
        throw DomainError("sample_kernel: grid extends past kernel horizon");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = kernel.sample(i);
    return out;
}

// Discretized linear functional y_k = sum_{j<=k} rho((k-j)*dt) * x_j * dt.
// Left-endpoint Riemann rule; inner sums run left to right so results are
// reproducible regardless of how samples are scheduled across threads.
inline std::vector<double> apply_linear_functional(const MemoryKernel& kernel,
                                                   std::span<const double> inputs,
                                                   double dt) {
    if (inputs.empty()) return {};
    if (!(dt > 0.0)) throw DomainError("apply_linear_functional: dt must be positive");
    if (static_cast<double>(inputs.size()) * dt > kernel.horizon * (1.0 + 1e-12) + 1e-15)
        throw DomainError("apply_linear_functional: L*dt exceeds kernel horizon");
    const std::size_t L = inputs.size();
    std::vector<double> rho(L);
    for (std::size_t i = 0; i < L; ++i) rho[i] = kernel.sample(i);

    std::vector<double> out(L);
    for (std::size_t k = 0; k < L; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= k; ++j) acc += rho[k - j] * inputs[j];
        const double y = acc * dt;
        if (!std::isfinite(y))
            throw NumericalError("apply_linear_functional: non-finite output at position " +
                                 std::to_string(k));
        out[k] = y;
    }
    return out;
}

inline std::vector<double> apply_linear_functional(const MemoryKernel& kernel,
                                                   std::span<const double> inputs) {
    return apply_linear_functional(kernel, inputs, kernel.dt);
}

// L1 distance between two sampled kernels: sum_k |a_k - b_k| * dt.
inline double kernel_l1_distance(std::span<const double> a, std::span<const double> b,
                                 double dt) {
    if (a.size() != b.size())
        throw ShapeError("kernel_l1_distance: sample lengths differ");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
    return acc * dt;
}

}  // namespace membias
