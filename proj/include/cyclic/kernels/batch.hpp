#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace cyclic::kernels {

// Batched inner loops of the analytic layer. Each kernel has a scalar
// reference implementation and, where the CPU allows, an AVX2 variant that
// is picked at runtime. The two produce identical density values (same
// operation order, no FMA contraction); power sums differ only by summation
// order.

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);

bool backend_available(Backend b);

/// Backend used by the dispatching entry points. Resolved once: AVX2 when
/// compiled in and supported by the CPU, unless CYCLIC_SIMD=scalar is set.
Backend active_backend();

/// Overrides the dispatch choice (tests, benchmarking); nullopt restores it.
void set_backend_override(std::optional<Backend> b);

struct DensityBatchParams {
    int dim = 2;  ///< 2 or 3
    double c = 1.0;
    double lambda = 1.0;
    double t = 1.0;
};

/// Largest lambda*t the batched series path accepts; beyond it e^{-lambda t}
/// underflows before the series is damped and callers must use the scaled
/// scalar route.
inline constexpr double kBatchMaxLambdaT = 600.0;

/// Unconditional L1-radius density (non-negative series form) at each u.
/// u outside [0, ct] (or NaN) gives 0.
void density_series(const DensityBatchParams& p, std::span<const double> u, std::span<double> out);
void density_series(Backend b, const DensityBatchParams& p, std::span<const double> u,
                    std::span<double> out);

struct PowerSums {
    double sum_m = 0.0;
    double sum_2m = 0.0;
};

/// sum x_i^m and sum x_i^{2m}.
PowerSums power_sums(std::span<const double> x, int m);
PowerSums power_sums(Backend b, std::span<const double> x, int m);

namespace detail {
void density_series_scalar(const DensityBatchParams& p, std::span<const double> u, std::span<double> out);
PowerSums power_sums_scalar(std::span<const double> x, int m);
#if defined(CYCLIC_HAVE_AVX2_TU)
void density_series_avx2(const DensityBatchParams& p, std::span<const double> u, std::span<double> out);
PowerSums power_sums_avx2(std::span<const double> x, int m);
#endif
}  // namespace detail

}  // namespace cyclic::kernels
