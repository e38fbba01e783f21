#include <atomic>
#include <cstdlib>
#include <string>

#include "cyclic/errors.hpp"
#include "cyclic/kernels/batch.hpp"

namespace cyclic::kernels {
namespace {

// -1: no override
std::atomic<int> g_override{-1};

Backend detect()
{
    if (const char* env = std::getenv("CYCLIC_SIMD"); env && std::string(env) == "scalar") {
        return Backend::Scalar;
    }
    return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

void check_sizes(std::span<const double> in, std::span<double> out)
{
    if (out.size() < in.size()) {
        throw DomainError("output span shorter than input");
    }
}

}  // namespace

std::string_view backend_name(Backend b)
{
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b)
{
    if (b == Backend::Scalar) {
        return true;
    }
#if defined(CYCLIC_HAVE_AVX2_TU)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active_backend()
{
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced >= 0) {
        return static_cast<Backend>(forced);
    }
    static const Backend detected = detect();
    return detected;
}

void set_backend_override(std::optional<Backend> b)
{
    if (b && !backend_available(*b)) {
        throw DomainError("requested SIMD backend is not available on this CPU");
    }
    g_override.store(b ? static_cast<int>(*b) : -1, std::memory_order_relaxed);
}

void density_series(Backend b, const DensityBatchParams& p, std::span<const double> u, std::span<double> out)
{
    check_sizes(u, out);
    if (p.dim != 2 && p.dim != 3) {
        throw DomainError("density_series: dim must be 2 or 3");
    }
    if (!(p.c > 0.0) || !(p.lambda > 0.0) || !(p.t > 0.0) || p.lambda * p.t > kBatchMaxLambdaT) {
        throw DomainError("density_series: parameters outside the batched range");
    }
#if defined(CYCLIC_HAVE_AVX2_TU)
    if (b == Backend::Avx2) {
        detail::density_series_avx2(p, u, out);
        return;
    }
#endif
    (void)b;
    detail::density_series_scalar(p, u, out);
}

void density_series(const DensityBatchParams& p, std::span<const double> u, std::span<double> out)
{
    density_series(active_backend(), p, u, out);
}

PowerSums power_sums(Backend b, std::span<const double> x, int m)
{
    if (m < 0) {
        throw DomainError("power_sums: negative exponent");
    }
#if defined(CYCLIC_HAVE_AVX2_TU)
    if (b == Backend::Avx2) {
        return detail::power_sums_avx2(x, m);
    }
#endif
    (void)b;
    return detail::power_sums_scalar(x, m);
}

PowerSums power_sums(std::span<const double> x, int m)
{
    return power_sums(active_backend(), x, m);
}

}  // namespace cyclic::kernels
