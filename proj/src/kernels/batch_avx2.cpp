#include <immintrin.h>

#include "density_terms.hpp"

namespace cyclic::kernels::detail {

void density_series_avx2(const DensityBatchParams& p, std::span<const double> u, std::span<double> out)
{
    const DensityConstants k(p);
    const std::size_t n = u.size();
    const std::size_t body = n - n % 4;

    const __m256d zero = _mm256_setzero_pd();
    const __m256d ct = _mm256_set1_pd(k.ct);
    const __m256d ct2 = _mm256_set1_pd(k.ct2);
    const __m256d a = _mm256_set1_pd(k.a);
    const __m256d tol = _mm256_set1_pd(kSeriesTol);
    const __m256d three = _mm256_set1_pd(3.0);

    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d x = _mm256_loadu_pd(u.data() + i);
        const __m256d valid = _mm256_and_pd(_mm256_cmp_pd(x, zero, _CMP_GE_OQ),
                                            _mm256_cmp_pd(x, ct, _CMP_LE_OQ));
        const __m256d y = _mm256_mul_pd(a, _mm256_mul_pd(_mm256_sub_pd(ct, x), _mm256_add_pd(ct, x)));

        __m256d t1 = _mm256_set1_pd(1.0);
        __m256d t2 = _mm256_set1_pd(0.5);
        __m256d t3 = _mm256_set1_pd(1.0 / 6.0);
        __m256d s1 = t1, s2 = t2, s3 = t3;
        __m256d done = _mm256_andnot_pd(valid, _mm256_castsi256_pd(_mm256_set1_epi64x(-1)));

        for (double m = 0.0; _mm256_movemask_pd(done) != 0xF; m += 1.0) {
            t1 = _mm256_mul_pd(t1, _mm256_div_pd(y, _mm256_set1_pd((m + 1.0) * (m + 2.0))));
            t2 = _mm256_mul_pd(t2, _mm256_div_pd(y, _mm256_set1_pd((m + 1.0) * (m + 3.0))));
            t3 = _mm256_mul_pd(t3, _mm256_div_pd(y, _mm256_set1_pd((m + 1.0) * (m + 4.0))));
            __m256d stop = _mm256_cmp_pd(t1, _mm256_mul_pd(tol, s1), _CMP_LT_OQ);
            stop = _mm256_and_pd(stop, _mm256_cmp_pd(t2, _mm256_mul_pd(tol, s2), _CMP_LT_OQ));
            stop = _mm256_and_pd(stop, _mm256_cmp_pd(t3, _mm256_mul_pd(tol, s3), _CMP_LT_OQ));
            stop = _mm256_and_pd(stop, _mm256_cmp_pd(y, _mm256_set1_pd((m + 2.0) * (m + 3.0)), _CMP_LT_OQ));
            done = _mm256_or_pd(done, stop);
            s1 = _mm256_blendv_pd(_mm256_add_pd(s1, t1), s1, done);
            s2 = _mm256_blendv_pd(_mm256_add_pd(s2, t2), s2, done);
            s3 = _mm256_blendv_pd(_mm256_add_pd(s3, t3), s3, done);
        }

        const __m256d x2 = _mm256_mul_pd(x, x);
        const __m256d odd = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(k.k_odd), _mm256_add_pd(ct2, x2)), s2);
        __m256d even;
        if (k.three_d) {
            even = _mm256_mul_pd(
                _mm256_mul_pd(_mm256_set1_pd(k.k_even3), _mm256_add_pd(ct2, _mm256_mul_pd(three, x2))), s3);
        }
        else {
            even = _mm256_mul_pd(_mm256_set1_pd(k.k_even), s1);
        }
        const __m256d value = _mm256_mul_pd(_mm256_set1_pd(k.damp), _mm256_add_pd(odd, even));
        _mm256_storeu_pd(out.data() + i, _mm256_blendv_pd(zero, value, valid));
    }

    if (body < n) {
        density_series_scalar(p, u.subspan(body), out.subspan(body));
    }
}

PowerSums power_sums_avx2(std::span<const double> x, int m)
{
    const std::size_t n = x.size();
    const std::size_t body = n - n % 4;
    __m256d acc_m = _mm256_setzero_pd();
    __m256d acc_2m = _mm256_setzero_pd();
    for (std::size_t i = 0; i < body; i += 4) {
        const __m256d v = _mm256_loadu_pd(x.data() + i);
        __m256d pm = _mm256_set1_pd(1.0);
        for (int k = 0; k < m; ++k) {
            pm = _mm256_mul_pd(pm, v);
        }
        acc_m = _mm256_add_pd(acc_m, pm);
        acc_2m = _mm256_add_pd(acc_2m, _mm256_mul_pd(pm, pm));
    }
    alignas(32) double lanes_m[4];
    alignas(32) double lanes_2m[4];
    _mm256_store_pd(lanes_m, acc_m);
    _mm256_store_pd(lanes_2m, acc_2m);

    PowerSums tail = power_sums_scalar(x.subspan(body), m);
    PowerSums s;
    s.sum_m = (lanes_m[0] + lanes_m[1]) + (lanes_m[2] + lanes_m[3]) + tail.sum_m;
    s.sum_2m = (lanes_2m[0] + lanes_2m[1]) + (lanes_2m[2] + lanes_2m[3]) + tail.sum_2m;
    return s;
}

}  // namespace cyclic::kernels::detail
