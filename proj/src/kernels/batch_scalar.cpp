#include <cmath>

#include "density_terms.hpp"

namespace cyclic::kernels::detail {

void density_series_scalar(const DensityBatchParams& p, std::span<const double> u, std::span<double> out)
{
    const DensityConstants k(p);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double x = u[i];
        if (!(x >= 0.0) || x > k.ct) {
            out[i] = 0.0;
            continue;
        }
        const double y = k.a * ((k.ct - x) * (k.ct + x));

        double t1 = 1.0, t2 = 0.5, t3 = 1.0 / 6.0;
        double s1 = t1, s2 = t2, s3 = t3;
        for (double m = 0.0;; m += 1.0) {
            t1 *= y / ((m + 1.0) * (m + 2.0));
            t2 *= y / ((m + 1.0) * (m + 3.0));
            t3 *= y / ((m + 1.0) * (m + 4.0));
            if (t1 < kSeriesTol * s1 && t2 < kSeriesTol * s2 && t3 < kSeriesTol * s3
                && y < (m + 2.0) * (m + 3.0)) {
                break;
            }
            s1 += t1;
            s2 += t2;
            s3 += t3;
        }

        const double x2 = x * x;
        const double odd = k.k_odd * (k.ct2 + x2) * s2;
        const double even = k.three_d ? k.k_even3 * (k.ct2 + 3.0 * x2) * s3 : k.k_even * s1;
        out[i] = k.damp * (odd + even);
    }
}

PowerSums power_sums_scalar(std::span<const double> x, int m)
{
    PowerSums s;
    for (double v : x) {
        double pm = 1.0;
        for (int k = 0; k < m; ++k) {
            pm *= v;
        }
        s.sum_m += pm;
        s.sum_2m += pm * pm;
    }
    return s;
}

}  // namespace cyclic::kernels::detail
