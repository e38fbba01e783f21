#pragma once

#include <cmath>

#include "cyclic/kernels/batch.hpp"

namespace cyclic::kernels::detail {

inline constexpr double kSeriesTol = 1e-16;

// Constants of the series form
//   p_2 = e^{-lt} [ (l/c) a (c^2t^2 + u^2) S_2(a z) + (l^2 t / 2c) S_1(a z) ]
//   p_3 = e^{-lt} [ (l/c) a (c^2t^2 + u^2) S_2(a z) + (l^2 t / 2c) a (c^2t^2 + 3u^2) S_3(a z) ]
// with a = (l / 2c)^2, z = c^2t^2 - u^2 and S_j(y) = sum y^m / (m! (m+j)!).
struct DensityConstants {
    explicit DensityConstants(const DensityBatchParams& p)
        : ct(p.c * p.t),
          ct2(ct * ct),
          a((p.lambda / (2.0 * p.c)) * (p.lambda / (2.0 * p.c))),
          damp(std::exp(-p.lambda * p.t)),
          k_odd(p.lambda / p.c * a),
          k_even(p.lambda * p.lambda * p.t / (2.0 * p.c)),
          k_even3(k_even * a),
          three_d(p.dim == 3)
    {
    }

    double ct;
    double ct2;
    double a;
    double damp;
    double k_odd;
    double k_even;
    double k_even3;
    bool three_d;
};

}  // namespace cyclic::kernels::detail
