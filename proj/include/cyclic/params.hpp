#pragma once

#include <string>

#include "cyclic/errors.hpp"

namespace cyclic {

inline constexpr int kMaxDim = 8;

/// Speed c, switching rate lambda and space dimension d of a cyclic motion.
struct ModelParams {
    double c = 1.0;
    double lambda = 1.0;
    int dim = 2;

    /// Throws DomainError unless c > 0, lambda > 0 and 1 <= dim <= kMaxDim.
    void validate() const
    {
        if (!(c > 0.0) || !(lambda > 0.0)) {
            throw DomainError("speed and rate must be positive");
        }
        if (dim < 1 || dim > kMaxDim) {
            throw DomainError("dimension must be in [1, " + std::to_string(kMaxDim) + "]");
        }
    }

    ModelParams with_dim(int d) const
    {
        ModelParams p = *this;
        p.dim = d;
        return p;
    }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

}  // namespace cyclic
