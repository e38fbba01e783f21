#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace cyclic::quad {

/// Adaptive Gauss-Kronrod (G15/K31) integration of f over [a, b].
/// Refinement stops when the error estimate falls below rel_tol times the
/// L1 norm of the integrand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, double* error_estimate = nullptr);

/// Same, with the interval first split at the given interior breakpoints.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::initializer_list<double> breakpoints, double rel_tol = 1e-13);

/// Running integral of a density on [a, b], tabulated on a uniform grid and
/// read back by cubic Hermite interpolation (the density supplies the slopes).
class CumulativeTable {
public:
    CumulativeTable(std::function<double(double)> density, double a, double b, int intervals = 2048);

    /// int_a^x density; 0 below a, total() above b.
    double operator()(double x) const;
    double total() const { return cum_.back(); }

private:
    std::function<double(double)> density_;
    double a_;
    double b_;
    double h_;
    std::vector<double> cum_;
    std::vector<double> dens_;
};

}  // namespace cyclic::quad
