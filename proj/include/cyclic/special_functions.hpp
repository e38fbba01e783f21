#pragma once

#include "cyclic/params.hpp"

namespace cyclic::special {

/// Order nu of a modified Bessel function, stored as 2*nu so that integer and
/// half-integer orders are both exact. Orders down to -1/2 are supported.
class BesselOrder {
public:
    static constexpr BesselOrder integer(int n) { return BesselOrder(2 * n); }
    static constexpr BesselOrder from_twice(int twice_order) { return BesselOrder(twice_order); }

    constexpr int twice_order() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr bool operator==(BesselOrder, BesselOrder) = default;

private:
    constexpr explicit BesselOrder(int twice) : twice_(twice) {}
    int twice_;
};

/// I_nu(x). Throws DomainError for x < 0, nu < -1/2, or I_{-1/2}(0).
double bessel_i(BesselOrder order, double x);

/// e^{-x} I_nu(x); finite for arguments where bessel_i overflows.
double bessel_i_scaled(BesselOrder order, double x);

/// S_j(y) = sum_m y^m / (m! (m+j)!) = I_j(2 sqrt y) / y^{j/2}.
///
/// This is the entire function left after differentiating the kernel
/// I_0((lambda/c) sqrt(c^2 t^2 - u^2)) term by term and shifting the index,
/// so it carries no negative powers of (c^2 t^2 - u^2) and is finite at y = 0.
double bessel_s(int j, double y);

/// e^{-2 sqrt y} S_j(y).
double bessel_s_scaled(int j, double y);

/// A point (t, u) of the kernel g(u, t) = I_0((lambda/c) sqrt(c^2 t^2 - u^2)).
struct KernelPoint {
    double t = 1.0;
    double u = 0.0;
    ModelParams params;

    /// c^2 t^2 - u^2, clamped at zero on the edge u = ct.
    double gap() const;
    /// Bessel argument (lambda/c) sqrt(c^2 t^2 - u^2).
    double xi() const;
};

/// d^{t_order}/dt^{t_order} d^{u_order}/du^{u_order} g(u, t).
///
/// Supported orders: pure t up to 3, pure u up to 2, and the mixed (1, 2).
/// |u| may not exceed ct; at |u| = ct the removable limit is returned.
double kernel_derivative(const KernelPoint& p, int t_order, int u_order);

/// e^{-lambda t} times kernel_derivative, evaluated as e^{xi - lambda t} times
/// scaled series so it stays finite for large lambda t.
double kernel_derivative_damped(const KernelPoint& p, int t_order, int u_order);

/// Closed form of int_0^{ct} u^m d^{t_order}_t g(u, t) du.
///
/// Supported: m = 0 with t_order in 0..3, m >= 1 with t_order in 0..2.
double kernel_integral(const ModelParams& params, double t, int m, int t_order);

}  // namespace cyclic::special
