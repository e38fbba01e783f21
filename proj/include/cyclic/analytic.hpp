#pragma once

#include <span>
#include <vector>

#include "cyclic/params.hpp"
#include "cyclic/simulation.hpp"

namespace cyclic::analytic {

// Closed-form laws of the L1 radius U(t) of the cyclic motion. The dimension
// is taken from ModelParams::dim. Unconditional densities exist for d = 2, 3;
// conditional laws given N(t) = n for d = 1, 2, 3.

/// e^{-lambda t} (lambda t)^n / n!
double poisson_pmf(int n, double lambda_t);

/// Absolutely continuous mass 1 - sum_{k<d} P(N(t) = k).
double ac_mass(int dim, double lambda_t);

/// Weights of d^i/dt^i g, i = 0..d, in the density; multiplied by e^{-lambda t}/c.
struct DensityCoefficients {
    int dim = 2;
    std::vector<double> coeffs;
};

DensityCoefficients density_coefficients(const ModelParams& params);

/// Absolutely continuous density p(u, t) of U(t), from the non-negative
/// series form. Zero outside [0, ct]. Throws DomainError for t <= 0 or
/// dim not in {2, 3}.
double density_u(const ModelParams& params, double t, double u);

/// density_u at many points; uses the batched SIMD kernel when lambda t
/// allows it.
void density_u_batch(const ModelParams& params, double t, std::span<const double> u, std::span<double> out);

/// The I_0 / I_1 representation (d = 2). Requires 0 <= u < ct.
double density_u_closed_form(const ModelParams& params, double t, double u);

/// Coefficient form: (e^{-lambda t}/c) sum_i coeff_i d^i/dt^i g(u, t).
double density_u_coefficients(const ModelParams& params, double t, double u);

/// Density of U(t) given N(t) = n, on [0, ct]. Requires n >= dim, otherwise
/// the particle is on a boundary stratum and SingularStratumError is thrown.
double conditional_density_u(const ModelParams& params, int n, double t, double u);

struct StratumMass {
    sim::Stratum stratum;
    int vertex = 0;  ///< direction index of the vertex, 0 for faces
    double mass = 0.0;
};

/// Probability carried by each boundary stratum: the 2d vertices (one entry
/// each) and the faces of order 1..d-1 (one entry per order).
std::vector<StratumMass> singular_masses(const ModelParams& params, double t);

/// int_0^u density_u: the a.c. part only, so cdf_u(ct) = ac_mass.
double cdf_u(const ModelParams& params, double t, double u);

/// int_0^u conditional_density_u; reaches 1 at u = ct.
double conditional_cdf_u(const ModelParams& params, int n, double t, double u);

/// E U(t) for d = 2, singular part included.
double mean_u(const ModelParams& params, double t);

/// E U(t)^m for d = 2, singular part included.
double moment_u(const ModelParams& params, int m, double t);

/// E[U(t) | N(t) = n] / (ct) for d = 3, n >= 3.
double conditional_mean_u(int n);

/// Same mean through Catalan numbers C_{k+1}.
double conditional_mean_catalan(int n);

/// E[U | N = 2k+1] / E[U | N = 2k+2] for d = 3, k >= 1.
double conditional_mean_ratio(int k);

/// Catalan number C_k = binom(2k, k) / (k + 1).
double catalan(int k);

}  // namespace cyclic::analytic
