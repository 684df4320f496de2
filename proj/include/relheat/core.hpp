#pragma once

#include <utility>

#include "relheat/types.hpp"

// Pointwise continuum operators evaluated on supplied values/derivatives,
// independent of any mesh. All functions are pure and thread-safe.
namespace relheat::core {

// Flux F = u * grad / sqrt(u^2 + c^-2 |grad|^2). Continuously extended by
// F = 0 at u = 0; obeys |F| <= c*u for all inputs.
Vec flux(double u, const Vec& grad, const ModelParams& params);

// Divergence of the flux from pointwise derivatives:
//   div F = (|Du|^2 + u*lap(u))/D - u*(u|Du|^2 + c^-2 D2u(Du,Du))/D^3,
// with D = sqrt(u^2 + c^-2|Du|^2). Requires u > 0.
double flux_divergence(double u, const Vec& grad_u, const SymMat& hess_u,
                       const ModelParams& params);

// Quasilinear operator on w = log u:
//   Q_c w = lap(w) + |Dw|^2 - c^-2 D2w(Dw,Dw) / (1 + c^-2|Dw|^2).
// The value of w itself never enters; it is accepted for signature symmetry
// and validated for finiteness only.
double q_operator(double w, const Vec& grad_w, const SymMat& hess_w,
                  const ModelParams& params);

// Parabolic form: Qtilde = Q / sqrt(1 + c^-2 |Dw|^2).
double qtilde_operator(const Vec& grad_w, const SymMat& hess_w,
                       const ModelParams& params);

// Eigenvalues of the principal-part matrix a^{ij}(p) = delta^{ij}
// - c^-2 p_i p_j / (1 + c^-2|p|^2). Returns (lambda_min, lambda_max);
// in 1D the matrix is the single entry lambda_1 and both slots carry it.
std::pair<double, double> ellipticity_eigenvalues(const Vec& p,
                                                  const ModelParams& params);

// The principal-part matrix itself (for independent eigendecomposition).
SymMat principal_part_matrix(const Vec& p, const ModelParams& params);

double u_to_w(double u);  // log u; requires u > 0
double w_to_u(double w);  // exp w

Classification classify_residual(double residual, double tol);

}  // namespace relheat::core
