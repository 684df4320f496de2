#include "relheat/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relheat::core {

namespace {

void require_finite(bool ok) {
  if (!ok) throw std::invalid_argument("invalid state: non-finite input");
}

}  // namespace

Vec flux(double u, const Vec& grad, const ModelParams& params) {
  require_finite(std::isfinite(u) && grad.finite());
  if (u < 0.0) throw std::invalid_argument("invalid state: u must be >= 0");

  const double inv_c2 = params.inv_c2();
  double denom = std::sqrt(u * u + inv_c2 * grad.norm2());
  denom = std::max(denom, params.eps_guard);  // only bites at u = 0, grad = 0

  Vec out = grad;
  if (denom == 0.0) {  // eps_guard = 0 and u = 0, grad = 0
    out[0] = 0.0;
    out[1] = 0.0;
    return out;
  }
  const double scale = u / denom;
  out[0] *= scale;
  out[1] *= scale;
  return out;
}

double flux_divergence(double u, const Vec& grad_u, const SymMat& hess_u,
                       const ModelParams& params) {
  require_finite(std::isfinite(u) && grad_u.finite() && hess_u.finite());
  if (!(u > 0.0))
    throw std::invalid_argument("invalid state: flux divergence requires u > 0");

  const double inv_c2 = params.inv_c2();
  const double g2 = grad_u.norm2();
  const double d2 = u * u + inv_c2 * g2;
  const double d = std::sqrt(d2);
  return (g2 + u * hess_u.trace()) / d -
         u * (u * g2 + inv_c2 * hess_u.quad(grad_u)) / (d2 * d);
}

double q_operator(double w, const Vec& grad_w, const SymMat& hess_w,
                  const ModelParams& params) {
  require_finite(std::isfinite(w) && grad_w.finite() && hess_w.finite());
  const double inv_c2 = params.inv_c2();
  const double p2 = grad_w.norm2();
  return hess_w.trace() + p2 - inv_c2 * hess_w.quad(grad_w) / (1.0 + inv_c2 * p2);
}

double qtilde_operator(const Vec& grad_w, const SymMat& hess_w,
                       const ModelParams& params) {
  const double q = q_operator(0.0, grad_w, hess_w, params);
  return q / std::sqrt(1.0 + params.inv_c2() * grad_w.norm2());
}

SymMat principal_part_matrix(const Vec& p, const ModelParams& params) {
  require_finite(p.finite());
  const double inv_c2 = params.inv_c2();
  const double s = inv_c2 / (1.0 + inv_c2 * p.norm2());
  if (p.dim == 1) return SymMat(1.0 - s * p[0] * p[0]);
  return SymMat(1.0 - s * p[0] * p[0], -s * p[0] * p[1], 1.0 - s * p[1] * p[1]);
}

std::pair<double, double> ellipticity_eigenvalues(const Vec& p,
                                                  const ModelParams& params) {
  require_finite(p.finite());
  const double inv_c2 = params.inv_c2();
  const double lambda1 = 1.0 / (1.0 + inv_c2 * p.norm2());
  if (p.dim == 1) return {lambda1, lambda1};
  return {lambda1, 1.0};
}

double u_to_w(double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("invalid state: non-finite input");
  if (!(u > 0.0)) throw std::domain_error("transform requires positive u");
  return std::log(u);
}

double w_to_u(double w) {
  if (!std::isfinite(w)) throw std::invalid_argument("invalid state: non-finite input");
  return std::exp(w);
}

Classification classify_residual(double residual, double tol) {
  if (tol < 0.0) throw std::invalid_argument("classify_residual: tol must be >= 0");
  if (!std::isfinite(residual)) return Classification::Indeterminate;
  if (residual > tol) return Classification::Subharmonic;
  if (residual < -tol) return Classification::Superharmonic;
  return Classification::Harmonic;
}

}  // namespace relheat::core
