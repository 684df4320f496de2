#include "relheat/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relheat/core.hpp"
#include "relheat/kernels.hpp"

namespace relheat::grid {

namespace {

// Single-face flux with the exact evaluation order of the kernel path, so
// sphere balances agree with the face_flux pipeline to rounding.
double face_flux_single(double ul, double ur, double gt, double inv_h,
                        double inv_c2, double eps) {
  const double uf = 0.5 * (ul + ur);
  const double gn = (ur - ul) * inv_h;
  const double den = std::max(std::sqrt(uf * uf + inv_c2 * (gn * gn + gt * gt)), eps);
  return uf * gn / den;
}

}  // namespace

Grid Grid::make_1d(int n, double lo, double hi) {
  Grid g;
  g.dim = 1;
  g.n = {n, 1};
  g.lo = {lo, 0.0};
  g.hi = {hi, 1.0};
  g.h = {(hi - lo) / n, 0.0};
  g.validate();
  return g;
}

Grid Grid::make_2d(int nx, int ny, double lox, double hix, double loy,
                   double hiy) {
  Grid g;
  g.dim = 2;
  g.n = {nx, ny};
  g.lo = {lox, loy};
  g.hi = {hix, hiy};
  g.h = {(hix - lox) / nx, (hiy - loy) / ny};
  g.validate();
  return g;
}

bool same_layout(const Grid& a, const Grid& b, double rel_tol) {
  if (a.dim != b.dim || a.n != b.n) return false;
  for (int ax = 0; ax < a.dim; ++ax) {
    const double tol = std::max(rel_tol, 1e-9) * std::max(a.h[ax], b.h[ax]);
    if (std::abs(a.lo[ax] - b.lo[ax]) > tol) return false;
    if (std::abs(a.hi[ax] - b.hi[ax]) > tol) return false;
  }
  return true;
}

void Grid::validate() const {
  if (dim != 1 && dim != 2) throw ConfigError("Grid: dim must be 1 or 2");
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 4) throw ConfigError("Grid: need at least 4 cells per axis");
    if (!(hi[a] > lo[a]) || !std::isfinite(h[a]) || !(h[a] > 0.0))
      throw ConfigError("Grid: extent must satisfy upper > lower");
  }
}

ScalarField ScalarField::zeros(const Grid& g) {
  return ScalarField{g, std::vector<double>(g.cell_count(), 0.0)};
}

ScalarField ScalarField::constant(const Grid& g, double v) {
  return ScalarField{g, std::vector<double>(g.cell_count(), v)};
}

ScalarField ScalarField::from_function(const Grid& g,
                                       const std::function<double(double)>& f) {
  if (g.dim != 1) throw ConfigError("1-argument initializer requires a 1D grid");
  ScalarField out = zeros(g);
  for (int i = 0; i < g.n[0]; ++i) out.values[i] = f(g.center(0, i));
  return out;
}

ScalarField ScalarField::from_function(
    const Grid& g, const std::function<double(double, double)>& f) {
  if (g.dim != 2) throw ConfigError("2-argument initializer requires a 2D grid");
  ScalarField out = zeros(g);
  for (int iy = 0; iy < g.n[1]; ++iy)
    for (int ix = 0; ix < g.n[0]; ++ix)
      out.values[g.index(ix, iy)] = f(g.center(0, ix), g.center(1, iy));
  return out;
}

void ScalarField::validate() const {
  if (values.size() != grid.cell_count())
    throw std::invalid_argument("field size does not match grid");
  for (double v : values)
    if (!std::isfinite(v))
      throw std::invalid_argument("field contains non-finite values");
}

BoundaryCondition BoundaryCondition::no_flux() {
  BoundaryCondition bc;
  bc.kind = BcKind::NoFlux;
  return bc;
}

BoundaryCondition BoundaryCondition::dirichlet_constant(double g) {
  BoundaryCondition bc;
  bc.kind = BcKind::Dirichlet;
  bc.constant = true;
  bc.constant_value = g;
  return bc;
}

BoundaryCondition BoundaryCondition::dirichlet_1d(double l, double r) {
  BoundaryCondition bc;
  bc.kind = BcKind::Dirichlet;
  bc.left = {l};
  bc.right = {r};
  return bc;
}

BoundaryCondition BoundaryCondition::dirichlet_2d(std::vector<double> l,
                                                  std::vector<double> r,
                                                  std::vector<double> b,
                                                  std::vector<double> t) {
  BoundaryCondition bc;
  bc.kind = BcKind::Dirichlet;
  bc.left = std::move(l);
  bc.right = std::move(r);
  bc.bottom = std::move(b);
  bc.top = std::move(t);
  return bc;
}

double BoundaryCondition::value(Side s, int i) const {
  if (constant) return constant_value;
  switch (s) {
    case Side::Left: return left.at(i);
    case Side::Right: return right.at(i);
    case Side::Bottom: return bottom.at(i);
    case Side::Top: return top.at(i);
  }
  throw std::logic_error("unreachable");
}

double BoundaryCondition::max_value(const Grid& g) const {
  if (!is_dirichlet()) throw std::logic_error("no trace on a NoFlux boundary");
  if (constant) return constant_value;
  double m = -std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < (g.dim == 2 ? g.n[1] : 1); ++iy)
    m = std::max({m, value(Side::Left, iy), value(Side::Right, iy)});
  if (g.dim == 2)
    for (int ix = 0; ix < g.n[0]; ++ix)
      m = std::max({m, value(Side::Bottom, ix), value(Side::Top, ix)});
  return m;
}

double BoundaryCondition::min_value(const Grid& g) const {
  if (!is_dirichlet()) throw std::logic_error("no trace on a NoFlux boundary");
  if (constant) return constant_value;
  double m = std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < (g.dim == 2 ? g.n[1] : 1); ++iy)
    m = std::min({m, value(Side::Left, iy), value(Side::Right, iy)});
  if (g.dim == 2)
    for (int ix = 0; ix < g.n[0]; ++ix)
      m = std::min({m, value(Side::Bottom, ix), value(Side::Top, ix)});
  return m;
}

void BoundaryCondition::validate(const Grid& g, bool positive_required) const {
  if (!is_dirichlet()) return;
  if (!constant) {
    const std::size_t ny = g.dim == 2 ? g.n[1] : 1;
    if (left.size() != ny || right.size() != ny)
      throw ConfigError("BoundaryCondition: left/right trace size mismatch");
    if (g.dim == 2 && (bottom.size() != static_cast<std::size_t>(g.n[0]) ||
                       top.size() != static_cast<std::size_t>(g.n[0])))
      throw ConfigError("BoundaryCondition: bottom/top trace size mismatch");
  }
  auto check = [&](double v) {
    if (!std::isfinite(v))
      throw ConfigError("BoundaryCondition: non-finite Dirichlet value");
    if (positive_required && !(v > 0.0))
      throw ConfigError("BoundaryCondition: density fields need trace > 0");
  };
  if (constant) {
    check(constant_value);
    return;
  }
  for (double v : left) check(v);
  for (double v : right) check(v);
  for (double v : bottom) check(v);
  for (double v : top) check(v);
}

PaddedField pad_with_ghosts(const ScalarField& field,
                            const BoundaryCondition& bc) {
  const Grid& g = field.grid;
  const int nx = g.n[0];
  const int ny = g.dim == 2 ? g.n[1] : 1;
  PaddedField p;
  p.nx = nx;
  p.ny = ny;
  p.values.assign(static_cast<std::size_t>(nx + 2) * (ny + 2), 0.0);

  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) p.at(ix, iy) = field.at(ix, iy);

  const bool dir = bc.is_dirichlet();
  for (int iy = 0; iy < ny; ++iy) {
    p.at(-1, iy) = dir ? 2.0 * bc.value(Side::Left, iy) - p.at(0, iy)
                       : p.at(0, iy);
    p.at(nx, iy) = dir ? 2.0 * bc.value(Side::Right, iy) - p.at(nx - 1, iy)
                       : p.at(nx - 1, iy);
  }
  if (g.dim == 2) {
    for (int ix = 0; ix < nx; ++ix) {
      p.at(ix, -1) = dir ? 2.0 * bc.value(Side::Bottom, ix) - p.at(ix, 0)
                         : p.at(ix, 0);
      p.at(ix, ny) = dir ? 2.0 * bc.value(Side::Top, ix) - p.at(ix, ny - 1)
                         : p.at(ix, ny - 1);
    }
    // Bilinear corner extension; reduces to the mirror for NoFlux.
    p.at(-1, -1) = p.at(-1, 0) + p.at(0, -1) - p.at(0, 0);
    p.at(nx, -1) = p.at(nx, 0) + p.at(nx - 1, -1) - p.at(nx - 1, 0);
    p.at(-1, ny) = p.at(-1, ny - 1) + p.at(0, ny) - p.at(0, ny - 1);
    p.at(nx, ny) = p.at(nx, ny - 1) + p.at(nx - 1, ny) - p.at(nx - 1, ny - 1);
  } else {
    // 1D: duplicate the single padded row so row pointers stay valid.
    for (int ix = -1; ix <= nx; ++ix) {
      p.at(ix, -1) = p.at(ix, 0);
      p.at(ix, 1) = p.at(ix, 0);
    }
  }
  return p;
}

std::vector<double> face_gradient(const ScalarField& field, int axis) {
  field.validate();
  const Grid& g = field.grid;
  if (axis < 0 || axis >= g.dim)
    throw std::invalid_argument("face_gradient: axis out of range");
  const auto& k = kernels::active();
  const int nx = g.n[0];
  std::vector<double> out;
  if (axis == 0) {
    const int ny = g.dim == 2 ? g.n[1] : 1;
    out.resize(static_cast<std::size_t>(nx - 1) * ny);
    for (int iy = 0; iy < ny; ++iy) {
      const double* row = field.values.data() + g.index(0, iy);
      k.diff_scaled(out.data() + static_cast<std::size_t>(iy) * (nx - 1), row,
                    row + 1, 1.0 / g.h[0], nx - 1);
    }
  } else {
    const int ny = g.n[1];
    out.resize(static_cast<std::size_t>(nx) * (ny - 1));
    for (int iyf = 0; iyf < ny - 1; ++iyf) {
      k.diff_scaled(out.data() + static_cast<std::size_t>(iyf) * nx,
                    field.values.data() + g.index(0, iyf),
                    field.values.data() + g.index(0, iyf + 1), 1.0 / g.h[1],
                    nx);
    }
  }
  return out;
}

FaceFluxes face_flux(const ScalarField& field, const BoundaryCondition& bc,
                     const ModelParams& params) {
  field.validate();
  params.validate();
  bc.validate(field.grid, /*positive_required=*/true);
  for (double v : field.values)
    if (v < 0.0) throw std::runtime_error("negative density");

  const Grid& g = field.grid;
  const int nx = g.n[0];
  const auto& k = kernels::active();
  const double inv_c2 = params.inv_c2();
  const double eps = params.eps_guard;
  const PaddedField p = pad_with_ghosts(field, bc);

  FaceFluxes out;
  out.grid = g;
  if (g.dim == 1) {
    out.x.resize(nx + 1);
    k.flux_faces(out.x.data(), p.row(0), p.row(0) + 1, nullptr, 1.0 / g.h[0],
                 inv_c2, eps, nx + 1);
    return out;
  }

  const int ny = g.n[1];
  out.x.resize(static_cast<std::size_t>(nx + 1) * ny);
  out.y.resize(static_cast<std::size_t>(nx) * (ny + 1));
  std::vector<double> gt(nx + 1);
  for (int iy = 0; iy < ny; ++iy) {
    k.avg4_scaled(gt.data(), p.row(iy + 1), p.row(iy + 1) + 1, p.row(iy - 1),
                  p.row(iy - 1) + 1, 1.0 / (4.0 * g.h[1]), nx + 1);
    k.flux_faces(out.x.data() + static_cast<std::size_t>(iy) * (nx + 1),
                 p.row(iy), p.row(iy) + 1, gt.data(), 1.0 / g.h[0], inv_c2,
                 eps, nx + 1);
  }
  for (int iyf = 0; iyf <= ny; ++iyf) {
    k.avg4_scaled(gt.data(), p.row(iyf - 1) + 2, p.row(iyf) + 2,
                  p.row(iyf - 1), p.row(iyf), 1.0 / (4.0 * g.h[0]), nx);
    k.flux_faces(out.y.data() + static_cast<std::size_t>(iyf) * nx,
                 p.row(iyf - 1) + 1, p.row(iyf) + 1, gt.data(), 1.0 / g.h[1],
                 inv_c2, eps, nx);
  }
  return out;
}

FaceFluxes classical_face_flux(const ScalarField& field,
                               const BoundaryCondition& bc) {
  field.validate();
  bc.validate(field.grid, /*positive_required=*/false);
  const Grid& g = field.grid;
  const int nx = g.n[0];
  const auto& k = kernels::active();
  const PaddedField p = pad_with_ghosts(field, bc);

  FaceFluxes out;
  out.grid = g;
  if (g.dim == 1) {
    out.x.resize(nx + 1);
    k.diff_scaled(out.x.data(), p.row(0), p.row(0) + 1, 1.0 / g.h[0], nx + 1);
    return out;
  }
  const int ny = g.n[1];
  out.x.resize(static_cast<std::size_t>(nx + 1) * ny);
  out.y.resize(static_cast<std::size_t>(nx) * (ny + 1));
  for (int iy = 0; iy < ny; ++iy)
    k.diff_scaled(out.x.data() + static_cast<std::size_t>(iy) * (nx + 1),
                  p.row(iy), p.row(iy) + 1, 1.0 / g.h[0], nx + 1);
  for (int iyf = 0; iyf <= ny; ++iyf)
    k.diff_scaled(out.y.data() + static_cast<std::size_t>(iyf) * nx,
                  p.row(iyf - 1) + 1, p.row(iyf) + 1, 1.0 / g.h[1], nx);
  return out;
}

ScalarField divergence(const FaceFluxes& fluxes) {
  const Grid& g = fluxes.grid;
  const int nx = g.n[0];
  const auto& k = kernels::active();
  ScalarField out = ScalarField::zeros(g);
  if (g.dim == 1) {
    k.diff_scaled(out.values.data(), fluxes.x.data(), fluxes.x.data() + 1,
                  1.0 / g.h[0], nx);
    return out;
  }
  const int ny = g.n[1];
  for (int iy = 0; iy < ny; ++iy) {
    double* row = out.values.data() + g.index(0, iy);
    const double* fx = fluxes.x.data() + static_cast<std::size_t>(iy) * (nx + 1);
    k.diff_scaled(row, fx, fx + 1, 1.0 / g.h[0], nx);
    const double* fy_lo = fluxes.y.data() + static_cast<std::size_t>(iy) * nx;
    const double* fy_hi = fluxes.y.data() + static_cast<std::size_t>(iy + 1) * nx;
    k.diff_scaled_add(row, fy_lo, fy_hi, 1.0 / g.h[1], nx);
  }
  return out;
}

ScalarField discrete_q(const ScalarField& w_field, const BoundaryCondition& bc,
                       const ModelParams& params) {
  w_field.validate();
  params.validate();
  bc.validate(w_field.grid, /*positive_required=*/false);
  const Grid& g = w_field.grid;
  const PaddedField p = pad_with_ghosts(w_field, bc);
  ScalarField out = ScalarField::zeros(g);

  if (g.dim == 1) {
    const double inv_2h = 0.5 / g.h[0];
    const double inv_h2 = 1.0 / (g.h[0] * g.h[0]);
    for (int i = 0; i < g.n[0]; ++i) {
      const Vec grad((p.at(i + 1, 0) - p.at(i - 1, 0)) * inv_2h);
      const SymMat hess((p.at(i + 1, 0) - 2.0 * p.at(i, 0) + p.at(i - 1, 0)) *
                        inv_h2);
      out.values[i] = core::q_operator(0.0, grad, hess, params);
    }
    return out;
  }

  const double inv_2hx = 0.5 / g.h[0];
  const double inv_2hy = 0.5 / g.h[1];
  const double inv_hx2 = 1.0 / (g.h[0] * g.h[0]);
  const double inv_hy2 = 1.0 / (g.h[1] * g.h[1]);
  const double inv_4hxy = 1.0 / (4.0 * g.h[0] * g.h[1]);
  for (int iy = 0; iy < g.n[1]; ++iy) {
    for (int ix = 0; ix < g.n[0]; ++ix) {
      const Vec grad((p.at(ix + 1, iy) - p.at(ix - 1, iy)) * inv_2hx,
                     (p.at(ix, iy + 1) - p.at(ix, iy - 1)) * inv_2hy);
      const double hxx =
          (p.at(ix + 1, iy) - 2.0 * p.at(ix, iy) + p.at(ix - 1, iy)) * inv_hx2;
      const double hyy =
          (p.at(ix, iy + 1) - 2.0 * p.at(ix, iy) + p.at(ix, iy - 1)) * inv_hy2;
      const double hxy = (p.at(ix + 1, iy + 1) - p.at(ix + 1, iy - 1) -
                          p.at(ix - 1, iy + 1) + p.at(ix - 1, iy - 1)) *
                         inv_4hxy;
      out.values[g.index(ix, iy)] =
          core::q_operator(0.0, grad, SymMat(hxx, hxy, hyy), params);
    }
  }
  return out;
}

double mass(const ScalarField& field) {
  field.validate();
  double sum = 0.0;
  for (double v : field.values) sum += v;
  return sum * field.grid.cell_volume();
}

double entropy(const ScalarField& field) {
  field.validate();
  double sum = 0.0;
  for (double v : field.values) {
    if (v < 0.0) throw std::runtime_error("entropy requires a nonnegative field");
    if (v > 0.0) sum += v * std::log(v);
  }
  return sum * field.grid.cell_volume();
}

double entropy_or_nan(const ScalarField& field) {
  double sum = 0.0;
  for (double v : field.values) {
    if (v < 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (v > 0.0) sum += v * std::log(v);
  }
  return sum * field.grid.cell_volume();
}

Extrema extrema(const ScalarField& field) {
  field.validate();
  Extrema e;
  e.min = e.max = field.values[0];
  for (std::size_t i = 1; i < field.values.size(); ++i) {
    if (field.values[i] < e.min) {
      e.min = field.values[i];
      e.argmin = i;
    }
    if (field.values[i] > e.max) {
      e.max = field.values[i];
      e.argmax = i;
    }
  }
  return e;
}

double flux_balance_sphere(const ScalarField& field,
                           const std::array<double, 2>& center, double radius,
                           const ModelParams& params) {
  field.validate();
  params.validate();
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  const Grid& g = field.grid;
  for (int a = 0; a < g.dim; ++a) {
    if (center[a] - radius < g.lo[a] + 1.5 * g.h[a] ||
        center[a] + radius > g.hi[a] - 1.5 * g.h[a])
      throw std::runtime_error("ball exceeds grid interior");
  }
  const double inv_c2 = params.inv_c2();
  const double eps = params.eps_guard;

  auto inside = [&](int ix, int iy) {
    const double dx = g.center(0, ix) - center[0];
    const double dy = g.dim == 2 ? g.center(1, iy) - center[1] : 0.0;
    return dx * dx + dy * dy <= radius * radius;
  };
  auto u = [&](int ix, int iy) { return field.at(ix, iy); };

  // x-face between (ix-1,iy) and (ix,iy); transverse term only in 2D.
  auto fx = [&](int ix, int iy) {
    double gt = 0.0;
    if (g.dim == 2)
      gt = (u(ix - 1, iy + 1) + u(ix, iy + 1) - u(ix - 1, iy - 1) -
            u(ix, iy - 1)) /
           (4.0 * g.h[1]);
    return face_flux_single(u(ix - 1, iy), u(ix, iy), gt, 1.0 / g.h[0],
                            inv_c2, eps);
  };
  auto fy = [&](int ix, int iy) {
    const double gt = (u(ix + 1, iy - 1) + u(ix + 1, iy) - u(ix - 1, iy - 1) -
                       u(ix - 1, iy)) /
                      (4.0 * g.h[0]);
    return face_flux_single(u(ix, iy - 1), u(ix, iy), gt, 1.0 / g.h[1],
                            inv_c2, eps);
  };

  const int ny = g.dim == 2 ? g.n[1] : 1;
  double total = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < g.n[0]; ++ix) {
      if (!inside(ix, iy)) continue;
      const double area_x = g.dim == 2 ? g.h[1] : 1.0;
      if (!inside(ix + 1, iy)) total += fx(ix + 1, iy) * area_x;
      if (!inside(ix - 1, iy)) total -= fx(ix, iy) * area_x;
      if (g.dim == 2) {
        if (!inside(ix, iy + 1)) total += fy(ix, iy + 1) * g.h[0];
        if (!inside(ix, iy - 1)) total -= fy(ix, iy) * g.h[0];
      }
    }
  }
  return total;
}

ScalarField field_exp(const ScalarField& w) {
  w.validate();
  ScalarField out = w;
  for (double& v : out.values) v = std::exp(v);
  return out;
}

ScalarField field_log(const ScalarField& u) {
  u.validate();
  ScalarField out = u;
  for (double& v : out.values) {
    if (!(v > 0.0)) throw std::domain_error("transform requires positive u");
    v = std::log(v);
  }
  return out;
}

}  // namespace relheat::grid
