#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "relheat/types.hpp"

// Uniform Cartesian meshes (1D/2D), cell-centered fields, conservative
// stencil operators, boundary conditions, and integral diagnostics.
namespace relheat::grid {

struct Grid {
  int dim = 1;
  std::array<int, 2> n{4, 1};          // cells per axis (n[1] = 1 in 1D)
  std::array<double, 2> lo{0.0, 0.0};  // physical bounds
  std::array<double, 2> hi{1.0, 1.0};
  std::array<double, 2> h{0.25, 0.0};  // spacing per axis

  static Grid make_1d(int n, double lo, double hi);
  static Grid make_2d(int nx, int ny, double lox, double hix, double loy,
                      double hiy);

  std::size_t cell_count() const {
    return static_cast<std::size_t>(n[0]) * static_cast<std::size_t>(n[1]);
  }
  double cell_volume() const { return dim == 1 ? h[0] : h[0] * h[1]; }
  double center(int axis, int i) const { return lo[axis] + (i + 0.5) * h[axis]; }
  std::size_t index(int ix, int iy = 0) const {
    return static_cast<std::size_t>(iy) * n[0] + ix;
  }
  double min_h() const { return dim == 1 ? h[0] : std::min(h[0], h[1]); }

  bool operator==(const Grid& o) const {
    return dim == o.dim && n == o.n && lo == o.lo && hi == o.hi;
  }
  void validate() const;
};

// Same layout up to rounding in the extents (CSV-reconstructed grids carry
// the formatting roundoff of their cell centers).
bool same_layout(const Grid& a, const Grid& b, double rel_tol = 1e-12);

struct ScalarField {
  Grid grid;
  std::vector<double> values;  // row-major, x fastest

  static ScalarField zeros(const Grid& g);
  static ScalarField constant(const Grid& g, double v);
  // 1D functions take x; 2D functions take (x, y).
  static ScalarField from_function(const Grid& g,
                                   const std::function<double(double)>& f);
  static ScalarField from_function(
      const Grid& g, const std::function<double(double, double)>& f);

  double& at(int ix, int iy = 0) { return values[grid.index(ix, iy)]; }
  double at(int ix, int iy = 0) const { return values[grid.index(ix, iy)]; }

  void validate() const;  // finite values, size matches grid
};

enum class BcKind { Dirichlet, NoFlux };
enum class Side { Left, Right, Bottom, Top };

// Dirichlet trace data (one value per boundary face on each side) or a
// no-flux condition.
struct BoundaryCondition {
  BcKind kind = BcKind::NoFlux;
  bool constant = false;
  double constant_value = 0.0;
  std::vector<double> left, right;  // 2D: ny entries each; 1D: 1 entry
  std::vector<double> bottom, top;  // 2D: nx entries each

  static BoundaryCondition no_flux();
  static BoundaryCondition dirichlet_constant(double g);
  static BoundaryCondition dirichlet_1d(double l, double r);
  static BoundaryCondition dirichlet_2d(std::vector<double> l,
                                        std::vector<double> r,
                                        std::vector<double> b,
                                        std::vector<double> t);

  bool is_dirichlet() const { return kind == BcKind::Dirichlet; }
  double value(Side s, int i) const;
  double max_value(const Grid& g) const;
  double min_value(const Grid& g) const;
  // positive_required enforces the density-field rule (trace > 0).
  void validate(const Grid& g, bool positive_required) const;
};

// One flux scalar per cell face per axis. x faces: (nx+1) * ny, indexed
// iy*(nx+1) + ixf; y faces (2D): nx * (ny+1), indexed iyf*nx + ix.
struct FaceFluxes {
  Grid grid;
  std::vector<double> x;
  std::vector<double> y;

  double& fx(int ixf, int iy = 0) {
    return x[static_cast<std::size_t>(iy) * (grid.n[0] + 1) + ixf];
  }
  double fx(int ixf, int iy = 0) const {
    return x[static_cast<std::size_t>(iy) * (grid.n[0] + 1) + ixf];
  }
  double& fy(int ix, int iyf) {
    return y[static_cast<std::size_t>(iyf) * grid.n[0] + ix];
  }
  double fy(int ix, int iyf) const {
    return y[static_cast<std::size_t>(iyf) * grid.n[0] + ix];
  }
};

// Cell values extended by one ghost layer on every side. Ghosts implement
// Dirichlet data at distance h/2 by linear extrapolation (ghost = 2g - u)
// or mirror the interior for NoFlux; corner ghosts are filled bilinearly.
struct PaddedField {
  int nx = 0, ny = 0;  // interior cells
  std::vector<double> values;

  double& at(int ix, int iy) {
    return values[static_cast<std::size_t>(iy + 1) * (nx + 2) + (ix + 1)];
  }
  double at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy + 1) * (nx + 2) + (ix + 1)];
  }
  const double* row(int iy) const {  // pointer to ix = -1 of a padded row
    return values.data() + static_cast<std::size_t>(iy + 1) * (nx + 2);
  }
};

PaddedField pad_with_ghosts(const ScalarField& field,
                            const BoundaryCondition& bc);

// Normal gradients across the interior faces of one axis: (u_R - u_L)/h.
// 1D: n-1 entries. 2D, axis 0: (nx-1)*ny entries ordered by row; axis 1:
// nx*(ny-1) entries.
std::vector<double> face_gradient(const ScalarField& field, int axis);

// Relativistic face fluxes: core.flux at each face with u_face the
// arithmetic mean of the adjacent cells. Dirichlet boundary faces see the
// trace value exactly; NoFlux boundary faces carry zero flux.
FaceFluxes face_flux(const ScalarField& field, const BoundaryCondition& bc,
                     const ModelParams& params);

// Classical-heat face fluxes F = grad(u); same boundary handling.
FaceFluxes classical_face_flux(const ScalarField& field,
                               const BoundaryCondition& bc);

// Per cell: sum over faces of (outgoing - incoming)/h per axis.
ScalarField divergence(const FaceFluxes& fluxes);

// Pointwise Q on a w-field via cell-centered central differences for Dw
// and D^2w (ghost halo from the boundary condition).
ScalarField discrete_q(const ScalarField& w_field, const BoundaryCondition& bc,
                       const ModelParams& params);

double mass(const ScalarField& field);
double entropy(const ScalarField& field);  // sum of u log u * vol; u >= 0
// Entropy with negative values tolerated (returns NaN); used by run
// diagnostics so hyperbolic baselines do not abort the recording.
double entropy_or_nan(const ScalarField& field);

struct Extrema {
  double min = 0.0, max = 0.0;
  std::size_t argmin = 0, argmax = 0;
};
Extrema extrema(const ScalarField& field);

// Surface integral of F . nu over the stair-step boundary of the discrete
// ball {cells whose center lies within radius}; equals the sum of the
// discrete divergence over the ball cells times volume (telescoping).
double flux_balance_sphere(const ScalarField& field,
                           const std::array<double, 2>& center, double radius,
                           const ModelParams& params);

ScalarField field_exp(const ScalarField& w);                // u = exp(w)
ScalarField field_log(const ScalarField& u);                // w = log(u), u > 0

}  // namespace relheat::grid
