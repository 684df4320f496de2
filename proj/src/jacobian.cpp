#include "jacobian.hpp"

#include <algorithm>
#include <cmath>

namespace relheat::detail {

namespace {

using grid::BoundaryCondition;
using grid::Grid;
using grid::PaddedField;
using grid::ScalarField;
using grid::Side;

struct Dep {
  std::size_t idx;
  double coeff;
};

// Every padded cell depends on exactly one interior cell: edge ghosts with
// coefficient -1 (Dirichlet) or +1 (NoFlux mirror), the bilinear corner
// ghosts with -3 / +1.
Dep resolve(const Grid& g, const BoundaryCondition& bc, int ix, int iy) {
  const int nx = g.n[0];
  const int ny = g.dim == 2 ? g.n[1] : 1;
  const bool gx = ix < 0 || ix >= nx;
  const bool gy = iy < 0 || iy >= ny;
  const int cx = std::clamp(ix, 0, nx - 1);
  const int cy = std::clamp(iy, 0, ny - 1);
  double coeff = 1.0;
  if (bc.is_dirichlet()) {
    if (gx && gy)
      coeff = -3.0;
    else if (gx || gy)
      coeff = -1.0;
  }
  return {g.index(cx, cy), coeff};
}

struct FacePartials {
  double d_uf;  // d f / d u_face
  double d_gn;  // d f / d (normal gradient)
  double d_gt;  // d f / d (transverse gradient)
};

FacePartials relativistic_partials(double ul, double ur, double gt,
                                   double inv_h, double inv_c2, double eps) {
  const double uf = 0.5 * (ul + ur);
  const double gn = (ur - ul) * inv_h;
  const double g2 = gn * gn + gt * gt;
  const double den = std::max(std::sqrt(uf * uf + inv_c2 * g2), eps);
  const double den3 = den * den * den;
  return {inv_c2 * gn * g2 / den3, uf * (uf * uf + inv_c2 * gt * gt) / den3,
          -inv_c2 * uf * gn * gt / den3};
}

}  // namespace

void add_flux_divergence_jacobian(linalg::BandMatrix& out,
                                  const ScalarField& u,
                                  const BoundaryCondition& bc,
                                  const ModelParams& params, bool classical,
                                  double coeff) {
  const Grid& g = u.grid;
  const int nx = g.n[0];
  const int ny = g.dim == 2 ? g.n[1] : 1;
  const PaddedField p = grid::pad_with_ghosts(u, bc);
  const double inv_c2 = params.inv_c2();
  const double eps = params.eps_guard;

  // One face: partial derivatives w.r.t. the padded cells it touches,
  // scattered into the rows of the adjacent interior cells.
  //   div(cell_hi) gets -f/h, div(cell_lo) gets +f/h -- where cell_lo is the
  //   cell on the low side of the face (its right/top face) and cell_hi the
  //   one on the high side (its left/bottom face).
  auto scatter = [&](int axis, int lo_x, int lo_y, int hi_x, int hi_y,
                     const FacePartials& fp, double inv_hn, double inv_ht4) {
    // Dependencies: (cell, weight) pairs for this face flux.
    const Dep dl = resolve(g, bc, lo_x, lo_y);
    const Dep dh = resolve(g, bc, hi_x, hi_y);
    const double w_lo = 0.5 * fp.d_uf - fp.d_gn * inv_hn;
    const double w_hi = 0.5 * fp.d_uf + fp.d_gn * inv_hn;

    auto emit = [&](int row_x, int row_y, double sign) {
      if (row_x < 0 || row_x >= nx || row_y < 0 || row_y >= ny) return;
      const int row = static_cast<int>(g.index(row_x, row_y));
      const double s = coeff * sign;
      out.add(row, static_cast<int>(dl.idx), s * w_lo * dl.coeff);
      out.add(row, static_cast<int>(dh.idx), s * w_hi * dh.coeff);
      if (g.dim == 2 && fp.d_gt != 0.0) {
        const int tx = axis == 0 ? 1 : 0;  // transverse direction offsets
        const int ty = axis == 0 ? 0 : 1;
        // transverse gradient = (lo+ + hi+ - lo- - hi-) * inv_ht4, offsets
        // +/- one cell in the transverse direction from both face cells
        const Dep a = resolve(g, bc, lo_x + ty, lo_y + tx);
        const Dep b = resolve(g, bc, hi_x + ty, hi_y + tx);
        const Dep c2 = resolve(g, bc, lo_x - ty, lo_y - tx);
        const Dep d2 = resolve(g, bc, hi_x - ty, hi_y - tx);
        const double wt = fp.d_gt * inv_ht4;
        out.add(row, static_cast<int>(a.idx), s * wt * a.coeff);
        out.add(row, static_cast<int>(b.idx), s * wt * b.coeff);
        out.add(row, static_cast<int>(c2.idx), -s * wt * c2.coeff);
        out.add(row, static_cast<int>(d2.idx), -s * wt * d2.coeff);
      }
    };
    // Face flux enters div(lo cell) with +1/h and div(hi cell) with -1/h.
    emit(lo_x, lo_y, inv_hn);
    emit(hi_x, hi_y, -inv_hn);
  };

  // x faces
  for (int iy = 0; iy < ny; ++iy) {
    for (int ixf = 0; ixf <= nx; ++ixf) {
      const double ul = p.at(ixf - 1, iy);
      const double ur = p.at(ixf, iy);
      double gt = 0.0;
      const double inv_ht4 = g.dim == 2 ? 1.0 / (4.0 * g.h[1]) : 0.0;
      if (g.dim == 2)
        gt = (p.at(ixf - 1, iy + 1) + p.at(ixf, iy + 1) -
              p.at(ixf - 1, iy - 1) - p.at(ixf, iy - 1)) *
             inv_ht4;
      FacePartials fp = classical
                            ? FacePartials{0.0, 1.0, 0.0}
                            : relativistic_partials(ul, ur, gt, 1.0 / g.h[0],
                                                    inv_c2, eps);
      scatter(0, ixf - 1, iy, ixf, iy, fp, 1.0 / g.h[0], inv_ht4);
    }
  }
  if (g.dim == 2) {
    const double inv_ht4 = 1.0 / (4.0 * g.h[0]);
    for (int iyf = 0; iyf <= ny; ++iyf) {
      for (int ix = 0; ix < nx; ++ix) {
        const double ul = p.at(ix, iyf - 1);
        const double ur = p.at(ix, iyf);
        const double gt = (p.at(ix + 1, iyf - 1) + p.at(ix + 1, iyf) -
                           p.at(ix - 1, iyf - 1) - p.at(ix - 1, iyf)) *
                          inv_ht4;
        FacePartials fp = classical
                              ? FacePartials{0.0, 1.0, 0.0}
                              : relativistic_partials(ul, ur, gt,
                                                      1.0 / g.h[1], inv_c2,
                                                      eps);
        scatter(1, ix, iyf - 1, ix, iyf, fp, 1.0 / g.h[1], inv_ht4);
      }
    }
  }
}

linalg::BandMatrix flux_divergence_jacobian(const ScalarField& u,
                                            const BoundaryCondition& bc,
                                            const ModelParams& params,
                                            bool classical) {
  const Grid& g = u.grid;
  const int bw = g.dim == 1 ? 1 : g.n[0] + 1;
  linalg::BandMatrix J(static_cast<int>(g.cell_count()), bw);
  add_flux_divergence_jacobian(J, u, bc, params, classical, 1.0);
  return J;
}

linalg::BandMatrix laplacian_matrix(const Grid& g, const BoundaryCondition& bc,
                                    std::vector<double>* rhs_bc) {
  const int nx = g.n[0];
  const int ny = g.dim == 2 ? g.n[1] : 1;
  const int bw = g.dim == 1 ? 1 : nx + 1;
  linalg::BandMatrix A(static_cast<int>(g.cell_count()), bw);
  if (rhs_bc) rhs_bc->assign(g.cell_count(), 0.0);

  auto couple = [&](int row, int ix, int iy, double w, Side side, int bidx) {
    const int nxl = nx, nyl = ny;
    if (ix >= 0 && ix < nxl && iy >= 0 && iy < nyl) {
      A.add(row, static_cast<int>(g.index(ix, iy)), w);
      return;
    }
    // ghost: Dirichlet 2g - u_adj, NoFlux mirror
    const int cx = std::clamp(ix, 0, nxl - 1);
    const int cy = std::clamp(iy, 0, nyl - 1);
    if (bc.is_dirichlet()) {
      A.add(row, static_cast<int>(g.index(cx, cy)), -w);
      if (rhs_bc) (*rhs_bc)[row] += w * 2.0 * bc.value(side, bidx);
    } else {
      A.add(row, static_cast<int>(g.index(cx, cy)), w);
    }
  };

  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const int row = static_cast<int>(g.index(ix, iy));
      const double wx = 1.0 / (g.h[0] * g.h[0]);
      A.add(row, row, -2.0 * wx);
      couple(row, ix - 1, iy, wx, Side::Left, iy);
      couple(row, ix + 1, iy, wx, Side::Right, iy);
      if (g.dim == 2) {
        const double wy = 1.0 / (g.h[1] * g.h[1]);
        A.add(row, row, -2.0 * wy);
        couple(row, ix, iy - 1, wy, Side::Bottom, ix);
        couple(row, ix, iy + 1, wy, Side::Top, ix);
      }
    }
  }
  return A;
}

}  // namespace relheat::detail
