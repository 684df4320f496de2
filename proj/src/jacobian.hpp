#pragma once

#include "relheat/grid.hpp"
#include "relheat/linalg.hpp"
#include "relheat/types.hpp"

// Internal: analytic banded Jacobian of u -> divergence(face_flux(u, bc)),
// with the Dirichlet/NoFlux ghost dependence folded into the interior
// columns. Bandwidth 1 in 1D, nx+1 in 2D.
namespace relheat::detail {

linalg::BandMatrix flux_divergence_jacobian(const grid::ScalarField& u,
                                            const grid::BoundaryCondition& bc,
                                            const ModelParams& params,
                                            bool classical);

// Accumulating form: out += coeff * J. Lets callers assemble I - dt*J
// without a second matrix.
void add_flux_divergence_jacobian(linalg::BandMatrix& out,
                                  const grid::ScalarField& u,
                                  const grid::BoundaryCondition& bc,
                                  const ModelParams& params, bool classical,
                                  double coeff);

// 5-point (3-point in 1D) Laplacian with the same ghost folding, for the
// discrete-harmonic initial guess and the implicit classical-heat step.
linalg::BandMatrix laplacian_matrix(const grid::Grid& g,
                                    const grid::BoundaryCondition& bc,
                                    std::vector<double>* rhs_bc);

}  // namespace relheat::detail
