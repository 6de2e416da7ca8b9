#pragma once

#include <vector>

#include "soc1d/model.hpp"

namespace soc1d::dirac {

// Point eigenvalue of the gap (atom-light) operator.
struct GapState {
    double eps = 0.0;             // energy in the open gap (-Omega/2, Omega/2)
    Branch branch = Branch::plus;
    double omega = 0.0;           // gap_decay evaluated at eps
};

// gamma/2 + w ± eta sqrt((Omega ∓ 2 eps)/(Omega ± 2 eps)) with w = gap_decay(eps);
// its zeros are the point eigenvalues of the matching branch.
double branch_equation(const Params& par, Branch branch, double eps);

struct GapDiagnostics {
    std::vector<GapState> edge_roots;  // sign changes inside the band-edge guard
};

// All roots of both branch equations, ascending eps within each branch.
// Empty for gamma > 0.  Requires eta > 0 and Omega > 0.
std::vector<GapState> spectrum(const Params& par, GapDiagnostics* diag = nullptr);

// Scalar kernel denominator (gamma z + 2 w (eta^2 + z))^2 - (Omega/2)^2 (gamma + 2 w)^2
// with w = gap_decay(z); vanishes exactly on the point spectrum.
cplx pole_denominator(const Params& par, cplx z);
// max(1, |T1|^2, |T2|^2) for the two squared terms above; the natural scale
// against which a near-zero denominator is judged.
double pole_denominator_scale(const Params& par, cplx z);

// Unnormalized eigenfunction (nonzero component of the mean at 0 set to 1)
// with analytic one-sided derivatives; x != 0.
SpinorJet eigenfunction(const Params& par, const GapState& st, double x);
SideLimits eigenfunction_limits(const Params& par, const GapState& st);
double l2_norm(const Params& par, const GapState& st);

// Kernel of the interaction-free first-order operator:
// e^{-w|x|}/(2 eta^2 w) (i eta w sgn(x) sigma2 + (Omega/2) sigma3 + z I), x != 0.
KernelJet free_kernel(const Params& par, cplx z, double x);
KernelJet free_kernel_side(const Params& par, cplx z, int side);

// Interacting kernel (x' = 0 slice): free kernel times the 2x2 matrix
// 2 eta^2 w [2 eta^2 w I - (gamma + 2 w)((Omega/2) sigma3 - z I)] / denominator.
KernelJet green_kernel(const Params& par, cplx z, double x);
KernelJet green_kernel_side(const Params& par, cplx z, int side);

// Weak-form eigenfunction -(gamma + 2 w) K_eps(x) f0; f0 must put its nonzero
// entry in the branch's slot.
Eigen::Vector2cd weak_eigenfunction(const Params& par, const GapState& st,
                                    const Eigen::Vector2cd& f0, double x);

}  // namespace soc1d::dirac
