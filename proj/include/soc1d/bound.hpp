#pragma once

#include <array>
#include <string>
#include <vector>

#include "soc1d/soc.hpp"

namespace soc1d::bound {

// The two momentum roots p_{1,2}^2 = z + eta^2/2 ± (1/2) sqrt(eta^2(eta^2+4z) + Omega^2),
// with signs flipped so Im p_j > 0 whenever possible.
struct Momenta {
    cplx p1, p2;
    cplx p1_sq, p2_sq;
    int s1 = 1, s2 = 1;      // sign flips applied to the principal roots
    bool admissible = false; // both Im p_j > 0 (strictly, beyond 1e-12)
};

// Throws a domain error near the branch point z = lambda_floor.
Momenta momenta(const Params& par, cplx z);

// Delta_z(p) = (p^2 - z)^2 - eta^2 p^2 - (Omega/2)^2 = (p^2 - p1^2)(p^2 - p2^2).
cplx dispersion_quartic(const Params& par, cplx z, cplx p);

// 2 p1 p2 (p1 + p2) + i gamma (p1 p2 + lam ± Omega/2); vanishes exactly at the
// eigenvalues of the matching family (+ upper, - lower).
cplx resolvent_condition(const Params& par, Branch family, double lam);

// Real cubic in lambda whose admissible root carries the family.  The cubic's
// own sign slot is opposite to the family's resolvent sign: squaring the
// resolvent condition swaps the pairing.
std::array<double, 4> cubic_coefficients(const Params& par, Branch family);

// Roots by the trigonometric/Cardano method, polished by Newton steps to
// |residual| <= 1e-12 * max|coeff|.  Throws on a (near-)zero leading coefficient.
std::vector<cplx> solve_cubic(const std::array<double, 4>& c);

struct State {
    double lambda = 0.0;
    Branch family = Branch::plus;  // plus: f2(0)=0 ("upper"); minus: f1(0)=0
    Momenta m;
};
struct Rejection {
    double lambda;
    Branch family;
    std::string reason;
    cplx p1, p2;
};
struct Spectrum {
    double edge = 0.0;                  // essential-spectrum edge
    std::vector<State> states;          // continuous-eigenfunction family
    std::vector<soc::State> so_states;  // spin-orbit-induced states (eta > 0)
    std::vector<soc::Resonance> resonances;
    std::vector<Rejection> rejected;
};

// Full discrete spectrum; dispatches to eta_zero_spectrum when eta == 0.
Spectrum spectrum(const Params& par);
// Closed form at eta = 0: {-gamma^2/4 - Omega/2} always (gamma < 0), plus
// {-gamma^2/4 + Omega/2} iff gamma < -2 sqrt(Omega).
Spectrum eta_zero_spectrum(const Params& par);

// Two-exponential eigenfunction with analytic one-sided derivatives; x != 0.
// Unnormalized: the overall constant C multiplies the family's closed form.
SpinorJet eigenfunction(const Params& par, const State& st, double x, cplx C = 1.0);
SideLimits eigenfunction_limits(const Params& par, const State& st, cplx C = 1.0);
double l2_norm(const Params& par, const State& st);

// Weak solution -gamma (free resolvent at lam)(x) f0.
Eigen::Vector2cd weak_eigenfunction(const Params& par, double lam,
                                    const Eigen::Vector2cd& f0, double x);
// The f(0) that makes the weak solution equal eigenfunction(par, st, x, C):
// ((-2iC/gamma)(p1^2 - p2^2), 0) for family plus,
// (0, (2C/(gamma eta))(p1^2 - p2^2)) for family minus.
Eigen::Vector2cd weak_f0(const Params& par, const State& st, cplx C = 1.0);

// Kernel of the interaction-free second-order operator (continuous at 0,
// derivative jump -I) and the interacting x' = 0 slice.
KernelJet free_kernel(const Params& par, cplx z, double dx);
KernelJet free_kernel_side(const Params& par, cplx z, int side);
KernelJet green_kernel(const Params& par, cplx z, double dx);
KernelJet green_kernel_side(const Params& par, cplx z, int side);
// (2 p1 p2 (p1+p2) + i gamma (p1 p2 + z))^2 + (gamma Omega / 2)^2; equals the
// product of the two resolvent conditions.
cplx green_denominator(const Params& par, cplx z);
// max(1, |first term|^2, (gamma Omega / 2)^2): the scale a small denominator
// is judged against.
double green_denominator_scale(const Params& par, cplx z);

}  // namespace soc1d::bound
