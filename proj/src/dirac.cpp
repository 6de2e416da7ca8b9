#include "soc1d/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace soc1d::dirac {

namespace {

void require_gap_params(const Params& par) {
    validate(par);
    if (par.eta <= 0.0) throw std::invalid_argument("gap operator requires eta > 0");
    if (par.omega <= 0.0) throw std::invalid_argument("gap operator requires omega > 0");
}

// sqrt((Omega - 2 eps)/(Omega + 2 eps)) and its reciprocal.
double edge_ratio(const Params& par, double eps, Branch branch) {
    const double num = par.omega - 2.0 * eps;
    const double den = par.omega + 2.0 * eps;
    return branch == Branch::plus ? std::sqrt(num / den) : std::sqrt(den / num);
}

double branch_equation_deriv(const Params& par, Branch branch, double eps) {
    const double w = gap_decay(par, eps);
    const double domega = -eps / (par.eta * par.eta * w);
    const double t = edge_ratio(par, eps, branch);
    const double band = par.omega * par.omega - 4.0 * eps * eps;
    // sign * t' = -2 Omega t / band for either branch, so the signed term is
    // branch independent.
    return domega - 2.0 * par.omega * par.eta * t / band;
}

double refine_root(const Params& par, Branch branch, double lo, double hi) {
    double flo = branch_equation(par, branch, lo);
    double r = 0.5 * (lo + hi);
    while (hi - lo > 1e-13) {
        r = 0.5 * (lo + hi);
        const double fr = branch_equation(par, branch, r);
        if (fr == 0.0) break;
        if ((flo < 0.0) == (fr < 0.0)) {
            lo = r;
            flo = fr;
        } else {
            hi = r;
        }
    }
    // One safeguarded Newton step to polish past bisection resolution.
    const double fr = branch_equation(par, branch, r);
    const double dr = branch_equation_deriv(par, branch, r);
    if (dr != 0.0) {
        const double cand = r - fr / dr;
        if (cand > lo && cand < hi &&
            std::abs(branch_equation(par, branch, cand)) <= std::abs(fr))
            r = cand;
    }
    return r;
}

}  // namespace

double branch_equation(const Params& par, Branch branch, double eps) {
    require_gap_params(par);
    if (std::abs(eps) >= 0.5 * par.omega)
        throw std::invalid_argument("branch_equation requires |eps| < omega/2");
    const double w = gap_decay(par, eps);
    const double sign = branch == Branch::plus ? 1.0 : -1.0;
    return 0.5 * par.gamma + w + sign * par.eta * edge_ratio(par, eps, branch);
}

std::vector<GapState> spectrum(const Params& par, GapDiagnostics* diag) {
    require_gap_params(par);
    std::vector<GapState> out;
    if (par.gamma > 0.0) return out;

    const double half = 0.5 * par.omega;
    const double delta = 1e-9 * par.omega;  // band-edge guard
    const int n = 4096;
    const double lo = -half + delta;
    const double hi = half - delta;
    const double step = (hi - lo) / n;

    for (Branch branch : {Branch::plus, Branch::minus}) {
        double xa = lo;
        double fa = branch_equation(par, branch, xa);
        for (int i = 1; i <= n; ++i) {
            const double xb = (i == n) ? hi : lo + i * step;
            const double fb = branch_equation(par, branch, xb);
            if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
                const double eps = fa == 0.0 ? xa : refine_root(par, branch, xa, xb);
                GapState st{eps, branch, gap_decay(par, eps)};
                if (half - std::abs(eps) < 2.0 * delta) {
                    if (diag) diag->edge_roots.push_back(st);
                } else {
                    const cplx den = pole_denominator(par, cplx(eps, 0.0));
                    if (std::abs(den) > 1e-8 * pole_denominator_scale(par, cplx(eps, 0.0)))
                        throw std::runtime_error(
                            "gap root fails the kernel-pole cross-check");
                    out.push_back(st);
                }
            }
            xa = xb;
            fa = fb;
        }
    }
    std::sort(out.begin(), out.end(), [](const GapState& a, const GapState& b) {
        if (a.branch != b.branch) return a.branch == Branch::plus;
        return a.eps < b.eps;
    });
    return out;
}

cplx pole_denominator(const Params& par, cplx z) {
    if (par.eta <= 0.0) throw std::invalid_argument("pole_denominator requires eta > 0");
    const cplx w = gap_decay(par, z);
    const cplx t1 = par.gamma * z + 2.0 * w * (par.eta * par.eta + z);
    const cplx t2 = 0.5 * par.omega * (par.gamma + 2.0 * w);
    return t1 * t1 - t2 * t2;
}

double pole_denominator_scale(const Params& par, cplx z) {
    const cplx w = gap_decay(par, z);
    const double t1 = std::abs(par.gamma * z + 2.0 * w * (par.eta * par.eta + z));
    const double t2 = std::abs(0.5 * par.omega * (par.gamma + 2.0 * w));
    return std::max({1.0, t1 * t1, t2 * t2});
}

SpinorJet eigenfunction(const Params& par, const GapState& st, double x) {
    if (x == 0.0) throw std::invalid_argument("eigenfunction is two-valued at x = 0");
    const double w = gap_decay(par, st.eps);
    const double t = edge_ratio(par, st.eps, st.branch);
    // Mean value at 0 is (1,0) on branch plus, (0,1) on branch minus; the
    // theta-term adds the sign-flipping partner component.
    Eigen::Vector2cd amp;
    if (st.branch == Branch::plus)
        amp << 1.0, (x > 0.0 ? -t : t);
    else
        amp << (x > 0.0 ? -t : t), 1.0;
    const double rate = x > 0.0 ? -w : w;
    const double e = std::exp(rate * x);
    SpinorJet jet;
    jet.f = amp * e;
    jet.df = rate * jet.f;
    jet.d2f = rate * jet.df;
    return jet;
}

SideLimits eigenfunction_limits(const Params& par, const GapState& st) {
    const double w = gap_decay(par, st.eps);
    const double t = edge_ratio(par, st.eps, st.branch);
    SideLimits lim;
    if (st.branch == Branch::plus) {
        lim.f_plus << 1.0, -t;
        lim.f_minus << 1.0, t;
    } else {
        lim.f_plus << -t, 1.0;
        lim.f_minus << t, 1.0;
    }
    lim.df_plus = -w * lim.f_plus;
    lim.df_minus = w * lim.f_minus;
    return lim;
}

double l2_norm(const Params& par, const GapState& st) {
    const double w = gap_decay(par, st.eps);
    const double t = edge_ratio(par, st.eps, st.branch);
    return std::sqrt((1.0 + t * t) / w);
}

namespace {

cplx kernel_decay(const Params& par, cplx z) {
    const cplx w = gap_decay(par, z);
    if (w.real() <= 0.0)
        throw std::invalid_argument("kernel requires Re gap_decay(z) > 0");
    return w;
}

Eigen::Matrix2cd free_kernel_matrix(const Params& par, cplx z, cplx w, int sgn) {
    const cplx pref = 1.0 / (2.0 * par.eta * par.eta * w);
    return pref * (cplx(0, 1) * par.eta * w * static_cast<double>(sgn) * pauli2() +
                   0.5 * par.omega * pauli3() + z * Eigen::Matrix2cd::Identity());
}

Eigen::Matrix2cd interaction_factor(const Params& par, cplx z, cplx w) {
    const cplx den = pole_denominator(par, z);
    if (std::abs(den) <= 1e-14 * pole_denominator_scale(par, z))
        throw std::runtime_error("kernel evaluated at a spectral pole");
    const cplx a = 2.0 * par.eta * par.eta * w;
    const Eigen::Matrix2cd num =
        a * (a * Eigen::Matrix2cd::Identity() -
             (par.gamma + 2.0 * w) *
                 (0.5 * par.omega * pauli3() - z * Eigen::Matrix2cd::Identity()));
    return num / den;
}

}  // namespace

KernelJet free_kernel(const Params& par, cplx z, double x) {
    require_gap_params(par);
    if (x == 0.0) throw std::invalid_argument("free_kernel requires x != 0");
    const cplx w = kernel_decay(par, z);
    const int sgn = x > 0.0 ? 1 : -1;
    const cplx e = std::exp(-w * std::abs(x));
    const Eigen::Matrix2cd base = free_kernel_matrix(par, z, w, sgn);
    KernelJet jet;
    jet.g = e * base;
    jet.dg = -w * static_cast<double>(sgn) * jet.g;
    jet.d2g = -w * static_cast<double>(sgn) * jet.dg;
    return jet;
}

KernelJet free_kernel_side(const Params& par, cplx z, int side) {
    require_gap_params(par);
    if (side != 1 && side != -1) throw std::invalid_argument("side must be ±1");
    const cplx w = kernel_decay(par, z);
    KernelJet jet;
    jet.g = free_kernel_matrix(par, z, w, side);
    jet.dg = -w * static_cast<double>(side) * jet.g;
    jet.d2g = -w * static_cast<double>(side) * jet.dg;
    return jet;
}

KernelJet green_kernel(const Params& par, cplx z, double x) {
    KernelJet jet = free_kernel(par, z, x);
    const Eigen::Matrix2cd phi = interaction_factor(par, z, gap_decay(par, z));
    jet.g = jet.g * phi;
    jet.dg = jet.dg * phi;
    jet.d2g = jet.d2g * phi;
    return jet;
}

KernelJet green_kernel_side(const Params& par, cplx z, int side) {
    KernelJet jet = free_kernel_side(par, z, side);
    const Eigen::Matrix2cd phi = interaction_factor(par, z, gap_decay(par, z));
    jet.g = jet.g * phi;
    jet.dg = jet.dg * phi;
    jet.d2g = jet.d2g * phi;
    return jet;
}

Eigen::Vector2cd weak_eigenfunction(const Params& par, const GapState& st,
                                    const Eigen::Vector2cd& f0, double x) {
    if (x == 0.0) throw std::invalid_argument("weak eigenfunction requires x != 0");
    if (par.gamma >= 0.0) throw std::invalid_argument("weak form requires gamma < 0");
    const int slot = st.branch == Branch::plus ? 1 : 0;
    if (f0(slot) != cplx(0.0, 0.0))
        throw std::invalid_argument("f0 must vanish in the branch's zero slot");
    const double w = gap_decay(par, st.eps);
    const KernelJet k = free_kernel(par, cplx(st.eps, 0.0), x);
    return -(par.gamma + 2.0 * w) * (k.g * f0);
}

}  // namespace soc1d::dirac
