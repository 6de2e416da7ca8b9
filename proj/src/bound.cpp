#include "soc1d/bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "soc1d/dispersion.hpp"

namespace soc1d::bound {

namespace {

constexpr double kImTol = 1e-12;  // |Im p| at or below this counts as real

cplx principal_upper(cplx v, int* flip) {
    cplx r = std::sqrt(v);
    if (r.imag() < 0.0) {
        r = -r;
        if (flip) *flip = -1;
    } else if (flip) {
        *flip = 1;
    }
    return r;
}

double max_abs(const std::array<double, 4>& c) {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
}

cplx horner(const std::array<double, 4>& c, cplx x) {
    return ((c[0] * x + c[1]) * x + c[2]) * x + c[3];
}

cplx horner_deriv(const std::array<double, 4>& c, cplx x) {
    return (3.0 * c[0] * x + 2.0 * c[1]) * x + c[2];
}

// One exponential-sum side of an eigenfunction: f(x) = sum_j coef_j vec_j e^{i mom_j x}.
struct TermSum {
    std::array<cplx, 2> coef;
    std::array<Eigen::Vector2cd, 2> vec;
    std::array<cplx, 2> mom;

    Eigen::Vector2cd value(double x) const {
        Eigen::Vector2cd f = Eigen::Vector2cd::Zero();
        for (int j = 0; j < 2; ++j)
            f += coef[j] * vec[j] * std::exp(cplx(0, 1) * mom[j] * x);
        return f;
    }
    SpinorJet jet(double x) const {
        SpinorJet out;
        out.f = out.df = out.d2f = Eigen::Vector2cd::Zero();
        for (int j = 0; j < 2; ++j) {
            const cplx im = cplx(0, 1) * mom[j];
            const Eigen::Vector2cd t = coef[j] * vec[j] * std::exp(im * x);
            out.f += t;
            out.df += im * t;
            out.d2f += im * im * t;
        }
        return out;
    }
};

Eigen::Vector2cd upper_vec(const Params& par, double lam, cplx p, cplx psq) {
    Eigen::Vector2cd v;
    v << lam + 0.5 * par.omega - psq, cplx(0, 1) * par.eta * p;
    return v;
}

TermSum build_terms(const Params& par, const State& st, cplx C, int side) {
    const Momenta& m = st.m;
    const std::array<cplx, 2> p{m.p1, m.p2};
    const std::array<cplx, 2> psq{m.p1_sq, m.p2_sq};
    TermSum t;
    for (int j = 0; j < 2; ++j) t.mom[j] = side > 0 ? p[j] : -p[j];
    if (st.family == Branch::plus) {
        for (int j = 0; j < 2; ++j) {
            t.coef[j] = (j == 0 ? C : -C) / p[j];
            t.vec[j] = upper_vec(par, st.lambda, t.mom[j], psq[j]);
        }
    } else {
        for (int j = 0; j < 2; ++j) {
            const cplx den = st.lambda + 0.5 * par.omega - psq[j];
            if (std::abs(den) <= 1e-12 * std::max(1.0, std::abs(st.lambda)))
                throw std::runtime_error(
                    "lower-family spinor denominator vanishes (lambda at the continuum)");
            const double s = (j == 0) == (side > 0) ? 1.0 : -1.0;
            t.coef[j] = s * C;
            Eigen::Vector2cd w;
            w << 1.0, cplx(0, 1) * par.eta * t.mom[j] / den;
            t.vec[j] = w;
        }
    }
    return t;
}

SpinorJet eta_zero_jet(const Params& par, const State& st, double x, cplx C) {
    const double kappa = -0.5 * par.gamma;
    Eigen::Vector2cd chi;
    chi << (st.family == Branch::plus ? 1.0 : 0.0), (st.family == Branch::plus ? 0.0 : 1.0);
    const double rate = x > 0.0 ? -kappa : kappa;
    SpinorJet jet;
    jet.f = C * std::exp(rate * x) * chi;
    jet.df = rate * jet.f;
    jet.d2f = rate * jet.df;
    return jet;
}

}  // namespace

Momenta momenta(const Params& par, cplx z) {
    const double e2 = par.eta * par.eta;
    const cplx disc = e2 * (e2 + 4.0 * z) + par.omega * par.omega;
    const double disc_scale =
        std::max(1.0, e2 * e2 + par.omega * par.omega + 4.0 * e2 * std::abs(z));
    if (std::abs(disc) <= 1e-13 * disc_scale)
        throw std::invalid_argument("momentum branch point (z at lambda_floor)");
    const cplx rt = std::sqrt(disc);
    Momenta m;
    m.p1_sq = z + 0.5 * e2 + 0.5 * rt;
    m.p2_sq = z + 0.5 * e2 - 0.5 * rt;
    m.p1 = principal_upper(m.p1_sq, &m.s1);
    m.p2 = principal_upper(m.p2_sq, &m.s2);
    m.admissible = m.p1.imag() > kImTol && m.p2.imag() > kImTol;
    return m;
}

cplx dispersion_quartic(const Params& par, cplx z, cplx p) {
    const cplx a = p * p - z;
    return a * a - par.eta * par.eta * p * p - 0.25 * par.omega * par.omega;
}

cplx resolvent_condition(const Params& par, Branch family, double lam) {
    const Momenta m = momenta(par, cplx(lam, 0.0));
    const double sign = family == Branch::plus ? 1.0 : -1.0;
    return 2.0 * m.p1 * m.p2 * (m.p1 + m.p2) +
           cplx(0, 1) * par.gamma * (m.p1 * m.p2 + lam + sign * 0.5 * par.omega);
}

std::array<double, 4> cubic_coefficients(const Params& par, Branch family) {
    // The resolvent sign and the cubic's own sign slot are opposite: squaring
    // the condition swaps the pairing between the two families.
    const double s = family == Branch::plus ? -1.0 : 1.0;
    const double e2 = par.eta * par.eta;
    const double g2 = par.gamma * par.gamma;
    const double om = par.omega;
    return {64.0 * e2,
            16.0 * (e2 * (g2 + e2) + om * (om + s * 4.0 * e2)),
            s * 8.0 * om * (2.0 * om * om + (g2 + 2.0 * e2) * (e2 + s * om)),
            om * om * (4.0 * e2 * e2 + (g2 + s * 2.0 * om) * (g2 + s * 2.0 * om))};
}

std::vector<cplx> solve_cubic(const std::array<double, 4>& c) {
    const double scale = max_abs(c);
    if (scale == 0.0) throw std::invalid_argument("solve_cubic: zero polynomial");
    if (std::abs(c[0]) <= 1e-14 * scale)
        throw std::invalid_argument("solve_cubic: degenerate (leading coefficient ~ 0)");

    const double a = c[1] / c[0], b = c[2] / c[0], d = c[3] / c[0];
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + d;
    std::vector<cplx> roots;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc >= 0.0) {
        if (p >= 0.0) {
            // disc >= 0 with p >= 0 forces p = q = 0: triple root.
            roots.assign(3, cplx(0.0, 0.0));
        } else {
            const double m = 2.0 * std::sqrt(-p / 3.0);
            const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
            const double th = std::acos(arg) / 3.0;
            for (int k = 0; k < 3; ++k)
                roots.emplace_back(m * std::cos(th - 2.0 * M_PI * k / 3.0), 0.0);
        }
    } else {
        const double r = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double s = -q / 2.0;
        const double u = std::cbrt(s >= 0.0 ? s + r : s - r);
        const double v = u == 0.0 ? 0.0 : -p / (3.0 * u);
        roots.emplace_back(u + v, 0.0);
        roots.emplace_back(-0.5 * (u + v), 0.5 * std::sqrt(3.0) * (u - v));
        roots.emplace_back(-0.5 * (u + v), -0.5 * std::sqrt(3.0) * (u - v));
    }

    const double shift = a / 3.0;
    for (auto& root : roots) {
        root -= shift;
        for (int it = 0; it < 3; ++it) {
            const cplx f = horner(c, root);
            if (std::abs(f) <= 1e-12 * scale) break;
            const cplx df = horner_deriv(c, root);
            if (std::abs(df) == 0.0) break;
            root -= f / df;
        }
    }
    return roots;
}

Spectrum spectrum(const Params& par) {
    validate(par);
    if (par.eta == 0.0) return eta_zero_spectrum(par);

    Spectrum rep;
    rep.edge = essential_edge(par);
    const double gap = -0.5 * par.omega;
    const double lam0 = lambda_floor(par);
    const double lam0_tol = 1e-9 * std::max(1.0, std::abs(lam0));

    for (Branch family : {Branch::plus, Branch::minus}) {
        const auto coeffs = cubic_coefficients(par, family);
        std::vector<double> accepted;
        for (const cplx& root : solve_cubic(coeffs)) {
            const double re = root.real();
            if (std::abs(root.imag()) > 1e-9 * std::max(1.0, std::abs(root))) {
                rep.rejected.push_back({re, family, "complex pair", {}, {}});
                continue;
            }
            if (!(re < gap)) {
                rep.rejected.push_back({re, family, "not below -omega/2", {}, {}});
                continue;
            }
            if (std::abs(re - lam0) <= lam0_tol) {
                rep.rejected.push_back({re, family, "at the momentum branch point", {}, {}});
                continue;
            }
            Momenta m = momenta(par, cplx(re, 0.0));
            if (!m.admissible) {
                rep.rejected.push_back({re, family, "inadmissible momenta", m.p1, m.p2});
                continue;
            }
            // The resolvent condition is i times a real function of lambda
            // here; polish the root on that function directly.
            double lam = re;
            for (int it = 0; it < 2; ++it) {
                const double h = 1e-7 * std::max(1.0, std::abs(lam));
                const double f0 = resolvent_condition(par, family, lam).imag();
                const double fp = resolvent_condition(par, family, lam + h).imag();
                const double fm = resolvent_condition(par, family, lam - h).imag();
                const double d = (fp - fm) / (2.0 * h);
                if (d == 0.0) break;
                const double cand = lam - f0 / d;
                if (!(cand < gap) || std::abs(cand - lam0) <= lam0_tol) break;
                lam = cand;
            }
            m = momenta(par, cplx(lam, 0.0));
            const double resid = std::abs(resolvent_condition(par, family, lam));
            if (!m.admissible || resid > 1e-9) {
                rep.rejected.push_back({lam, family, "resolvent residual above tolerance",
                                        m.p1, m.p2});
                continue;
            }
            accepted.push_back(lam);
        }
        std::sort(accepted.begin(), accepted.end());
        for (std::size_t i = 0; i < accepted.size(); ++i) {
            if (i > 0 && std::abs(accepted[i] - accepted[i - 1]) <=
                             1e-9 * std::max(1.0, std::abs(accepted[i])))
                continue;  // repeated cubic root
            rep.states.push_back(
                {accepted[i], family, momenta(par, cplx(accepted[i], 0.0))});
        }
    }
    std::sort(rep.states.begin(), rep.states.end(),
              [](const State& a, const State& b) { return a.lambda < b.lambda; });

    if (par.gamma < 0.0 && par.omega > 0.0) {  // no gap, no gap states
        auto so = soc::states(par);
        rep.so_states = std::move(so.states);
        rep.resonances = std::move(so.excluded);
    }
    return rep;
}

Spectrum eta_zero_spectrum(const Params& par) {
    validate(par);
    if (par.eta != 0.0)
        throw std::invalid_argument("eta_zero_spectrum requires eta = 0");
    Spectrum rep;
    rep.edge = -0.5 * par.omega;
    if (par.gamma > 0.0) return rep;

    const double base = -0.25 * par.gamma * par.gamma;
    const double kappa = -0.5 * par.gamma;
    if (par.omega == 0.0) {
        // Doubly degenerate level; both spin components bind independently.
        Momenta m;
        m.p1 = m.p2 = cplx(0.0, kappa);
        m.p1_sq = m.p2_sq = cplx(base, 0.0);
        m.admissible = true;
        rep.states.push_back({base, Branch::plus, m});
        rep.states.push_back({base, Branch::minus, m});
        return rep;
    }
    const double upper = base + 0.5 * par.omega;
    const double lower = base - 0.5 * par.omega;
    const Momenta m_up = momenta(par, cplx(upper, 0.0));
    if (m_up.admissible)
        rep.states.push_back({upper, Branch::plus, m_up});
    else
        rep.rejected.push_back({upper, Branch::plus, "inadmissible momenta", m_up.p1, m_up.p2});
    const Momenta m_lo = momenta(par, cplx(lower, 0.0));
    rep.states.push_back({lower, Branch::minus, m_lo});
    std::sort(rep.states.begin(), rep.states.end(),
              [](const State& a, const State& b) { return a.lambda < b.lambda; });
    return rep;
}

SpinorJet eigenfunction(const Params& par, const State& st, double x, cplx C) {
    if (x == 0.0) throw std::invalid_argument("eigenfunction requires x != 0");
    if (par.eta == 0.0) return eta_zero_jet(par, st, x, C);
    return build_terms(par, st, C, x > 0.0 ? 1 : -1).jet(x);
}

SideLimits eigenfunction_limits(const Params& par, const State& st, cplx C) {
    SideLimits lim;
    if (par.eta == 0.0) {
        const SpinorJet right = eta_zero_jet(par, st, 1e-300, C);
        lim.f_plus = lim.f_minus = right.f;
        lim.df_plus = right.df;
        lim.df_minus = -right.df;
        return lim;
    }
    const SpinorJet right = build_terms(par, st, C, 1).jet(0.0);
    const SpinorJet left = build_terms(par, st, C, -1).jet(0.0);
    lim.f_plus = right.f;
    lim.df_plus = right.df;
    lim.f_minus = left.f;
    lim.df_minus = left.df;
    return lim;
}

double l2_norm(const Params& par, const State& st) {
    if (par.eta == 0.0) return std::sqrt(-2.0 / par.gamma);
    const TermSum t = build_terms(par, st, 1.0, 1);
    cplx acc = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const cplx overlap = t.vec[a].dot(t.vec[b]);  // conjugates the first factor
            acc += std::conj(t.coef[a]) * t.coef[b] * overlap * cplx(0, 1) /
                   (t.mom[b] - std::conj(t.mom[a]));
        }
    // Left and right halves carry equal weight by the mirror symmetry.
    return std::sqrt(2.0 * acc.real());
}

Eigen::Vector2cd weak_eigenfunction(const Params& par, double lam,
                                    const Eigen::Vector2cd& f0, double x) {
    if (x == 0.0) throw std::invalid_argument("weak eigenfunction requires x != 0");
    const KernelJet k = free_kernel(par, cplx(lam, 0.0), x);
    return -par.gamma * (k.g * f0);
}

Eigen::Vector2cd weak_f0(const Params& par, const State& st, cplx C) {
    if (par.eta == 0.0)
        throw std::invalid_argument("weak_f0 closed form requires eta > 0");
    const cplx dsq = st.m.p1_sq - st.m.p2_sq;
    Eigen::Vector2cd f0;
    if (st.family == Branch::plus)
        f0 << cplx(0, -2) * C / par.gamma * dsq, 0.0;
    else
        f0 << 0.0, 2.0 * C / (par.gamma * par.eta) * dsq;
    return f0;
}

namespace {

Eigen::Matrix2cd free_term(const Params& par, cplx z, cplx p, cplx psq) {
    return (psq - z) * Eigen::Matrix2cd::Identity() - coupling_symbol(par, p);
}

KernelJet free_kernel_eval(const Params& par, cplx z, double dx, int side) {
    const Momenta m = momenta(par, z);
    if (!m.admissible)
        throw std::invalid_argument("free kernel requires z off the continuum");
    const cplx pref = cplx(0, 1) / (2.0 * (m.p1_sq - m.p2_sq));
    const std::array<cplx, 2> p{m.p1, m.p2};
    const std::array<cplx, 2> psq{m.p1_sq, m.p2_sq};
    KernelJet jet;
    jet.g = jet.dg = jet.d2g = Eigen::Matrix2cd::Zero();
    for (int j = 0; j < 2; ++j) {
        const cplx mom = side > 0 ? p[j] : -p[j];  // e^{i mom dx} decays on this side
        const cplx im = cplx(0, 1) * mom;
        const Eigen::Matrix2cd t = (j == 0 ? pref : -pref) / p[j] *
                                   std::exp(im * dx) * free_term(par, z, mom, psq[j]);
        jet.g += t;
        jet.dg += im * t;
        jet.d2g += im * im * t;
    }
    return jet;
}

Eigen::Matrix2cd green_factor(const Params& par, cplx z, const Momenta& m, cplx* pref_out) {
    const cplx den = green_denominator(par, z);
    const cplx x12 = 2.0 * m.p1 * m.p2 * (m.p1 + m.p2) +
                     cplx(0, 1) * par.gamma * (m.p1 * m.p2 + z);
    const double scale =
        std::max({1.0, std::norm(x12), 0.25 * par.gamma * par.gamma * par.omega * par.omega});
    if (std::abs(den) <= 1e-14 * scale)
        throw std::runtime_error("kernel evaluated at a spectral pole");
    *pref_out = 2.0 * m.p1 * m.p2 * (m.p1 + m.p2) / den;
    return m.p1 * m.p2 * (cplx(0, 1) * par.gamma + 2.0 * (m.p1 + m.p2)) *
               Eigen::Matrix2cd::Identity() -
           cplx(0, 1) * par.gamma *
               (0.5 * par.omega * pauli3() - z * Eigen::Matrix2cd::Identity());
}

}  // namespace

KernelJet free_kernel(const Params& par, cplx z, double dx) {
    validate(par);
    // Continuous at 0; the jet's derivatives there are the right-side limits.
    return free_kernel_eval(par, z, dx, dx >= 0.0 ? 1 : -1);
}

KernelJet free_kernel_side(const Params& par, cplx z, int side) {
    validate(par);
    if (side != 1 && side != -1) throw std::invalid_argument("side must be ±1");
    return free_kernel_eval(par, z, 0.0, side);
}

KernelJet green_kernel(const Params& par, cplx z, double dx) {
    KernelJet jet = free_kernel(par, z, dx);
    cplx pref;
    const Eigen::Matrix2cd fac = green_factor(par, z, momenta(par, z), &pref);
    jet.g = pref * jet.g * fac;
    jet.dg = pref * jet.dg * fac;
    jet.d2g = pref * jet.d2g * fac;
    return jet;
}

KernelJet green_kernel_side(const Params& par, cplx z, int side) {
    KernelJet jet = free_kernel_side(par, z, side);
    cplx pref;
    const Eigen::Matrix2cd fac = green_factor(par, z, momenta(par, z), &pref);
    jet.g = pref * jet.g * fac;
    jet.dg = pref * jet.dg * fac;
    jet.d2g = pref * jet.d2g * fac;
    return jet;
}

cplx green_denominator(const Params& par, cplx z) {
    const Momenta m = momenta(par, z);
    const cplx x = 2.0 * m.p1 * m.p2 * (m.p1 + m.p2) +
                   cplx(0, 1) * par.gamma * (m.p1 * m.p2 + z);
    const cplx gw = 0.5 * par.gamma * par.omega;
    return x * x + gw * gw;
}

double green_denominator_scale(const Params& par, cplx z) {
    const Momenta m = momenta(par, z);
    const cplx x = 2.0 * m.p1 * m.p2 * (m.p1 + m.p2) +
                   cplx(0, 1) * par.gamma * (m.p1 * m.p2 + z);
    return std::max(
        {1.0, std::norm(x), 0.25 * par.gamma * par.gamma * par.omega * par.omega});
}

}  // namespace soc1d::bound
