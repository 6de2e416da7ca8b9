#include "soc1d/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "soc1d/bound.hpp"
#include "soc1d/dirac.hpp"
#include "soc1d/dispersion.hpp"
#include "soc1d/model.hpp"
#include "soc1d/oracle.hpp"
#include "soc1d/soc.hpp"

namespace soc1d::invariants {

namespace {

constexpr double kCanonical[] = {0.1, 0.36, 0.5, 0.61, 1.0, 1.32};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// Residual of the full Hamiltonian ODE away from the origin, evaluated with
// the analytic derivatives carried by the jet.
double ode_residual(const Params& par, const SpinorJet& jet, double lam) {
    const Eigen::Vector2cd r = -jet.d2f - cplx(0, 1) * par.eta * (pauli2() * jet.df) +
                               0.5 * par.omega * (pauli3() * jet.f) - lam * jet.f;
    return r.norm();
}

// Gap states solve the first-order (atom-light) equation, not the Hamiltonian.
double first_order_residual(const Params& par, const SpinorJet& jet, double eps) {
    const Eigen::Vector2cd r = -cplx(0, 1) * par.eta * (pauli2() * jet.df) +
                               0.5 * par.omega * (pauli3() * jet.f) - eps * jet.f;
    return r.norm();
}

double kernel_ode_residual(const Params& par, const KernelJet& jet, cplx z) {
    const Eigen::Matrix2cd r = -jet.d2g - cplx(0, 1) * par.eta * (pauli2() * jet.dg) +
                               0.5 * par.omega * (pauli3() * jet.g) - z * jet.g;
    return r.norm();
}

struct Suite {
    Report report;
    void add(const std::string& name, bool pass, const std::string& detail) {
        report.items.push_back({name, pass, detail});
        if (!pass) report.pass = false;
    }
    void add_worst(const std::string& name, double worst, double tol) {
        add(name, worst <= tol, "worst " + fmt(worst) + " vs " + fmt(tol));
    }
};

void check_dispersion(Suite& s, const Params& par) {
    double worst_sym = 0.0, worst_order = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double p = -2.0 + i * 0.01;
        const auto a = dispersion_branches(par, p);
        const auto b = dispersion_branches(par, -p);
        worst_sym = std::max({worst_sym, std::abs(a.lambda_plus - b.lambda_plus),
                              std::abs(a.lambda_minus - b.lambda_minus)});
        worst_order = std::max(worst_order, a.lambda_minus - a.lambda_plus);
    }
    s.add_worst("dispersion: even in p", worst_sym, 1e-13);
    s.add("dispersion: branch order", worst_order <= 0.0,
          "max(lambda_minus - lambda_plus) = " + fmt(worst_order));

    const double edge = essential_edge(par);
    double grid_min = 1e300;
    for (int i = 0; i <= 20000; ++i) {
        const double p = -2.0 + i * 2e-4;
        grid_min = std::min(grid_min, lambda_minus(par, p));
    }
    s.add_worst("dispersion: edge vs grid minimum", std::abs(grid_min - edge), 1e-6);

    double worst_crit = 0.0;
    for (double pc : critical_momenta(par)) {
        const double h = 1e-6;
        const double d = (lambda_minus(par, pc + h) -
                          lambda_minus(par, pc - h)) /
                         (2.0 * h);
        worst_crit = std::max(worst_crit, std::abs(d));
    }
    s.add_worst("dispersion: critical momenta stationary", worst_crit, 1e-6);
}

void check_gap(Suite& s, const Params& par) {
    const auto states = dirac::spectrum(par);
    double worst_eq = 0.0, worst_pole = 0.0, worst_bc = 0.0, worst_ode = 0.0,
           worst_weak = 0.0;
    bool inside = true;
    for (const auto& st : states) {
        inside = inside && std::abs(st.eps) < 0.5 * par.omega;
        worst_eq = std::max(worst_eq, std::abs(dirac::branch_equation(par, st.branch, st.eps)));
        const double scale = dirac::pole_denominator_scale(par, st.eps);
        worst_pole = std::max(
            worst_pole, std::abs(dirac::pole_denominator(par, cplx(st.eps, 0.0))) / scale);
        worst_bc = std::max(worst_bc,
                            oracle::boundary_check(par, dirac::eigenfunction_limits(par, st)));
        const Eigen::Vector2cd f0 = dirac::eigenfunction_limits(par, st).mean();
        for (double x : {-2.0, -0.5, 0.7, 1.9}) {
            const auto jet = dirac::eigenfunction(par, st, x);
            worst_ode = std::max(worst_ode, first_order_residual(par, jet, st.eps));
            worst_weak =
                std::max(worst_weak,
                         (dirac::weak_eigenfunction(par, st, f0, x) - jet.f).norm());
        }
    }
    s.add("gap: roots strictly inside", inside, fmt(static_cast<double>(states.size())) +
                                                    " roots");
    s.add_worst("gap: branch equation residual", worst_eq, 1e-10);
    s.add_worst("gap: kernel pole at each root", worst_pole, 1e-8);
    s.add_worst("gap: boundary condition", worst_bc, 1e-12);
    s.add_worst("gap: first-order equation off origin", worst_ode, 1e-10);
    s.add_worst("gap: weak vs strict form", worst_weak, 1e-10);
}

void check_embedded(Suite& s, const Params& par) {
    double worst_id = 0.0, worst_res = 0.0, worst_ode = 0.0;
    bool consistent = true;
    const auto res = soc::states(par);
    const auto pts = soc::resonance_points(par);
    const double tol = 1e-9 * std::max(1.0, par.omega);
    for (const auto& st : res.states) {
        const double w = gap_decay(par, st.parent.eps);
        const double lam1 = st.parent.eps - w * w;
        const double sign = st.parent.branch == Branch::plus ? 1.0 : -1.0;
        const double lam2 = 0.5 * (par.gamma * w + sign * par.omega);
        worst_id = std::max({worst_id, std::abs(st.lambda - lam1), std::abs(lam1 - lam2)});
        for (double pt : pts)
            worst_res = std::max(worst_res, tol - std::abs(st.parent.eps - pt));
        // The parent solves the first-order equation at eps and the full
        // Hamiltonian at lambda with the same spinor.
        for (double x : {-1.6, 0.9}) {
            const auto jet = dirac::eigenfunction(par, st.parent, x);
            worst_ode = std::max({worst_ode, first_order_residual(par, jet, st.parent.eps),
                                  ode_residual(par, jet, st.lambda)});
        }
        try {
            (void)soc::classify(par, st.parent.eps);
        } catch (const std::exception&) {
            consistent = false;
        }
    }
    s.add_worst("embedded: eigenvalue double identity", worst_id, 1e-10);
    s.add("embedded: resonance exclusion", worst_res <= 0.0,
          fmt(static_cast<double>(res.states.size())) + " states, " +
              fmt(static_cast<double>(res.excluded.size())) + " excluded");
    s.add_worst("embedded: both eigenvalue equations", worst_ode, 1e-10);
    s.add("embedded: classification consistent", consistent, "");
}

void check_bound(Suite& s, const Params& par, double cubic_fault) {
    const auto spec = bound::spectrum(par);
    const double edge = essential_edge(par);

    bool below = true, decaying = true;
    double worst_res = 0.0, worst_bc = 0.0, worst_ode = 0.0, worst_weak = 0.0;
    for (const auto& st : spec.states) {
        below = below && st.lambda < edge - 1e-12;
        decaying = decaying && st.m.p1.imag() > 0.0 && st.m.p2.imag() > 0.0;
        worst_res = std::max(worst_res,
                             std::abs(bound::resolvent_condition(par, st.family, st.lambda)));
        worst_bc = std::max(worst_bc,
                            oracle::boundary_check(par, bound::eigenfunction_limits(par, st)));
        const Eigen::Vector2cd f0 = bound::weak_f0(par, st);
        for (double x : {-1.3, -0.4, 0.6, 1.7}) {
            const auto jet = bound::eigenfunction(par, st, x);
            worst_ode = std::max(worst_ode, ode_residual(par, jet, st.lambda));
            worst_weak = std::max(
                worst_weak,
                (bound::weak_eigenfunction(par, st.lambda, f0, x) - jet.f).norm());
        }
    }
    s.add("bound: below the essential edge", below,
          fmt(static_cast<double>(spec.states.size())) + " states");
    s.add("bound: decaying momenta", decaying, "");
    s.add_worst("bound: resolvent condition at roots", worst_res, 1e-9);
    s.add_worst("bound: boundary condition", worst_bc, 1e-12);
    s.add_worst("bound: ODE residual off origin", worst_ode, 1e-10);
    s.add_worst("bound: weak vs strict form", worst_weak, 1e-10);

    // Checker-side copy of the cubic: every accepted eigenvalue must be one of
    // its roots.  (The converse is false: squaring the resolvent condition
    // also manufactures real admissible roots belonging to neither family.)
    // The fault flag perturbs this copy only, to prove the cross-check bites.
    double worst_cubic = 0.0;
    for (const auto& st : spec.states) {
        auto c = bound::cubic_coefficients(par, st.family);
        const double m =
            std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
        if (cubic_fault != 0.0) c[2] += cubic_fault * m;
        const double lam = st.lambda;
        const double val = ((c[0] * lam + c[1]) * lam + c[2]) * lam + c[3];
        worst_cubic = std::max(
            worst_cubic,
            std::abs(val) / (m * std::max(1.0, std::abs(lam) * std::abs(lam) * std::abs(lam))));
    }
    s.add_worst("bound: accepted states are cubic roots", worst_cubic, 1e-9);
}

void check_kernels(Suite& s, const Params& par) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

    // Full-line operator kernels at a point below the essential spectrum.
    const cplx z(essential_edge(par) - 0.4, 0.0);
    const auto gl = bound::free_kernel_side(par, z, -1);
    const auto gr = bound::free_kernel_side(par, z, +1);
    s.add_worst("kernel: free kernel continuity", (gr.g - gl.g).norm(), 1e-12);
    s.add_worst("kernel: free kernel derivative jump", (gr.dg - gl.dg + id).norm(), 1e-12);
    double worst_ode = 0.0;
    for (double x : {-1.1, 0.8}) {
        worst_ode = std::max(worst_ode,
                             kernel_ode_residual(par, bound::free_kernel(par, z, x), z));
        worst_ode = std::max(worst_ode,
                             kernel_ode_residual(par, bound::green_kernel(par, z, x), z));
    }
    s.add_worst("kernel: ODE residual off origin", worst_ode, 1e-12);

    Params tiny = par;
    tiny.gamma = -1e-12;
    double worst_red = 0.0;
    for (double x : {-0.9, 0.0, 1.2}) {
        const auto g0 = bound::free_kernel(par, z, x);
        const auto g = bound::green_kernel(tiny, z, x);
        worst_red = std::max(worst_red, (g.g - g0.g).norm());
    }
    s.add_worst("kernel: interaction switch-off", worst_red, 1e-10);

    // Half-bound (gap) kernel: first-order operator jump relation.
    const cplx zg(0.3 * 0.5 * par.omega, 0.0);
    const auto kl = dirac::free_kernel_side(par, zg, -1);
    const auto kr = dirac::free_kernel_side(par, zg, +1);
    const Eigen::Matrix2cd jump =
        -cplx(0, 1) * par.eta * (pauli2() * (kr.g - kl.g));
    s.add_worst("kernel: gap kernel jump", (jump - id).norm(), 1e-12);
}

void check_oracle(Suite& s) {
    const Params par{0.6, 0.5, -1.0};
    const oracle::GridSpec spec{30.0, 6000, 1e-2, false};
    const oracle::GridOperator op(par, spec);
    const double edge = essential_edge(par);

    std::vector<double> analytic;
    for (const auto& st : bound::spectrum(par).states) analytic.push_back(st.lambda);
    const auto numeric = oracle::eigenvalues_below(op, edge - 1e-3);
    const auto cmp = oracle::compare_spectra(analytic, numeric, 5e-3, edge - 1e-3);
    s.add("oracle: grid spot check",
          cmp.unmatched_analytic.empty() && !cmp.matches.empty(),
          fmt(static_cast<double>(cmp.matches.size())) + " matched");
}

}  // namespace

Report run(const Options& opt) {
    Suite s;
    for (const double omega : kCanonical) {
        const Params par{0.6, omega, -1.0};
        const std::string tag = " [omega=" + fmt(omega) + "]";
        const std::size_t start = s.report.items.size();
        check_dispersion(s, par);
        check_gap(s, par);
        check_embedded(s, par);
        check_bound(s, par, opt.cubic_fault);
        check_kernels(s, par);
        for (std::size_t i = start; i < s.report.items.size(); ++i)
            s.report.items[i].name += tag;
    }
    if (opt.with_oracle) check_oracle(s);
    return s.report;
}

}  // namespace soc1d::invariants
