#include "soc1d/soc.hpp"

#include <cmath>
#include <stdexcept>

#include "soc1d/dispersion.hpp"

namespace soc1d::soc {

const char* class_code(Class c) {
    switch (c) {
        case Class::below: return "below";
        case Class::sigma1: return "sigma1";
        case Class::sigma2: return "sigma2";
    }
    return "?";
}

double lambda_from_eps(const Params& par, double eps) {
    const double w = gap_decay(par, eps);
    return eps - w * w;
}

double weak_eigenvalue(const Params& par, Branch branch, double eps) {
    const double w = gap_decay(par, eps);  // validates eta and the gap
    const double sign = branch == Branch::plus ? 1.0 : -1.0;
    return 0.5 * (par.gamma * w + sign * par.omega);
}

std::array<double, 2> resonance_points(const Params& par) {
    if (par.eta <= 0.0) throw std::invalid_argument("resonance_points requires eta > 0");
    const double e2 = par.eta * par.eta;
    return {-0.5 * e2, 0.5 * par.omega - e2};
}

Class classify(const Params& par, double eps) {
    const double e2 = par.eta * par.eta;
    if (std::abs(eps) >= 0.5 * par.omega)
        throw std::invalid_argument("classify requires |eps| < omega/2");
    Class cls;
    if (par.omega <= e2) {
        cls = Class::sigma2;
    } else {
        cls = eps < 0.5 * par.omega - e2 ? Class::below : Class::sigma1;
    }
    // The interval test is authoritative; the lambda-vs-edge comparison must
    // agree with it or the state is inconsistent.
    const double lam = lambda_from_eps(par, eps);
    const double edge = essential_edge(par);
    const double tol = 1e-10 * std::max(1.0, std::abs(edge));
    if (cls == Class::below && !(lam < edge - tol))
        throw std::runtime_error("classification inconsistency: below but lambda >= edge");
    if (cls != Class::below && lam < edge - tol)
        throw std::runtime_error("classification inconsistency: embedded but lambda < edge");
    return cls;
}

Result states(const Params& par) {
    Result res;
    const auto parents = dirac::spectrum(par);
    const auto rp = resonance_points(par);
    const double tol = 1e-9 * std::max(1.0, par.omega);
    for (const auto& parent : parents) {
        const double lam = lambda_from_eps(par, parent.eps);
        int hit = -1;
        for (int i = 0; i < 2; ++i)
            if (std::abs(parent.eps - rp[i]) <= tol) hit = i;
        if (hit >= 0) {
            res.excluded.push_back({parent, lam, hit});
        } else {
            res.states.push_back({parent, lam, classify(par, parent.eps)});
        }
    }
    return res;
}

}  // namespace soc1d::soc
