#pragma once

// Shared helpers for the test suites: operator residuals evaluated with the
// analytic derivatives carried by jets, and a plain trapezoid rule.

#include <cmath>
#include <complex>
#include <functional>

#include "soc1d/model.hpp"

namespace testutil {

using soc1d::cplx;
using soc1d::KernelJet;
using soc1d::Params;
using soc1d::SpinorJet;

// || -f'' - i eta s2 f' + (Omega/2) s3 f - lam f ||
inline double hamiltonian_residual(const Params& par, const SpinorJet& jet, double lam) {
    const Eigen::Vector2cd r = -jet.d2f -
                               cplx(0, 1) * par.eta * (soc1d::pauli2() * jet.df) +
                               0.5 * par.omega * (soc1d::pauli3() * jet.f) - lam * jet.f;
    return r.norm();
}

// || -i eta s2 f' + (Omega/2) s3 f - eps f ||
inline double first_order_residual(const Params& par, const SpinorJet& jet, double eps) {
    const Eigen::Vector2cd r = -cplx(0, 1) * par.eta * (soc1d::pauli2() * jet.df) +
                               0.5 * par.omega * (soc1d::pauli3() * jet.f) - eps * jet.f;
    return r.norm();
}

inline double kernel_residual(const Params& par, const KernelJet& jet, cplx z) {
    const Eigen::Matrix2cd r = -jet.d2g -
                               cplx(0, 1) * par.eta * (soc1d::pauli2() * jet.dg) +
                               0.5 * par.omega * (soc1d::pauli3() * jet.g) - z * jet.g;
    return r.norm();
}

inline double first_order_kernel_residual(const Params& par, const KernelJet& jet, cplx z) {
    const Eigen::Matrix2cd r = -cplx(0, 1) * par.eta * (soc1d::pauli2() * jet.dg) +
                               0.5 * par.omega * (soc1d::pauli3() * jet.g) - z * jet.g;
    return r.norm();
}

inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; ++i) s += f(a + i * h);
    return s * h;
}

}  // namespace testutil
