#include "soc1d/dispersion.hpp"

#include <cmath>

namespace soc1d {

DispersionPoint dispersion_branches(const Params& par, double p) {
    const double root = std::sqrt(par.eta * par.eta * p * p + 0.25 * par.omega * par.omega);
    return {p, p * p - root, p * p + root};
}

double lambda_minus(const Params& par, double p) { return dispersion_branches(par, p).lambda_minus; }

double lambda_plus(const Params& par, double p) { return dispersion_branches(par, p).lambda_plus; }

double essential_edge(const Params& par) {
    if (par.eta == 0.0) return -0.5 * par.omega;
    if (par.omega <= par.eta * par.eta) return lambda_floor(par);
    return -0.5 * par.omega;
}

double gap_edge(const Params& par) { return 0.5 * par.omega; }

std::vector<double> critical_momenta(const Params& par) {
    if (par.eta <= 0.0) throw std::invalid_argument("critical_momenta requires eta > 0");
    const double e2 = par.eta * par.eta;
    if (par.omega > e2) return {0.0};
    const double p = std::sqrt(e2 * e2 - par.omega * par.omega) / (2.0 * par.eta);
    if (p == 0.0) return {0.0};  // Omega = eta^2: the three stationary points merge
    return {-p, 0.0, p};
}

}  // namespace soc1d
