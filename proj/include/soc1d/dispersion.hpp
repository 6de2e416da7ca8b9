#pragma once

#include <vector>

#include "soc1d/model.hpp"

namespace soc1d {

struct DispersionPoint {
    double p;
    double lambda_minus;
    double lambda_plus;
};

// lambda_pm(p) = p^2 ± sqrt(eta^2 p^2 + (Omega/2)^2).
DispersionPoint dispersion_branches(const Params& par, double p);
double lambda_minus(const Params& par, double p);
double lambda_plus(const Params& par, double p);

// Bottom of the two-band continuum: lambda_floor for 0 <= Omega <= eta^2,
// -Omega/2 for Omega > eta^2 (single piecewise expression, <= convention).
double essential_edge(const Params& par);

// Gap half-width Omega/2; the first-order operator's continuum is
// (-inf, -Omega/2] u [Omega/2, inf).
double gap_edge(const Params& par);

// Stationary points of lambda_minus: {0}, plus ±sqrt(eta^4 - Omega^2)/(2 eta)
// when Omega <= eta^2 (the two degenerate minima).
std::vector<double> critical_momenta(const Params& par);

}  // namespace soc1d
