#include "soc1d/model.hpp"

#include <cmath>
#include <stdexcept>

namespace soc1d {

void validate(const Params& par) {
    if (!std::isfinite(par.eta) || !std::isfinite(par.omega) || !std::isfinite(par.gamma))
        throw std::invalid_argument("parameters must be finite");
    if (par.eta < 0.0) throw std::invalid_argument("eta must be nonnegative");
    if (par.omega < 0.0) throw std::invalid_argument("omega must be nonnegative");
    if (par.gamma == 0.0) throw std::invalid_argument("gamma must be nonzero");
}

double gap_decay(const Params& par, double eps) {
    if (par.eta <= 0.0) throw std::invalid_argument("gap_decay requires eta > 0");
    const double half = 0.5 * par.omega;
    if (std::abs(eps) >= half)
        throw std::invalid_argument("gap_decay requires |eps| < omega/2");
    return std::sqrt(par.omega * par.omega - 4.0 * eps * eps) / (2.0 * par.eta);
}

cplx gap_decay(const Params& par, cplx z) {
    if (par.eta <= 0.0) throw std::invalid_argument("gap_decay requires eta > 0");
    return std::sqrt(par.omega * par.omega - 4.0 * z * z) / (2.0 * par.eta);
}

double lambda_floor(const Params& par) {
    if (par.eta <= 0.0) throw std::invalid_argument("lambda_floor requires eta > 0");
    const double r = par.omega / par.eta;
    return -0.25 * (par.eta * par.eta + r * r);
}

Eigen::Matrix2cd pauli2() {
    Eigen::Matrix2cd m;
    m << cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0);
    return m;
}

Eigen::Matrix2cd pauli3() {
    Eigen::Matrix2cd m;
    m << cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0);
    return m;
}

Eigen::Matrix2cd coupling_symbol(const Params& par, cplx p) {
    return par.eta * p * pauli2() + 0.5 * par.omega * pauli3();
}

}  // namespace soc1d
