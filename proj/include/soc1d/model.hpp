#pragma once

#include <complex>

#include <Eigen/Core>

namespace soc1d {

using cplx = std::complex<double>;

// Physical parameters of the 1D spin-orbit Hamiltonian with a point impurity.
// Units: hbar = 1, particle mass 1/2.
struct Params {
    double eta = 0.6;     // spin-orbit strength (momentum units)
    double omega = 0.5;   // Raman coupling (energy units), sets the gap width
    double gamma = -1.0;  // impurity strength (inverse length), < 0 attractive
};

// Throws std::invalid_argument naming the violated constraint.
void validate(const Params& par);

// Exponential decay rate omega_z = sqrt(Omega^2 - 4 z^2)/(2 eta) of solutions
// localized in the spectral gap; real positive for real z strictly inside it.
double gap_decay(const Params& par, double eps);
cplx gap_decay(const Params& par, cplx z);

// lambda_0 = -(eta^2 + (Omega/eta)^2)/4: branch point of the momentum map and
// the lower dispersion minimum whenever Omega <= eta^2.
double lambda_floor(const Params& par);

Eigen::Matrix2cd pauli2();
Eigen::Matrix2cd pauli3();

// Momentum-space symbol of the atom-light coupling: eta p sigma2 + (Omega/2) sigma3.
Eigen::Matrix2cd coupling_symbol(const Params& par, cplx p);

// Spinor value with one-sided first and second derivatives at a point.
struct SpinorJet {
    Eigen::Vector2cd f;
    Eigen::Vector2cd df;
    Eigen::Vector2cd d2f;
};

// 2x2 kernel slice with derivatives in the offset argument.
struct KernelJet {
    Eigen::Matrix2cd g;
    Eigen::Matrix2cd dg;
    Eigen::Matrix2cd d2g;
};

// One-sided boundary data at the origin.
struct SideLimits {
    Eigen::Vector2cd f_plus, f_minus;
    Eigen::Vector2cd df_plus, df_minus;
    Eigen::Vector2cd mean() const { return 0.5 * (f_plus + f_minus); }
    Eigen::Vector2cd jump() const { return f_plus - f_minus; }
    Eigen::Vector2cd djump() const { return df_plus - df_minus; }
};

// Sign tag shared by the gap branches and the eigenvalue families they feed:
// plus means the eigenfunction has vanishing mean lower component at 0,
// minus the mirror statement for the upper component.
enum class Branch { plus, minus };

inline constexpr const char* branch_name(Branch b) {
    return b == Branch::plus ? "plus" : "minus";
}

}  // namespace soc1d
