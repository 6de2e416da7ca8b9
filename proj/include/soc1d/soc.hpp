#pragma once

#include <array>
#include <vector>

#include "soc1d/dirac.hpp"

namespace soc1d::soc {

// Position of a spin-orbit-induced eigenvalue relative to the continuum:
// below it, or embedded in it (two distinct parameter regimes).
enum class Class { below, sigma1, sigma2 };
const char* class_code(Class c);

// lambda(eps) = eps - gap_decay(eps)^2.
double lambda_from_eps(const Params& par, double eps);

// Same eigenvalue via the weak-solution route: (gamma w ± Omega)/2 with + for
// branch plus; agreement with lambda_from_eps is a cross-formula identity.
double weak_eigenvalue(const Params& par, Branch branch, double eps);

// {-eta^2/2, Omega/2 - eta^2}; parents at these energies are resonant (the
// two-exponential ansatz degenerates) and are excluded from the spectrum.
std::array<double, 2> resonance_points(const Params& par);

Class classify(const Params& par, double eps);

struct State {
    dirac::GapState parent;
    double lambda;
    Class cls;
};
struct Resonance {
    dirac::GapState parent;
    double lambda;
    int point;  // index into resonance_points
};
struct Result {
    std::vector<State> states;
    std::vector<Resonance> excluded;
};

// lambda(eps) over the gap spectrum with resonance exclusion.
Result states(const Params& par);

}  // namespace soc1d::soc
