#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "soc1d/model.hpp"

namespace soc1d::oracle {

// Uniform grid on [-L, L] with Dirichlet walls; `points` nodes per spinor
// component at x_j = -L + j h, h = 2L/(N+1).  The delta impurity is
// regularized by a square well of half-width `well_half_width`.
struct GridSpec {
    double half_length = 40.0;
    int points = 8000;
    double well_half_width = 1e-2;
    bool strict = false;  // additionally require the well to span >= 4 cells
};

void validate(const GridSpec& spec);
double spacing(const GridSpec& spec);
std::vector<double> node_positions(const GridSpec& spec);

// Real symmetric band matrix (half-bandwidth 3) of the discretized
// Hamiltonian: second-order central -f'', antisymmetric centered first
// difference for the spin-orbit block, diagonal Zeeman and well terms.
// Unknown ordering interleaves the two components per node.
// The well uses cell-overlap weights so its integrated strength is exactly
// gamma on every grid.
class GridOperator {
  public:
    GridOperator(const Params& par, const GridSpec& spec);
    int dim() const { return 2 * spec_.points; }
    int band() const { return 3; }
    const GridSpec& grid() const { return spec_; }
    const Params& params() const { return par_; }
    // Lower-triangle band storage, column-major, leading dimension band()+1.
    const std::vector<double>& storage() const { return ab_; }
    std::vector<double> apply(const std::vector<double>& v) const;
    Eigen::MatrixXd dense() const;  // small grids only (tests)

  private:
    Params par_;
    GridSpec spec_;
    std::vector<double> ab_;
};

struct Eigenpair {
    double value = 0.0;
    std::vector<double> vector;  // normalized
    double residual = 0.0;       // ||M v - value v||_2, asserted <= 1e-10
};

// Eigenvalues strictly below `cutoff` (band reduction + bisection; no
// eigenvectors, so memory stays O(N * bandwidth)).
std::vector<double> eigenvalues_below(const GridOperator& op, double cutoff);
std::vector<double> smallest_eigenvalues(const GridOperator& op, int k);
// Eigenvector by inverse iteration on the band matrix near `target`,
// orthogonalized against previously found vectors (degenerate clusters).
Eigenpair eigenpair_near(const GridOperator& op, double target,
                         const std::vector<std::vector<double>>& orthogonal_to = {});
std::vector<Eigenpair> lowest_eigenpairs(const GridOperator& op, int k);

struct Match {
    double analytic, numeric, abs_err;
};
struct Comparison {
    std::vector<double> analytic, numeric;
    std::vector<Match> matches;
    std::vector<double> unmatched_analytic, unmatched_numeric;
    double floor = 0.0;
    double tol = 0.0;
};
// Greedy nearest-pair matching of analytic levels against numeric eigenvalues
// below `floor`; numeric values above the floor are ignored.
Comparison compare_spectra(const std::vector<double>& analytic,
                           const std::vector<double>& numeric, double tol,
                           double floor);

// Max over xs of ||(-f'' - i eta sigma2 f' + (Omega/2) sigma3 f) - lam f||
// with fourth-order central differences of step h; requires |x| > 3h.
double residual_check(const Params& par,
                      const std::function<Eigen::Vector2cd(double)>& f,
                      double lam, const std::vector<double>& xs, double h);

// ||gamma f(0) - ([f'] + i eta sigma2 [f])|| with f(0) the mean of the
// one-sided limits.
double boundary_check(const Params& par, const SideLimits& lim);

struct WellFunctionalRow {
    double eps_w;
    double avg;   // (1/(2 eps_w)) trapezoid of the eigenvector over the well
    double mean;  // average of the first nodes outside the well
    double diff;  // l2 distance between the two, both components
};
struct WellFunctionalTable {
    std::vector<WellFunctionalRow> rows;
    double fitted_order = 0.0;  // log-log slope of diff vs eps_w
};
// Ground-state well functional at each width (grid respecified per width).
WellFunctionalTable well_functional_check(const Params& par, const GridSpec& base,
                                          const std::vector<double>& widths);

struct WellScaling {
    std::vector<double> eps_w, k;
    double fitted_exponent = 0.0;  // expected -1/2 in the zero-range limit
};
// In-well wavenumber sqrt(-f''/f) of the ground state read just inside the
// well edge via the discrete second difference.
WellScaling well_scaling_check(const Params& par, const GridSpec& base,
                               const std::vector<double>& widths);

}  // namespace soc1d::oracle
