#include "soc1d/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <lapacke.h>

namespace soc1d::oracle {

namespace {

double overlap(double lo1, double hi1, double lo2, double hi2) {
    return std::max(0.0, std::min(hi1, hi2) - std::max(lo1, lo2));
}

double fit_slope(const std::vector<double>& logx, const std::vector<double>& logy) {
    const std::size_t n = logx.size();
    const double mx = std::accumulate(logx.begin(), logx.end(), 0.0) / n;
    const double my = std::accumulate(logy.begin(), logy.end(), 0.0) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (logx[i] - mx) * (logy[i] - my);
        den += (logx[i] - mx) * (logx[i] - mx);
    }
    return num / den;
}

void normalize(std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

void validate(const GridSpec& spec) {
    if (!(spec.half_length > 0.0)) throw std::invalid_argument("grid: half_length must be > 0");
    if (spec.points < 3) throw std::invalid_argument("grid: need at least 3 nodes");
    if (!(spec.well_half_width > 0.0))
        throw std::invalid_argument("grid: well_half_width must be > 0");
    const double h = spacing(spec);
    if (spec.well_half_width >= spec.half_length)
        throw std::invalid_argument("grid: well wider than the domain");
    // The stencil must see the well: at least two nodes inside it.
    if (2.0 * spec.well_half_width < 2.0 * h)
        throw std::invalid_argument("grid: well narrower than two cells is invisible");
    if (spec.strict && 2.0 * spec.well_half_width < 4.0 * h)
        throw std::invalid_argument("grid: strict mode requires the well to span >= 4 cells");
}

double spacing(const GridSpec& spec) {
    return 2.0 * spec.half_length / (spec.points + 1);
}

std::vector<double> node_positions(const GridSpec& spec) {
    const double h = spacing(spec);
    std::vector<double> xs(spec.points);
    for (int j = 0; j < spec.points; ++j) xs[j] = -spec.half_length + (j + 1) * h;
    return xs;
}

GridOperator::GridOperator(const Params& par, const GridSpec& spec)
    : par_(par), spec_(spec) {
    oracle::validate(spec);
    if (!std::isfinite(par.eta) || !std::isfinite(par.omega) || !std::isfinite(par.gamma))
        throw std::invalid_argument("parameters must be finite");
    if (par.eta < 0.0 || par.omega < 0.0)
        throw std::invalid_argument("eta and omega must be nonnegative");

    const int n = spec.points;
    const int ld = band() + 1;
    const double h = spacing(spec);
    const double inv_h2 = 1.0 / (h * h);
    const double so = par.eta / (2.0 * h);
    const double ew = spec.well_half_width;
    ab_.assign(static_cast<std::size_t>(ld) * dim(), 0.0);

    auto at = [&](int i, int j) -> double& {  // i >= j, lower storage
        return ab_[static_cast<std::size_t>(j) * ld + (i - j)];
    };

    for (int j = 0; j < n; ++j) {
        const double x = -spec.half_length + (j + 1) * h;
        // Cell-overlap well weight: integrates to exactly gamma on any grid.
        const double w = overlap(x - 0.5 * h, x + 0.5 * h, -ew, ew) / h;
        const double well = par.gamma / (2.0 * ew) * w;
        const int up = 2 * j, dn = 2 * j + 1;
        at(up, up) = 2.0 * inv_h2 + 0.5 * par.omega + well;
        at(dn, dn) = 2.0 * inv_h2 - 0.5 * par.omega + well;
        if (j + 1 < n) {
            at(up + 2, up) = -inv_h2;
            at(dn + 2, dn) = -inv_h2;
            // Antisymmetric first difference keeps the matrix symmetric:
            // row(up, j) couples to dn at j±1 with ∓eta/2h, and transposes match.
            at(2 * (j + 1) + 1, up) = -so;
            at(2 * (j + 1), dn) = so;
        }
    }
}

std::vector<double> GridOperator::apply(const std::vector<double>& v) const {
    const int n = dim();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("apply: dimension mismatch");
    const int kd = band(), ld = kd + 1;
    std::vector<double> out(n, 0.0);
    for (int j = 0; j < n; ++j) {
        out[j] += ab_[static_cast<std::size_t>(j) * ld] * v[j];
        for (int i = j + 1; i <= std::min(n - 1, j + kd); ++i) {
            const double a = ab_[static_cast<std::size_t>(j) * ld + (i - j)];
            out[i] += a * v[j];
            out[j] += a * v[i];
        }
    }
    return out;
}

Eigen::MatrixXd GridOperator::dense() const {
    const int n = dim();
    if (n > 4000) throw std::invalid_argument("dense: grid too large");
    const int kd = band(), ld = kd + 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = j; i <= std::min(n - 1, j + kd); ++i) {
            const double a = ab_[static_cast<std::size_t>(j) * ld + (i - j)];
            m(i, j) = a;
            m(j, i) = a;
        }
    return m;
}

namespace {

std::vector<double> sbevx_values(const GridOperator& op, char range, double vl, double vu,
                                 int il, int iu) {
    const int n = op.dim();
    const int kd = op.band(), ldab = kd + 1;
    std::vector<double> ab = op.storage();  // overwritten by the reduction
    std::vector<double> w(n);
    std::vector<lapack_int> ifail(n);
    lapack_int m = 0;
    const lapack_int info = LAPACKE_dsbevx(
        LAPACK_COL_MAJOR, 'N', range, 'L', n, kd, ab.data(), ldab, nullptr, 1, vl, vu,
        il, iu, 0.0, &m, w.data(), nullptr, 1, ifail.data());
    if (info != 0)
        throw std::runtime_error("band eigensolver failed, info = " + std::to_string(info));
    w.resize(m);
    std::sort(w.begin(), w.end());
    return w;
}

}  // namespace

std::vector<double> eigenvalues_below(const GridOperator& op, double cutoff) {
    return sbevx_values(op, 'V', -1e300, cutoff, 0, 0);
}

std::vector<double> smallest_eigenvalues(const GridOperator& op, int k) {
    if (k < 1) throw std::invalid_argument("need k >= 1");
    k = std::min(k, op.dim());
    return sbevx_values(op, 'I', 0.0, 0.0, 1, k);
}

Eigenpair eigenpair_near(const GridOperator& op, double target,
                         const std::vector<std::vector<double>>& orthogonal_to) {
    const int n = op.dim();
    const int kd = op.band();
    const int kl = kd, ku = kd, ldab = 2 * kl + ku + 1;

    auto factor = [&](double sigma, std::vector<double>& gb, std::vector<lapack_int>& piv) {
        gb.assign(static_cast<std::size_t>(ldab) * n, 0.0);
        const int lds = kd + 1;
        for (int j = 0; j < n; ++j) {
            for (int i = j; i <= std::min(n - 1, j + kd); ++i) {
                const double a = op.storage()[static_cast<std::size_t>(j) * lds + (i - j)];
                // general-band layout: AB(kl+ku+i-j, j) = A(i,j)
                gb[static_cast<std::size_t>(j) * ldab + (kl + ku + i - j)] = a;
                if (i != j) gb[static_cast<std::size_t>(i) * ldab + (kl + ku + j - i)] = a;
            }
            gb[static_cast<std::size_t>(j) * ldab + (kl + ku)] -= sigma;
        }
        piv.assign(n, 0);
        return LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, gb.data(), ldab, piv.data());
    };

    auto orth = [&](std::vector<double>& v) {
        for (const auto& q : orthogonal_to) {
            const double c = dot(q, v);
            for (int i = 0; i < n; ++i) v[i] -= c * q[i];
        }
    };

    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = uni(rng);
    orth(v);
    normalize(v);

    double sigma = target + 1e-9 * std::max(1.0, std::abs(target));
    std::vector<double> gb;
    std::vector<lapack_int> piv;
    lapack_int info = factor(sigma, gb, piv);
    if (info > 0) {  // exactly singular shift; nudge it
        sigma += 1e-7 * std::max(1.0, std::abs(target));
        info = factor(sigma, gb, piv);
    }
    if (info != 0)
        throw std::runtime_error("band factorization failed, info = " + std::to_string(info));

    Eigenpair out;
    for (int it = 0; it < 12; ++it) {
        info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, gb.data(), ldab,
                              piv.data(), v.data(), n);
        if (info != 0)
            throw std::runtime_error("band solve failed, info = " + std::to_string(info));
        orth(v);
        normalize(v);
        const std::vector<double> av = op.apply(v);
        const double rho = dot(v, av);
        double res = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = av[i] - rho * v[i];
            res += r * r;
        }
        res = std::sqrt(res);
        out.value = rho;
        out.residual = res;
        if (res <= 1e-11) break;
        if (it == 3 || it == 7) {  // Rayleigh-shift refresh for slow cases
            std::vector<double> gb2;
            std::vector<lapack_int> piv2;
            const double s2 = rho + 1e-10 * std::max(1.0, std::abs(rho));
            if (factor(s2, gb2, piv2) == 0) {
                gb.swap(gb2);
                piv.swap(piv2);
                sigma = s2;
            }
        }
    }
    if (out.residual > 1e-10)
        throw std::runtime_error("inverse iteration stalled, residual = " +
                                 std::to_string(out.residual));
    out.vector = std::move(v);
    return out;
}

std::vector<Eigenpair> lowest_eigenpairs(const GridOperator& op, int k) {
    const std::vector<double> w = smallest_eigenvalues(op, k);
    std::vector<Eigenpair> pairs;
    std::vector<std::vector<double>> found;
    for (double wi : w) {
        Eigenpair p = eigenpair_near(op, wi, found);
        found.push_back(p.vector);
        pairs.push_back(std::move(p));
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const Eigenpair& a, const Eigenpair& b) { return a.value < b.value; });
    return pairs;
}

Comparison compare_spectra(const std::vector<double>& analytic,
                           const std::vector<double>& numeric, double tol, double floor) {
    Comparison cmp;
    cmp.analytic = analytic;
    cmp.floor = floor;
    cmp.tol = tol;
    std::sort(cmp.analytic.begin(), cmp.analytic.end());
    for (double v : numeric)
        if (v < floor) cmp.numeric.push_back(v);
    std::sort(cmp.numeric.begin(), cmp.numeric.end());

    std::vector<bool> used(cmp.numeric.size(), false);
    for (double a : cmp.analytic) {
        int best = -1;
        double best_err = 0.0;
        for (std::size_t i = 0; i < cmp.numeric.size(); ++i) {
            if (used[i]) continue;
            const double err = std::abs(cmp.numeric[i] - a);
            if (best < 0 || err < best_err) {
                best = static_cast<int>(i);
                best_err = err;
            }
        }
        if (best >= 0 && best_err <= tol) {
            used[best] = true;
            cmp.matches.push_back({a, cmp.numeric[best], best_err});
        } else {
            cmp.unmatched_analytic.push_back(a);
        }
    }
    for (std::size_t i = 0; i < cmp.numeric.size(); ++i)
        if (!used[i]) cmp.unmatched_numeric.push_back(cmp.numeric[i]);
    return cmp;
}

double residual_check(const Params& par,
                      const std::function<Eigen::Vector2cd(double)>& f, double lam,
                      const std::vector<double>& xs, double h) {
    const Eigen::Matrix2cd s2 = pauli2(), s3 = pauli3();
    double worst = 0.0;
    for (double x : xs) {
        if (std::abs(x) <= 3.0 * h)
            throw std::invalid_argument("residual_check: sample too close to the kink");
        const Eigen::Vector2cd fm2 = f(x - 2.0 * h), fm1 = f(x - h), f0 = f(x),
                              fp1 = f(x + h), fp2 = f(x + 2.0 * h);
        const Eigen::Vector2cd d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        const Eigen::Vector2cd d2 =
            (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        const Eigen::Vector2cd r = -d2 - cplx(0, 1) * par.eta * (s2 * d1) +
                                   0.5 * par.omega * (s3 * f0) - lam * f0;
        worst = std::max(worst, r.norm());
    }
    return worst;
}

double boundary_check(const Params& par, const SideLimits& lim) {
    const Eigen::Vector2cd lhs = par.gamma * lim.mean();
    const Eigen::Vector2cd rhs =
        lim.djump() + cplx(0, 1) * par.eta * (pauli2() * lim.jump());
    return (lhs - rhs).norm();
}

namespace {

// Ground-state vector and the grid for a given well width.
std::pair<GridSpec, Eigenpair> ground_state(const Params& par, GridSpec spec, double width) {
    spec.well_half_width = width;
    const GridOperator op(par, spec);
    return {spec, lowest_eigenpairs(op, 1).front()};
}

}  // namespace

WellFunctionalTable well_functional_check(const Params& par, const GridSpec& base,
                                          const std::vector<double>& widths) {
    WellFunctionalTable table;
    std::vector<double> lx, ly;
    for (double ew : widths) {
        const auto [spec, pair] = ground_state(par, base, ew);
        const double h = spacing(spec);
        const auto xs = node_positions(spec);
        const int n = spec.points;

        Eigen::Vector2d acc = Eigen::Vector2d::Zero();
        int first_out_r = -1, first_out_l = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(xs[j]) <= ew) {
                const bool edge = std::abs(xs[j] - (-ew)) < 0.5 * h ||
                                  std::abs(xs[j] - ew) < 0.5 * h;
                const double w = edge ? 0.5 : 1.0;  // trapezoid ends
                acc[0] += w * pair.vector[2 * j];
                acc[1] += w * pair.vector[2 * j + 1];
            }
            if (first_out_r < 0 && xs[j] > ew) first_out_r = j;
            if (xs[j] < -ew) first_out_l = j;
        }
        const Eigen::Vector2d avg = acc * h / (2.0 * ew);
        Eigen::Vector2d mean;
        mean << 0.5 * (pair.vector[2 * first_out_l] + pair.vector[2 * first_out_r]),
            0.5 * (pair.vector[2 * first_out_l + 1] + pair.vector[2 * first_out_r + 1]);
        const double diff = (avg - mean).norm();
        table.rows.push_back({ew, avg.norm(), mean.norm(), diff});
        lx.push_back(std::log(ew));
        ly.push_back(std::log(std::max(diff, 1e-300)));
    }
    table.fitted_order = fit_slope(lx, ly);
    return table;
}

WellScaling well_scaling_check(const Params& par, const GridSpec& base,
                               const std::vector<double>& widths) {
    WellScaling sc;
    std::vector<double> lx, ly;
    for (double ew : widths) {
        const auto [spec, pair] = ground_state(par, base, ew);
        const double h = spacing(spec);
        const auto xs = node_positions(spec);
        // Deepest interior node whose full second-difference stencil stays in the well.
        int j_edge = -1;
        for (int j = 1; j + 1 < spec.points; ++j)
            if (xs[j + 1] <= ew && xs[j] > 0.0) j_edge = j;
        if (j_edge < 0) throw std::invalid_argument("well too narrow for the stencil");
        // Use the dominant component at that node.
        const int c = std::abs(pair.vector[2 * j_edge]) >= std::abs(pair.vector[2 * j_edge + 1])
                          ? 0
                          : 1;
        const double f0 = pair.vector[2 * j_edge + c];
        const double curl = (pair.vector[2 * (j_edge - 1) + c] - 2.0 * f0 +
                             pair.vector[2 * (j_edge + 1) + c]) /
                            (h * h);
        const double k = std::sqrt(std::max(0.0, -curl / f0));
        sc.eps_w.push_back(ew);
        sc.k.push_back(k);
        lx.push_back(std::log(ew));
        ly.push_back(std::log(std::max(k, 1e-300)));
    }
    sc.fitted_exponent = fit_slope(lx, ly);
    return sc;
}

}  // namespace soc1d::oracle
