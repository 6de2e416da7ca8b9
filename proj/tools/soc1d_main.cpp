// Command-line front end: dispersion curves, parameter sweeps, eigenfunction
// and kernel sampling, a grid-discretization cross-check, and the invariant
// suite.  CSV/JSON output is deterministic: 17 significant digits, '.' decimal
// separator, '\n' line endings.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "soc1d/bound.hpp"
#include "soc1d/dirac.hpp"
#include "soc1d/dispersion.hpp"
#include "soc1d/format.hpp"
#include "soc1d/invariants.hpp"
#include "soc1d/model.hpp"
#include "soc1d/oracle.hpp"
#include "soc1d/soc.hpp"

namespace {

using nlohmann::json;
using namespace soc1d;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

std::string sidecar_path(const std::string& out) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + ".log";
    return out.substr(0, dot) + ".log";
}

// Per-row diagnostics collector; everything lands in the sidecar log file.
struct Diagnostics {
    std::vector<std::string> lines;
    void note(const std::string& line) { lines.push_back(line); }
    void flush(const std::string& out_path) const {
        std::ofstream log = open_out(sidecar_path(out_path));
        for (const auto& l : lines) log << l << "\n";
    }
};

std::string cell(const std::optional<double>& v) {
    return v ? fmt_g17(*v) : std::string();
}

json json_cell(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string str_cell(const std::optional<std::string>& v) {
    return v ? *v : std::string();
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("need at least one sample");
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
}

// Optional JSON config: keys mirror long flag names (without the leading
// dashes); explicit flags override config values.
json load_config(int argc, char** argv) {
    std::string path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0) path = a.substr(9);
    }
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    return cfg;
}

template <typename T>
void cfg_get(const json& cfg, const std::string& key, T& slot) {
    if (cfg.contains(key)) slot = cfg.at(key).get<T>();
}

// ---------------------------------------------------------------------------
// dispersion

int cmd_dispersion(const Params& par, double pmin, double pmax, int steps,
                   const std::string& out_path) {
    validate(par);
    if (!(pmin <= pmax)) throw std::invalid_argument("pmin must be <= pmax");
    std::ofstream out = open_out(out_path);
    out << "p,lambda_minus,lambda_plus\n";
    for (const double p : linspace(pmin, pmax, steps)) {
        const DispersionPoint d = dispersion_branches(par, p);
        out << fmt_g17(d.p) << ',' << fmt_g17(d.lambda_minus) << ','
            << fmt_g17(d.lambda_plus) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweeps

struct SweepAxis {
    double omega_min = 0.0, omega_max = 2.0;
    int steps = 201;
};

std::vector<double> sweep_grid(const SweepAxis& ax) {
    if (!(ax.omega_min <= ax.omega_max))
        throw std::invalid_argument("omega-min must be <= omega-max");
    if (ax.steps < 1) throw std::invalid_argument("steps must be >= 1");
    return linspace(ax.omega_min, ax.omega_max, ax.steps);
}

struct Row {
    double omega;
    std::vector<std::optional<double>> nums;
    std::vector<std::optional<std::string>> strs;
};

void emit_rows(const std::string& out_path, const std::string& format,
               const std::vector<std::string>& cols,
               const std::vector<std::string>& str_cols,
               const std::vector<Row>& rows) {
    std::ofstream out = open_out(out_path);
    if (format == "csv") {
        out << "omega";
        for (const auto& c : cols) out << ',' << c;
        for (const auto& c : str_cols) out << ',' << c;
        out << "\n";
        for (const auto& r : rows) {
            out << fmt_g17(r.omega);
            for (const auto& v : r.nums) out << ',' << cell(v);
            for (const auto& v : r.strs) out << ',' << str_cell(v);
            out << "\n";
        }
    } else if (format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json obj;
            obj["omega"] = r.omega;
            for (std::size_t i = 0; i < cols.size(); ++i)
                obj[cols[i]] = json_cell(r.nums[i]);
            for (std::size_t i = 0; i < str_cols.size(); ++i)
                obj[str_cols[i]] = r.strs[i] ? json(*r.strs[i]) : json(nullptr);
            arr.push_back(obj);
        }
        out << arr.dump(2) << "\n";
    } else {
        throw std::invalid_argument("format must be csv or json");
    }
}

// Largest-eps root per branch goes in the column; extra roots go to the log.
int cmd_sweep_dirac(Params par, const SweepAxis& ax, const std::string& out_path,
                    const std::string& format) {
    std::vector<Row> rows;
    Diagnostics diag;
    for (const double omega : sweep_grid(ax)) {
        par.omega = omega;
        Row row{omega, {std::nullopt, std::nullopt, 0.5 * omega}, {}};
        try {
            dirac::GapDiagnostics gd;
            const auto states = dirac::spectrum(par, &gd);
            for (const Branch b : {Branch::plus, Branch::minus}) {
                std::optional<double>& slot = row.nums[b == Branch::plus ? 0 : 1];
                for (const auto& st : states) {
                    if (st.branch != b) continue;
                    if (slot) {
                        diag.note("omega=" + fmt_g17(omega) + " extra " +
                                  std::string(branch_name(b)) +
                                  "-branch root eps=" + fmt_g17(std::min(*slot, st.eps)));
                        slot = std::max(*slot, st.eps);
                    } else {
                        slot = st.eps;
                    }
                }
            }
            for (const auto& st : gd.edge_roots)
                diag.note("omega=" + fmt_g17(omega) + " root inside the band-edge guard, " +
                          std::string(branch_name(st.branch)) + " eps=" + fmt_g17(st.eps));
        } catch (const std::exception& e) {
            diag.note("omega=" + fmt_g17(omega) + " solver: " + e.what());
        }
        rows.push_back(std::move(row));
    }
    emit_rows(out_path, format, {"eps_plus", "eps_minus", "edge"}, {}, rows);
    diag.flush(out_path);
    return 0;
}

int cmd_sweep_so(Params par, const SweepAxis& ax, const std::string& out_path,
                 const std::string& format) {
    std::vector<Row> rows;
    Diagnostics diag;
    for (const double omega : sweep_grid(ax)) {
        par.omega = omega;
        Row row{omega,
                {std::nullopt, std::nullopt, 0.0, 0.0, 0.0},
                {std::nullopt, std::nullopt}};
        try {
            row.nums[2] = essential_edge(par);
            row.nums[3] = lambda_floor(par);     // resonance at parent eps = -eta^2/2
            row.nums[4] = -0.5 * par.omega;      // resonance at parent eps = Omega/2 - eta^2
            const auto res = soc::states(par);
            for (const Branch b : {Branch::plus, Branch::minus}) {
                const int li = b == Branch::plus ? 0 : 1;
                const soc::State* pick = nullptr;
                for (const auto& st : res.states) {
                    if (st.parent.branch != b) continue;
                    if (pick && pick->parent.eps >= st.parent.eps) {
                        diag.note("omega=" + fmt_g17(omega) + " extra " +
                                  std::string(branch_name(b)) +
                                  "-parent state lambda=" + fmt_g17(st.lambda));
                        continue;
                    }
                    if (pick)
                        diag.note("omega=" + fmt_g17(omega) + " extra " +
                                  std::string(branch_name(b)) +
                                  "-parent state lambda=" + fmt_g17(pick->lambda));
                    pick = &st;
                }
                if (pick) {
                    row.nums[li] = pick->lambda;
                    row.strs[li] = soc::class_code(pick->cls);
                }
            }
            for (const auto& r : res.excluded)
                diag.note("omega=" + fmt_g17(omega) + " resonance excluded, " +
                          std::string(branch_name(r.parent.branch)) +
                          " lambda=" + fmt_g17(r.lambda));
        } catch (const std::exception& e) {
            diag.note("omega=" + fmt_g17(omega) + " solver: " + e.what());
            row.nums[2] = row.nums[3] = row.nums[4] = std::nullopt;
        }
        rows.push_back(std::move(row));
    }
    emit_rows(out_path, format,
              {"lambda_plus", "lambda_minus", "ess_edge", "res1", "res2"},
              {"class_plus", "class_minus"}, rows);
    diag.flush(out_path);
    return 0;
}

// Lowest accepted eigenvalue per family in the column; extras and every
// rejected candidate go to the log.
int cmd_sweep_bound(Params par, const SweepAxis& ax, const std::string& out_path,
                    const std::string& format) {
    std::vector<Row> rows;
    Diagnostics diag;
    for (const double omega : sweep_grid(ax)) {
        par.omega = omega;
        Row row{omega, {std::nullopt, std::nullopt, 0.0}, {}};
        try {
            row.nums[2] = essential_edge(par);
            const auto spec = bound::spectrum(par);
            for (const Branch b : {Branch::plus, Branch::minus}) {
                std::optional<double>& slot = row.nums[b == Branch::plus ? 0 : 1];
                for (const auto& st : spec.states) {
                    if (st.family != b) continue;
                    if (slot) {
                        diag.note("omega=" + fmt_g17(omega) + " extra " +
                                  std::string(branch_name(b)) +
                                  "-family state lambda=" + fmt_g17(std::max(*slot, st.lambda)));
                        slot = std::min(*slot, st.lambda);
                    } else {
                        slot = st.lambda;
                    }
                }
            }
            for (const auto& r : spec.rejected)
                diag.note("omega=" + fmt_g17(omega) + " rejected " +
                          std::string(branch_name(r.family)) +
                          " candidate lambda=" + fmt_g17(r.lambda) + " (" + r.reason + ")");
        } catch (const std::exception& e) {
            diag.note("omega=" + fmt_g17(omega) + " solver: " + e.what());
            row.nums[2] = std::nullopt;
        }
        rows.push_back(std::move(row));
    }
    emit_rows(out_path, format, {"lambda_plus", "lambda_minus", "ess_edge"}, {}, rows);
    diag.flush(out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// eigenfunctions

Branch parse_sign(const std::string& s) {
    if (s == "plus") return Branch::plus;
    if (s == "minus") return Branch::minus;
    throw std::invalid_argument("sign must be plus or minus");
}

std::string available_states(const Params& par) {
    std::ostringstream os;
    os << "available states at eta=" << fmt_g17(par.eta)
       << " omega=" << fmt_g17(par.omega) << " gamma=" << fmt_g17(par.gamma) << ":";
    bool any = false;
    try {
        for (const auto& st : bound::spectrum(par).states) {
            os << " bound/" << branch_name(st.family) << " lambda=" << fmt_g17(st.lambda) << ";";
            any = true;
        }
    } catch (const std::exception&) {
    }
    if (par.eta > 0.0 && par.omega > 0.0) {
        try {
            for (const auto& st : dirac::spectrum(par)) {
                os << " so/" << branch_name(st.branch) << " eps=" << fmt_g17(st.eps) << ";";
                any = true;
            }
        } catch (const std::exception&) {
        }
    }
    if (!any) os << " none";
    return os.str();
}

int cmd_eigfun(const Params& par, const std::string& family, Branch sign, double xmin,
               double xmax, int samples, const std::string& out_path) {
    validate(par);
    std::ofstream out = open_out(out_path);
    out << "x,re_up,im_up,re_down,im_down\n";

    auto emit = [&](double x, const Eigen::Vector2cd& f) {
        out << fmt_g17(x) << ',' << fmt_g17(f[0].real()) << ',' << fmt_g17(f[0].imag())
            << ',' << fmt_g17(f[1].real()) << ',' << fmt_g17(f[1].imag()) << "\n";
    };

    if (family == "bound") {
        const auto spec = bound::spectrum(par);
        const bound::State* pick = nullptr;
        for (const auto& st : spec.states)
            if (st.family == sign && (!pick || st.lambda < pick->lambda)) pick = &st;
        if (!pick)
            throw std::invalid_argument("no bound/" + std::string(branch_name(sign)) +
                                        " state; " + available_states(par));
        for (const double x : linspace(xmin, xmax, samples)) {
            if (x == 0.0) continue;
            emit(x, bound::eigenfunction(par, *pick, x).f);
        }
    } else if (family == "so") {
        const auto states = dirac::spectrum(par);
        const dirac::GapState* pick = nullptr;
        for (const auto& st : states)
            if (st.branch == sign && (!pick || st.eps > pick->eps)) pick = &st;
        if (!pick)
            throw std::invalid_argument("no so/" + std::string(branch_name(sign)) +
                                        " state; " + available_states(par));
        for (const double x : linspace(xmin, xmax, samples)) {
            if (x == 0.0) continue;
            emit(x, dirac::eigenfunction(par, *pick, x).f);
        }
    } else {
        throw std::invalid_argument("family must be bound or so");
    }
    return 0;
}

// ---------------------------------------------------------------------------
// kernels

int cmd_green(const Params& par, const std::string& op, cplx z, bool free_kernel,
              double xmin, double xmax, int samples, const std::string& out_path) {
    validate(par);
    if (op != "a0" && op != "a") throw std::invalid_argument("operator must be a0 or a");
    Diagnostics diag;

    if (!free_kernel) {
        if (op == "a0") {
            const double scale = dirac::pole_denominator_scale(par, z);
            const cplx den = dirac::pole_denominator(par, z);
            if (std::abs(den) < 1e-6 * scale)
                diag.note("warning: z close to a kernel pole, |denominator| = " +
                          fmt_g17(std::abs(den)));
        } else {
            const double scale = bound::green_denominator_scale(par, z);
            const cplx den = bound::green_denominator(par, z);
            if (std::abs(den) < 1e-6 * scale)
                diag.note("warning: z close to a kernel pole, |denominator| = " +
                          fmt_g17(std::abs(den)));
        }
    }

    std::ofstream out = open_out(out_path);
    out << "x,re_g11,im_g11,re_g12,im_g12,re_g21,im_g21,re_g22,im_g22\n";
    for (const double x : linspace(xmin, xmax, samples)) {
        Eigen::Matrix2cd g;
        if (op == "a0") {
            // First-order kernel jumps at 0; x = 0 reports the right limit.
            if (x == 0.0)
                g = (free_kernel ? dirac::free_kernel_side(par, z, +1)
                                 : dirac::green_kernel_side(par, z, +1))
                        .g;
            else
                g = (free_kernel ? dirac::free_kernel(par, z, x)
                                 : dirac::green_kernel(par, z, x))
                        .g;
        } else {
            g = (free_kernel ? bound::free_kernel(par, z, x) : bound::green_kernel(par, z, x))
                    .g;
        }
        out << fmt_g17(x);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                out << ',' << fmt_g17(g(r, c).real()) << ',' << fmt_g17(g(r, c).imag());
        out << "\n";
    }
    for (const auto& l : diag.lines) std::cerr << l << "\n";
    diag.flush(out_path);
    return 0;
}

// ---------------------------------------------------------------------------
// oracle

int cmd_oracle(const Params& par, const oracle::GridSpec& spec, int k, double tol,
               const std::string& out_path) {
    validate(par);
    const oracle::GridOperator op(par, spec);

    json report;
    report["grid"] = {{"L", spec.half_length},
                      {"N", spec.points},
                      {"eps_w", spec.well_half_width}};

    std::vector<double> analytic;
    double min_im = 1e300;
    const auto spectrum = bound::spectrum(par);
    for (const auto& st : spectrum.states) {
        analytic.push_back(st.lambda);
        min_im = std::min({min_im, st.m.p1.imag(), st.m.p2.imag()});
    }

    const double edge = essential_edge(par);
    const double floor = edge - 1e-3 * std::max(1.0, std::abs(edge));
    const auto numeric = oracle::smallest_eigenvalues(op, k);
    const auto cmp = oracle::compare_spectra(analytic, numeric, tol, floor);

    report["analytic"] = cmp.analytic;
    report["numeric"] = cmp.numeric;
    json matches = json::array();
    for (const auto& m : cmp.matches)
        matches.push_back(
            {{"analytic", m.analytic}, {"numeric", m.numeric}, {"abs_err", m.abs_err}});
    report["matches"] = matches;
    json unmatched = json::array();
    for (const double v : cmp.unmatched_analytic)
        unmatched.push_back({{"kind", "analytic"}, {"value", v}});
    for (const double v : cmp.unmatched_numeric)
        unmatched.push_back({{"kind", "numeric"}, {"value", v}});
    report["unmatched"] = unmatched;

    json diag;
    diag["edge"] = edge;
    diag["floor"] = floor;
    diag["tol"] = tol;
    diag["k"] = k;
    diag["h"] = oracle::spacing(spec);
    diag["raw_count"] = numeric.size();
    if (!analytic.empty() && min_im < 1e300) {
        const double tail = std::exp(-min_im * spec.half_length);
        diag["slowest_decay"] = min_im;
        if (tail > 1e-10)
            diag["tail_warning"] =
                "boundary truncation error ~" + fmt_g17(tail) +
                "; consider a larger half-length";
    }
    report["diagnostics"] = diag;

    std::ofstream out = open_out(out_path);
    out << report.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// check

int cmd_check(double fault, bool with_oracle) {
    invariants::Options opt;
    opt.cubic_fault = fault;
    opt.with_oracle = with_oracle;
    const invariants::Report report = invariants::run(opt);
    for (const auto& item : report.items)
        std::cout << (item.pass ? "PASS " : "FAIL ") << item.name
                  << (item.detail.empty() ? "" : " (" + item.detail + ")") << "\n";
    const std::size_t failed =
        static_cast<std::size_t>(std::count_if(report.items.begin(), report.items.end(),
                                               [](const auto& i) { return !i.pass; }));
    std::cout << (report.pass ? "OK" : "FAILED") << " " << report.items.size() - failed
              << "/" << report.items.size() << " invariants hold\n";
    return report.pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral tools for a 1D spin-orbit-coupled Hamiltonian with a point interaction"};
    app.require_subcommand(1);

    json cfg;
    try {
        cfg = load_config(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    // Option storage must outlive parse(); everything lives here.
    Params par;
    std::string out_path;
    std::string format = "csv";
    std::string config_path;  // consumed by load_config; registered so parse accepts it
    struct {
        double pmin = -2.0, pmax = 2.0;
        int steps = 401;
    } disp;
    struct {
        std::string kind;
        SweepAxis ax;
    } sweep;
    struct {
        std::string family = "bound", sign = "plus";
        double xmin = -10.0, xmax = 10.0;
        int samples = 801;
    } eig;
    struct {
        std::string op = "a";
        double z_re = -1.0, z_im = 0.0, xmin = -5.0, xmax = 5.0;
        int samples = 401;
        bool free_kernel = false;
    } grn;
    struct {
        oracle::GridSpec spec;
        int k = 8;
        double tol = 5e-3;
    } orc;
    struct {
        double fault = 0.0;
        bool no_oracle = false;
    } chk;
    int rc = 0;

    cfg_get(cfg, "eta", par.eta);
    cfg_get(cfg, "omega", par.omega);
    cfg_get(cfg, "gamma", par.gamma);
    cfg_get(cfg, "out", out_path);
    cfg_get(cfg, "format", format);
    cfg_get(cfg, "pmin", disp.pmin);
    cfg_get(cfg, "pmax", disp.pmax);
    cfg_get(cfg, "kind", sweep.kind);
    cfg_get(cfg, "omega-min", sweep.ax.omega_min);
    cfg_get(cfg, "omega-max", sweep.ax.omega_max);
    cfg_get(cfg, "family", eig.family);
    cfg_get(cfg, "sign", eig.sign);
    cfg_get(cfg, "operator", grn.op);
    cfg_get(cfg, "z-re", grn.z_re);
    cfg_get(cfg, "z-im", grn.z_im);
    cfg_get(cfg, "free", grn.free_kernel);
    cfg_get(cfg, "L", orc.spec.half_length);
    cfg_get(cfg, "N", orc.spec.points);
    cfg_get(cfg, "well-width", orc.spec.well_half_width);
    cfg_get(cfg, "k", orc.k);
    cfg_get(cfg, "tol", orc.tol);

    auto add_params = [&](CLI::App* cmd, bool with_omega = true) {
        cmd->add_option("--eta", par.eta, "spin-orbit coupling strength");
        if (with_omega) cmd->add_option("--omega", par.omega, "Raman coupling strength");
        cmd->add_option("--gamma", par.gamma, "point-interaction strength");
        cmd->add_option("--config", config_path, "JSON config file; flags override its values");
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file")->required(!cfg.contains("out"));
    };

    {
        auto* cmd = app.add_subcommand("dispersion", "band structure lambda_pm(p)");
        cfg_get(cfg, "steps", disp.steps);
        add_params(cmd);
        cmd->add_option("--pmin", disp.pmin, "lowest momentum");
        cmd->add_option("--pmax", disp.pmax, "highest momentum");
        cmd->add_option("--steps", disp.steps, "number of grid points");
        add_out(cmd);
        cmd->callback([&] {
            rc = cmd_dispersion(par, disp.pmin, disp.pmax, disp.steps, out_path);
        });
    }

    {
        auto* cmd = app.add_subcommand("sweep", "spectra as a function of the Raman coupling");
        cfg_get(cfg, "steps", sweep.ax.steps);
        cmd->add_option("kind", sweep.kind, "dirac | so | bound")
            ->check(CLI::IsMember({"dirac", "so", "bound"}))
            ->required(sweep.kind.empty());
        add_params(cmd, false);
        cmd->add_option("--omega-min", sweep.ax.omega_min, "sweep start");
        cmd->add_option("--omega-max", sweep.ax.omega_max, "sweep end");
        cmd->add_option("--steps", sweep.ax.steps, "number of sweep points");
        cmd->add_option("--format", format, "csv | json")
            ->check(CLI::IsMember({"csv", "json"}));
        add_out(cmd);
        cmd->callback([&] {
            if (sweep.kind == "dirac")
                rc = cmd_sweep_dirac(par, sweep.ax, out_path, format);
            else if (sweep.kind == "so")
                rc = cmd_sweep_so(par, sweep.ax, out_path, format);
            else
                rc = cmd_sweep_bound(par, sweep.ax, out_path, format);
        });
    }

    {
        auto* cmd = app.add_subcommand("eigfun", "sample an eigenfunction");
        cfg_get(cfg, "xmin", eig.xmin);
        cfg_get(cfg, "xmax", eig.xmax);
        cfg_get(cfg, "samples", eig.samples);
        cmd->add_option("family", eig.family, "bound | so")
            ->check(CLI::IsMember({"bound", "so"}));
        cmd->add_option("sign", eig.sign, "plus | minus")
            ->check(CLI::IsMember({"plus", "minus"}));
        add_params(cmd);
        cmd->add_option("--xmin", eig.xmin, "left end of the sample window");
        cmd->add_option("--xmax", eig.xmax, "right end of the sample window");
        cmd->add_option("--samples", eig.samples, "number of sample points");
        add_out(cmd);
        cmd->callback([&] {
            rc = cmd_eigfun(par, eig.family, parse_sign(eig.sign), eig.xmin, eig.xmax,
                            eig.samples, out_path);
        });
    }

    {
        auto* cmd = app.add_subcommand("green", "sample a resolvent kernel x' = 0 slice");
        cfg_get(cfg, "xmin", grn.xmin);
        cfg_get(cfg, "xmax", grn.xmax);
        cfg_get(cfg, "samples", grn.samples);
        cmd->add_option("operator", grn.op, "a0 (first order) | a (full Hamiltonian)")
            ->check(CLI::IsMember({"a0", "a"}));
        add_params(cmd);
        cmd->add_option("--z-re", grn.z_re, "Re z");
        cmd->add_option("--z-im", grn.z_im, "Im z");
        cmd->add_flag("--free", grn.free_kernel, "interaction-free kernel instead");
        cmd->add_option("--xmin", grn.xmin, "left end of the sample window");
        cmd->add_option("--xmax", grn.xmax, "right end of the sample window");
        cmd->add_option("--samples", grn.samples, "number of sample points");
        add_out(cmd);
        cmd->callback([&] {
            rc = cmd_green(par, grn.op, cplx(grn.z_re, grn.z_im), grn.free_kernel,
                           grn.xmin, grn.xmax, grn.samples, out_path);
        });
    }

    {
        auto* cmd = app.add_subcommand(
            "oracle", "finite-difference cross-check of the discrete spectrum");
        add_params(cmd);
        cmd->add_option("--L", orc.spec.half_length, "half-length of the grid box");
        cmd->add_option("--N", orc.spec.points, "number of grid nodes");
        cmd->add_option("--well-width", orc.spec.well_half_width,
                        "half-width of the regularizing well");
        cmd->add_option("--k", orc.k, "how many low eigenvalues to compute");
        cmd->add_option("--tol", orc.tol, "match tolerance");
        cmd->add_flag("--strict", orc.spec.strict, "require the well to span >= 4 cells");
        add_out(cmd);
        cmd->callback([&] { rc = cmd_oracle(par, orc.spec, orc.k, orc.tol, out_path); });
    }

    {
        auto* cmd = app.add_subcommand("check", "run the invariant suite");
        cmd->add_option("--fault-cubic", chk.fault,
                        "perturb a checker-side cubic coefficient by this fraction");
        cmd->add_flag("--no-oracle", chk.no_oracle, "skip the slow grid cross-check");
        cmd->add_option("--config", config_path, "JSON config file; flags override its values");
        cmd->callback([&] { rc = cmd_check(chk.fault, !chk.no_oracle); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
