#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wadg {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

SpaceFn field_fn(const WeightField& f) {
    return [f](double x, double y) { return f(x, y); };
}

double domain_h(int cells) { return 2.0 / cells; }

}  // namespace

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

double ExperimentConfig::get_real(const std::string& key, double fallback) const {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : std::stod(it->second);
}

std::vector<int> ExperimentConfig::get_int_list(const std::string& key,
                                                const std::vector<int>& fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::vector<int> out;
    for (const auto& tok : split(it->second, ',')) out.push_back(std::stoi(tok));
    if (out.empty()) throw std::invalid_argument("config: empty list for '" + key + "'");
    return out;
}

std::vector<int> ExperimentConfig::get_int_range(const std::string& key,
                                                 const std::vector<int>& fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    const std::string& v = it->second;
    auto dots = v.find("..");
    if (dots == std::string::npos) return {std::stoi(v)};
    int lo = std::stoi(v.substr(0, dots));
    int hi = std::stoi(v.substr(dots + 2));
    if (hi < lo) throw std::invalid_argument("config: bad range '" + v + "'");
    std::vector<int> out;
    for (int i = lo; i <= hi; ++i) out.push_back(i);
    return out;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "experiment")
            cfg.experiment = val;
        else
            cfg.kv[key] = val;
    }
    return cfg;
}

RateEstimate estimate_rate(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw std::invalid_argument("estimate_rate: need at least two (h, err) points");
    RateEstimate est;
    bool defined = true;
    for (double e : err)
        if (!(e > 0.0)) defined = false;
    if (!defined) {
        est.lsq = est.last_interval = std::nan("");
        return est;
    }
    const int n = static_cast<int>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        double x = std::log(h[i]), y = std::log(err[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    est.lsq = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    est.last_interval = std::log(err[n - 2] / err[n - 1]) / std::log(h[n - 2] / h[n - 1]);
    return est;
}

std::string format_sig6(double v) {
    if (std::isnan(v)) return "na";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.5e", v);
    std::string s(buf);
    // compact exponent: 1.23457e-05 -> 1.23457e-5
    auto e = s.find('e');
    std::string mant = s.substr(0, e);
    std::string exp = s.substr(e + 1);
    char sign = exp[0];
    size_t i = 1;
    while (i + 1 < exp.size() && exp[i] == '0') ++i;
    return mant + "e" + (sign == '-' ? "-" : "") + exp.substr(i);
}

void write_csv(const RateTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_csv: cannot open '" + path + "'");
    for (const auto& meta : table.metadata) out << "# " << meta << "\n";
    for (size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "\n");
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << format_sig6(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    for (const auto& rr : table.rate_rows) {
        out << rr.label;
        for (size_t i = 1; i < table.header.size(); ++i) {
            out << ",";
            if (i - 1 < rr.values.size() && !std::isnan(rr.values[i - 1]))
                out << format_sig6(rr.values[i - 1]);
        }
        out << "\n";
    }
    if (!out) throw IoError("write_csv: write failed for '" + path + "'");
}

void configure_threads(int count) {
    int n = count;
    if (n <= 0) {
        if (const char* env = std::getenv("WADG_THREADS")) n = std::atoi(env);
    }
    if (n > 0)
        Eigen::setNbThreads(n);
}

namespace detail {

Matrix project_nodal(const ReferenceElement& ref, const Mesh2D& mesh, int degree,
                     const SpaceFn& f) {
    QuadratureRule2D rule = triangle_quadrature(degree);
    Matrix xq, yq;
    mesh.map_points(rule.r, rule.s, xq, yq);
    Matrix Vq = interp_matrix(ref, rule.r, rule.s);
    Matrix fq(rule.size(), mesh.num_elements());
    for (int k = 0; k < fq.cols(); ++k)
        for (int q = 0; q < fq.rows(); ++q) fq(q, k) = f(xq(q, k), yq(q, k));
    return ref.M.llt().solve(Vq.transpose() * rule.w.asDiagonal() * fq);
}

Matrix moment_rhs(const ReferenceElement& ref, const Mesh2D& mesh, int degree,
                  const SpaceFn& f) {
    QuadratureRule2D rule = triangle_quadrature(degree);
    GeomFactors g = mesh.geometric_factors();
    Matrix xq, yq;
    mesh.map_points(rule.r, rule.s, xq, yq);
    Matrix Vq = interp_matrix(ref, rule.r, rule.s);
    Matrix fq(rule.size(), mesh.num_elements());
    for (int k = 0; k < fq.cols(); ++k)
        for (int q = 0; q < fq.rows(); ++q) fq(q, k) = f(xq(q, k), yq(q, k)) * g.J[k];
    return Vq.transpose() * rule.w.asDiagonal() * fq;
}

double l2_error_vs(const ReferenceElement& ref, const Mesh2D& mesh, int degree,
                   const Matrix& coeffs, const SpaceFn& f) {
    QuadratureRule2D rule = triangle_quadrature(degree);
    GeomFactors g = mesh.geometric_factors();
    Matrix xq, yq;
    mesh.map_points(rule.r, rule.s, xq, yq);
    Matrix Vq = interp_matrix(ref, rule.r, rule.s);
    Matrix vals = Vq * coeffs;
    double acc = 0.0;
    for (int k = 0; k < mesh.num_elements(); ++k)
        for (int q = 0; q < rule.size(); ++q) {
            double d = vals(q, k) - f(xq(q, k), yq(q, k));
            acc += rule.w[q] * d * d * g.J[k];
        }
    return std::sqrt(acc);
}

}  // namespace detail

namespace {

// Shared machinery for the element-local projection studies: solve the
// triple on each mesh, measure L2 errors against u/w
// and the conservation moments.
struct ProjectionPoint {
    double h = 0.0;
    double err[3] = {0, 0, 0};
    double cons2 = 0.0, cons3 = 0.0;
};

ProjectionPoint projection_point(int N, int cells, const WeightField& wfield,
                                 const SpaceFn& u, int op_degree, int rhs_degree,
                                 int err_degree) {
    ReferenceElement ref = build_operators(N);
    Mesh2D mesh = uniform_tri_mesh(-1, 1, -1, 1, cells);
    GeomFactors g = mesh.geometric_factors();
    QuadratureRule2D rule = triangle_quadrature(op_degree);
    WeightedOps ops(ref, rule, sample(wfield, mesh, ref, rule), g.J);
    Matrix b = detail::moment_rhs(ref, mesh, rhs_degree, u);
    ProjectionTriple triple = ops.solve_projection_triple(b);
    ProjectionPoint pt;
    pt.h = domain_h(cells);
    auto target = [&](double x, double y) { return u(x, y) / wfield(x, y); };
    pt.err[0] = detail::l2_error_vs(ref, mesh, err_degree, triple.u1, target);
    pt.err[1] = detail::l2_error_vs(ref, mesh, err_degree, triple.u2, target);
    pt.err[2] = detail::l2_error_vs(ref, mesh, err_degree, triple.u3, target);
    auto ce = ops.conservation_error(triple);
    pt.cons2 = ce.uncorrected;
    pt.cons3 = ce.corrected;
    return pt;
}

void echo_common(RateTable& t, const ExperimentConfig& cfg) {
    t.metadata.push_back("experiment = " + cfg.experiment);
    for (const auto& [k, v] : cfg.kv) t.metadata.push_back(k + " = " + v);
}

void append_rates(RateTable& t, int first_err_col, const std::vector<double>& h,
                  const std::vector<std::vector<double>>& errcols,
                  const std::string& group) {
    if (h.size() < 2) return;
    const int ncols = static_cast<int>(t.header.size());
    std::string suffix = group.empty() ? "" : " " + group;
    RateTable::RateRow lsq{"rate-lsq" + suffix, std::vector<double>(ncols - 1, std::nan(""))};
    RateTable::RateRow last{"rate-last" + suffix, std::vector<double>(ncols - 1, std::nan(""))};
    for (size_t c = 0; c < errcols.size(); ++c) {
        RateEstimate est = estimate_rate(h, errcols[c]);
        lsq.values[first_err_col - 1 + c] = est.lsq;
        last.values[first_err_col - 1 + c] = est.last_interval;
    }
    t.rate_rows.push_back(std::move(lsq));
    t.rate_rows.push_back(std::move(last));
}

SpaceFn default_u() {
    return [](double x, double y) { return std::exp(x + y); };
}

}  // namespace

RateTable run_projection_study(const ExperimentConfig& cfg) {
    std::vector<int> orders = cfg.get_int_range("n", {1, 2, 3, 4});
    std::vector<int> meshes = cfg.get_int_list("mesh", {2, 4, 8, 16});
    WeightField w = parse_field(cfg.get("field", "smoothsine"));
    RateTable t;
    echo_common(t, cfg);
    t.header = {"N", "h", "err_u1", "err_u2", "err_u3"};
    for (int N : orders) {
        int op_deg = cfg.has("quad-degree")
                         ? cfg.get_int_range("quad-degree", {})[0]
                         : std::min(2 * N + 10, 30);
        std::vector<double> h;
        std::vector<std::vector<double>> cols(3);
        for (int cells : meshes) {
            ProjectionPoint pt = projection_point(N, cells, w, default_u(), op_deg,
                                                  std::min(2 * N + 10, 30), 2 * N + 2);
            t.rows.push_back({double(N), pt.h, pt.err[0], pt.err[1], pt.err[2]});
            h.push_back(pt.h);
            for (int c = 0; c < 3; ++c) cols[c].push_back(pt.err[c]);
        }
        append_rates(t, 2, h, cols, "N=" + std::to_string(N));
    }
    return t;
}

RateTable run_projection_cone_study(const ExperimentConfig& cfg) {
    std::vector<int> orders = cfg.get_int_range("n", {3, 4});
    std::vector<int> meshes = cfg.get_int_list("mesh", {4, 8, 16, 32});
    std::vector<double> avals{1e-1, 1e-2, 1e-3, 1e-4};
    if (cfg.has("cone-a")) {
        avals.clear();
        for (const auto& tok : split(cfg.get("cone-a", ""), ',')) avals.push_back(std::stod(tok));
    }
    RateTable t;
    echo_common(t, cfg);
    t.header = {"N", "a", "h", "err_u1", "err_u2", "err_u3"};
    for (int N : orders)
        for (double a : avals) {
            // near-singular integrands get doubled quadrature strength
            int base = 3 * N;
            int op_deg = std::min(2 * base, 30);
            WeightField w = builtin_field("cone", a);
            std::vector<double> h;
            std::vector<std::vector<double>> cols(3);
            for (int cells : meshes) {
                ProjectionPoint pt = projection_point(N, cells, w, default_u(), op_deg,
                                                      std::min(2 * N + 10, 30), op_deg);
                t.rows.push_back({double(N), a, pt.h, pt.err[0], pt.err[1], pt.err[2]});
                h.push_back(pt.h);
                for (int c = 0; c < 3; ++c) cols[c].push_back(pt.err[c]);
            }
            append_rates(t, 3, h, cols, "N=" + std::to_string(N) + " a=" + format_sig6(a));
        }
    return t;
}

RateTable run_conservation_study(const ExperimentConfig& cfg) {
    std::vector<int> orders = cfg.get_int_range("n", {1, 2, 3, 4});
    std::vector<int> meshes = cfg.get_int_list("mesh", {2, 4, 8, 16});
    WeightField w = parse_field(cfg.get("field", "smoothsine"));
    RateTable t;
    echo_common(t, cfg);
    t.header = {"N", "h", "cons_uncorrected", "cons_corrected"};
    for (int N : orders) {
        int op_deg = std::min(2 * N + 10, 30);
        std::vector<double> h;
        std::vector<std::vector<double>> cols(1);
        for (int cells : meshes) {
            ProjectionPoint pt = projection_point(N, cells, w, default_u(), op_deg,
                                                  op_deg, 2 * N + 2);
            t.rows.push_back({double(N), pt.h, pt.cons2, pt.cons3});
            h.push_back(pt.h);
            cols[0].push_back(pt.cons2);
        }
        append_rates(t, 2, h, cols, "N=" + std::to_string(N));
    }
    return t;
}

RateTable run_conservation_regularity_study(const ExperimentConfig& cfg) {
    std::vector<int> orders = cfg.get_int_range("n", {3});
    std::vector<int> meshes = cfg.get_int_list("mesh", {4, 8, 16, 32});
    std::vector<double> avals{1e-1, 1e-2, 1e-3, 1e-4};
    RateTable t;
    echo_common(t, cfg);
    t.header = {"N", "a", "pair", "h", "cons_uncorrected", "cons_corrected"};
    for (int N : orders)
        for (int pair = 0; pair < 2; ++pair)  // 0: w = cone, 1: u = cone
            for (double a : avals) {
                WeightField cone = builtin_field("cone", a);
                WeightField expf = builtin_field("expxy");
                const WeightField& w = (pair == 0) ? cone : expf;
                SpaceFn u = (pair == 0) ? default_u() : field_fn(cone);
                int op_deg = std::min(6 * N, 30);
                std::vector<double> h;
                std::vector<std::vector<double>> cols(1);
                for (int cells : meshes) {
                    ProjectionPoint pt =
                        projection_point(N, cells, w, u, op_deg, op_deg, op_deg);
                    t.rows.push_back(
                        {double(N), a, double(pair), pt.h, pt.cons2, pt.cons3});
                    h.push_back(pt.h);
                    cols[0].push_back(pt.cons2);
                }
                append_rates(t, 4, h, cols, "N=" + std::to_string(N) + (pair == 0 ? " w=cone" : " u=cone") + " a=" + format_sig6(a));
            }
    return t;
}

namespace {

double manufactured_run_error(int N, int cells, MassMode mode, int quad_degree,
                              double t_final, double cfl) {
    ManufacturedProblem mp = manufactured_problem("smoothsine");
    SolverConfig sc;
    sc.N = N;
    sc.mode = mode;
    sc.quad_degree = quad_degree;
    sc.t_final = t_final;
    sc.cfl = cfl;
    sc.source = mp.source;
    sc.record_energy = false;
    Solver solver(sc, uniform_tri_mesh(-1, 1, -1, 1, cells), mp.c2);
    WaveState st = solver.interpolate(
        [&](double x, double y) { return mp.pressure(x, y, 0.0); });
    solver.run(st);
    return solver.l2_error_pressure(st, mp.pressure);
}

}  // namespace

RateTable run_convergence_manufactured(const ExperimentConfig& cfg) {
    std::vector<int> orders = cfg.get_int_range("n", {1, 2, 3, 4});
    std::vector<int> meshes = cfg.get_int_list("mesh", {2, 4, 8, 16});
    double T = cfg.get_real("tfinal", 1.0);
    double cfl = cfg.get_real("cfl", 0.5);
    RateTable t;
    echo_common(t, cfg);
    t.header = {"N", "h", "err_standard", "err_wadg"};
    for (int N : orders) {
        int qd = cfg.has("quad-degree") ? cfg.get_int_range("quad-degree", {})[0] : 3 * N;
        std::vector<double> h;
        std::vector<std::vector<double>> cols(2);
        for (int cells : meshes) {
            double es = manufactured_run_error(N, cells, MassMode::StandardDG, qd, T, cfl);
            double ew = manufactured_run_error(N, cells, MassMode::WADG, qd, T, cfl);
            t.rows.push_back({double(N), domain_h(cells), es, ew});
            h.push_back(domain_h(cells));
            cols[0].push_back(es);
            cols[1].push_back(ew);
        }
        append_rates(t, 2, h, cols, "N=" + std::to_string(N));
    }
    return t;
}

namespace {

// Locator for uniform meshes: finds the element containing (x, y) and its
// local coordinates, using the fixed lower-left/upper-right diagonal.
struct UniformLocator {
    double xmin, ymin, h;
    int cells;

    void locate(double x, double y, int& elem, double& r, double& s) const {
        int i = std::clamp(int((x - xmin) / h), 0, cells - 1);
        int j = std::clamp(int((y - ymin) / h), 0, cells - 1);
        double lx = (x - xmin) / h - i;
        double ly = (y - ymin) / h - j;
        bool lower = lx >= ly;  // below the v00-v11 diagonal
        elem = 2 * (j * cells + i) + (lower ? 0 : 1);
        if (lower) {
            // vertices (0,0),(1,0),(1,1): x = l1 + l2, y = l2
            r = 2.0 * (lx - ly) - 1.0;
            s = 2.0 * ly - 1.0;
        } else {
            // vertices (0,0),(1,1),(0,1): x = l1, y = l1 + l2
            r = 2.0 * lx - 1.0;
            s = 2.0 * (ly - lx) - 1.0;
        }
    }
};

}  // namespace

RateTable run_convergence_reference(const ExperimentConfig& cfg) {
    std::vector<int> orders = cfg.get_int_range("n", {1, 2, 3, 4});
    std::vector<int> meshes = cfg.get_int_list("mesh", {2, 4, 8, 16});
    int ref_n = static_cast<int>(cfg.get_real("reference-n", 6));
    int ref_cells = static_cast<int>(cfg.get_real("reference-mesh", 32));
    double T = cfg.get_real("tfinal", 1.0);
    for (int cells : meshes)
        if (cells > ref_cells)
            throw std::invalid_argument("run_convergence_reference: reference mesh coarser "
                                        "than a test mesh");
    std::string mode_name = cfg.get("mode", "wadg");

    ManufacturedProblem mp = manufactured_problem("smoothsine");
    auto p0 = [&](double x, double y) { return mp.pressure(x, y, 0.0); };

    // fine WADG reference (no source, heterogeneous IVP)
    SolverConfig rc;
    rc.N = ref_n;
    rc.mode = MassMode::WADG;
    rc.quad_degree = 2 * ref_n + 1;
    rc.t_final = T;
    rc.cfl = cfg.get_real("reference-cfl", 0.25);
    rc.record_energy = false;
    Solver ref_solver(rc, uniform_tri_mesh(-1, 1, -1, 1, ref_cells), mp.c2);
    WaveState ref_state = ref_solver.interpolate(p0);
    ref_solver.run(ref_state);
    UniformLocator loc{-1.0, -1.0, 2.0 / ref_cells, ref_cells};

    RateTable t;
    echo_common(t, cfg);
    t.header = {"N", "h", "err_vs_reference"};
    for (int N : orders) {
        int qd = cfg.has("quad-degree") ? cfg.get_int_range("quad-degree", {})[0] : 3 * N;
        std::vector<double> h;
        std::vector<std::vector<double>> cols(1);
        for (int cells : meshes) {
            SolverConfig sc;
            sc.N = N;
            sc.mode = parse_mass_mode(mode_name);
            sc.quad_degree = qd;
            sc.t_final = T;
            sc.cfl = cfg.get_real("cfl", 0.5);
            sc.record_energy = false;
            Solver solver(sc, uniform_tri_mesh(-1, 1, -1, 1, cells), mp.c2);
            WaveState st = solver.interpolate(p0);
            solver.run(st);
            // compare on the coarse quadrature grid
            QuadratureRule2D erule = triangle_quadrature(2 * N + 2);
            Matrix Vqe = interp_matrix(solver.ref(), erule.r, erule.s);
            Matrix xe, ye;
            solver.mesh().map_points(erule.r, erule.s, xe, ye);
            Matrix ph = Vqe * st.P;
            GeomFactors g = solver.mesh().geometric_factors();
            double acc = 0.0;
            Vector rr(1), ss(1);
            for (int k = 0; k < solver.mesh().num_elements(); ++k)
                for (int q = 0; q < erule.size(); ++q) {
                    int fk;
                    double fr, fs;
                    loc.locate(xe(q, k), ye(q, k), fk, fr, fs);
                    rr[0] = std::clamp(fr, -1.0, 1.0);
                    ss[0] = std::min(std::clamp(fs, -1.0, 1.0), -rr[0]);
                    Matrix basis = interp_matrix(ref_solver.ref(), rr, ss);
                    double pref = (basis * ref_state.P.col(fk))(0, 0);
                    double d = ph(q, k) - pref;
                    acc += erule.w[q] * d * d * g.J[k];
                }
            double err = std::sqrt(acc);
            t.rows.push_back({double(N), domain_h(cells), err});
            h.push_back(domain_h(cells));
            cols[0].push_back(err);
        }
        append_rates(t, 2, h, cols, "N=" + std::to_string(N));
    }
    return t;
}

RateTable run_quadrature_sweep(const ExperimentConfig& cfg) {
    int N = cfg.get_int_range("n", {4})[0];
    int cells = cfg.get_int_list("mesh", {16})[0];
    std::vector<int> degrees = cfg.get_int_range("quad-degree", {});
    if (degrees.empty() || degrees.size() == 1) {
        degrees.clear();
        for (int d = 2 * N - 1; d <= 3 * N; ++d) degrees.push_back(d);
    }
    double T = cfg.get_real("tfinal", 1.0);
    double cfl = cfg.get_real("cfl", 0.5);
    RateTable t;
    echo_common(t, cfg);
    t.header = {"quad_degree", "err_standard", "err_wadg"};
    for (int qd : degrees) {
        double es = std::nan(""), ew = std::nan("");
        try {
            es = manufactured_run_error(N, cells, MassMode::StandardDG, qd, T, cfl);
        } catch (const NumericalError&) {
            t.metadata.push_back("note: standard DG singular weighted mass at quad degree " +
                                 std::to_string(qd));
        }
        try {
            ew = manufactured_run_error(N, cells, MassMode::WADG, qd, T, cfl);
        } catch (const NumericalError&) {
            t.metadata.push_back("note: WADG numerical failure at quad degree " +
                                 std::to_string(qd));
        }
        t.rows.push_back({double(qd), es, ew});
    }
    return t;
}

RateTable run_solve(const ExperimentConfig& cfg) {
    int N = cfg.get_int_range("n", {4})[0];
    int cells = cfg.get_int_list("mesh", {16})[0];
    WeightField c2 = parse_field(cfg.get("field", "layered"));
    SolverConfig sc;
    sc.N = N;
    sc.mode = parse_mass_mode(cfg.get("mode", "wadg"));
    sc.t_final = cfg.get_real("tfinal", 0.5);
    sc.cfl = cfg.get_real("cfl", 0.5);
    sc.quad_degree = cfg.has("quad-degree") ? cfg.get_int_range("quad-degree", {})[0] : 0;
    sc.record_energy = true;
    Solver solver(sc, uniform_tri_mesh(-1, 1, -1, 1, cells), c2);

    double px = cfg.get_real("pulse-x", 0.0);
    double py = cfg.get_real("pulse-y", 0.25);
    double pw = cfg.get_real("pulse-width", 100.0);
    WaveState st = solver.interpolate([&](double x, double y) {
        return std::exp(-pw * ((x - px) * (x - px) + (y - py) * (y - py)));
    });
    EnergyTrace trace = solver.run(st);

    if (cfg.has("dump")) {
        std::ofstream os(cfg.get("dump", ""));
        if (!os) throw IoError("run_solve: cannot open dump file");
        solver.dump_pressure(st, os);
    }
    if (cfg.has("dump-mesh")) {
        std::ofstream os(cfg.get("dump-mesh", ""));
        if (!os) throw IoError("run_solve: cannot open mesh dump file");
        solver.mesh().dump(os);
    }
    RateTable t;
    echo_common(t, cfg);
    t.header = {"t", "energy"};
    for (size_t i = 0; i < trace.times.size(); ++i)
        t.rows.push_back({trace.times[i], trace.energy[i]});
    return t;
}

RateTable run_experiment(const ExperimentConfig& cfg) {
    configure_threads();
    RateTable t;
    if (cfg.experiment == "projection")
        t = run_projection_study(cfg);
    else if (cfg.experiment == "projection-cone")
        t = run_projection_cone_study(cfg);
    else if (cfg.experiment == "conservation")
        t = run_conservation_study(cfg);
    else if (cfg.experiment == "conservation-regularity")
        t = run_conservation_regularity_study(cfg);
    else if (cfg.experiment == "convergence-manufactured")
        t = run_convergence_manufactured(cfg);
    else if (cfg.experiment == "convergence-reference")
        t = run_convergence_reference(cfg);
    else if (cfg.experiment == "quadrature-sweep")
        t = run_quadrature_sweep(cfg);
    else if (cfg.experiment == "solve")
        t = run_solve(cfg);
    else
        throw std::invalid_argument("run_experiment: unknown experiment '" + cfg.experiment +
                                    "'");
    if (cfg.has("out")) write_csv(t, cfg.get("out", ""));
    return t;
}

}  // namespace wadg
