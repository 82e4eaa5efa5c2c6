#include "dg_solver.hpp"

#include <cmath>
#include <ostream>

namespace wadg {

namespace {

constexpr double kRk4a[5] = {0.0,
                             -567301805773.0 / 1357537059087.0,
                             -2404267990393.0 / 2016746695238.0,
                             -3550918686646.0 / 2091501179385.0,
                             -1275806237668.0 / 842570457699.0};
constexpr double kRk4b[5] = {1432997174477.0 / 9575080441755.0,
                             5161836677717.0 / 13612068292357.0,
                             1720146321549.0 / 2090206949498.0,
                             3134564353537.0 / 4481467310338.0,
                             2277821191437.0 / 14882151754819.0};
constexpr double kRk4c[5] = {0.0,
                             1432997174477.0 / 9575080441755.0,
                             2526269341429.0 / 6820363962896.0,
                             2006345519317.0 / 3224310063776.0,
                             2802321613138.0 / 2924317926251.0};

SampledWeights inverted(SampledWeights s) {
    s.w_quad.swap(s.inv_w_quad);
    s.w_nodes = s.w_nodes.cwiseInverse();
    return s;
}

}  // namespace

MassMode parse_mass_mode(const std::string& name) {
    if (name == "standard") return MassMode::StandardDG;
    if (name == "wadg") return MassMode::WADG;
    if (name == "wadg-cons") return MassMode::WADGConservative;
    throw std::invalid_argument("parse_mass_mode: unknown mode '" + name + "'");
}

Solver::Solver(SolverConfig config, Mesh2D mesh, const WeightField& c2_field)
    : config_(std::move(config)),
      mesh_(std::move(mesh)),
      ref_(build_operators(config_.N)),
      geom_(mesh_.geometric_factors()),
      maps_(build_node_maps(mesh_, ref_)),
      rule_(triangle_quadrature(config_.quad_degree > 0 ? config_.quad_degree
                                                        : 2 * config_.N + 1)),
      ops_(ref_, rule_, inverted(sample(c2_field, mesh_, ref_, rule_)), geom_.J) {
    if (config_.cfl <= 0.0 || config_.cfl > 2.0)
        throw std::invalid_argument("Solver: CFL must be in (0,2]");
    if (config_.t_final < 0.0) throw std::invalid_argument("Solver: negative final time");
    check_alignment(c2_field, mesh_);
    mesh_.map_points(ref_.r, ref_.s, x_, y_);
    mesh_.map_points(rule_.r, rule_.s, xq_, yq_);
    proj_ = ref_.M.llt().solve(ops_.Vq().transpose() * rule_.w.asDiagonal());

    const int K = mesh_.num_elements();
    const int nf = 3 * ref_.Nfp;
    // c^2 samples live in ops as 1/w
    const Matrix& c2q = ops_.weights().inv_w_quad;
    cmax_ = std::sqrt(c2q.maxCoeff());

    // quadrature-mean wavespeed per element for the penalty parameters
    Vector cbar(K);
    for (int k = 0; k < K; ++k) {
        double num = rule_.w.dot(c2q.col(k).cwiseSqrt()) * geom_.J[k];
        cbar[k] = num / (2.0 * geom_.J[k]);
    }

    nxf_.resize(nf, K);
    nyf_.resize(nf, K);
    fscale_.resize(nf, K);
    tau_p_.resize(nf, K);
    tau_u_.resize(nf, K);
    for (int k = 0; k < K; ++k)
        for (int f = 0; f < 3; ++f) {
            double cf = 0.5 * (cbar[k] + cbar[mesh_.etoe(k, f)]);
            for (int i = 0; i < ref_.Nfp; ++i) {
                int row = f * ref_.Nfp + i;
                nxf_(row, k) = geom_.nx(k, f);
                nyf_(row, k) = geom_.ny(k, f);
                fscale_(row, k) = geom_.sJ(k, f) / geom_.J[k];
                tau_p_(row, k) = config_.flux == FluxType::Upwind ? 1.0 / cf : 0.0;
                tau_u_(row, k) = config_.flux == FluxType::Upwind ? cf : 0.0;
            }
        }

    if (config_.mode == MassMode::StandardDG)
        for (int k = 0; k < K; ++k) ops_.weighted_mass_factor(k);
    if (config_.mode == MassMode::WADGConservative)
        for (int k = 0; k < K; ++k) ops_.conservation_correction(k);
}

WaveState Solver::interpolate(const SpaceFn& p0) const {
    WaveState st;
    const int K = mesh_.num_elements();
    st.P.resize(ref_.Np, K);
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < ref_.Np; ++i) st.P(i, k) = p0(x_(i, k), y_(i, k));
    st.Ux = Matrix::Zero(ref_.Np, K);
    st.Uy = Matrix::Zero(ref_.Np, K);
    st.t = 0.0;
    return st;
}

double Solver::stable_dt() const {
    double hmin = mesh_.min_incircle_diameter();
    return config_.cfl * hmin / (cmax_ * (config_.N + 1) * (config_.N + 1));
}

void Solver::apply_mass_mode(const Matrix& r, Matrix& dP) const {
    const int K = mesh_.num_elements();
    switch (config_.mode) {
        case MassMode::WADG:
            dP = ops_.wadg_apply_all(r);
            break;
        case MassMode::StandardDG: {
            dP.resize(ref_.Np, K);
            for (int k = 0; k < K; ++k)
                dP.col(k) = ops_.weighted_mass_factor(k).solve(
                    ref_.M * (geom_.J[k] * r.col(k)));
            break;
        }
        case MassMode::WADGConservative: {
            dP = ops_.wadg_apply_all(r);
            for (int k = 0; k < K; ++k) {
                const ConservationData& c = ops_.conservation_correction(k);
                if (c.alpha == 0.0) continue;
                Vector Mr = ref_.M * (geom_.J[k] * r.col(k));
                dP.col(k) -= (c.alpha * c.vtilde.dot(Mr) / c.denom) * c.vtilde;
            }
            break;
        }
    }
}

void Solver::compute_rhs(const WaveState& state, double t, Matrix& dP, Matrix& dUx,
                         Matrix& dUy) const {
    const int K = mesh_.num_elements();
    const int nf = 3 * ref_.Nfp;

    Matrix DrP = ref_.Dr * state.P, DsP = ref_.Ds * state.P;
    Matrix DrUx = ref_.Dr * state.Ux, DsUx = ref_.Ds * state.Ux;
    Matrix DrUy = ref_.Dr * state.Uy, DsUy = ref_.Ds * state.Uy;

    Matrix dpdx = DrP * geom_.rx.asDiagonal() + DsP * geom_.sx.asDiagonal();
    Matrix dpdy = DrP * geom_.ry.asDiagonal() + DsP * geom_.sy.asDiagonal();
    Matrix divU = DrUx * geom_.rx.asDiagonal() + DsUx * geom_.sx.asDiagonal() +
                  DrUy * geom_.ry.asDiagonal() + DsUy * geom_.sy.asDiagonal();

    // traces and penalty fluxes at face nodes
    const double* P = state.P.data();
    const double* Ux = state.Ux.data();
    const double* Uy = state.Uy.data();
    Matrix Fp(nf, K), Fu(nf, K);
    for (int k = 0; k < K; ++k)
        for (int row = 0; row < nf; ++row) {
            int m = maps_.vmapm(row, k);
            int p = maps_.vmapp(row, k);
            double dp_j, dun_j;
            if (p == m) {  // reflection: p+ = -p-, velocity trace kept
                dp_j = -2.0 * P[m];
                dun_j = 0.0;
            } else {
                dp_j = P[p] - P[m];
                dun_j = (Ux[p] - Ux[m]) * nxf_(row, k) + (Uy[p] - Uy[m]) * nyf_(row, k);
            }
            Fp(row, k) = 0.5 * (tau_p_(row, k) * dp_j - dun_j);
            Fu(row, k) = 0.5 * (tau_u_(row, k) * dun_j - dp_j);
        }

    Matrix r = -divU + ref_.LIFT * fscale_.cwiseProduct(Fp);
    if (config_.source) {
        if (scratch_fq_.rows() != xq_.rows() || scratch_fq_.cols() != K)
            scratch_fq_.resize(xq_.rows(), K);
        for (int k = 0; k < K; ++k)
            for (int q = 0; q < xq_.rows(); ++q)
                scratch_fq_(q, k) = config_.source(xq_(q, k), yq_(q, k), t);
        r += proj_ * scratch_fq_;
    }
    apply_mass_mode(r, dP);

    dUx = -dpdx + ref_.LIFT * fscale_.cwiseProduct(nxf_.cwiseProduct(Fu));
    dUy = -dpdy + ref_.LIFT * fscale_.cwiseProduct(nyf_.cwiseProduct(Fu));
}

void Solver::step_rk(WaveState& state, double dt) const {
    if (dt <= 0.0) throw std::invalid_argument("step_rk: dt must be positive");
    Matrix resP = Matrix::Zero(state.P.rows(), state.P.cols());
    Matrix resUx = resP, resUy = resP, dP, dUx, dUy;
    for (int i = 0; i < 5; ++i) {
        compute_rhs(state, state.t + kRk4c[i] * dt, dP, dUx, dUy);
        resP = kRk4a[i] * resP + dt * dP;
        resUx = kRk4a[i] * resUx + dt * dUx;
        resUy = kRk4a[i] * resUy + dt * dUy;
        state.P += kRk4b[i] * resP;
        state.Ux += kRk4b[i] * resUx;
        state.Uy += kRk4b[i] * resUy;
    }
    state.t += dt;
    double pmax = state.P.cwiseAbs().maxCoeff();
    if (!std::isfinite(pmax))
        throw NumericalError("step_rk: solution blew up at t = " + std::to_string(state.t) +
                             " (max |p| non-finite)");
}

EnergyTrace Solver::run(WaveState& state) const {
    EnergyTrace trace;
    const double T = config_.t_final;
    double dt = stable_dt();
    if (config_.record_energy) {
        trace.times.push_back(state.t);
        trace.energy.push_back(energy(state));
    }
    while (state.t < T - 1e-14) {
        double step_dt = std::min(dt, T - state.t);
        step_rk(state, step_dt);
        if (config_.record_energy) {
            trace.times.push_back(state.t);
            trace.energy.push_back(energy(state));
        }
    }
    state.t = T;
    return trace;
}

double Solver::energy(const WaveState& state) const {
    const int K = mesh_.num_elements();
    double e = 0.0;
    for (int k = 0; k < K; ++k) {
        switch (config_.mode) {
            case MassMode::StandardDG:
                e += ops_.weighted_inner(k, state.P.col(k), state.P.col(k));
                break;
            case MassMode::WADG:
                e += ops_.wadg_inner(k, state.P.col(k), state.P.col(k));
                break;
            case MassMode::WADGConservative: {
                const ConservationData& c = ops_.conservation_correction(k);
                double vp = c.v.dot(state.P.col(k));
                e += ops_.wadg_inner(k, state.P.col(k), state.P.col(k)) + c.alpha * vp * vp;
                break;
            }
        }
        double ju = geom_.J[k];
        e += ju * (state.Ux.col(k).dot(ref_.M * state.Ux.col(k)) +
                   state.Uy.col(k).dot(ref_.M * state.Uy.col(k)));
    }
    return e;
}

double Solver::l2_error_pressure(const WaveState& state, const SpaceTimeFn& exact,
                                 int quad_degree) const {
    int deg = quad_degree > 0 ? quad_degree : 2 * config_.N + 2;
    QuadratureRule2D rule = triangle_quadrature(deg);
    Matrix Vqe = interp_matrix(ref_, rule.r, rule.s);
    Matrix xe, ye;
    mesh_.map_points(rule.r, rule.s, xe, ye);
    Matrix ph = Vqe * state.P;
    double acc = 0.0;
    for (int k = 0; k < mesh_.num_elements(); ++k)
        for (int q = 0; q < rule.size(); ++q) {
            double d = ph(q, k) - exact(xe(q, k), ye(q, k), state.t);
            acc += rule.w[q] * d * d * geom_.J[k];
        }
    return std::sqrt(acc);
}

void Solver::dump_pressure(const WaveState& state, std::ostream& os) const {
    os << state.t << ' ' << mesh_.num_elements() << ' ' << ref_.Np << ' ' << config_.N
       << '\n';
    for (int k = 0; k < mesh_.num_elements(); ++k) {
        for (int i = 0; i < ref_.Np; ++i) os << state.P(i, k) << (i + 1 < ref_.Np ? ' ' : '\n');
    }
}

ManufacturedProblem manufactured_problem(const std::string& name) {
    const double om = M_PI / std::sqrt(2.0);
    auto spatial = [](double x, double y) {
        return std::cos(M_PI * x / 2) * std::cos(M_PI * y / 2);
    };
    ManufacturedProblem mp;
    mp.pressure = [spatial, om](double x, double y, double t) {
        return spatial(x, y) * std::cos(om * t);
    };
    mp.velocity_x = [om](double x, double y, double t) {
        return (M_PI / (2 * om)) * std::sin(M_PI * x / 2) * std::cos(M_PI * y / 2) *
               std::sin(om * t);
    };
    mp.velocity_y = [om](double x, double y, double t) {
        return (M_PI / (2 * om)) * std::cos(M_PI * x / 2) * std::sin(M_PI * y / 2) *
               std::sin(om * t);
    };
    if (name == "smoothsine") {
        mp.c2 = builtin_field("smoothsine");
        auto c2 = mp.c2.eval;
        mp.source = [spatial, om, c2](double x, double y, double t) {
            return om * (1.0 - 1.0 / c2(x, y)) * spatial(x, y) * std::sin(om * t);
        };
    } else if (name == "homogeneous") {
        mp.c2 = builtin_field("const", 1.0);
        mp.source = nullptr;  // the standing mode is an exact solution
    } else {
        throw std::invalid_argument("manufactured_problem: unknown problem '" + name + "'");
    }
    return mp;
}

}  // namespace wadg
