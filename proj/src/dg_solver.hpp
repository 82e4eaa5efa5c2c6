#pragma once

#include <functional>
#include <string>
#include <vector>

#include "material.hpp"
#include "mesh.hpp"
#include "weighted_ops.hpp"

namespace wadg {

enum class MassMode { StandardDG, WADG, WADGConservative };
enum class FluxType { Upwind, Central };

MassMode parse_mass_mode(const std::string& name);

using SpaceTimeFn = std::function<double(double, double, double)>;
using SpaceFn = std::function<double(double, double)>;

struct SolverConfig {
    int N = 4;
    MassMode mode = MassMode::WADG;
    FluxType flux = FluxType::Upwind;
    double cfl = 0.5;
    double t_final = 1.0;
    int quad_degree = 0;  // 0 selects 2N+1
    SpaceTimeFn source;   // pressure forcing f(x,y,t), may be empty
    bool record_energy = true;
};

struct WaveState {
    Matrix P, Ux, Uy;  // Np x K nodal values
    double t = 0.0;
};

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energy;
};

/// Semi-discrete DG operator for the first-order acoustic system with penalty
/// fluxes and reflection (p = 0) boundary conditions, plus explicit
/// low-storage RK time stepping. The pressure mass handling is selected by
/// MassMode; velocities always use the unweighted mass matrix.
class Solver {
public:
    Solver(SolverConfig config, Mesh2D mesh, const WeightField& c2_field);

    const ReferenceElement& ref() const { return ref_; }
    const Mesh2D& mesh() const { return mesh_; }
    const SolverConfig& config() const { return config_; }
    const WeightedOps& ops() const { return ops_; }
    const Matrix& x() const { return x_; }
    const Matrix& y() const { return y_; }
    double max_wavespeed() const { return cmax_; }

    WaveState interpolate(const SpaceFn& p0) const;

    /// Stable explicit step from CFL * h_min / (c_max (N+1)^2).
    double stable_dt() const;

    void compute_rhs(const WaveState& state, double t, Matrix& dP, Matrix& dUx,
                     Matrix& dUy) const;

    /// One 5-stage low-storage RK4 step.
    void step_rk(WaveState& state, double dt) const;

    /// Advance to exactly t_final (full steps plus one partial step).
    EnergyTrace run(WaveState& state) const;

    /// Mode-matched quadratic form: weighted L2 norm of (p,u) for StandardDG,
    /// weight-adjusted form for WADG modes.
    double energy(const WaveState& state) const;

    double l2_error_pressure(const WaveState& state, const SpaceTimeFn& exact,
                             int quad_degree = 0) const;

    /// Plain-text snapshot: "t K Np N", then one line of pressure nodal
    /// values per element.
    void dump_pressure(const WaveState& state, std::ostream& os) const;

private:
    void apply_mass_mode(const Matrix& r, Matrix& dP) const;

    SolverConfig config_;
    Mesh2D mesh_;
    ReferenceElement ref_;
    GeomFactors geom_;
    NodeMaps maps_;
    QuadratureRule2D rule_;
    WeightedOps ops_;  // weight w = 1/c^2
    Matrix x_, y_;     // nodes
    Matrix xq_, yq_;   // quadrature points
    Matrix nxf_, nyf_, fscale_, tau_p_, tau_u_;  // (3*Nfp) x K
    Matrix proj_;  // Np x Nq, nodal L2 projection from quadrature values
    double cmax_ = 1.0;
    mutable Matrix scratch_fq_;
};

/// Manufactured problem: wavespeed field, exact (p, u), and the source f that
/// makes them solve the inhomogeneous system. Names: "smoothsine" (the
/// heterogeneous convergence problem) and "homogeneous" (c = 1 standing mode,
/// zero source).
struct ManufacturedProblem {
    WeightField c2;
    SpaceTimeFn pressure, velocity_x, velocity_y, source;
};

ManufacturedProblem manufactured_problem(const std::string& name);

}  // namespace wadg
