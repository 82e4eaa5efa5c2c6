#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "material.hpp"
#include "mesh.hpp"
#include "quadrature.hpp"
#include "reference_element.hpp"
#include "types.hpp"

namespace wadg {

/// Rank-one conservation correction for one element (weight-adjusted Gram
/// plus alpha*v*v^T matches the weighted mass matrix on constants).
struct ConservationData {
    double alpha = 0.0;
    Vector v;       // (Mtilde - M_w) e
    Vector vtilde;  // M^{-1} M_{1/w} M^{-1} v
    double denom = 1.0;  // 1 + alpha v' vtilde, Sherman-Morrison denominator
};

/// Coefficients of the three scaled projection solutions over all elements.
struct ProjectionTriple {
    Matrix u1, u2, u3;  // Np x K nodal coefficients
};

/// Element-local weighted mass handling for a sampled weight w:
/// dense weighted mass matrices, the projected multiplication/division
/// operators, and the matrix-free weight-adjusted inverse.
class WeightedOps {
public:
    WeightedOps(const ReferenceElement& ref, const QuadratureRule2D& rule,
                SampledWeights weights, Vector jacobians);

    int num_elements() const { return static_cast<int>(jac_.size()); }
    const Matrix& Vq() const { return vq_; }
    const Vector& jacobians() const { return jac_; }
    const SampledWeights& weights() const { return weights_; }

    /// Dense M_w^k = Vq' diag(wq .* w) Vq * J. Symmetric by construction.
    Matrix weighted_mass(int k) const;
    /// Dense M_{1/w}^k.
    Matrix inv_weighted_mass(int k) const;
    /// Dense weight-adjusted Gram M (M_{1/w})^{-1} M.
    Matrix wadg_gram(int k) const;

    /// T_w u = Pi_N(w u), matrix-free.
    Vector apply_Tw(int k, const Vector& u) const;
    /// T_w^{-1} u: dense solve M_w out = M u.
    Vector apply_Tw_inv(int k, const Vector& u) const;
    /// Low-storage weight-adjusted inverse applied to an inverse-mass-applied
    /// residual: out = M^{-1} M_{1/w} r (the solver's WADG update, with the
    /// solver weight w = 1/c^2 this is M^{-1} M_{c^2} r).
    Vector wadg_apply(int k, const Vector& r) const;
    /// Batched form over all elements (columns).
    Matrix wadg_apply_all(const Matrix& R) const;

    /// Solve the three projection systems M_w u1 = b,
    /// (M (M_{1/w})^{-1} M) u2 = b, and the rank-one-corrected system for u3
    /// (u2 via the low-storage inverse, u3 via Sherman-Morrison).
    ProjectionTriple solve_projection_triple(const Matrix& b) const;

    const ConservationData& conservation_correction(int k) const;

    /// Absolute summed moment differences |sum_k e' M_w (u1 - u_i)|, i = 2,3.
    struct ConservationError {
        double uncorrected = 0.0;  // u2
        double corrected = 0.0;    // u3
    };
    ConservationError conservation_error(const ProjectionTriple& triple) const;

    /// Weighted pairing u' M_w v without assembling M_w.
    double weighted_inner(int k, const Vector& u, const Vector& v) const;
    /// Weight-adjusted pairing u' M (M_{1/w})^{-1} M v (dense factor cached).
    double wadg_inner(int k, const Vector& u, const Vector& v) const;

    /// Cholesky factors of M_w for every element (built once, reused).
    const Eigen::LLT<Matrix>& weighted_mass_factor(int k) const;

    static constexpr double kConservationThreshold = 1e-8;

private:
    const Eigen::LLT<Matrix>& inv_weighted_mass_factor(int k) const;

    const ReferenceElement& ref_;
    QuadratureRule2D rule_;
    SampledWeights weights_;
    Vector jac_;
    Matrix vq_;      // Nq x Np nodal evaluation at quadrature points
    Matrix pq_ref_;  // Np x Nq, Mref^{-1} Vq' diag(wq)
    mutable std::vector<std::optional<Eigen::LLT<Matrix>>> mw_llt_;
    mutable std::vector<std::optional<Eigen::LLT<Matrix>>> minvw_llt_;
    mutable std::vector<std::optional<ConservationData>> cons_;
};

/// Standalone dense assembly as in the discrete formulation; rejects
/// numerically singular results (rank-deficient quadrature).
Matrix assemble_weighted_mass(const ReferenceElement& ref, const QuadratureRule2D& rule,
                              const Vector& w_at_quad, double jacobian, int element_index = -1);

}  // namespace wadg
