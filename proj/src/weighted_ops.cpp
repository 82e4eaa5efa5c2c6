#include "weighted_ops.hpp"

#include <cmath>

namespace wadg {

WeightedOps::WeightedOps(const ReferenceElement& ref, const QuadratureRule2D& rule,
                         SampledWeights weights, Vector jacobians)
    : ref_(ref), rule_(std::move(rule)), weights_(std::move(weights)),
      jac_(std::move(jacobians)) {
    if (rule_.exactness < 2 * ref_.N - 1)
        throw std::invalid_argument("WeightedOps: quadrature exactness below 2N-1");
    vq_ = interp_matrix(ref_, rule_.r, rule_.s);
    pq_ref_ = ref_.M.llt().solve(vq_.transpose() * rule_.w.asDiagonal());
    mw_llt_.resize(num_elements());
    minvw_llt_.resize(num_elements());
    cons_.resize(num_elements());
}

Matrix assemble_weighted_mass(const ReferenceElement& ref, const QuadratureRule2D& rule,
                              const Vector& w_at_quad, double jacobian, int element_index) {
    Matrix Vq = interp_matrix(ref, rule.r, rule.s);
    Matrix Mw = Vq.transpose() * (rule.w.cwiseProduct(w_at_quad)).asDiagonal() * Vq * jacobian;
    Mw = 0.5 * (Mw + Mw.transpose().eval());
    Eigen::LLT<Matrix> llt(Mw);
    bool bad = llt.info() != Eigen::Success;
    if (!bad) {
        // catch near-rank-deficient quadrature that LLT tolerates
        Vector d = llt.matrixL().toDenseMatrix().diagonal();
        bad = d.minCoeff() <= 0 ||
              (d.minCoeff() / d.maxCoeff()) * (d.minCoeff() / d.maxCoeff()) < 1e-13;
    }
    if (bad)
        throw NumericalError("assemble_weighted_mass: singular weighted mass matrix (element " +
                             std::to_string(element_index) + ", quadrature degree " +
                             std::to_string(rule.exactness) + ")");
    return Mw;
}

Matrix WeightedOps::weighted_mass(int k) const {
    Matrix Mw = vq_.transpose() *
                (rule_.w.cwiseProduct(weights_.w_quad.col(k))).asDiagonal() * vq_ * jac_[k];
    return 0.5 * (Mw + Mw.transpose().eval());
}

Matrix WeightedOps::inv_weighted_mass(int k) const {
    Matrix Mi = vq_.transpose() *
                (rule_.w.cwiseProduct(weights_.inv_w_quad.col(k))).asDiagonal() * vq_ * jac_[k];
    return 0.5 * (Mi + Mi.transpose().eval());
}

Matrix WeightedOps::wadg_gram(int k) const {
    Matrix Mk = ref_.M * jac_[k];
    return Mk * inv_weighted_mass_factor(k).solve(Mk);
}

const Eigen::LLT<Matrix>& WeightedOps::weighted_mass_factor(int k) const {
    if (!mw_llt_[k]) {
        Eigen::LLT<Matrix> llt(weighted_mass(k));
        if (llt.info() != Eigen::Success)
            throw NumericalError("WeightedOps: singular weighted mass matrix (element " +
                                 std::to_string(k) + ", quadrature degree " +
                                 std::to_string(rule_.exactness) + ")");
        Vector d = llt.matrixL().toDenseMatrix().diagonal();
        double rr = d.minCoeff() / d.maxCoeff();
        if (d.minCoeff() <= 0 || rr * rr < 1e-13)
            throw NumericalError("WeightedOps: singular weighted mass matrix (element " +
                                 std::to_string(k) + ", quadrature degree " +
                                 std::to_string(rule_.exactness) + ")");
        mw_llt_[k] = std::move(llt);
    }
    return *mw_llt_[k];
}

const Eigen::LLT<Matrix>& WeightedOps::inv_weighted_mass_factor(int k) const {
    if (!minvw_llt_[k]) {
        Eigen::LLT<Matrix> llt(inv_weighted_mass(k));
        if (llt.info() != Eigen::Success)
            throw NumericalError("WeightedOps: singular 1/w mass matrix (element " +
                                 std::to_string(k) + ", quadrature degree " +
                                 std::to_string(rule_.exactness) + ")");
        minvw_llt_[k] = std::move(llt);
    }
    return *minvw_llt_[k];
}

Vector WeightedOps::apply_Tw(int k, const Vector& u) const {
    if (u.size() != ref_.Np) throw std::invalid_argument("apply_Tw: bad coefficient length");
    return pq_ref_ * weights_.w_quad.col(k).cwiseProduct(vq_ * u);
}

Vector WeightedOps::apply_Tw_inv(int k, const Vector& u) const {
    if (u.size() != ref_.Np) throw std::invalid_argument("apply_Tw_inv: bad coefficient length");
    return weighted_mass_factor(k).solve(ref_.M * (jac_[k] * u));
}

Vector WeightedOps::wadg_apply(int k, const Vector& r) const {
    return pq_ref_ * weights_.inv_w_quad.col(k).cwiseProduct(vq_ * r);
}

Matrix WeightedOps::wadg_apply_all(const Matrix& R) const {
    return pq_ref_ * weights_.inv_w_quad.cwiseProduct(vq_ * R);
}

const ConservationData& WeightedOps::conservation_correction(int k) const {
    if (!cons_[k]) {
        ConservationData c;
        Vector e = Vector::Ones(ref_.Np);  // nodal coefficients of the constant 1
        Matrix Mk = ref_.M * jac_[k];
        Vector Me = Mk * e;
        Vector Mwe = weighted_mass(k) * e;
        c.v = Mk * inv_weighted_mass_factor(k).solve(Me) - Mwe;
        double vte = c.v.dot(e);
        // a roundoff-level v needs no correction; without this guard the
        // relative threshold below can let alpha blow up to 1/eps
        bool negligible = c.v.norm() <= 1e-14 * Mwe.norm();
        if (negligible || std::abs(vte) <= kConservationThreshold * c.v.norm()) {
            c.alpha = 0.0;
            c.vtilde = Vector::Zero(ref_.Np);
            c.denom = 1.0;
        } else {
            // exact moment identity needs alpha = -1/(v'e)
            c.alpha = -1.0 / vte;
            Vector minv_v = ref_.M.llt().solve(c.v) / jac_[k];
            c.vtilde = pq_ref_ * weights_.inv_w_quad.col(k).cwiseProduct(vq_ * minv_v);
            c.denom = 1.0 + c.alpha * c.v.dot(c.vtilde);
            if (std::abs(c.denom) < 1e-14)
                throw NumericalError("conservation_correction: degenerate Sherman-Morrison "
                                     "denominator on element " + std::to_string(k));
        }
        cons_[k] = std::move(c);
    }
    return *cons_[k];
}

ProjectionTriple WeightedOps::solve_projection_triple(const Matrix& b) const {
    const int K = num_elements();
    if (b.rows() != ref_.Np || b.cols() != K)
        throw std::invalid_argument("solve_projection_triple: rhs shape mismatch");
    ProjectionTriple t;
    t.u1.resize(ref_.Np, K);
    t.u2.resize(ref_.Np, K);
    t.u3.resize(ref_.Np, K);
    Eigen::LLT<Matrix> mref_llt(ref_.M);
    for (int k = 0; k < K; ++k) {
        t.u1.col(k) = weighted_mass_factor(k).solve(b.col(k));
        // low-storage inverse M^{-1} M_{1/w} M^{-1} b
        Vector minv_b = mref_llt.solve(b.col(k)) / jac_[k];
        t.u2.col(k) = pq_ref_ * weights_.inv_w_quad.col(k).cwiseProduct(vq_ * minv_b);
        const ConservationData& c = conservation_correction(k);
        if (c.alpha == 0.0) {
            t.u3.col(k) = t.u2.col(k);
        } else {
            t.u3.col(k) = t.u2.col(k) -
                          (c.alpha * c.vtilde.dot(b.col(k)) / c.denom) * c.vtilde;
        }
    }
    return t;
}

WeightedOps::ConservationError
WeightedOps::conservation_error(const ProjectionTriple& triple) const {
    double acc2 = 0.0, acc3 = 0.0;
    Vector e = Vector::Ones(ref_.Np);
    for (int k = 0; k < num_elements(); ++k) {
        Vector d2 = triple.u1.col(k) - triple.u2.col(k);
        Vector d3 = triple.u1.col(k) - triple.u3.col(k);
        acc2 += weighted_inner(k, e, d2);
        acc3 += weighted_inner(k, e, d3);
    }
    return {std::abs(acc2), std::abs(acc3)};
}

double WeightedOps::weighted_inner(int k, const Vector& u, const Vector& v) const {
    Vector uq = vq_ * u;
    Vector vq = vq_ * v;
    return jac_[k] * rule_.w.cwiseProduct(weights_.w_quad.col(k))
                         .cwiseProduct(uq).cwiseProduct(vq).sum();
}

double WeightedOps::wadg_inner(int k, const Vector& u, const Vector& v) const {
    Matrix Mk = ref_.M * jac_[k];
    return u.dot(Mk * inv_weighted_mass_factor(k).solve(Mk * v));
}

}  // namespace wadg
