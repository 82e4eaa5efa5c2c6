#pragma once

#include <array>
#include <vector>

#include "quadrature.hpp"
#include "types.hpp"

namespace wadg {

constexpr int kMaxOrder = 8;

/// Degree-N nodal data on the bi-unit reference triangle.
/// Basis is the orthonormal Koornwinder-Dubiner basis; nodes are the
/// warp&blend family. All matrices act on nodal values.
struct ReferenceElement {
    int N = 0;
    int Np = 0;
    int Nfp = 0;            // nodes per face, N+1
    Vector r, s;            // interpolation nodes
    Matrix V;               // generalized Vandermonde, V(i,j) = phi_j(r_i,s_i)
    Matrix Vinv;
    Matrix Dr, Ds;          // nodal differentiation
    Matrix M;               // reference mass, (V V^T)^{-1}
    Matrix LIFT;            // Np x 3*Nfp, M^{-1} times face mass scatter
    std::array<std::vector<int>, 3> face_nodes;  // ordered along each face
};

/// Orthonormal basis evaluation: column j holds phi_j at the given points.
Matrix orthonormal_basis_eval(int degree, const Vector& r, const Vector& s);

/// Gradients of the orthonormal basis (same column layout).
void orthonormal_basis_grad(int degree, const Vector& r, const Vector& s,
                            Matrix& Vr, Matrix& Vs);

/// Warp&blend interpolation nodes for degree N in [1, kMaxOrder].
void build_nodes(int N, Vector& r, Vector& s);

/// Assemble all reference operators for degree N.
ReferenceElement build_operators(int N);

/// L2 projection onto P^N: modal (orthonormal-basis) coefficients of Pi_N f
/// from values of f at the rule's points. Rule must be exact for degree 2N.
Vector project_L2(int N, const QuadratureRule2D& rule, const Vector& values_at_quad);

/// Nodal interpolation matrix from the element's nodes to arbitrary points.
Matrix interp_matrix(const ReferenceElement& ref, const Vector& r, const Vector& s);

namespace detail {
double jacobi_p(double x, double alpha, double beta, int n);
double grad_jacobi_p(double x, double alpha, double beta, int n);
Vector jacobi_gl(int n);  // Gauss-Lobatto nodes, n+1 points
}  // namespace detail

}  // namespace wadg
