#pragma once

#include <vector>

#include "types.hpp"

namespace wadg {

/// Volume rule on the bi-unit reference triangle {r,s >= -1, r+s <= 0}.
struct QuadratureRule2D {
    Vector r, s, w;
    int exactness = 0;

    int size() const { return static_cast<int>(w.size()); }
};

/// Gauss-Legendre rule on [-1,1].
struct QuadratureRule1D {
    Vector x, w;
    int exactness = 0;

    int size() const { return static_cast<int>(w.size()); }
};

/// Gauss-Legendre rule with `npoints` points, exact for degree 2*npoints-1.
/// Nodes by Newton iteration on the Legendre polynomial.
QuadratureRule1D gauss_1d(int npoints);

/// Collapsed-coordinate (Duffy) tensor rule with exactness >= degree.
/// Gauss-Legendre in the collapsed direction, Gauss-Jacobi(1,0) in the other;
/// the (1-b)/2 map Jacobian is absorbed by the Jacobi weight.
QuadratureRule2D triangle_quadrature(int degree);

/// Exact integral of r^a s^b over the reference triangle (closed form).
double monomial_integral_tri(int a, int b);

namespace detail {
/// Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta, n points (Golub-Welsch).
void jacobi_gq(double alpha, double beta, int n, Vector& x, Vector& w);
/// Unrestricted Duffy rule with n points per direction (exactness 2n-1).
QuadratureRule2D duffy_rule(int n);
}  // namespace detail

}  // namespace wadg
