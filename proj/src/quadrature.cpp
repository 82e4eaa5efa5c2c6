#include "quadrature.hpp"

#include <cmath>

namespace wadg {

namespace {

// Legendre P_n and derivative via the three-term recurrence.
void legendre_eval(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule1D gauss_1d(int npoints) {
    if (npoints < 1 || npoints > 32)
        throw std::invalid_argument("gauss_1d: npoints must be in [1,32]");
    QuadratureRule1D rule;
    rule.x.resize(npoints);
    rule.w.resize(npoints);
    rule.exactness = 2 * npoints - 1;
    if (npoints == 1) {
        rule.x[0] = 0.0;
        rule.w[0] = 2.0;
        return rule;
    }
    const int n = npoints;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess, then Newton to 1e-15.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p, dp;
        for (int it = 0; it < 100; ++it) {
            legendre_eval(n, x, p, dp);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        legendre_eval(n, x, p, dp);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return rule;
}

namespace detail {

void jacobi_gq(double alpha, double beta, int n, Vector& x, Vector& w) {
    const double mu0 = std::pow(2.0, alpha + beta + 1) * std::tgamma(alpha + 1) *
                       std::tgamma(beta + 1) / std::tgamma(alpha + beta + 2);
    if (n == 1) {
        x.resize(1);
        w.resize(1);
        x[0] = (beta - alpha) / (alpha + beta + 2.0);
        w[0] = mu0;
        return;
    }
    Matrix J = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double h1 = 2.0 * i + alpha + beta;
        if (i == 0 && alpha + beta == 0.0)
            J(0, 0) = 0.0;
        else
            J(i, i) = -(alpha * alpha - beta * beta) / (h1 + 2.0) / h1;
        if (i < n - 1) {
            double k = i + 1.0;
            double off = 2.0 / (h1 + 2.0) *
                         std::sqrt(k * (k + alpha + beta) * (k + alpha) * (k + beta) /
                                   (h1 + 1.0) / (h1 + 3.0));
            J(i, i + 1) = off;
            J(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(J);
    x = es.eigenvalues();
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double v0 = es.eigenvectors()(0, i);
        w[i] = v0 * v0 * mu0;
    }
}

QuadratureRule2D duffy_rule(int n) {
    QuadratureRule1D ga = gauss_1d(n);
    Vector xb, wb;
    jacobi_gq(1.0, 0.0, n, xb, wb);
    QuadratureRule2D rule;
    rule.r.resize(n * n);
    rule.s.resize(n * n);
    rule.w.resize(n * n);
    rule.exactness = 2 * n - 1;
    int k = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j, ++k) {
            double a = ga.x[i], b = xb[j];
            rule.r[k] = (1.0 + a) * (1.0 - b) / 2.0 - 1.0;
            rule.s[k] = b;
            rule.w[k] = ga.w[i] * wb[j] * 0.5;
        }
    }
    return rule;
}

}  // namespace detail

QuadratureRule2D triangle_quadrature(int degree) {
    if (degree < 1 || degree > 30)
        throw std::invalid_argument("triangle_quadrature: degree must be in [1,30]");
    return detail::duffy_rule((degree + 2) / 2);
}

double monomial_integral_tri(int a, int b) {
    // int_T r^a s^b = (-1)^(a+1)/(a+1) * (I_{a+b+1} - I_b),  I_m = int_{-1}^1 t^m dt
    auto I = [](int m) { return (m % 2 == 0) ? 2.0 / (m + 1) : 0.0; };
    double sgn = (a % 2 == 0) ? -1.0 : 1.0;
    return sgn / (a + 1) * (I(a + b + 1) - I(b));
}

}  // namespace wadg
