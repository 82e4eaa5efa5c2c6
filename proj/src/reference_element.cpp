#include "reference_element.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wadg {

namespace detail {

double jacobi_p(double x, double alpha, double beta, int n) {
    double gamma0 = std::pow(2.0, alpha + beta + 1) / (alpha + beta + 1) *
                    std::tgamma(alpha + 1) * std::tgamma(beta + 1) /
                    std::tgamma(alpha + beta + 1);
    double pm1 = 1.0 / std::sqrt(gamma0);
    if (n == 0) return pm1;
    double gamma1 = (alpha + 1) * (beta + 1) / (alpha + beta + 3) * gamma0;
    double p = ((alpha + beta + 2) * x / 2 + (alpha - beta) / 2) / std::sqrt(gamma1);
    if (n == 1) return p;
    double aold = 2.0 / (2 + alpha + beta) *
                  std::sqrt((alpha + 1) * (beta + 1) / (alpha + beta + 3));
    for (int i = 1; i < n; ++i) {
        double h1 = 2 * i + alpha + beta;
        double anew = 2.0 / (h1 + 2) *
                      std::sqrt((i + 1) * (i + 1 + alpha + beta) * (i + 1 + alpha) *
                                (i + 1 + beta) / (h1 + 1) / (h1 + 3));
        double bnew = -(alpha * alpha - beta * beta) / h1 / (h1 + 2);
        double pnew = (-aold * pm1 + (x - bnew) * p) / anew;
        pm1 = p;
        p = pnew;
        aold = anew;
    }
    return p;
}

double grad_jacobi_p(double x, double alpha, double beta, int n) {
    if (n == 0) return 0.0;
    return std::sqrt(n * (n + alpha + beta + 1)) * jacobi_p(x, alpha + 1, beta + 1, n - 1);
}

Vector jacobi_gl(int n) {
    Vector x(n + 1);
    x[0] = -1.0;
    x[n] = 1.0;
    if (n >= 2) {
        Vector xi, wi;
        wadg::detail::jacobi_gq(1.0, 1.0, n - 1, xi, wi);
        for (int i = 0; i < n - 1; ++i) x[i + 1] = xi[i];
    }
    return x;
}

}  // namespace detail

namespace {

// Collapsed coordinates; the s=1 apex is mapped to a=-1.
void rs_to_ab(double r, double s, double& a, double& b) {
    a = (std::abs(1.0 - s) > 1e-14) ? 2.0 * (1.0 + r) / (1.0 - s) - 1.0 : -1.0;
    b = s;
}

double simplex2dp(double a, double b, int i, int j) {
    double h1 = detail::jacobi_p(a, 0, 0, i);
    double h2 = detail::jacobi_p(b, 2 * i + 1, 0, j);
    return std::sqrt(2.0) * h1 * h2 * std::pow(1.0 - b, i);
}

void grad_simplex2dp(double a, double b, int i, int j, double& dr, double& ds) {
    double fa = detail::jacobi_p(a, 0, 0, i);
    double dfa = detail::grad_jacobi_p(a, 0, 0, i);
    double gb = detail::jacobi_p(b, 2 * i + 1, 0, j);
    double dgb = detail::grad_jacobi_p(b, 2 * i + 1, 0, j);
    double dmodedr = dfa * gb;
    if (i > 0) dmodedr *= std::pow(0.5 * (1.0 - b), i - 1);
    double dmodeds = dfa * (gb * 0.5 * (1.0 + a));
    if (i > 0) dmodeds *= std::pow(0.5 * (1.0 - b), i - 1);
    double tmp = dgb * std::pow(0.5 * (1.0 - b), i);
    if (i > 0) tmp -= 0.5 * i * gb * std::pow(0.5 * (1.0 - b), i - 1);
    dmodeds += fa * tmp;
    double scale = std::pow(2.0, i + 0.5);
    dr = scale * dmodedr;
    ds = scale * dmodeds;
}

Matrix vandermonde_1d(int N, const Vector& x) {
    Matrix V(x.size(), N + 1);
    for (int j = 0; j <= N; ++j)
        for (int i = 0; i < x.size(); ++i) V(i, j) = detail::jacobi_p(x[i], 0, 0, j);
    return V;
}

// Deviation of Lagrange-interpolated LGL nodes from equispaced ones,
// evaluated at arbitrary parameters (the warp-and-blend warp function).
Vector warp_factor(int N, const Vector& rout) {
    Vector lgl = detail::jacobi_gl(N);
    Vector req = Vector::LinSpaced(N + 1, -1.0, 1.0);
    Matrix Veq = vandermonde_1d(N, req);
    Matrix Pmat(N + 1, rout.size());
    for (int i = 0; i <= N; ++i)
        for (int k = 0; k < rout.size(); ++k) Pmat(i, k) = detail::jacobi_p(rout[k], 0, 0, i);
    Matrix Lmat = Veq.transpose().partialPivLu().solve(Pmat);
    Vector warp = Lmat.transpose() * (lgl - req);
    for (int k = 0; k < rout.size(); ++k) {
        bool interior = std::abs(rout[k]) < 1.0 - 1e-10;
        double sf = interior ? 1.0 - rout[k] * rout[k] : 1.0;
        warp[k] = interior ? warp[k] / sf : 0.0;
    }
    return warp;
}

constexpr double kAlphaOpt[15] = {0.0000, 0.0000, 1.4152, 0.1001, 0.2751,
                                  0.9800, 1.0999, 1.2832, 1.3648, 1.4773,
                                  1.4959, 1.5743, 1.5770, 1.6223, 1.6258};

}  // namespace

Matrix orthonormal_basis_eval(int degree, const Vector& r, const Vector& s) {
    if (degree < 0) throw std::invalid_argument("orthonormal_basis_eval: degree < 0");
    const int np = (degree + 1) * (degree + 2) / 2;
    Matrix V(r.size(), np);
    for (int p = 0; p < r.size(); ++p) {
        if (r[p] < -1.0 - 1e-12 || s[p] < -1.0 - 1e-12 || r[p] + s[p] > 1e-12)
            throw std::invalid_argument("orthonormal_basis_eval: point outside reference triangle");
        double a, b;
        rs_to_ab(r[p], s[p], a, b);
        int col = 0;
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; j <= degree - i; ++j, ++col) V(p, col) = simplex2dp(a, b, i, j);
    }
    return V;
}

void orthonormal_basis_grad(int degree, const Vector& r, const Vector& s,
                            Matrix& Vr, Matrix& Vs) {
    const int np = (degree + 1) * (degree + 2) / 2;
    Vr.resize(r.size(), np);
    Vs.resize(r.size(), np);
    for (int p = 0; p < r.size(); ++p) {
        double a, b;
        rs_to_ab(r[p], s[p], a, b);
        int col = 0;
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; j <= degree - i; ++j, ++col)
                grad_simplex2dp(a, b, i, j, Vr(p, col), Vs(p, col));
    }
}

void build_nodes(int N, Vector& r, Vector& s) {
    if (N < 1 || N > kMaxOrder)
        throw std::invalid_argument("build_nodes: order must be in [1," +
                                    std::to_string(kMaxOrder) + "]");
    const int np = (N + 1) * (N + 2) / 2;
    const double alpha = kAlphaOpt[N - 1];
    Vector L1(np), L2(np), L3(np);
    int sk = 0;
    for (int n = 1; n <= N + 1; ++n)
        for (int m = 1; m <= N + 2 - n; ++m, ++sk) {
            L1[sk] = (n - 1.0) / N;
            L3[sk] = (m - 1.0) / N;
        }
    L2 = Vector::Ones(np) - L1 - L3;
    Vector x = L3 - L2;
    Vector y = (2.0 * L1 - L2 - L3) / std::sqrt(3.0);
    Vector blend1 = 4.0 * L2.cwiseProduct(L3);
    Vector blend2 = 4.0 * L1.cwiseProduct(L3);
    Vector blend3 = 4.0 * L1.cwiseProduct(L2);
    Vector warpf1 = warp_factor(N, L3 - L2);
    Vector warpf2 = warp_factor(N, L1 - L3);
    Vector warpf3 = warp_factor(N, L2 - L1);
    for (int k = 0; k < np; ++k) {
        double w1 = blend1[k] * warpf1[k] * (1.0 + std::pow(alpha * L1[k], 2));
        double w2 = blend2[k] * warpf2[k] * (1.0 + std::pow(alpha * L2[k], 2));
        double w3 = blend3[k] * warpf3[k] * (1.0 + std::pow(alpha * L3[k], 2));
        x[k] += w1 + std::cos(2.0 * M_PI / 3.0) * w2 + std::cos(4.0 * M_PI / 3.0) * w3;
        y[k] += std::sin(2.0 * M_PI / 3.0) * w2 + std::sin(4.0 * M_PI / 3.0) * w3;
    }
    r.resize(np);
    s.resize(np);
    for (int k = 0; k < np; ++k) {
        double l1 = (std::sqrt(3.0) * y[k] + 1.0) / 3.0;
        double l2 = (-3.0 * x[k] - std::sqrt(3.0) * y[k] + 2.0) / 6.0;
        double l3 = (3.0 * x[k] - std::sqrt(3.0) * y[k] + 2.0) / 6.0;
        r[k] = -l2 + l3 - l1;
        s[k] = -l2 - l3 + l1;
    }
}

ReferenceElement build_operators(int N) {
    ReferenceElement ref;
    ref.N = N;
    ref.Np = (N + 1) * (N + 2) / 2;
    ref.Nfp = N + 1;
    build_nodes(N, ref.r, ref.s);
    ref.V = orthonormal_basis_eval(N, ref.r, ref.s);
    Eigen::FullPivLU<Matrix> lu(ref.V);
    if (!lu.isInvertible())
        throw NumericalError("build_operators: singular Vandermonde for N=" + std::to_string(N));
    ref.Vinv = lu.inverse();
    Matrix Vr, Vs;
    orthonormal_basis_grad(N, ref.r, ref.s, Vr, Vs);
    ref.Dr = Vr * ref.Vinv;
    ref.Ds = Vs * ref.Vinv;
    ref.M = (ref.V * ref.V.transpose()).inverse();

    const double tol = 1e-10;
    for (int i = 0; i < ref.Np; ++i) {
        if (std::abs(ref.s[i] + 1.0) < tol) ref.face_nodes[0].push_back(i);
        if (std::abs(ref.r[i] + ref.s[i]) < tol) ref.face_nodes[1].push_back(i);
        if (std::abs(ref.r[i] + 1.0) < tol) ref.face_nodes[2].push_back(i);
    }
    // order along the face parameter so neighbors can be matched by reversal
    auto sort_by = [&](std::vector<int>& idx, const Vector& key) {
        std::sort(idx.begin(), idx.end(), [&](int i, int j) { return key[i] < key[j]; });
    };
    sort_by(ref.face_nodes[0], ref.r);
    sort_by(ref.face_nodes[1], ref.s);
    sort_by(ref.face_nodes[2], ref.s);

    Matrix Emat = Matrix::Zero(ref.Np, 3 * ref.Nfp);
    for (int f = 0; f < 3; ++f) {
        Vector param(ref.Nfp);
        for (int i = 0; i < ref.Nfp; ++i) {
            int node = ref.face_nodes[f][i];
            param[i] = (f == 0) ? ref.r[node] : ref.s[node];
        }
        Matrix V1 = vandermonde_1d(N, param);
        Matrix massf = (V1 * V1.transpose()).inverse();
        for (int i = 0; i < ref.Nfp; ++i)
            for (int j = 0; j < ref.Nfp; ++j)
                Emat(ref.face_nodes[f][i], f * ref.Nfp + j) = massf(i, j);
    }
    ref.LIFT = ref.V * (ref.V.transpose() * Emat);
    return ref;
}

Vector project_L2(int N, const QuadratureRule2D& rule, const Vector& values_at_quad) {
    if (rule.exactness < 2 * N)
        throw std::invalid_argument("project_L2: rule exactness below 2N");
    if (values_at_quad.size() != rule.size())
        throw std::invalid_argument("project_L2: values/rule size mismatch");
    Matrix Phi = orthonormal_basis_eval(N, rule.r, rule.s);
    return Phi.transpose() * rule.w.cwiseProduct(values_at_quad);
}

Matrix interp_matrix(const ReferenceElement& ref, const Vector& r, const Vector& s) {
    return orthonormal_basis_eval(ref.N, r, s) * ref.Vinv;
}

}  // namespace wadg
