#include <doctest.h>

#include <cmath>
#include <random>

#include "reference_element.hpp"

using namespace wadg;

TEST_CASE("basis dimension and constant mode") {
    Vector r(1), s(1);
    r[0] = -0.3;
    s[0] = -0.4;
    Matrix V0 = orthonormal_basis_eval(0, r, s);
    CHECK(V0.cols() == 1);
    CHECK(V0(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    Matrix V3 = orthonormal_basis_eval(3, r, s);
    CHECK(V3.cols() == 10);
    CHECK_THROWS_AS(orthonormal_basis_eval(-1, r, s), std::invalid_argument);
}

TEST_CASE("basis Gram matrix is the identity under exact quadrature") {
    for (int N : {1, 2, 3, 4, 5}) {
        QuadratureRule2D rule = triangle_quadrature(2 * N);
        Matrix Phi = orthonormal_basis_eval(N, rule.r, rule.s);
        Matrix G = Phi.transpose() * rule.w.asDiagonal() * Phi;
        int np = (N + 1) * (N + 2) / 2;
        CHECK((G - Matrix::Identity(np, np)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("node sets") {
    Vector r, s;
    build_nodes(1, r, s);
    REQUIRE(r.size() == 3);
    // the three vertices, in lexicographic construction order
    CHECK(r[0] == doctest::Approx(-1.0));
    CHECK(s[0] == doctest::Approx(-1.0));
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(s[1] == doctest::Approx(-1.0));
    CHECK(r[2] == doctest::Approx(-1.0));
    CHECK(s[2] == doctest::Approx(1.0));

    build_nodes(2, r, s);
    REQUIRE(r.size() == 6);
    int n_vertices = 0, n_midpoints = 0;
    for (int i = 0; i < 6; ++i) {
        bool vert = (std::abs(r[i] + 1) < 1e-12 || std::abs(r[i] - 1) < 1e-12) &&
                    (std::abs(s[i] + 1) < 1e-12 || std::abs(s[i] - 1) < 1e-12);
        bool mid = (std::abs(r[i]) < 1e-12 && std::abs(s[i] + 1) < 1e-12) ||
                   (std::abs(s[i]) < 1e-12 && std::abs(r[i] + 1) < 1e-12) ||
                   (std::abs(r[i]) < 1e-12 && std::abs(s[i]) < 1e-12);
        n_vertices += vert;
        n_midpoints += mid;
    }
    CHECK(n_vertices == 3);
    CHECK(n_midpoints == 3);

    CHECK_THROWS_AS(build_nodes(0, r, s), std::invalid_argument);
    CHECK_THROWS_AS(build_nodes(kMaxOrder + 1, r, s), std::invalid_argument);
}

TEST_CASE("Vandermonde conditioning at N=4") {
    ReferenceElement ref = build_operators(4);
    Eigen::JacobiSVD<Matrix> svd(ref.V);
    double cond = svd.singularValues()(0) / svd.singularValues().tail(1)(0);
    CHECK(cond < 50.0);
}

TEST_CASE("reference operator invariants for N = 1..5") {
    for (int N = 1; N <= 5; ++N) {
        ReferenceElement ref = build_operators(N);
        CHECK(ref.Np == (N + 1) * (N + 2) / 2);
        Matrix G = ref.V.transpose() * ref.M * ref.V;
        CHECK((G - Matrix::Identity(ref.Np, ref.Np)).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ref.Dr.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ref.Ds.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
        CHECK(ref.M.sum() == doctest::Approx(2.0).epsilon(1e-12));
        for (int f = 0; f < 3; ++f) CHECK(int(ref.face_nodes[f].size()) == N + 1);
    }
}

TEST_CASE("differentiation exactness") {
    ReferenceElement ref1 = build_operators(1);
    Vector ones = ref1.Dr * ref1.r;
    CHECK((ones - Vector::Ones(3)).cwiseAbs().maxCoeff() < 1e-12);

    ReferenceElement ref = build_operators(2);
    Vector r2 = ref.r.cwiseProduct(ref.r);
    Vector d = ref.Dr * r2 - 2.0 * ref.r;
    CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("derivative of random polynomials matches modal differentiation") {
    std::mt19937 gen(1234);
    std::normal_distribution<double> dist;
    for (int N : {2, 3, 4, 5}) {
        ReferenceElement ref = build_operators(N);
        QuadratureRule2D rule = triangle_quadrature(2 * N);
        Matrix Phi = orthonormal_basis_eval(N, rule.r, rule.s);
        Matrix Phir, Phis;
        orthonormal_basis_grad(N, rule.r, rule.s, Phir, Phis);
        Matrix toQuad = interp_matrix(ref, rule.r, rule.s);
        for (int trial = 0; trial < 20; ++trial) {
            Vector modal(ref.Np);
            for (int i = 0; i < ref.Np; ++i) modal[i] = dist(gen);
            Vector nodal = ref.V * modal;
            // exact dp/dr at quadrature points vs interpolated Dr result
            Vector exact = Phir * modal;
            Vector approx = toQuad * (ref.Dr * nodal);
            CHECK((exact - approx).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("LIFT reproduces inverse mass times face mass") {
    for (int N : {1, 3, 5}) {
        ReferenceElement ref = build_operators(N);
        // Mref * LIFT columns give the raw face-mass scatter; check the
        // constant-vector action equals face arc length 2 per face.
        Matrix E = ref.M * ref.LIFT;
        for (int f = 0; f < 3; ++f) {
            double total = 0.0;
            for (int j = 0; j < ref.Nfp; ++j) total += E.col(f * ref.Nfp + j).sum();
            CHECK(total == doctest::Approx(2.0).epsilon(1e-12));
        }
        // against a 1D Gauss face-mass oracle: integrate trace products exactly
        QuadratureRule1D g = gauss_1d(N + 1);
        for (int f = 0; f < 3; ++f) {
            Matrix oracle = Matrix::Zero(ref.Nfp, ref.Nfp);
            // Lagrange trace basis on the face nodes
            Vector param(ref.Nfp);
            for (int i = 0; i < ref.Nfp; ++i) {
                int node = ref.face_nodes[f][i];
                param[i] = (f == 0) ? ref.r[node] : ref.s[node];
            }
            // evaluate 1D Lagrange basis at Gauss points by solving interpolation systems
            Matrix lag(g.size(), ref.Nfp);
            for (int j = 0; j < ref.Nfp; ++j) {
                for (int q = 0; q < g.size(); ++q) {
                    double val = 1.0;
                    for (int m = 0; m < ref.Nfp; ++m)
                        if (m != j) val *= (g.x[q] - param[m]) / (param[j] - param[m]);
                    lag(q, j) = val;
                }
            }
            oracle = lag.transpose() * g.w.asDiagonal() * lag;
            Matrix block(ref.Nfp, ref.Nfp);
            for (int i = 0; i < ref.Nfp; ++i)
                for (int j = 0; j < ref.Nfp; ++j)
                    block(i, j) = E(ref.face_nodes[f][i], f * ref.Nfp + j);
            CHECK((block - oracle).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("project_L2 basics") {
    const int N = 3;
    QuadratureRule2D rule = triangle_quadrature(2 * N);
    // constant c: only the first modal coefficient, c*sqrt(2)
    Vector vals = Vector::Constant(rule.size(), 2.5);
    Vector modal = project_L2(N, rule, vals);
    CHECK(modal[0] == doctest::Approx(2.5 * std::sqrt(2.0)).epsilon(1e-13));
    CHECK(modal.tail(modal.size() - 1).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(project_L2(N, triangle_quadrature(2 * N - 1), vals),
                    std::invalid_argument);
}

TEST_CASE("project_L2 reproduces polynomials at the nodes") {
    const int N = 3;
    ReferenceElement ref = build_operators(N);
    QuadratureRule2D rule = triangle_quadrature(2 * N);
    auto f = [](double r, double s) { return 1.0 + r - 2 * s + r * s + r * r * s; };
    Vector vals(rule.size());
    for (int q = 0; q < rule.size(); ++q) vals[q] = f(rule.r[q], rule.s[q]);
    Vector modal = project_L2(N, rule, vals);
    Vector nodal = ref.V * modal;
    for (int i = 0; i < ref.Np; ++i)
        CHECK(nodal[i] == doctest::Approx(f(ref.r[i], ref.s[i])).epsilon(1e-12));
}

TEST_CASE("project_L2 of exp(r+s) matches dense normal-equation oracle") {
    const int N = 3;
    // oracle: solve the dense Gram system assembled with over-integration
    QuadratureRule2D fine = triangle_quadrature(2 * N + 12);
    Matrix Phi = orthonormal_basis_eval(N, fine.r, fine.s);
    Vector f(fine.size());
    for (int q = 0; q < fine.size(); ++q) f[q] = std::exp(fine.r[q] + fine.s[q]);
    Matrix G = Phi.transpose() * fine.w.asDiagonal() * Phi;
    Vector rhs = Phi.transpose() * fine.w.cwiseProduct(f);
    Vector oracle = G.llt().solve(rhs);
    Vector modal = project_L2(N, fine, f);
    CHECK((modal - oracle).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection is idempotent and a contraction") {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> dist(0.3, 2.0);
    const int N = 4;
    ReferenceElement ref = build_operators(N);
    QuadratureRule2D rule = triangle_quadrature(2 * N + 8);
    Matrix Phi = orthonormal_basis_eval(N, rule.r, rule.s);
    for (int trial = 0; trial < 20; ++trial) {
        double a = dist(gen), b = dist(gen);
        Vector f(rule.size());
        for (int q = 0; q < rule.size(); ++q)
            f[q] = std::sin(a * rule.r[q]) * std::exp(b * rule.s[q]);
        Vector modal = project_L2(N, rule, f);
        // re-project the projected polynomial
        Vector fproj = Phi * modal;
        Vector modal2 = project_L2(N, rule, fproj);
        CHECK((modal - modal2).cwiseAbs().maxCoeff() < 1e-12);
        // ||Pi f|| <= ||f||, both by the same quadrature
        double norm_proj = modal.norm();  // orthonormal basis
        double norm_f = std::sqrt(rule.w.dot(f.cwiseProduct(f)));
        CHECK(norm_proj <= norm_f + 1e-12);
    }
}

TEST_CASE("orders above the supported ceiling are rejected") {
    CHECK_THROWS_AS(build_operators(kMaxOrder + 1), std::invalid_argument);
    CHECK_NOTHROW(build_operators(kMaxOrder));
}
