#include <doctest.h>

#include <cmath>
#include <random>

#include "material.hpp"

using namespace wadg;

TEST_CASE("builtin field point values") {
    WeightField ss = builtin_field("smoothsine");
    CHECK(ss(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ss.w_min == doctest::Approx(0.5));
    CHECK(ss.w_max == doctest::Approx(1.5));

    WeightField cone = builtin_field("cone", 0.0);
    CHECK(cone(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));

    WeightField lay = builtin_field("layered");
    // 2 + (1/2) sin(pi/2) sin(pi) = 2 at (0.25, 0.5)
    CHECK(lay(0.25, 0.5) == doctest::Approx(2.0).epsilon(1e-13));

    WeightField c = builtin_field("const", 4.0);
    CHECK(c(0.3, -0.7) == doctest::Approx(4.0));
    CHECK(c.w_min == doctest::Approx(4.0));
    CHECK(c.w_max == doctest::Approx(4.0));

    CHECK_THROWS_AS(builtin_field("nope"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_field("cone", -1.0), std::invalid_argument);
}

TEST_CASE("field spec parsing") {
    WeightField f = parse_field("cone:a=1e-3");
    CHECK(f(0.0, 0.0) == doctest::Approx(1.0 + std::sqrt(1e-3)).epsilon(1e-13));
    CHECK(parse_field("const:v=2.5")(0, 0) == doctest::Approx(2.5));
    CHECK_THROWS_AS(parse_field("cone:1e-3"), std::invalid_argument);
}

TEST_CASE("sampling basics and bounds containment") {
    ReferenceElement ref = build_operators(3);
    Mesh2D mesh = uniform_tri_mesh(-1, 1, -1, 1, 2);
    QuadratureRule2D rule = triangle_quadrature(7);

    WeightField c4 = builtin_field("const", 4.0);
    SampledWeights s4 = sample(c4, mesh, ref, rule);
    CHECK((s4.w_quad.array() - 4.0).abs().maxCoeff() < 1e-15);

    WeightField ss = builtin_field("smoothsine");
    SampledWeights s = sample(ss, mesh, ref, rule);
    CHECK(s.w_quad.minCoeff() >= ss.w_min - 1e-12);
    CHECK(s.w_quad.maxCoeff() <= ss.w_max + 1e-12);
    // w * (1/w) = 1 pointwise
    CHECK((s.w_quad.cwiseProduct(s.inv_w_quad).array() - 1.0).abs().maxCoeff() < 1e-14);
}

TEST_CASE("element mean of w matches a Monte-Carlo oracle") {
    ReferenceElement ref = build_operators(2);
    Mesh2D mesh = uniform_tri_mesh(-1, 1, -1, 1, 2);
    QuadratureRule2D rule = triangle_quadrature(12);
    WeightField ss = builtin_field("smoothsine");
    SampledWeights s = sample(ss, mesh, ref, rule);
    GeomFactors g = mesh.geometric_factors();

    std::mt19937 gen(42);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    int k = 3;
    double x0 = mesh.vx[mesh.etov(k, 0)], y0 = mesh.vy[mesh.etov(k, 0)];
    double x1 = mesh.vx[mesh.etov(k, 1)], y1 = mesh.vy[mesh.etov(k, 1)];
    double x2 = mesh.vx[mesh.etov(k, 2)], y2 = mesh.vy[mesh.etov(k, 2)];
    double mc = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        double a = u01(gen), b = u01(gen);
        if (a + b > 1.0) { a = 1.0 - a; b = 1.0 - b; }
        double x = x0 + a * (x1 - x0) + b * (x2 - x0);
        double y = y0 + a * (y1 - y0) + b * (y2 - y0);
        mc += ss(x, y);
    }
    mc /= n;
    double quad_mean = rule.w.dot(s.w_quad.col(k)) / 2.0;  // reference area 2
    CHECK(quad_mean == doctest::Approx(mc).epsilon(1e-3));
    (void)g;
}

TEST_CASE("quadrature refinement leaves the sampled integral unchanged") {
    ReferenceElement ref = build_operators(3);
    Mesh2D mesh = uniform_tri_mesh(-1, 1, -1, 1, 16);
    WeightField ss = builtin_field("smoothsine");
    const int N = 3;
    QuadratureRule2D r1 = triangle_quadrature(2 * N);
    QuadratureRule2D r2 = triangle_quadrature(2 * N + 4);
    SampledWeights s1 = sample(ss, mesh, ref, r1);
    SampledWeights s2 = sample(ss, mesh, ref, r2);
    for (int k = 0; k < mesh.num_elements(); ++k) {
        double i1 = r1.w.dot(s1.w_quad.col(k));
        double i2 = r2.w.dot(s2.w_quad.col(k));
        CHECK(std::abs(i1 - i2) < 1e-10);
    }
}

TEST_CASE("layered field requires faces aligned with the interface") {
    WeightField lay = builtin_field("layered");
    Mesh2D even = uniform_tri_mesh(-1, 1, -1, 1, 4);
    CHECK_NOTHROW(check_alignment(lay, even));
    Mesh2D odd = uniform_tri_mesh(-1, 1, -1, 1, 3);  // elements straddle y=0
    CHECK_THROWS_AS(check_alignment(lay, odd), std::invalid_argument);
    // smooth fields never straddle
    CHECK_NOTHROW(check_alignment(builtin_field("smoothsine"), odd));
}
