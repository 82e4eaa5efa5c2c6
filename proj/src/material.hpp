#pragma once

#include <functional>
#include <string>

#include "mesh.hpp"
#include "quadrature.hpp"
#include "reference_element.hpp"
#include "types.hpp"

namespace wadg {

/// Scalar field on the domain with positive global bounds. Used both as a
/// wavespeed field c^2(x,y) and as a generic projection weight.
struct WeightField {
    enum class Kind { Constant, SmoothSine, RegularizedCone, LayeredSine, ExpXY, Custom };

    Kind kind = Kind::Constant;
    std::function<double(double, double)> eval;
    double w_min = 1.0, w_max = 1.0;
    std::string name = "const";

    double operator()(double x, double y) const { return eval(x, y); }
};

/// Built-in fields:
///   const:v=..      constant v
///   smoothsine      1 + 1/2 sin(pi x) sin(pi y)
///   cone:a=..       1 + sqrt(x^2 + y^2 + a)
///   layered         1 + 1/2 sin(2 pi x) sin(2 pi y)  (y <= 0)
///                   2 + 1/2 sin(2 pi x) sin(2 pi y)  (y >  0)
///   expxy           exp(x + y)
/// Bounds for non-constant fields come from dense sampling of [-1,1]^2 with a
/// 1% margin (only order-of-magnitude bounds are consumed downstream).
WeightField builtin_field(const std::string& name, double param = 0.0);

/// Parse "name" or "name:key=value" field specs used by config files.
WeightField parse_field(const std::string& spec);

/// Per-element samples of a field at quadrature and interpolation points.
struct SampledWeights {
    Matrix w_quad;      // Nq x K
    Matrix inv_w_quad;  // 1/w, same layout
    Matrix w_nodes;     // Np x K
    int quad_degree = 0;
};

SampledWeights sample(const WeightField& field, const Mesh2D& mesh,
                      const ReferenceElement& ref, const QuadratureRule2D& rule);

/// Fails if a jump of `field` crosses element interiors: for the layered
/// field every element must lie entirely in y<=0 or y>=0.
void check_alignment(const WeightField& field, const Mesh2D& mesh);

}  // namespace wadg
