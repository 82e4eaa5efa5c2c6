#include "material.hpp"

#include <cmath>

namespace wadg {

namespace {

void dense_bounds(WeightField& f) {
    double lo = std::numeric_limits<double>::max();
    double hi = std::numeric_limits<double>::lowest();
    const int n = 201;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            double x = -1.0 + 2.0 * i / (n - 1);
            double y = -1.0 + 2.0 * j / (n - 1);
            double v = f.eval(x, y);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    f.w_min = lo - 0.01 * std::abs(lo);
    f.w_max = hi + 0.01 * std::abs(hi);
}

}  // namespace

WeightField builtin_field(const std::string& name, double param) {
    WeightField f;
    f.name = name;
    if (name == "const") {
        if (param == 0.0) param = 1.0;
        if (param <= 0.0) throw std::invalid_argument("builtin_field: constant must be positive");
        f.kind = WeightField::Kind::Constant;
        f.eval = [param](double, double) { return param; };
        f.w_min = f.w_max = param;
    } else if (name == "smoothsine") {
        f.kind = WeightField::Kind::SmoothSine;
        f.eval = [](double x, double y) {
            return 1.0 + 0.5 * std::sin(M_PI * x) * std::sin(M_PI * y);
        };
        f.w_min = 0.5;
        f.w_max = 1.5;
    } else if (name == "cone") {
        if (param < 0.0) throw std::invalid_argument("builtin_field: cone needs a >= 0");
        f.kind = WeightField::Kind::RegularizedCone;
        f.eval = [param](double x, double y) {
            return 1.0 + std::sqrt(x * x + y * y + param);
        };
        dense_bounds(f);
        f.w_min = 1.0;  // exact lower bound at the tip
    } else if (name == "layered") {
        f.kind = WeightField::Kind::LayeredSine;
        f.eval = [](double x, double y) {
            double base = (y > 0.0) ? 2.0 : 1.0;
            return base + 0.5 * std::sin(2.0 * M_PI * x) * std::sin(2.0 * M_PI * y);
        };
        f.w_min = 0.5;
        f.w_max = 2.5;
    } else if (name == "expxy") {
        f.kind = WeightField::Kind::ExpXY;
        f.eval = [](double x, double y) { return std::exp(x + y); };
        dense_bounds(f);
    } else {
        throw std::invalid_argument("builtin_field: unknown field '" + name + "'");
    }
    return f;
}

WeightField parse_field(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return builtin_field(spec);
    std::string name = spec.substr(0, colon);
    std::string kv = spec.substr(colon + 1);
    auto eq = kv.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("parse_field: expected key=value in '" + spec + "'");
    double value = std::stod(kv.substr(eq + 1));
    return builtin_field(name, value);
}

SampledWeights sample(const WeightField& field, const Mesh2D& mesh,
                      const ReferenceElement& ref, const QuadratureRule2D& rule) {
    SampledWeights sw;
    sw.quad_degree = rule.exactness;
    Matrix xq, yq, xn, yn;
    mesh.map_points(rule.r, rule.s, xq, yq);
    mesh.map_points(ref.r, ref.s, xn, yn);
    const int K = mesh.num_elements();
    sw.w_quad.resize(rule.size(), K);
    sw.inv_w_quad.resize(rule.size(), K);
    sw.w_nodes.resize(ref.Np, K);
    for (int k = 0; k < K; ++k) {
        for (int q = 0; q < rule.size(); ++q) {
            double v = field(xq(q, k), yq(q, k));
            if (!std::isfinite(v))
                throw NumericalError("sample: non-finite field value on element " +
                                     std::to_string(k));
            sw.w_quad(q, k) = v;
            sw.inv_w_quad(q, k) = 1.0 / v;
        }
        for (int i = 0; i < ref.Np; ++i) sw.w_nodes(i, k) = field(xn(i, k), yn(i, k));
    }
    return sw;
}

void check_alignment(const WeightField& field, const Mesh2D& mesh) {
    if (field.kind != WeightField::Kind::LayeredSine) return;
    for (int k = 0; k < mesh.num_elements(); ++k) {
        bool above = false, below = false;
        for (int v = 0; v < 3; ++v) {
            double y = mesh.vy[mesh.etov(k, v)];
            if (y > 1e-12) above = true;
            if (y < -1e-12) below = true;
        }
        if (above && below)
            throw std::invalid_argument("check_alignment: element " + std::to_string(k) +
                                        " straddles the y=0 interface");
    }
}

}  // namespace wadg
