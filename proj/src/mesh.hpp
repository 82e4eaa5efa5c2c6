#pragma once

#include <iosfwd>
#include <vector>

#include "reference_element.hpp"
#include "types.hpp"

namespace wadg {

/// Per-element constants of the affine map plus face data.
struct GeomFactors {
    Vector rx, ry, sx, sy, J;  // length K
    Matrix nx, ny, sJ;         // K x 3
};

/// Affine triangulation with connectivity. Boundary faces self-reference.
struct Mesh2D {
    std::vector<double> vx, vy;
    IndexMatrix etov;  // K x 3, counterclockwise
    IndexMatrix etoe;  // K x 3 neighbor element (self on boundary)
    IndexMatrix etof;  // K x 3 neighbor local face

    int num_elements() const { return static_cast<int>(etov.rows()); }
    int num_vertices() const { return static_cast<int>(vx.size()); }

    GeomFactors geometric_factors() const;

    /// Physical coordinates of reference points on every element, (#points x K).
    void map_points(const Vector& r, const Vector& s, Matrix& x, Matrix& y) const;

    /// Square-cell edge length h per element (uniform meshes); here the
    /// diameter of the inscribed circle, used for CFL.
    double min_incircle_diameter() const;

    /// Plain-text dump: "K Nv", vertex lines, element lines (0-based).
    void dump(std::ostream& os) const;
};

/// Uniform triangulation of a rectangle: cells_per_side^2 squares, each split
/// by the lower-left to upper-right diagonal. K = 2*cells_per_side^2.
Mesh2D uniform_tri_mesh(double xmin, double xmax, double ymin, double ymax,
                        int cells_per_side);

/// Face-node correspondence: for each (face node, element), the flat index
/// (node + Np*element) of itself (`vmapm`) and of the matching node on the
/// neighbor (`vmapp`, equal to vmapm on boundary). Matched by coordinates.
struct NodeMaps {
    IndexMatrix vmapm, vmapp;  // (3*Nfp) x K
};

NodeMaps build_node_maps(const Mesh2D& mesh, const ReferenceElement& ref);

}  // namespace wadg
