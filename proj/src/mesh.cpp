#include "mesh.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <utility>

namespace wadg {

namespace {
constexpr int kFaceVerts[3][2] = {{0, 1}, {1, 2}, {2, 0}};
}

Mesh2D uniform_tri_mesh(double xmin, double xmax, double ymin, double ymax,
                        int cells_per_side) {
    if (!(xmax > xmin) || !(ymax > ymin) || cells_per_side < 1)
        throw std::invalid_argument("uniform_tri_mesh: invalid dimensions");
    Mesh2D mesh;
    const int n = cells_per_side;
    const int nv1 = n + 1;
    mesh.vx.reserve(nv1 * nv1);
    mesh.vy.reserve(nv1 * nv1);
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            mesh.vx.push_back(xmin + (xmax - xmin) * i / n);
            mesh.vy.push_back(ymin + (ymax - ymin) * j / n);
        }
    mesh.etov.resize(2 * n * n, 3);
    int k = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int v00 = j * nv1 + i;
            int v10 = v00 + 1;
            int v01 = v00 + nv1;
            int v11 = v01 + 1;
            mesh.etov.row(k++) << v00, v10, v11;
            mesh.etov.row(k++) << v00, v11, v01;
        }
    // connect
    const int K = mesh.num_elements();
    mesh.etoe.resize(K, 3);
    mesh.etof.resize(K, 3);
    std::map<std::pair<int, int>, std::pair<int, int>> open_faces;
    for (int e = 0; e < K; ++e)
        for (int f = 0; f < 3; ++f) {
            mesh.etoe(e, f) = e;
            mesh.etof(e, f) = f;
            int a = mesh.etov(e, kFaceVerts[f][0]);
            int b = mesh.etov(e, kFaceVerts[f][1]);
            auto key = std::minmax(a, b);
            auto it = open_faces.find(key);
            if (it == open_faces.end()) {
                open_faces.emplace(key, std::make_pair(e, f));
            } else {
                auto [e2, f2] = it->second;
                if (mesh.etoe(e2, f2) != e2)
                    throw NumericalError("uniform_tri_mesh: non-conforming face");
                mesh.etoe(e, f) = e2;
                mesh.etof(e, f) = f2;
                mesh.etoe(e2, f2) = e;
                mesh.etof(e2, f2) = f;
                open_faces.erase(it);
            }
        }
    return mesh;
}

GeomFactors Mesh2D::geometric_factors() const {
    const int K = num_elements();
    GeomFactors g;
    g.rx.resize(K); g.ry.resize(K); g.sx.resize(K); g.sy.resize(K); g.J.resize(K);
    g.nx.resize(K, 3); g.ny.resize(K, 3); g.sJ.resize(K, 3);
    for (int k = 0; k < K; ++k) {
        double x0 = vx[etov(k, 0)], x1 = vx[etov(k, 1)], x2 = vx[etov(k, 2)];
        double y0 = vy[etov(k, 0)], y1 = vy[etov(k, 1)], y2 = vy[etov(k, 2)];
        double xr = (x1 - x0) / 2, xs = (x2 - x0) / 2;
        double yr = (y1 - y0) / 2, ys = (y2 - y0) / 2;
        double J = xr * ys - xs * yr;
        if (J <= 0.0)
            throw NumericalError("geometric_factors: degenerate element " + std::to_string(k));
        g.J[k] = J;
        g.rx[k] = ys / J; g.ry[k] = -xs / J;
        g.sx[k] = -yr / J; g.sy[k] = xr / J;
        // outward normals of the reference faces mapped through the inverse transpose
        double nxr[3] = {-g.sx[k], g.rx[k] + g.sx[k], -g.rx[k]};
        double nyr[3] = {-g.sy[k], g.ry[k] + g.sy[k], -g.ry[k]};
        for (int f = 0; f < 3; ++f) {
            double mag = std::hypot(nxr[f], nyr[f]);
            g.nx(k, f) = nxr[f] / mag;
            g.ny(k, f) = nyr[f] / mag;
            g.sJ(k, f) = mag * J;
        }
    }
    return g;
}

void Mesh2D::map_points(const Vector& r, const Vector& s, Matrix& x, Matrix& y) const {
    const int K = num_elements();
    const int n = static_cast<int>(r.size());
    x.resize(n, K);
    y.resize(n, K);
    for (int k = 0; k < K; ++k) {
        double x0 = vx[etov(k, 0)], x1 = vx[etov(k, 1)], x2 = vx[etov(k, 2)];
        double y0 = vy[etov(k, 0)], y1 = vy[etov(k, 1)], y2 = vy[etov(k, 2)];
        for (int i = 0; i < n; ++i) {
            double l0 = -(r[i] + s[i]) / 2, l1 = (1 + r[i]) / 2, l2 = (1 + s[i]) / 2;
            x(i, k) = l0 * x0 + l1 * x1 + l2 * x2;
            y(i, k) = l0 * y0 + l1 * y1 + l2 * y2;
        }
    }
}

double Mesh2D::min_incircle_diameter() const {
    double best = std::numeric_limits<double>::max();
    for (int k = 0; k < num_elements(); ++k) {
        double x0 = vx[etov(k, 0)], x1 = vx[etov(k, 1)], x2 = vx[etov(k, 2)];
        double y0 = vy[etov(k, 0)], y1 = vy[etov(k, 1)], y2 = vy[etov(k, 2)];
        double a = std::hypot(x1 - x0, y1 - y0);
        double b = std::hypot(x2 - x1, y2 - y1);
        double c = std::hypot(x0 - x2, y0 - y2);
        double area = 0.5 * std::abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0));
        best = std::min(best, 4.0 * area / (a + b + c));
    }
    return best;
}

void Mesh2D::dump(std::ostream& os) const {
    os << num_elements() << ' ' << num_vertices() << '\n';
    for (int v = 0; v < num_vertices(); ++v) os << vx[v] << ' ' << vy[v] << '\n';
    for (int k = 0; k < num_elements(); ++k)
        os << etov(k, 0) << ' ' << etov(k, 1) << ' ' << etov(k, 2) << '\n';
}

NodeMaps build_node_maps(const Mesh2D& mesh, const ReferenceElement& ref) {
    const int K = mesh.num_elements();
    const int Nfp = ref.Nfp;
    Matrix x, y;
    mesh.map_points(ref.r, ref.s, x, y);
    NodeMaps maps;
    maps.vmapm.resize(3 * Nfp, K);
    maps.vmapp.resize(3 * Nfp, K);
    // matching tolerance relative to the shortest edge
    double hmin = std::numeric_limits<double>::max();
    for (int k = 0; k < K; ++k)
        for (int f = 0; f < 3; ++f) {
            int a = mesh.etov(k, kFaceVerts[f][0]);
            int b = mesh.etov(k, kFaceVerts[f][1]);
            hmin = std::min(hmin, std::hypot(mesh.vx[a] - mesh.vx[b], mesh.vy[a] - mesh.vy[b]));
        }
    const double tol2 = std::pow(1e-8 * hmin, 2);
    for (int k = 0; k < K; ++k)
        for (int f = 0; f < 3; ++f) {
            int k2 = mesh.etoe(k, f);
            int f2 = mesh.etof(k, f);
            for (int i = 0; i < Nfp; ++i) {
                int node = ref.face_nodes[f][i];
                maps.vmapm(f * Nfp + i, k) = node + k * ref.Np;
                if (k2 == k) {
                    maps.vmapp(f * Nfp + i, k) = node + k * ref.Np;
                    continue;
                }
                int found = -1;
                for (int j = 0; j < Nfp; ++j) {
                    int node2 = ref.face_nodes[f2][j];
                    double d2 = std::pow(x(node, k) - x(node2, k2), 2) +
                                std::pow(y(node, k) - y(node2, k2), 2);
                    if (d2 < tol2) { found = node2; break; }
                }
                if (found < 0)
                    throw NumericalError("build_node_maps: unmatched face node on element " +
                                         std::to_string(k));
                maps.vmapp(f * Nfp + i, k) = found + k2 * ref.Np;
            }
        }
    return maps;
}

}  // namespace wadg
