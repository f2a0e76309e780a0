#include "greenfolio/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <utility>

#include "greenfolio/errors.hpp"

namespace greenfolio::frontier {

namespace {

constexpr double kCoplanarTol = 1e-12;  // initial-simplex degeneracy
constexpr double kVisibleTol = 1e-10;   // point-above-facet threshold

struct Face {
    std::array<int, 3> v;
    Eigen::Vector3d n;  // unit outward normal (standardized space)
    double d = 0.0;     // plane offset: n.x = d on the facet
};

Face make_face(int a, int b, int c, const std::vector<Eigen::Vector3d>& pts,
               const Eigen::Vector3d& interior) {
    Face f{{a, b, c}, {}, 0.0};
    Eigen::Vector3d n = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
    double len = n.norm();
    if (len > 0.0) n /= len;
    f.n = n;
    f.d = n.dot(pts[a]);
    if (f.n.dot(interior) > f.d) {  // flip so the interior is below the plane
        std::swap(f.v[1], f.v[2]);
        f.n = -f.n;
        f.d = -f.d;
    }
    return f;
}

// Indices of four points spanning the largest volume, for the seed simplex.
std::array<int, 4> initial_simplex(const std::vector<Eigen::Vector3d>& pts) {
    const int n = static_cast<int>(pts.size());
    int i0 = 0, i1 = 0;
    double best = -1.0;
    // Most separated pair along coordinate extremes.
    for (int axis = 0; axis < 3; ++axis) {
        int lo = 0, hi = 0;
        for (int i = 1; i < n; ++i) {
            if (pts[i](axis) < pts[lo](axis)) lo = i;
            if (pts[i](axis) > pts[hi](axis)) hi = i;
        }
        double dist = (pts[hi] - pts[lo]).squaredNorm();
        if (dist > best) {
            best = dist;
            i0 = lo;
            i1 = hi;
        }
    }
    if (best <= kCoplanarTol) throw NumericalError("hull: all points coincide");

    int i2 = -1;
    best = kCoplanarTol;
    const Eigen::Vector3d dir = pts[i1] - pts[i0];
    for (int i = 0; i < n; ++i) {
        double area = dir.cross(pts[i] - pts[i0]).norm();
        if (area > best) {
            best = area;
            i2 = i;
        }
    }
    if (i2 < 0) throw NumericalError("hull: points are collinear");

    int i3 = -1;
    best = kCoplanarTol;
    const Eigen::Vector3d nrm = dir.cross(pts[i2] - pts[i0]);
    for (int i = 0; i < n; ++i) {
        double vol = std::abs(nrm.dot(pts[i] - pts[i0]));
        if (vol > best) {
            best = vol;
            i3 = i;
        }
    }
    if (i3 < 0) throw NumericalError("hull: points are coplanar");
    return {i0, i1, i2, i3};
}

}  // namespace

double FrontierHull::violation(const Eigen::Vector3d& point) const {
    Eigen::Vector3d p = (point - axis_min).cwiseQuotient(axis_range);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& f : facets) worst = std::max(worst, f.normal_std.dot(p) - f.offset_std);
    return worst;
}

bool FrontierHull::contains(const Eigen::Vector3d& point, double tol) const {
    return violation(point) <= tol;
}

FrontierHull build_hull(const std::vector<Eigen::Vector3d>& points) {
    const int n = static_cast<int>(points.size());
    if (n < 4) throw ValidationError("hull needs at least 4 points");

    // Standardize each axis by its range so mu, sigma and es carry equal
    // geometric weight.
    Eigen::Vector3d lo = points[0], hi = points[0];
    for (const auto& p : points) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    Eigen::Vector3d range = hi - lo;
    for (int axis = 0; axis < 3; ++axis)
        if (range(axis) <= 0.0)
            throw NumericalError("hull: degenerate point cloud (zero range on an axis)");

    std::vector<Eigen::Vector3d> pts(points.size());
    for (int i = 0; i < n; ++i) pts[i] = (points[i] - lo).cwiseQuotient(range);

    const auto seed = initial_simplex(pts);
    const Eigen::Vector3d interior =
        (pts[seed[0]] + pts[seed[1]] + pts[seed[2]] + pts[seed[3]]) / 4.0;

    std::vector<Face> faces;
    faces.push_back(make_face(seed[0], seed[1], seed[2], pts, interior));
    faces.push_back(make_face(seed[0], seed[1], seed[3], pts, interior));
    faces.push_back(make_face(seed[0], seed[2], seed[3], pts, interior));
    faces.push_back(make_face(seed[1], seed[2], seed[3], pts, interior));

    std::set<int> in_seed(seed.begin(), seed.end());
    for (int i = 0; i < n; ++i) {
        if (in_seed.count(i)) continue;
        std::vector<char> visible(faces.size(), 0);
        bool any = false;
        for (size_t f = 0; f < faces.size(); ++f) {
            if (faces[f].n.dot(pts[i]) - faces[f].d > kVisibleTol) {
                visible[f] = 1;
                any = true;
            }
        }
        if (!any) continue;

        // Horizon = directed edges of visible faces whose twin belongs to a
        // hidden face.
        std::map<std::pair<int, int>, size_t> edge_owner;
        for (size_t f = 0; f < faces.size(); ++f)
            for (int e = 0; e < 3; ++e)
                edge_owner[{faces[f].v[e], faces[f].v[(e + 1) % 3]}] = f;

        std::vector<std::pair<int, int>> horizon;
        for (size_t f = 0; f < faces.size(); ++f) {
            if (!visible[f]) continue;
            for (int e = 0; e < 3; ++e) {
                int a = faces[f].v[e], b = faces[f].v[(e + 1) % 3];
                auto twin = edge_owner.find({b, a});
                if (twin == edge_owner.end() || !visible[twin->second])
                    horizon.emplace_back(a, b);
            }
        }

        std::vector<Face> next;
        next.reserve(faces.size() + horizon.size());
        for (size_t f = 0; f < faces.size(); ++f)
            if (!visible[f]) next.push_back(faces[f]);
        for (const auto& [a, b] : horizon) next.push_back(make_face(a, b, i, pts, interior));
        faces = std::move(next);
    }

    FrontierHull hull;
    hull.axis_min = lo;
    hull.axis_range = range;
    std::set<int> verts;
    for (const auto& f : faces) {
        HullFacet out;
        out.vertices = f.v;
        out.normal_std = f.n;
        out.offset_std = f.d;
        // Map the plane n_std.x_std = d back to original units:
        // x_std_k = (x_k - lo_k)/range_k.
        Eigen::Vector3d n_orig = f.n.cwiseQuotient(range);
        double d_orig = f.d + f.n.cwiseQuotient(range).dot(lo);
        double len = n_orig.norm();
        out.normal = n_orig / len;
        out.offset = d_orig / len;
        hull.facets.push_back(out);
        for (int v : f.v) verts.insert(v);
    }
    hull.vertices.assign(verts.begin(), verts.end());
    return hull;
}

}  // namespace greenfolio::frontier
