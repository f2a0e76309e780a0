#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace greenfolio::frontier {

/// One triangular facet of the hull. Indices refer to the input point set.
/// `normal`/`offset` describe the outward half-space n.x <= d in original
/// units; `normal_std`/`offset_std` are the same plane in the standardized
/// coordinates the hull was built in (used for tolerance tests).
struct HullFacet {
    std::array<int, 3> vertices;
    Eigen::Vector3d normal;
    double offset = 0.0;
    Eigen::Vector3d normal_std;
    double offset_std = 0.0;
};

/// Convex hull of 3D points built incrementally on range-standardized
/// coordinates. Construction errors on fewer than 4 points or a degenerate
/// (coplanar) cloud.
struct FrontierHull {
    std::vector<int> vertices;  // hull vertex indices, ascending
    std::vector<HullFacet> facets;
    Eigen::Vector3d axis_min;    // standardization parameters
    Eigen::Vector3d axis_range;

    /// Signed distance (standardized units) of the point from the farthest
    /// violated facet plane; <= 0 means inside.
    double violation(const Eigen::Vector3d& point) const;
    bool contains(const Eigen::Vector3d& point, double tol = 1e-9) const;
};

FrontierHull build_hull(const std::vector<Eigen::Vector3d>& points);

}  // namespace greenfolio::frontier
