#pragma once

#include <vector>

#include "crofton/convex_body.hpp"
#include "crofton/errors.hpp"
#include "crofton/sphere.hpp"

namespace crofton {

// Visual solid angle of a polytope from an exterior point: the spherical
// polygon of unit directions whose rays from P meet the body. Silhouette
// extraction happens implicitly: vertex directions are gnomonically projected
// onto the plane <y, e> = 1 (e points from P to the closest body point, so
// every direction has positive component along e) and hulled there.
inline SphericalPolygon solid_angle(const ConvexPolytope& k, Vec3 p) {
    if (k.contains(p)) throw PointInsideBody("solid_angle: point inside body");
    Vec3 q = k.closest_point(p);
    Vec3 e = normalized(q - p);
    auto basis = basis_for(e);

    std::vector<Vec2> proj;
    proj.reserve(k.vertices().size());
    for (const auto& v : k.vertices()) {
        Vec3 d = v - p;
        double t = dot(d, e);
        proj.push_back({dot(d, basis.b1) / t, dot(d, basis.b2) / t});
    }
    double scale = 0;
    for (auto pt : proj) scale = std::max(scale, norm(pt));
    auto hull = detail::convex_hull_2d(std::move(proj), 1e-12 * std::max(1.0, scale));
    if (hull.size() < 3)
        throw DegenerateInput("solid_angle: degenerate silhouette");

    std::vector<Vec3> dirs;
    dirs.reserve(hull.size());
    for (auto h : hull) dirs.push_back(normalized(e + basis.b1 * h.x + basis.b2 * h.y));
    return SphericalPolygon::from_vertices(std::move(dirs), e);
}

// Analytic case: the solid angle of a ball is a cap with sin(omega) = r/d.
inline SphericalCap solid_angle_ball(const Ball& b, Vec3 p) {
    double d = norm(b.center - p);
    if (d <= b.radius * (1 + 1e-12))
        throw PointInsideBody("solid_angle_ball: point inside ball");
    return SphericalCap(normalized(b.center - p), std::asin(b.radius / d));
}

}  // namespace crofton
