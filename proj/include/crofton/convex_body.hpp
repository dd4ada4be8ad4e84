#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "crofton/errors.hpp"
#include "crofton/hull.hpp"
#include "crofton/vec.hpp"

namespace crofton {

struct QuermassTriple {
    double V = 0;  // volume
    double F = 0;  // boundary area
    double M = 0;  // mean curvature integral
};

struct Ball {
    Vec3 center{};
    double radius = 1;

    Ball() = default;
    Ball(Vec3 c, double r) : center(c), radius(r) {
        if (!(r > 0)) throw DomainError("Ball: radius must be positive");
    }
};

struct Plane {
    Vec3 normal{0, 0, 1};  // unit
    double offset = 0;     // <normal, x> = offset
};

struct Line {
    Vec3 direction{0, 0, 1};  // unit
    Vec3 point{};             // any point on the line
};

struct LineHit {
    bool hits = false;
    double chord = 0;
};

namespace detail {

// Width of the smallest angular sector containing all azimuths:
// 2*pi minus the largest gap between consecutive sorted angles.
inline double sector_width(std::vector<double>& az) {
    std::sort(az.begin(), az.end());
    double max_gap = 2 * M_PI - (az.back() - az.front());
    for (std::size_t i = 1; i < az.size(); ++i)
        max_gap = std::max(max_gap, az[i] - az[i - 1]);
    return 2 * M_PI - max_gap;
}

// Andrew monotone chain; returns CCW hull, collinear points dropped.
inline std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts, double eps) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](Vec2 a, Vec2 b) { return norm(a - b) <= eps; }),
              pts.end());
    std::size_t n = pts.size();
    if (n < 3) return pts;
    std::vector<Vec2> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps * norm(pts[i] - h[k - 2]))
            --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= eps * norm(pts[i] - h[k - 2]))
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

}  // namespace detail

class PlanarConvexPolygon {
public:
    // Vertices must be ordered along the boundary (either orientation);
    // collinear points are pruned at the scale-aware tolerance.
    static PlanarConvexPolygon from_ordered(std::vector<Vec2> verts,
                                            Vec3 origin = {}, Vec3 b1 = {1, 0, 0},
                                            Vec3 b2 = {0, 1, 0}) {
        PlanarConvexPolygon poly;
        poly.origin_ = origin;
        poly.b1_ = b1;
        poly.b2_ = b2;
        if (verts.size() < 3) throw DegenerateInput("polygon: need at least 3 vertices");

        double signed_area = 0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            signed_area += cross(verts[i], verts[(i + 1) % verts.size()]);
        if (signed_area < 0) std::reverse(verts.begin(), verts.end());

        double scale = 0;
        Vec2 c{};
        for (auto v : verts) c = c + v / double(verts.size());
        for (auto v : verts) scale = std::max(scale, norm(v - c));
        double eps = 1e-9 * std::max(scale, 1e-300);

        // prune collinear triples
        bool changed = true;
        while (changed && verts.size() > 3) {
            changed = false;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                Vec2 u = verts[(i + verts.size() - 1) % verts.size()];
                Vec2 v = verts[i];
                Vec2 w = verts[(i + 1) % verts.size()];
                double dl = norm(w - u);
                double dist = dl <= eps ? norm(v - u) : std::abs(cross(w - u, v - u)) / dl;
                if (dist <= eps) {
                    verts.erase(verts.begin() + long(i));
                    changed = true;
                    break;
                }
            }
        }
        if (verts.size() < 3) throw DegenerateInput("polygon: degenerate after pruning");
        for (std::size_t i = 0; i < verts.size(); ++i) {
            Vec2 e0 = verts[(i + 1) % verts.size()] - verts[i];
            Vec2 e1 = verts[(i + 2) % verts.size()] - verts[(i + 1) % verts.size()];
            if (cross(e0, e1) <= 0) throw DegenerateInput("polygon: not strictly convex");
        }

        poly.verts_ = std::move(verts);
        poly.eps_ = eps;
        poly.perimeter_ = 0;
        poly.area_ = 0;
        for (std::size_t i = 0; i < poly.verts_.size(); ++i) {
            Vec2 a = poly.verts_[i];
            Vec2 b = poly.verts_[(i + 1) % poly.verts_.size()];
            poly.perimeter_ += norm(b - a);
            poly.area_ += 0.5 * cross(a, b);
        }
        return poly;
    }

    static PlanarConvexPolygon regular_ngon(int n, double r, Vec2 center = {}) {
        std::vector<Vec2> v;
        v.reserve(n);
        for (int i = 0; i < n; ++i) {
            double t = 2 * M_PI * i / n;
            v.push_back({center.x + r * std::cos(t), center.y + r * std::sin(t)});
        }
        return from_ordered(std::move(v));
    }

    const std::vector<Vec2>& vertices() const { return verts_; }
    double perimeter() const { return perimeter_; }
    double area() const { return area_; }
    double eps() const { return eps_; }
    Vec3 to3d(Vec2 p) const { return origin_ + b1_ * p.x + b2_ * p.y; }

    Vec2 centroid() const {
        Vec2 c{};
        for (auto v : verts_) c = c + v / double(verts_.size());
        return c;
    }
    double circumradius() const {
        Vec2 c = centroid();
        double r = 0;
        for (auto v : verts_) r = std::max(r, norm(v - c));
        return r;
    }

    bool contains(Vec2 p, double tol_scale = 1.0) const {
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            Vec2 a = verts_[i], b = verts_[(i + 1) % verts_.size()];
            if (cross(b - a, p - a) < -eps_ * tol_scale * std::max(1.0, norm(p - a))) return false;
        }
        return true;
    }

private:
    std::vector<Vec2> verts_;  // CCW
    Vec3 origin_{}, b1_{1, 0, 0}, b2_{0, 1, 0};
    double perimeter_ = 0, area_ = 0, eps_ = 0;
};

struct SliceResult {
    enum class Kind { empty, polygon, disc } kind = Kind::empty;
    std::optional<PlanarConvexPolygon> polygon;
    Vec3 disc_center{};
    double disc_radius = 0;

    bool empty() const { return kind == Kind::empty; }
    double perimeter() const {
        switch (kind) {
            case Kind::polygon: return polygon->perimeter();
            case Kind::disc: return 2 * M_PI * disc_radius;
            default: return 0;
        }
    }
    double area() const {
        switch (kind) {
            case Kind::polygon: return polygon->area();
            case Kind::disc: return M_PI * disc_radius * disc_radius;
            default: return 0;
        }
    }
};

class ConvexPolytope {
public:
    struct Face {
        std::vector<int> loop;  // CCW from outside
        Vec3 normal;            // unit outward
        double offset;          // <normal, x> = offset
    };
    struct Edge {
        int a, b;
        int face_left, face_right;
        double length;
        double exterior_angle;  // angle between outward face normals, in (0, pi)
    };

    static ConvexPolytope build(std::span<const Vec3> points) {
        detail::HullBuilder hb;
        auto hull = hb.build(std::vector<Vec3>(points.begin(), points.end()));
        ConvexPolytope poly;
        poly.verts_ = std::move(hull.vertices);

        Vec3 c{};
        for (const auto& v : poly.verts_) c += v;
        c = c / double(poly.verts_.size());
        poly.center_ = c;
        poly.circumradius_ = 0;
        for (const auto& v : poly.verts_)
            poly.circumradius_ = std::max(poly.circumradius_, norm(v - c));
        poly.eps_ = 1e-9 * poly.circumradius_;

        for (std::size_t f = 0; f < hull.face_loops.size(); ++f) {
            Face face;
            face.loop = hull.face_loops[f];
            face.normal = hull.face_normals[f];
            double off = 0;
            for (int v : face.loop) off += dot(face.normal, poly.verts_[v]);
            face.offset = off / double(face.loop.size());
            poly.faces_.push_back(std::move(face));
        }
        poly.build_edges();
        poly.validate();
        return poly;
    }

    const std::vector<Vec3>& vertices() const { return verts_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::vector<Edge>& edges() const { return edges_; }
    Vec3 center() const { return center_; }
    double circumradius() const { return circumradius_; }
    double eps() const { return eps_; }

    // Distance from center to the nearest face plane; points closer than this
    // to the center are guaranteed interior.
    double center_inradius() const {
        double r = circumradius_;
        for (const auto& f : faces_) r = std::min(r, f.offset - dot(f.normal, center_));
        return r;
    }

    bool contains(Vec3 p) const {
        for (const auto& f : faces_)
            if (dot(f.normal, p) > f.offset + eps_) return false;
        return true;
    }

    double support(Vec3 u) const {
        double best = dot(verts_[0], u);
        for (std::size_t i = 1; i < verts_.size(); ++i) best = std::max(best, dot(verts_[i], u));
        return best;
    }

    // Closest point of the body to an exterior point (the point itself if inside).
    Vec3 closest_point(Vec3 p) const {
        if (contains(p)) return p;
        double best_d2 = std::numeric_limits<double>::infinity();
        Vec3 best{};
        for (const auto& f : faces_) {
            Vec3 q = p - f.normal * (dot(f.normal, p) - f.offset);
            if (point_in_face(f, q)) {
                double d2 = norm2(q - p);
                if (d2 < best_d2) { best_d2 = d2; best = q; }
            }
        }
        for (const auto& e : edges_) {
            Vec3 a = verts_[e.a], b = verts_[e.b];
            Vec3 d = b - a;
            double t = std::clamp(dot(p - a, d) / norm2(d), 0.0, 1.0);
            Vec3 q = a + d * t;
            double d2 = norm2(q - p);
            if (d2 < best_d2) { best_d2 = d2; best = q; }
        }
        return best;
    }

    bool point_in_face(const Face& f, Vec3 q) const {
        for (std::size_t i = 0; i < f.loop.size(); ++i) {
            Vec3 a = verts_[f.loop[i]];
            Vec3 b = verts_[f.loop[(i + 1) % f.loop.size()]];
            if (dot(cross(b - a, q - a), f.normal) < -eps_ * norm(b - a)) return false;
        }
        return true;
    }

private:
    std::vector<Vec3> verts_;
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    Vec3 center_{};
    double circumradius_ = 0, eps_ = 0;

    void build_edges() {
        std::unordered_map<std::uint64_t, std::pair<int, int>> inc;  // (min,max) -> faces
        for (std::size_t f = 0; f < faces_.size(); ++f) {
            const auto& loop = faces_[f].loop;
            for (std::size_t i = 0; i < loop.size(); ++i) {
                int a = loop[i], b = loop[(i + 1) % loop.size()];
                std::uint64_t key = detail::edge_key(std::min(a, b), std::max(a, b));
                auto it = inc.find(key);
                if (it == inc.end())
                    inc[key] = {int(f), -1};
                else
                    it->second.second = int(f);
            }
        }
        for (const auto& kv : inc) {
            int a = int(kv.first >> 32), b = int(kv.first & 0xffffffffu);
            auto [f1, f2] = kv.second;
            if (f2 < 0) throw DegenerateInput("polytope: edge with one incident face");
            Edge e;
            e.a = a;
            e.b = b;
            e.face_left = f1;
            e.face_right = f2;
            e.length = norm(verts_[b] - verts_[a]);
            e.exterior_angle = angle_between(faces_[f1].normal, faces_[f2].normal);
            edges_.push_back(e);
        }
        std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
            return x.a != y.a ? x.a < y.a : x.b < y.b;
        });
    }

    void validate() const {
        long euler = long(verts_.size()) - long(edges_.size()) + long(faces_.size());
        if (euler != 2) throw DegenerateInput("polytope: Euler relation violated");
        for (const auto& f : faces_) {
            if (std::abs(norm(f.normal) - 1.0) > 1e-12)
                throw DegenerateInput("polytope: non-unit face normal");
            for (const auto& v : verts_)
                if (dot(f.normal, v) > f.offset + 4 * eps_)
                    throw DegenerateInput("polytope: vertex outside face half-space");
        }
        for (const auto& e : edges_) {
            if (!(e.exterior_angle > 0 && e.exterior_angle < M_PI))
                throw DegenerateInput("polytope: exterior dihedral angle out of range");
        }
    }
};

inline ConvexPolytope build_polytope(std::span<const Vec3> points) {
    return ConvexPolytope::build(points);
}
inline ConvexPolytope build_polytope(const std::vector<Vec3>& points) {
    return ConvexPolytope::build(std::span<const Vec3>(points));
}

// ---- quermassintegrals ----

inline QuermassTriple quermassintegrals(const ConvexPolytope& k) {
    QuermassTriple q;
    for (const auto& f : k.faces()) {
        Vec3 area_vec{};
        const auto& loop = f.loop;
        for (std::size_t i = 0; i < loop.size(); ++i)
            area_vec += cross(k.vertices()[loop[i]], k.vertices()[loop[(i + 1) % loop.size()]]);
        double area = 0.5 * norm(area_vec);
        q.F += area;
        q.V += f.offset * area / 3.0;
    }
    for (const auto& e : k.edges()) q.M += 0.5 * e.length * e.exterior_angle;
    return q;
}

inline QuermassTriple quermassintegrals(const Ball& b) {
    double r = b.radius;
    return {4.0 * M_PI * r * r * r / 3.0, 4.0 * M_PI * r * r, 4.0 * M_PI * r};
}

// ---- membership / support ----

inline bool contains(const ConvexPolytope& k, Vec3 p) { return k.contains(p); }
inline bool contains(const Ball& b, Vec3 p) {
    return norm(p - b.center) <= b.radius * (1 + 1e-9) + 1e-300;
}

namespace detail {
inline void require_unit(Vec3 u, const char* what) {
    if (std::abs(norm(u) - 1.0) > 1e-12) throw NonUnitDirection(what);
}
}  // namespace detail

inline double support(const ConvexPolytope& k, Vec3 u) {
    detail::require_unit(u, "support: direction must be unit");
    return k.support(u);
}
inline double support(const Ball& b, Vec3 u) {
    detail::require_unit(u, "support: direction must be unit");
    return dot(b.center, u) + b.radius;
}

// ---- slicing ----

inline SliceResult slice(const ConvexPolytope& k, const Plane& pl) {
    SliceResult out;
    double dmax = -std::numeric_limits<double>::infinity();
    double dmin = std::numeric_limits<double>::infinity();
    std::vector<double> d(k.vertices().size());
    for (std::size_t i = 0; i < k.vertices().size(); ++i) {
        d[i] = dot(pl.normal, k.vertices()[i]) - pl.offset;
        dmax = std::max(dmax, d[i]);
        dmin = std::min(dmin, d[i]);
    }
    // tangent or missing planes yield Empty
    if (dmax <= k.eps() || dmin >= -k.eps()) return out;

    std::vector<Vec3> pts;
    for (const auto& e : k.edges()) {
        double da = d[e.a], db = d[e.b];
        if (std::abs(da) <= k.eps()) pts.push_back(k.vertices()[e.a]);
        if (std::abs(db) <= k.eps()) pts.push_back(k.vertices()[e.b]);
        if ((da > k.eps() && db < -k.eps()) || (db > k.eps() && da < -k.eps())) {
            double t = da / (da - db);
            pts.push_back(k.vertices()[e.a] + (k.vertices()[e.b] - k.vertices()[e.a]) * t);
        }
    }
    if (pts.size() < 3) return out;

    auto basis = basis_for(pl.normal);
    Vec3 origin = pl.normal * pl.offset;
    std::vector<Vec2> pts2;
    pts2.reserve(pts.size());
    for (const auto& p : pts)
        pts2.push_back({dot(p - origin, basis.b1), dot(p - origin, basis.b2)});
    auto hull2 = detail::convex_hull_2d(std::move(pts2), k.eps());
    if (hull2.size() < 3) return out;

    out.kind = SliceResult::Kind::polygon;
    out.polygon = PlanarConvexPolygon::from_ordered(std::move(hull2), origin, basis.b1, basis.b2);
    return out;
}

inline SliceResult slice(const Ball& b, const Plane& pl) {
    SliceResult out;
    double d = dot(pl.normal, b.center) - pl.offset;
    double eps = 1e-9 * b.radius;
    if (std::abs(d) >= b.radius - eps) return out;
    out.kind = SliceResult::Kind::disc;
    out.disc_center = b.center - pl.normal * d;
    out.disc_radius = std::sqrt(b.radius * b.radius - d * d);
    return out;
}

// ---- lines ----

inline LineHit line_hits(const ConvexPolytope& k, const Line& g) {
    double tmin = -std::numeric_limits<double>::infinity();
    double tmax = std::numeric_limits<double>::infinity();
    for (const auto& f : k.faces()) {
        double a = dot(f.normal, g.direction);
        double b = dot(f.normal, g.point) - f.offset;
        if (std::abs(a) < 1e-14) {
            if (b > k.eps()) return {false, 0};
            continue;
        }
        double t = -b / a;
        if (a > 0)
            tmax = std::min(tmax, t);
        else
            tmin = std::max(tmin, t);
    }
    double chord = tmax - tmin;
    if (chord < -k.eps()) return {false, 0};
    return {true, std::max(0.0, chord)};
}

inline LineHit line_hits(const Ball& b, const Line& g) {
    Vec3 w = b.center - g.point;
    Vec3 q = g.point + g.direction * dot(w, g.direction);
    double d = norm(b.center - q);
    double eps = 1e-9 * b.radius;
    if (d > b.radius + eps) return {false, 0};
    double h2 = std::max(0.0, b.radius * b.radius - d * d);
    return {true, 2.0 * std::sqrt(h2)};
}

// ---- visual angles ----

// Visual angle of a planar convex polygon from an exterior point.
inline double planar_visual_angle(const PlanarConvexPolygon& poly, Vec2 p) {
    if (poly.contains(p)) throw PointInside("planar_visual_angle: point inside polygon");
    std::vector<double> az;
    az.reserve(poly.vertices().size());
    for (auto v : poly.vertices()) {
        Vec2 d = v - p;
        az.push_back(std::atan2(d.y, d.x));
    }
    double w = detail::sector_width(az);
    return std::min(w, M_PI);
}

// Dihedral angle of the wedge bounded by the two planes through a disjoint
// line tangent to the body: the planar visual angle of the body's projection
// onto the line's orthogonal plane, seen from the projected line point.
inline double dihedral_visual_angle_line(const ConvexPolytope& k, const Line& g) {
    if (line_hits(k, g).hits) throw LineMeetsBody("dihedral_visual_angle_line: line meets body");
    auto basis = basis_for(g.direction);
    Vec2 foot{dot(g.point, basis.b1), dot(g.point, basis.b2)};
    std::vector<double> az;
    az.reserve(k.vertices().size());
    for (const auto& v : k.vertices()) {
        Vec2 q{dot(v, basis.b1), dot(v, basis.b2)};
        Vec2 d = q - foot;
        az.push_back(std::atan2(d.y, d.x));
    }
    double w = detail::sector_width(az);
    return std::min(w, M_PI);
}

inline double dihedral_visual_angle_line(const Ball& b, const Line& g) {
    Vec3 w = b.center - g.point;
    Vec3 q = g.point + g.direction * dot(w, g.direction);
    double d = norm(b.center - q);
    if (d <= b.radius * (1 + 1e-12)) throw LineMeetsBody("dihedral_visual_angle_line: line meets ball");
    return 2.0 * std::asin(b.radius / d);
}

}  // namespace crofton
