#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "crofton/convex_body.hpp"
#include "crofton/errors.hpp"
#include "crofton/vec.hpp"

namespace crofton {

// Tolerance for unit-sphere predicates (circumradius 1).
inline constexpr double kSphereEps = 1e-9;

// Spherically convex polygon contained in an open hemisphere. Vertices are
// stored counterclockwise as seen from outside the sphere; edge great-circle
// normals, arc lengths and vertex turning angles are cached.
class SphericalPolygon {
public:
    static SphericalPolygon from_vertices(std::vector<Vec3> verts,
                                          std::optional<Vec3> hemisphere_hint = {}) {
        if (verts.size() < 3) throw DegenerateInput("spherical polygon: need >= 3 vertices");
        for (auto& w : verts) {
            double n = norm(w);
            if (std::abs(n - 1.0) > 1e-9)
                throw NonUnitDirection("spherical polygon: vertex not on unit sphere");
            w = w / n;
        }

        SphericalPolygon poly;
        poly.verts_ = std::move(verts);
        poly.dedupe();
        poly.witness_ = poly.find_witness(hemisphere_hint);
        poly.orient();
        poly.prune_collinear();
        if (poly.verts_.size() < 3)
            throw DegenerateInput("spherical polygon: degenerate after pruning");
        poly.cache();
        poly.validate();
        return poly;
    }

    const std::vector<Vec3>& vertices() const { return verts_; }
    const std::vector<Vec3>& edge_normals() const { return normals_; }
    const std::vector<double>& arc_lengths() const { return arcs_; }
    const std::vector<double>& turning_angles() const { return turns_; }
    Vec3 witness() const { return witness_; }
    std::size_t size() const { return verts_.size(); }

    bool contains(Vec3 u, double tol = kSphereEps) const {
        for (const auto& n : normals_)
            if (dot(n, u) < -tol) return false;
        return true;
    }

    // Gauss-Bonnet: area = 2*pi - sum of turning angles.
    double area() const { return area_; }
    double perimeter() const { return perimeter_; }

private:
    std::vector<Vec3> verts_;
    std::vector<Vec3> normals_;
    std::vector<double> arcs_;
    std::vector<double> turns_;
    Vec3 witness_{};
    double area_ = 0, perimeter_ = 0;

    void dedupe() {
        std::vector<Vec3> out;
        for (const auto& w : verts_) {
            if (out.empty() || norm(w - out.back()) > 1e-12) out.push_back(w);
        }
        while (out.size() > 1 && norm(out.front() - out.back()) <= 1e-12) out.pop_back();
        verts_ = std::move(out);
        if (verts_.size() < 3) throw DegenerateInput("spherical polygon: duplicate vertices");
    }

    Vec3 find_witness(const std::optional<Vec3>& hint) const {
        auto ok = [&](Vec3 e) {
            for (const auto& w : verts_)
                if (dot(e, w) <= 1e-12) return false;
            return true;
        };
        // the vertex mean is interior to the spanned cone whenever it works
        Vec3 s{};
        for (const auto& w : verts_) s += w;
        if (norm(s) > 1e-12) {
            Vec3 e = normalized(s);
            if (ok(e)) return e;
        }
        if (hint) {
            Vec3 e = normalized(*hint);
            if (ok(e)) return e;
        }
        // area-weighted fan centroid as a fallback
        Vec3 f{};
        for (std::size_t i = 1; i + 1 < verts_.size(); ++i) {
            Vec3 t = verts_[0] + verts_[i] + verts_[i + 1];
            double w = norm(cross(verts_[i] - verts_[0], verts_[i + 1] - verts_[0]));
            f += t * w;
        }
        if (norm(f) > 1e-12) {
            Vec3 e = normalized(f);
            if (ok(e)) return e;
        }
        throw NotInHemisphere("spherical polygon: no open hemisphere contains all vertices");
    }

    void orient() {
        // CCW from outside <=> the Newell vector points away from the sphere
        // center, i.e. along the interior direction of the spanned cone.
        Vec3 newell{}, interior{};
        for (std::size_t i = 0; i < verts_.size(); ++i) {
            newell += cross(verts_[i], verts_[(i + 1) % verts_.size()]);
            interior += verts_[i];
        }
        if (dot(newell, interior) < 0) std::reverse(verts_.begin(), verts_.end());
    }

    void prune_collinear() {
        bool changed = true;
        while (changed && verts_.size() > 3) {
            changed = false;
            for (std::size_t i = 0; i < verts_.size(); ++i) {
                const Vec3& u = verts_[(i + verts_.size() - 1) % verts_.size()];
                const Vec3& v = verts_[i];
                const Vec3& w = verts_[(i + 1) % verts_.size()];
                Vec3 gc = cross(u, w);
                double gnorm = norm(gc);
                if (gnorm <= 1e-12) {  // duplicate neighbors
                    verts_.erase(verts_.begin() + long(i));
                    changed = true;
                    break;
                }
                if (std::abs(dot(gc, v)) / gnorm <= kSphereEps && dot(v, u + w) > 0) {
                    verts_.erase(verts_.begin() + long(i));
                    changed = true;
                    break;
                }
            }
        }
    }

    void cache() {
        std::size_t n = verts_.size();
        normals_.resize(n);
        arcs_.resize(n);
        turns_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& a = verts_[i];
            const Vec3& b = verts_[(i + 1) % n];
            Vec3 c = cross(a, b);
            double cn = norm(c);
            if (cn <= 1e-14) throw DegenerateInput("spherical polygon: zero-length edge");
            normals_[i] = c / cn;
            arcs_[i] = angle_between(a, b);
        }
        perimeter_ = 0;
        double turn_sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& n_in = normals_[(i + n - 1) % n];
            const Vec3& n_out = normals_[i];
            double t = std::atan2(dot(cross(n_in, n_out), verts_[i]), dot(n_in, n_out));
            turns_[i] = t;
            turn_sum += t;
            perimeter_ += arcs_[i];
        }
        area_ = 2 * M_PI - turn_sum;
    }

    void validate() const {
        std::size_t n = verts_.size();
        for (double t : turns_)
            if (!(t > -kSphereEps && t < M_PI))
                throw DegenerateInput("spherical polygon: turning angle out of (0, pi)");
        if (!(area_ > 0 && area_ < 2 * M_PI + kSphereEps))
            throw DegenerateInput("spherical polygon: area out of range");
        // spherical convexity: every vertex on the nonnegative side of every edge
        if (n <= 128) {
            for (const auto& nn : normals_)
                for (const auto& w : verts_)
                    if (dot(nn, w) < -10 * kSphereEps)
                        throw DegenerateInput("spherical polygon: not convex");
        } else {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < i + 8; ++j)
                    if (dot(normals_[i], verts_[j % n]) < -10 * kSphereEps)
                        throw DegenerateInput("spherical polygon: not convex");
        }
    }
};

// Geodesic cap: axis and angular radius omega in (0, pi/2].
struct SphericalCap {
    Vec3 axis{0, 0, 1};
    double omega = 0;

    SphericalCap() = default;
    SphericalCap(Vec3 a, double w) : axis(normalized(a)), omega(w) {
        if (!(w > 0 && w <= M_PI / 2 + 1e-12))
            throw DomainError("SphericalCap: omega must be in (0, pi/2]");
    }
};

// ---- area / perimeter ----

inline double area(const SphericalPolygon& p) { return p.area(); }
inline double area(const SphericalCap& c) { return 2 * M_PI * one_minus_cos(c.omega); }

inline double perimeter(const SphericalPolygon& p) { return p.perimeter(); }
inline double perimeter(const SphericalCap& c) { return 2 * M_PI * std::sin(c.omega); }

// ---- membership ----

inline bool contains(const SphericalPolygon& p, Vec3 u, double tol = kSphereEps) {
    return p.contains(u, tol);
}
inline bool contains(const SphericalCap& c, Vec3 u, double tol = kSphereEps) {
    return angle_between(c.axis, u) <= c.omega + tol;
}

// Band of directions whose orthogonal plane through the origin meets the
// region. Vertex sign span decides membership for polygons.
inline bool in_omega_tilde(const SphericalPolygon& p, Vec3 v, double tol = kSphereEps) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (const auto& w : p.vertices()) {
        double d = dot(v, w);
        mn = std::min(mn, d);
        mx = std::max(mx, d);
    }
    return mn <= tol && mx >= -tol;
}
inline bool in_omega_tilde(const SphericalCap& c, Vec3 v, double tol = kSphereEps) {
    return std::abs(dot(v, c.axis)) <= std::sin(c.omega) + tol;
}

// ---- duality ----

inline SphericalPolygon dual(const SphericalPolygon& p) {
    // any interior direction of the primal cone witnesses the dual's hemisphere
    Vec3 interior{};
    for (const auto& w : p.vertices()) interior += w;
    return SphericalPolygon::from_vertices(p.edge_normals(), normalized(interior));
}
inline SphericalCap dual(const SphericalCap& c) {
    if (c.omega >= M_PI / 2 - 1e-12)
        throw DomainError("dual: dual of a hemisphere cap is degenerate");
    return SphericalCap(c.axis, M_PI / 2 - c.omega);
}

// ---- centroids ----

// c(region) = integral of u over the region. For polygons the boundary
// formula reduces edge-wise to (1/2) sum of arc_length * edge_normal.
inline Vec3 centroid(const SphericalPolygon& p) {
    Vec3 c{};
    for (std::size_t i = 0; i < p.size(); ++i) c += p.edge_normals()[i] * p.arc_lengths()[i];
    return c * 0.5;
}
inline Vec3 centroid(const SphericalCap& c) {
    double s = std::sin(c.omega);
    return c.axis * (M_PI * s * s);
}

// Centroid of the dual region, via the vertex-atom reading of geodesic
// curvature: c(dual) = (1/2) sum of turning_angle * vertex.
inline Vec3 centroid_dual(const SphericalPolygon& p) {
    Vec3 c{};
    for (std::size_t i = 0; i < p.size(); ++i) c += p.vertices()[i] * p.turning_angles()[i];
    return c * 0.5;
}
inline Vec3 centroid_dual(const SphericalCap& c) {
    double cs = std::cos(c.omega);
    return c.axis * (M_PI * cs * cs);
}

// ---- dihedral visual angle D(region, u) ----

inline double dihedral_visual_angle(const SphericalPolygon& p, Vec3 u) {
    if (p.contains(u) || p.contains(-u))
        throw AxisInsideCone("dihedral_visual_angle: +-u inside the cone");
    auto basis = basis_for(u);
    std::vector<double> az;
    az.reserve(p.size());
    for (const auto& w : p.vertices()) {
        double x = dot(w, basis.b1), y = dot(w, basis.b2);
        if (x * x + y * y < kSphereEps * kSphereEps)
            throw DegenerateProjection("dihedral_visual_angle: vertex parallel to axis");
        az.push_back(std::atan2(y, x));
    }
    double w = detail::sector_width(az);
    if (w > M_PI + kSphereEps)
        throw AxisInsideCone("dihedral_visual_angle: projected width exceeds pi");
    return std::min(w, M_PI);
}

inline double dihedral_visual_angle(const SphericalCap& c, Vec3 u) {
    double psi = angle_between(c.axis, u);
    if (psi <= c.omega + kSphereEps || psi >= M_PI - c.omega - kSphereEps)
        throw AxisInsideCone("dihedral_visual_angle: +-u inside the cap cone");
    return 2.0 * std::asin(std::min(1.0, std::sin(c.omega) / std::sin(psi)));
}

// ---- cap alpha closed form ----

// alpha(cap omega) = 2*pi^2*(1-cos w) - pi^2*cos^2 w*sin^2 w, rearranged to
// pi^2*(4*sin^4(w/2) + sin^4 w) which is exact and cancellation-free.
inline double cap_alpha(double omega) {
    if (!(omega > 0 && omega <= M_PI / 2 + 1e-12))
        throw DomainError("cap_alpha: omega must be in (0, pi/2]");
    double sh = std::sin(0.5 * omega);
    double s = std::sin(omega);
    double sh2 = sh * sh, s2 = s * s;
    return M_PI * M_PI * (4.0 * sh2 * sh2 + s2 * s2);
}

// ---- sampled smooth boundary curves ----

struct SampledSphericalCurve {
    std::vector<Vec3> samples;  // closed, uniformly spaced in arc length
    double arc_spacing = 0;
};

inline SampledSphericalCurve make_cap_circle(Vec3 axis, double omega, std::size_t n) {
    SampledSphericalCurve c;
    axis = normalized(axis);
    auto basis = basis_for(axis);
    double cs = std::cos(omega), sn = std::sin(omega);
    c.samples.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = 2 * M_PI * double(j) / double(n);
        c.samples.push_back(axis * cs + (basis.b1 * std::cos(t) + basis.b2 * std::sin(t)) * sn);
    }
    c.arc_spacing = 2 * M_PI * sn / double(n);
    return c;
}

// Residual of c(region) + c(dual) = (1/2) closed integral of gamma' x gamma'',
// all three terms from quadrature with finite-difference derivatives.
inline double frenet_identity_residual(const SampledSphericalCurve& curve) {
    const auto& g = curve.samples;
    std::size_t n = g.size();
    if (n < 16) throw TooCoarse("frenet_identity_residual: too few samples");
    double h = curve.arc_spacing;
    if (!(h > 0 && h < 1e-3)) throw TooCoarse("frenet_identity_residual: sample gap >= 1e-3");

    Vec3 c_region{}, c_dual{}, rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& prev = g[(i + n - 1) % n];
        const Vec3& cur = g[i];
        const Vec3& next = g[(i + 1) % n];
        Vec3 d1 = (next - prev) / (2 * h);
        Vec3 d2 = (next - cur * 2.0 + prev) / (h * h);
        c_region += cross(cur, d1);
        c_dual += cur * det3(cur, d1, d2);  // geodesic curvature of a unit-speed spherical curve
        rhs += cross(d1, d2);
    }
    c_region *= 0.5 * h;
    c_dual *= 0.5 * h;
    rhs *= 0.5 * h;
    return norm(c_region + c_dual - rhs);
}

}  // namespace crofton
