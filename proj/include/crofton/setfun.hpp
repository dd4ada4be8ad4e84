#pragma once

#include <cmath>

#include "crofton/mc.hpp"
#include "crofton/sphere.hpp"

namespace crofton {

// alpha(region) = pi*|region| - <c(region), c(dual region)>.
inline double alpha_closed(const SphericalPolygon& p) {
    return M_PI * area(p) - dot(centroid(p), centroid_dual(p));
}
inline double alpha_closed(const SphericalCap& c) {
    return M_PI * area(c) - dot(centroid(c), centroid_dual(c));
}

namespace detail {

// Single-pass beta estimator: (1/8)*(4*pi)^3 * mean over triples of
// |det(v1,v2,v3)| restricted to all three directions in the band.
template <class Region>
double beta_single_pass(const Region& region, std::uint64_t n, Rng& rng) {
    double sum = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
        Vec3 v1 = rng.unit_vector();
        Vec3 v2 = rng.unit_vector();
        Vec3 v3 = rng.unit_vector();
        if (in_omega_tilde(region, v1) && in_omega_tilde(region, v2) &&
            in_omega_tilde(region, v3))
            sum += std::abs(det3(v1, v2, v3));
    }
    double cube = 4 * M_PI * 4 * M_PI * 4 * M_PI;
    return 0.125 * cube * sum / double(n);
}

}  // namespace detail

// Monte Carlo oracle for alpha: rejection-sample u in the region and v in the
// band; alpha = (1/2)*(4*pi)^2 * E[|<u,v>| * accept].
template <class Region>
McEstimate alpha_mc(const Region& region, const McConfig& cfg, int threads = 0) {
    double scale = 0.5 * (4 * M_PI) * (4 * M_PI);
    return mc_mean(cfg, threads, scale, [&region](Rng& rng) {
        Vec3 u = rng.unit_vector();
        Vec3 v = rng.unit_vector();
        if (!contains(region, u) || !in_omega_tilde(region, v)) return 0.0;
        return std::abs(dot(u, v));
    });
}

// beta(region) = (1/8) * integral over band^3 of |det(v1,v2,v3)|.
template <class Region>
McEstimate beta_mc(const Region& region, const McConfig& cfg, int threads = 0) {
    double cube = 4 * M_PI * 4 * M_PI * 4 * M_PI;
    double scale = 0.125 * cube;
    return mc_mean(cfg, threads, scale, [&region](Rng& rng) {
        Vec3 v1 = rng.unit_vector();
        Vec3 v2 = rng.unit_vector();
        Vec3 v3 = rng.unit_vector();
        if (!in_omega_tilde(region, v1) || !in_omega_tilde(region, v2) ||
            !in_omega_tilde(region, v3))
            return 0.0;
        return std::abs(det3(v1, v2, v3));
    });
}

// gamma(region) = (1/8) * integral over v in band, +-u outside region of
// (D^2 - sin^2 D)*|<v,u>| with D the dihedral visual angle.
template <class Region>
McEstimate gamma_mc(const Region& region, const McConfig& cfg, int threads = 0) {
    double scale = 0.125 * (4 * M_PI) * (4 * M_PI);
    return mc_mean(cfg, threads, scale, [&region](Rng& rng) {
        Vec3 u = rng.unit_vector();
        Vec3 v = rng.unit_vector();
        if (!in_omega_tilde(region, v)) return 0.0;
        if (contains(region, u) || contains(region, -u)) return 0.0;
        double d;
        try {
            d = dihedral_visual_angle(region, u);
        } catch (const Error&) {
            return 0.0;  // measure-zero grazing configurations
        }
        return x2_minus_sin2(d) * std::abs(dot(v, u));
    });
}

namespace detail {

// Planar membership for an arc I = [0, omega] of the unit circle and its
// band I~ (directions whose perpendicular line through the origin meets the
// cone over I).
inline bool in_arc(double phi, double omega) {
    phi = std::fmod(phi, 2 * M_PI);
    if (phi < 0) phi += 2 * M_PI;
    return phi <= omega;
}
inline bool in_arc_tilde(double phi, double omega) {
    return in_arc(phi + M_PI / 2, omega) || in_arc(phi - M_PI / 2, omega);
}

}  // namespace detail

// Planar analogue alpha(I) = (1/2) * integral over u in I, v in I~ of |<u,v>|.
inline McEstimate planar_alpha(double omega, const McConfig& cfg, int threads = 0) {
    if (!(omega > 0 && omega < M_PI)) throw DomainError("planar_alpha: omega must be in (0, pi)");
    double scale = 0.5 * (2 * M_PI) * (2 * M_PI);
    return mc_mean(cfg, threads, scale, [omega](Rng& rng) {
        double pu = rng.circle_angle();
        double pv = rng.circle_angle();
        if (!detail::in_arc(pu, omega) || !detail::in_arc_tilde(pv, omega)) return 0.0;
        return std::abs(std::cos(pu - pv));
    });
}

// Planar analogue beta(I) = (1/4) * integral over v1, v2 in I~ of |det(v1,v2)|.
inline McEstimate planar_beta(double omega, const McConfig& cfg, int threads = 0) {
    if (!(omega > 0 && omega < M_PI)) throw DomainError("planar_beta: omega must be in (0, pi)");
    double scale = 0.25 * (2 * M_PI) * (2 * M_PI);
    return mc_mean(cfg, threads, scale, [omega](Rng& rng) {
        double p1 = rng.circle_angle();
        double p2 = rng.circle_angle();
        if (!detail::in_arc_tilde(p1, omega) || !detail::in_arc_tilde(p2, omega)) return 0.0;
        return std::abs(std::sin(p1 - p2));
    });
}

}  // namespace crofton
