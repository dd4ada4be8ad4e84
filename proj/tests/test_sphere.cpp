#include <doctest.h>

#include "crofton/crofton.hpp"
#include "oracles.hpp"

using namespace crofton;
using doctest::Approx;

namespace {

SphericalPolygon cap_ngon(Vec3 axis, double omega, int n) {
    auto circle = make_cap_circle(axis, omega, std::size_t(n));
    return SphericalPolygon::from_vertices(circle.samples, axis);
}

// Monte Carlo membership estimate of the measure of a direction set.
template <class Pred>
std::pair<double, double> sphere_measure_mc(Pred&& pred, std::uint64_t n, std::uint64_t seed) {
    Rng rng(seed, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        if (pred(rng.unit_vector())) ++hits;
    double p = double(hits) / double(n);
    double se = 4 * M_PI * std::sqrt(std::max(p * (1 - p), 1e-12) / double(n));
    return {4 * M_PI * p, se};
}

}  // namespace

TEST_CASE("area and perimeter: octant and caps") {
    auto oct = oracles::octant();
    CHECK(area(oct) == Approx(M_PI / 2).epsilon(1e-12));
    CHECK(perimeter(oct) == Approx(3 * M_PI / 2).epsilon(1e-12));

    CHECK(area(SphericalCap({0, 0, 1}, M_PI / 2)) == Approx(2 * M_PI).epsilon(1e-12));
    CHECK(perimeter(SphericalCap({0, 0, 1}, M_PI / 2)) == Approx(2 * M_PI).epsilon(1e-12));
    CHECK(area(SphericalCap({0, 0, 1}, M_PI / 6)) ==
          Approx(2 * M_PI * (1 - std::sqrt(3.0) / 2)).epsilon(1e-12));
    CHECK(perimeter(SphericalCap({0, 0, 1}, M_PI / 6)) == Approx(M_PI).epsilon(1e-12));
}

TEST_CASE("area matches Monte Carlo membership counting") {
    auto oct = oracles::octant();
    auto [est, se] = sphere_measure_mc([&](Vec3 u) { return contains(oct, u); }, 400'000, 5);
    CHECK(std::abs(est - area(oct)) <= 3 * se);

    SphericalCap cap(Vec3{0.3, -0.5, 0.8}, M_PI / 6);
    auto [estc, sec] = sphere_measure_mc([&](Vec3 u) { return contains(cap, u); }, 400'000, 6);
    CHECK(std::abs(estc - area(cap)) <= 3 * sec);

    Rng rng(77, 0);
    auto poly = oracles::random_spherical_polygon(rng);
    auto [estp, sep] = sphere_measure_mc([&](Vec3 u) { return contains(poly, u); }, 400'000, 7);
    CHECK(std::abs(estp - area(poly)) <= 3 * sep);
}

TEST_CASE("orientation is fixed automatically") {
    auto fwd = SphericalPolygon::from_vertices({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    auto rev = SphericalPolygon::from_vertices({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    CHECK(area(fwd) == Approx(area(rev)));
    Vec3 cf = centroid(fwd), cr = centroid(rev);
    CHECK(norm(cf - cr) < 1e-12);
}

TEST_CASE("polygons spanning no open hemisphere are rejected") {
    std::vector<Vec3> ring;
    for (int i = 0; i < 6; ++i) {
        double t = 2 * M_PI * i / 6;
        ring.push_back({std::cos(t), std::sin(t), 0.0});
    }
    CHECK_THROWS_AS(SphericalPolygon::from_vertices(ring), Error);
    CHECK_THROWS_AS(SphericalPolygon::from_vertices({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}),
                    NonUnitDirection);
}

TEST_CASE("dual: octant is self-dual, caps complement, involution") {
    auto oct = oracles::octant();
    auto d = dual(oct);
    REQUIRE(d.size() == 3);
    // vertex set {e1, e2, e3} up to cyclic order
    for (const auto& v : d.vertices()) {
        double mx = std::max({v.x, v.y, v.z});
        CHECK(mx == Approx(1.0).epsilon(1e-12));
    }
    CHECK(area(d) == Approx(area(oct)).epsilon(1e-12));

    SphericalCap cap(Vec3{0, 1, 0}, 0.4);
    auto dc = dual(cap);
    CHECK(dc.omega == Approx(M_PI / 2 - 0.4));
    CHECK(norm(dc.axis - cap.axis) < 1e-15);
    CHECK_THROWS_AS(dual(SphericalCap({0, 0, 1}, M_PI / 2)), DomainError);

    Rng rng(11, 0);
    for (int rep = 0; rep < 20; ++rep) {
        auto poly = oracles::random_spherical_polygon(rng);
        auto dd = dual(dual(poly));
        REQUIRE(dd.size() == poly.size());
        // match up to rotation of cyclic order
        std::size_t n = poly.size();
        std::size_t shift = n;
        for (std::size_t s = 0; s < n; ++s) {
            if (norm(dd.vertices()[s] - poly.vertices()[0]) < 1e-9) { shift = s; break; }
        }
        REQUIRE(shift < n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(norm(dd.vertices()[(shift + i) % n] - poly.vertices()[i]) < 1e-9);
    }
}

TEST_CASE("band membership: sign span and cap band") {
    auto oct = oracles::octant();
    double s = 1 / std::sqrt(2.0);
    CHECK(in_omega_tilde(oct, {s, -s, 0}));
    double t = 1 / std::sqrt(3.0);
    CHECK(!in_omega_tilde(oct, {t, t, t}));

    SphericalCap cap(Vec3{0, 0, 1}, 0.7);
    for (double psi : {0.1, 0.5, 0.85, 1.2, M_PI / 2, 2.2, 3.0}) {
        Vec3 v{std::sin(psi), 0, std::cos(psi)};
        bool expect = std::abs(std::cos(psi)) <= std::sin(0.7);
        CHECK(in_omega_tilde(cap, v) == expect);
    }
}

TEST_CASE("band measure equals twice the boundary length") {
    SphericalCap cap(Vec3{0, 0, 1}, 0.6);
    auto [est, se] = sphere_measure_mc([&](Vec3 v) { return in_omega_tilde(cap, v); }, 400'000, 8);
    CHECK(4 * M_PI * std::sin(0.6) == Approx(2 * perimeter(cap)).epsilon(1e-12));
    CHECK(std::abs(est - 2 * perimeter(cap)) <= 3 * se);

    auto oct = oracles::octant();
    auto [esto, seo] = sphere_measure_mc([&](Vec3 v) { return in_omega_tilde(oct, v); }, 400'000, 9);
    CHECK(std::abs(esto - 2 * perimeter(oct)) <= 3 * seo);

    Rng rng(13, 0);
    auto poly = oracles::random_spherical_polygon(rng);
    auto [estp, sep] =
        sphere_measure_mc([&](Vec3 v) { return in_omega_tilde(poly, v); }, 400'000, 10);
    CHECK(std::abs(estp - 2 * perimeter(poly)) <= 3 * sep);
}

TEST_CASE("centroids: octant, caps, hemisphere") {
    auto oct = oracles::octant();
    Vec3 c = centroid(oct);
    CHECK(c.x == Approx(M_PI / 4).epsilon(1e-12));
    CHECK(c.y == Approx(M_PI / 4).epsilon(1e-12));
    CHECK(c.z == Approx(M_PI / 4).epsilon(1e-12));
    Vec3 cd = centroid_dual(oct);
    CHECK(norm(cd - c) < 1e-12);

    SphericalCap cap(Vec3{0, 0, 1}, 0.9);
    CHECK(norm(centroid(cap) - Vec3{0, 0, M_PI * std::sin(0.9) * std::sin(0.9)}) < 1e-12);
    CHECK(norm(centroid_dual(cap) - Vec3{0, 0, M_PI * std::cos(0.9) * std::cos(0.9)}) < 1e-12);

    SphericalCap hemi(Vec3{0, 1, 0}, M_PI / 2);
    CHECK(norm(centroid(hemi) - Vec3{0, M_PI, 0}) < 1e-12);
    CHECK(norm(centroid_dual(hemi)) < 1e-12);

    // |c| <= |area|
    CHECK(norm(centroid(oct)) <= area(oct));
}

TEST_CASE("centroid_dual equals centroid of the dual polygon") {
    Rng rng(21, 0);
    for (int rep = 0; rep < 20; ++rep) {
        auto poly = oracles::random_spherical_polygon(rng);
        Vec3 a = centroid_dual(poly);
        Vec3 b = centroid(dual(poly));
        CHECK(norm(a - b) < 1e-9);
    }
}

TEST_CASE("fine polygonal caps converge to cap formulas") {
    double omega = 0.8;
    for (int n : {256, 512, 1024}) {
        auto poly = cap_ngon({0, 0, 1}, omega, n);
        double cap_area = 2 * M_PI * (1 - std::cos(omega));
        CHECK(std::abs(area(poly) - cap_area) < 30.0 / (double(n) * n));
        Vec3 cp = centroid(poly);
        CHECK(norm(cp - Vec3{0, 0, M_PI * std::sin(omega) * std::sin(omega)}) <
              30.0 / (double(n) * n));
    }
}

TEST_CASE("frenet identity residual on cap circles") {
    auto c1 = make_cap_circle({0, 0, 1}, M_PI / 4, 10'000);
    double r1 = frenet_identity_residual(c1);
    CHECK(r1 < 1e-6);

    auto c2 = make_cap_circle({0, 0, 1}, M_PI / 2, 10'000);
    CHECK(frenet_identity_residual(c2) < 1e-6);

    // O(h^2): doubling the sample count divides the residual by about 4
    auto coarse = make_cap_circle({0.2, 0.3, 0.9}, 0.6, 5000);
    auto fine = make_cap_circle({0.2, 0.3, 0.9}, 0.6, 10'000);
    double rc = frenet_identity_residual(coarse);
    double rf = frenet_identity_residual(fine);
    CHECK(rc / rf > 3.0);
    CHECK(rc / rf < 5.0);

    CHECK_THROWS_AS(frenet_identity_residual(make_cap_circle({0, 0, 1}, M_PI / 2, 500)),
                    TooCoarse);
}

TEST_CASE("frenet identity reads pi*axis for the hemisphere") {
    // c(cap) + c(dual cap) = pi * axis for every cap; at omega = pi/2 the
    // dual term vanishes and the curve integral alone must give pi * axis.
    Vec3 axis{0, 0, 1};
    auto curve = make_cap_circle(axis, M_PI / 2, 20'000);
    const auto& g = curve.samples;
    double h = curve.arc_spacing;
    Vec3 rhs{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec3& prev = g[(i + g.size() - 1) % g.size()];
        const Vec3& next = g[(i + 1) % g.size()];
        Vec3 d1 = (next - prev) / (2 * h);
        Vec3 d2 = (next - g[i] * 2.0 + prev) / (h * h);
        rhs += cross(d1, d2);
    }
    rhs *= 0.5 * h;
    CHECK(norm(rhs - axis * M_PI) < 1e-6);
}

TEST_CASE("dihedral visual angle: cap relation and limits") {
    double omega = 0.5;
    SphericalCap cap(Vec3{0, 0, 1}, omega);
    for (double psi : {0.8, 1.2, M_PI / 2, 2.0}) {
        Vec3 u{std::sin(psi), 0, std::cos(psi)};
        double expect = 2 * std::asin(std::sin(omega) / std::sin(psi));
        CHECK(dihedral_visual_angle(cap, u) == Approx(expect).epsilon(1e-12));
        // dense polygonal approximation agrees
        auto poly = cap_ngon({0, 0, 1}, omega, 2000);
        CHECK(dihedral_visual_angle(poly, u) == Approx(expect).epsilon(1e-4));
    }
    // u orthogonal to the axis: D = 2*omega
    CHECK(dihedral_visual_angle(cap, {1, 0, 0}) == Approx(2 * omega).epsilon(1e-12));
    CHECK_THROWS_AS(dihedral_visual_angle(cap, Vec3{0, 0, 1}), AxisInsideCone);
    CHECK_THROWS_AS(dihedral_visual_angle(cap, Vec3{0, 0, -1}), AxisInsideCone);

    // shrinking region: D -> 0
    SphericalCap tiny(Vec3{0, 0, 1}, 1e-4);
    CHECK(dihedral_visual_angle(tiny, {1, 0, 0}) < 1e-3);
}

TEST_CASE("dihedral visual angle matches the two-tangent oracle on polygons") {
    Rng rng(31, 0);
    int checked = 0;
    while (checked < 40) {
        auto poly = oracles::random_spherical_polygon(rng);
        Vec3 u = rng.unit_vector();
        if (contains(poly, u) || contains(poly, -u)) continue;
        double got;
        try {
            got = dihedral_visual_angle(poly, u);
        } catch (const DegenerateProjection&) {
            continue;
        }
        CHECK(got == Approx(oracles::dihedral_pairwise(poly.vertices(), u)).epsilon(1e-10));
        ++checked;
    }
}

TEST_CASE("cap_alpha closed form") {
    CHECK(cap_alpha(M_PI / 2) == Approx(2 * M_PI * M_PI).epsilon(1e-14));
    // printed form, evaluated directly
    double w = M_PI / 4;
    double printed = 2 * M_PI * M_PI * (1 - std::cos(w)) -
                     M_PI * M_PI * std::cos(w) * std::cos(w) * std::sin(w) * std::sin(w);
    CHECK(cap_alpha(w) == Approx(printed).epsilon(1e-14));
    CHECK(cap_alpha(w) ==
          Approx(2 * M_PI * M_PI * (1 - std::sqrt(2.0) / 2) - M_PI * M_PI / 4).epsilon(1e-14));

    // O(omega^4) vanishing: alpha ~ (5/4) pi^2 w^4
    for (double wsmall : {1e-2, 1e-3, 1e-4}) {
        double ratio = cap_alpha(wsmall) / (1.25 * M_PI * M_PI * std::pow(wsmall, 4));
        CHECK(ratio == Approx(1.0).epsilon(1e-3));
    }
    CHECK_THROWS_AS(cap_alpha(0.0), DomainError);
    CHECK_THROWS_AS(cap_alpha(2.0), DomainError);
}

TEST_CASE("rigid rotations leave spherical quantities unchanged") {
    Rng rng(41, 0);
    auto poly = oracles::random_spherical_polygon(rng);
    double a0 = area(poly), p0 = perimeter(poly);
    double c0 = norm(centroid(poly)), d0 = norm(centroid_dual(poly));
    double alpha0 = M_PI * a0 - dot(centroid(poly), centroid_dual(poly));
    for (int i = 0; i < 10; ++i) {
        Mat3 rot = rng.rotation();
        std::vector<Vec3> moved;
        for (const auto& v : poly.vertices()) moved.push_back(rot * v);
        auto q = SphericalPolygon::from_vertices(moved);
        CHECK(area(q) == Approx(a0).epsilon(1e-9));
        CHECK(perimeter(q) == Approx(p0).epsilon(1e-9));
        CHECK(norm(centroid(q)) == Approx(c0).epsilon(1e-9));
        CHECK(norm(centroid_dual(q)) == Approx(d0).epsilon(1e-9));
        double alpha = M_PI * area(q) - dot(centroid(q), centroid_dual(q));
        CHECK(alpha == Approx(alpha0).epsilon(1e-9));
    }
}

TEST_CASE("alpha nonnegativity on random polygons") {
    Rng rng(51, 0);
    for (int i = 0; i < 50; ++i) {
        auto poly = oracles::random_spherical_polygon(rng);
        double alpha = M_PI * area(poly) - dot(centroid(poly), centroid_dual(poly));
        CHECK(alpha >= -1e-9);
    }
}
