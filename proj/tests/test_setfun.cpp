#include <doctest.h>

#include "crofton/crofton.hpp"
#include "oracles.hpp"

using namespace crofton;
using doctest::Approx;

TEST_CASE("McConfig invariants") {
    McConfig too_few{1, 500, 100};
    CHECK_THROWS_AS(too_few.validate(), DomainError);
    McConfig bad_chunk{1, 10'000, 3000};
    CHECK_THROWS_AS(bad_chunk.validate(), DomainError);
    McConfig ok{1, 10'000, 1000};
    ok.validate();
}

TEST_CASE("alpha_closed agrees with cap_alpha on caps") {
    for (double w = 0.05; w <= M_PI / 2 + 1e-12; w += 0.05) {
        SphericalCap cap(Vec3{0.1, -0.7, 0.7}, std::min(w, M_PI / 2));
        CHECK(alpha_closed(cap) == Approx(cap_alpha(cap.omega)).epsilon(1e-12));
    }
    CHECK(alpha_closed(SphericalCap({0, 0, 1}, M_PI / 2)) ==
          Approx(2 * M_PI * M_PI).epsilon(1e-14));
}

TEST_CASE("alpha_closed of the octant") {
    CHECK(alpha_closed(oracles::octant()) == Approx(5 * M_PI * M_PI / 16).epsilon(1e-12));
}

TEST_CASE("alpha vanishes for shrinking regions") {
    CHECK(alpha_closed(SphericalCap({0, 0, 1}, 1e-3)) < 1e-10);
    auto tiny = SphericalPolygon::from_vertices(
        make_cap_circle({0, 0, 1}, 1e-3, 8).samples, Vec3{0, 0, 1});
    CHECK(alpha_closed(tiny) < 1e-10);
}

TEST_CASE("alpha_mc matches alpha_closed within 3 sigma") {
    McConfig cfg{42, 1'000'000, 10'000};
    SphericalCap cap(Vec3{0, 0, 1}, M_PI / 4);
    auto est = alpha_mc(cap, cfg);
    CHECK(std::abs(est.mean - cap_alpha(M_PI / 4)) <= 3 * est.se);

    auto oct = oracles::octant();
    auto est2 = alpha_mc(oct, cfg);
    CHECK(std::abs(est2.mean - 5 * M_PI * M_PI / 16) <= 3 * est2.se);
}

TEST_CASE("estimates are bit-identical across reruns and worker counts") {
    McConfig cfg{123, 100'000, 10'000};
    auto oct = oracles::octant();
    auto a1 = alpha_mc(oct, cfg, 1);
    auto a2 = alpha_mc(oct, cfg, 4);
    auto a3 = alpha_mc(oct, cfg, 0);
    CHECK(a1.mean == a2.mean);
    CHECK(a1.se == a2.se);
    CHECK(a1.mean == a3.mean);
    auto b1 = beta_mc(oct, cfg, 1);
    auto b2 = beta_mc(oct, cfg, 3);
    CHECK(b1.mean == b2.mean);
    CHECK(b1.se == b2.se);
    // different seed gives a different stream
    McConfig cfg2{124, 100'000, 10'000};
    CHECK(alpha_mc(oct, cfg2).mean != a1.mean);
}

TEST_CASE("beta_mc on the octant matches the direct-definition grid oracle") {
    // Richardson extrapolation of the midpoint product grid (error ~ h^2)
    double v24 = oracles::beta_octant_grid(24, 48);
    double v32 = oracles::beta_octant_grid(32, 64);
    double extrap = (v32 * 1024 - v24 * 576) / 448.0;
    double extrap_margin = std::abs(v32 - v24) / 3.0;  // next-order remainder scale

    McConfig cfg{42, 10'000'000, 10'000};
    auto est = beta_mc(oracles::octant(), cfg);
    CHECK(std::abs(est.mean - extrap) <= 3 * est.se + extrap_margin);
}

TEST_CASE("beta vanishes for shrinking regions") {
    McConfig cfg{5, 1'000'000, 10'000};
    auto est = beta_mc(SphericalCap({0, 0, 1}, 0.03), cfg);
    CHECK(std::abs(est.mean) < 0.02);
}

TEST_CASE("gamma is nonnegative and vanishes on the hemisphere") {
    McConfig cfg{9, 1'000'000, 10'000};
    auto oct = oracles::octant();
    auto g = gamma_mc(oct, cfg);
    CHECK(g.mean >= 0);

    // +-u outside a hemisphere has measure zero, so every sample is rejected
    auto gh = gamma_mc(SphericalCap({0, 0, 1}, M_PI / 2), cfg);
    CHECK(gh.mean == 0.0);
}

TEST_CASE("decomposition beta = (pi^2/2) alpha + gamma on a cap") {
    McConfig cfg{31, 2'000'000, 10'000};
    SphericalCap cap(Vec3{0, 0, 1}, M_PI / 4);
    auto b = beta_mc(cap, cfg);
    auto g = gamma_mc(cap, cfg);
    double lhs = b.mean;
    double rhs = M_PI * M_PI / 2 * alpha_closed(cap) + g.mean;
    double sigma = std::sqrt(b.se * b.se + g.se * g.se);
    CHECK(std::abs(lhs - rhs) <= 3 * sigma);
}

TEST_CASE("beta_mc >= (pi^2/2) alpha_closed within noise (gamma >= 0)") {
    McConfig cfg{33, 1'000'000, 10'000};
    Rng rng(61, 0);
    for (int i = 0; i < 3; ++i) {
        auto poly = oracles::random_spherical_polygon(rng);
        auto b = beta_mc(poly, cfg);
        CHECK(b.mean >= M_PI * M_PI / 2 * alpha_closed(poly) - 3 * b.se);
    }
}

TEST_CASE("planar alpha and beta are proportional to w - sin w with ratio 2") {
    // The proportionality constant is a frozen regression value, measured
    // once by high-sample Monte Carlo.
    const double frozen_ratio = 2.0;
    McConfig cfg{71, 2'000'000, 10'000};
    std::vector<double> ratios_a, ratios_b, ses_a, ses_b;
    for (double w : {0.5, 1.0, 2.0}) {
        double ref = w - std::sin(w);
        auto pa = planar_alpha(w, cfg);
        auto pb = planar_beta(w, cfg);
        ratios_a.push_back(pa.mean / ref);
        ses_a.push_back(pa.se / ref);
        ratios_b.push_back(pb.mean / ref);
        ses_b.push_back(pb.se / ref);
    }
    for (std::size_t i = 0; i < ratios_a.size(); ++i) {
        CHECK(std::abs(ratios_a[i] - frozen_ratio) <= 3 * ses_a[i]);
        CHECK(std::abs(ratios_b[i] - frozen_ratio) <= 3 * ses_b[i]);
        for (std::size_t j = i + 1; j < ratios_a.size(); ++j) {
            double s = std::hypot(ses_a[i], ses_a[j]);
            CHECK(std::abs(ratios_a[i] - ratios_a[j]) <= 3 * s);
            double sb = std::hypot(ses_b[i], ses_b[j]);
            CHECK(std::abs(ratios_b[i] - ratios_b[j]) <= 3 * sb);
        }
    }
}

TEST_CASE("planar integrals vanish as the arc shrinks") {
    McConfig cfg{81, 1'000'000, 10'000};
    CHECK(std::abs(planar_alpha(0.02, cfg).mean) < 1e-3);
    CHECK(std::abs(planar_beta(0.02, cfg).mean) < 1e-3);
    CHECK_THROWS_AS(planar_alpha(0.0, cfg), DomainError);
    CHECK_THROWS_AS(planar_beta(M_PI, cfg), DomainError);
}
