#pragma once

#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "crofton/convex_body.hpp"
#include "crofton/mc.hpp"
#include "crofton/quadrature.hpp"
#include "crofton/setfun.hpp"
#include "crofton/solid_angle.hpp"
#include "crofton/sphere.hpp"

namespace crofton {

// Invariant measures: dG = (1/2) du dx over direction u and foot x in the
// orthogonal plane; dE = (1/2) dv dp over normal v and offset p. The halves
// absorb the double parametrization by antipodal directions, normalized so
// the classical baselines hold (lines meeting K measure pi*F/2, planes M).
struct LineCoords {
    Vec3 u;     // unit direction
    Vec2 foot;  // coordinates in basis_for(u) of the foot point in u-perp
};
struct PlaneCoords {
    Vec3 v;    // unit normal
    double p;  // signed offset
};

inline Line to_line(const LineCoords& lc) {
    auto b = basis_for(lc.u);
    return {lc.u, b.b1 * lc.foot.x + b.b2 * lc.foot.y};
}
inline Plane to_plane(const PlaneCoords& pc) { return {pc.v, pc.p}; }

struct VerifierSide {
    double value = 0;
    double se = 0;
    std::uint64_t samples = 0;
    std::optional<double> tail;
    bool exact = true;

    static VerifierSide from_exact(double v) { return {v, 0, 0, std::nullopt, true}; }
    static VerifierSide from_mc(const McEstimate& e) {
        return {e.mean, e.se, e.samples, e.tail, false};
    }
};

struct VerifierReport {
    std::string name;
    VerifierSide lhs, rhs;
    double sigma_residual = 0;  // |lhs - rhs| in pooled-sigma units
    double rel_tol = 0;
    double abs_tol = 0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::string notes;
};

inline VerifierReport make_report(std::string name, VerifierSide lhs, VerifierSide rhs,
                                  double rel_tol, std::uint64_t seed, std::string notes = "",
                                  double abs_tol = 0) {
    VerifierReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_tol = rel_tol;
    r.abs_tol = abs_tol;
    r.seed = seed;
    r.notes = std::move(notes);
    double diff = std::abs(lhs.value - rhs.value);
    double sig = std::sqrt(lhs.se * lhs.se + rhs.se * rhs.se);
    r.sigma_residual = sig > 0 ? diff / sig : (diff == 0 ? 0 : std::numeric_limits<double>::infinity());
    double ref = std::max(std::abs(lhs.value), std::abs(rhs.value));
    r.pass = diff <= std::max({3.0 * sig, rel_tol * ref, abs_tol});
    return r;
}

// ---- body traits ----

inline Vec3 body_center(const ConvexPolytope& k) { return k.center(); }
inline Vec3 body_center(const Ball& b) { return b.center; }
inline double body_circumradius(const ConvexPolytope& k) { return k.circumradius(); }
inline double body_circumradius(const Ball& b) { return b.radius; }
// Largest radius around the center guaranteed inside the body.
inline double body_inner_clearance(const ConvexPolytope& k) { return k.center_inradius(); }
inline double body_inner_clearance(const Ball& b) { return b.radius; }

inline SphericalPolygon solid_angle_region(const ConvexPolytope& k, Vec3 p) {
    return solid_angle(k, p);
}
inline SphericalCap solid_angle_region(const Ball& b, Vec3 p) {
    return solid_angle_ball(b, p);
}

// ---- sphere constants (proof anchors) ----

// E|<u,v>| over S^2 x S^2; must be 1/2 so that (1/4)(4pi)^2 E = 2 pi^2.
inline McEstimate sphere_constant_pair(const McConfig& cfg, int threads = 0) {
    return mc_mean(cfg, threads, 1.0, [](Rng& rng) {
        Vec3 u = rng.unit_vector();
        Vec3 v = rng.unit_vector();
        return std::abs(dot(u, v));
    });
}

// E|det(v1,v2,v3)|; must be pi/8 so that (1/8)(4pi)^3 E = pi^4.
inline McEstimate sphere_constant_triple(const McConfig& cfg, int threads = 0) {
    return mc_mean(cfg, threads, 1.0, [](Rng& rng) {
        Vec3 v1 = rng.unit_vector();
        Vec3 v2 = rng.unit_vector();
        Vec3 v3 = rng.unit_vector();
        return std::abs(det3(v1, v2, v3));
    });
}

// ---- line / plane samplers and Crofton baselines ----

namespace detail {

// Lines sampled per direction in the disc of the body's circumradius;
// sampled measure is (1/2)(4pi)(pi Rc^2).
template <class Body, class F>
McEstimate lines_mc(const Body& k, const McConfig& cfg, int threads, std::uint64_t salt,
                    F&& integrand) {
    Vec3 c0 = body_center(k);
    double rc = body_circumradius(k) * (1 + 1e-12);
    double scale = 0.5 * 4 * M_PI * M_PI * rc * rc;
    return mc_mean(
        cfg, threads, scale,
        [&k, c0, rc, &integrand](Rng& rng) {
            Vec3 u = rng.unit_vector();
            auto b = basis_for(u);
            Vec2 foot = rng.in_disc(rc);
            Line g{u, c0 + b.b1 * foot.x + b.b2 * foot.y};
            return integrand(g);
        },
        salt);
}

// Planes sampled with uniform normal and offset uniform on the support
// interval; per-sample weight is the interval width (zero wasted samples).
template <class Body, class F>
McEstimate planes_mc(const Body& k, const McConfig& cfg, int threads, std::uint64_t salt,
                     F&& integrand) {
    double scale = 0.5 * 4 * M_PI;
    return mc_mean(
        cfg, threads, scale,
        [&k, &integrand](Rng& rng) {
            Vec3 v = rng.unit_vector();
            double hi = support(k, v);
            double lo = -support(k, -v);
            double w = hi - lo;
            Plane e{v, rng.uniform(lo, hi)};
            return w * integrand(e);
        },
        salt);
}

}  // namespace detail

template <class Body>
std::vector<VerifierReport> crofton_baselines(const Body& k, const McConfig& cfg,
                                              int threads = 0) {
    QuermassTriple q = quermassintegrals(k);
    std::vector<VerifierReport> out;

    auto m_lines = detail::lines_mc(k, cfg, threads, 11,
                                    [&k](const Line& g) { return line_hits(k, g).hits ? 1.0 : 0.0; });
    out.push_back(make_report("crofton_lines_measure", VerifierSide::from_mc(m_lines),
                              VerifierSide::from_exact(M_PI * q.F / 2), 0.01, cfg.seed,
                              "lines meeting K vs pi*F/2"));

    auto chord = detail::lines_mc(k, cfg, threads, 12,
                                  [&k](const Line& g) { return line_hits(k, g).chord; });
    out.push_back(make_report("crofton_chord_integral", VerifierSide::from_mc(chord),
                              VerifierSide::from_exact(2 * M_PI * q.V), 0.01, cfg.seed,
                              "integral of L(K cap G) vs 2*pi*V"));

    auto m_planes = detail::planes_mc(k, cfg, threads, 13, [](const Plane&) { return 1.0; });
    out.push_back(make_report("crofton_planes_measure", VerifierSide::from_mc(m_planes),
                              VerifierSide::from_exact(q.M), 0.01, cfg.seed,
                              "planes meeting K vs M"));

    auto per = detail::planes_mc(k, cfg, threads, 14,
                                 [&k](const Plane& e) { return slice(k, e).perimeter(); });
    out.push_back(make_report("crofton_slice_perimeter", VerifierSide::from_mc(per),
                              VerifierSide::from_exact(M_PI * M_PI * q.F / 2), 0.01, cfg.seed,
                              "integral of L(K cap E) vs pi^2*F/2"));

    auto ar = detail::planes_mc(k, cfg, threads, 15,
                                [&k](const Plane& e) { return slice(k, e).area(); });
    out.push_back(make_report("crofton_slice_area", VerifierSide::from_mc(ar),
                              VerifierSide::from_exact(2 * M_PI * q.V), 0.01, cfg.seed,
                              "integral of A(K cap E) vs 2*pi*V"));
    return out;
}

// Measure-normalization self-test: the unit-ball baselines must reproduce to
// 1 percent before any verifier runs. Deterministic (fixed seed).
inline void ensure_measure_normalization() {
    static std::once_flag flag;
    static bool ok = false;
    std::call_once(flag, [] {
        Ball b({0, 0, 0}, 1.0);
        McConfig cfg{0xC0FFEE, 200'000, 10'000};
        for (const auto& r : crofton_baselines(b, cfg, 0)) {
            double ref = std::abs(r.rhs.value);
            if (std::abs(r.lhs.value - r.rhs.value) > 0.01 * ref)
                throw Error("measure normalization self-test failed: " + r.name);
        }
        ok = true;
    });
    if (!ok) throw Error("measure normalization self-test failed earlier");
}

// ---- exterior integrals over P outside K ----

struct ExteriorShells {
    std::vector<double> bounds;        // shell boundaries, ascending
    std::vector<std::uint64_t> alloc;  // samples per shell
    double r_trunc = 0;
};

template <class Body>
ExteriorShells exterior_shells(const Body& k, const McConfig& cfg, double rtrunc_factor = 20) {
    cfg.validate();
    if (rtrunc_factor < 2) throw DomainError("exterior_integral: rtrunc_factor must be >= 2");
    double rc = body_circumradius(k);
    double rin = std::min(body_inner_clearance(k), rc);
    double rt = rtrunc_factor * rc;

    ExteriorShells s;
    s.r_trunc = rt;
    std::vector<double> weights;
    bool has_near = rin < rc * (1 - 1e-12);
    if (has_near) {
        s.bounds.push_back(rin);
        s.bounds.push_back(rc);
        weights.push_back(0.30);
    } else {
        s.bounds.push_back(rc);
    }
    double lo = rc;
    double remaining = has_near ? 0.70 : 1.0;
    std::vector<double> oct_raw;
    while (lo * 2 < rt * (1 - 1e-12)) {
        s.bounds.push_back(lo * 2);
        oct_raw.push_back(oct_raw.empty() ? 1.0 : oct_raw.back() * 0.5);
        lo *= 2;
    }
    s.bounds.push_back(rt);
    oct_raw.push_back(oct_raw.empty() ? 1.0 : oct_raw.back() * 0.5);
    double raw_sum = 0;
    for (double w : oct_raw) raw_sum += w;
    for (double w : oct_raw) weights.push_back(remaining * w / raw_sum);
    // floor so the tail octave keeps enough samples for the decay fit
    double wsum = 0;
    for (double& w : weights) {
        w = std::max(w, 0.04);
        wsum += w;
    }
    for (double& w : weights) w /= wsum;

    // largest-remainder allocation
    std::size_t ns = weights.size();
    s.alloc.assign(ns, 0);
    std::uint64_t assigned = 0;
    std::vector<std::pair<double, std::size_t>> rem(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        double exact = double(cfg.samples) * weights[i];
        s.alloc[i] = std::uint64_t(exact);
        assigned += s.alloc[i];
        rem[i] = {exact - double(s.alloc[i]), i};
    }
    std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t j = 0; assigned < cfg.samples; ++j, ++assigned) s.alloc[rem[j % ns].second]++;
    return s;
}

// Stratified Monte Carlo of the integral over B(r_trunc) \ K of f(solid
// angle at P), plus an analytically integrated C*d^-4 tail fitted on the
// outermost shell. The tail is folded into the mean and reported separately.
template <class Body, class F>
McEstimate exterior_integral(const Body& k, F&& f, const McConfig& cfg, int threads = 0,
                             double rtrunc_factor = 20, std::uint64_t salt = 100) {
    auto shells = exterior_shells(k, cfg, rtrunc_factor);
    Vec3 c0 = body_center(k);
    std::size_t n_shells = shells.alloc.size();

    struct ChunkJob {
        std::size_t shell;
        std::uint64_t n;
    };
    std::vector<ChunkJob> jobs;
    for (std::size_t si = 0; si < n_shells; ++si) {
        std::uint64_t n = shells.alloc[si];
        if (n == 0) continue;
        std::uint64_t m = std::max<std::uint64_t>(1, n / cfg.chunk);
        std::uint64_t base = n / m, rem = n % m;
        for (std::uint64_t c = 0; c < m; ++c) jobs.push_back({si, base + (c < rem ? 1 : 0)});
    }

    struct JobStat {
        double sum = 0, sumsq = 0, sum_fd4 = 0;
        std::uint64_t n = 0;
    };
    std::vector<JobStat> stats(jobs.size());
    bool last_shell_exists = n_shells > 0;
    std::size_t last_shell = n_shells - 1;

    parallel_chunks(jobs.size(), threads, [&](std::uint64_t ji) {
        const ChunkJob& job = jobs[ji];
        double a = shells.bounds[job.shell], b = shells.bounds[job.shell + 1];
        Rng rng(cfg.seed, salt * 0x100000000ULL + ji);
        JobStat st;
        st.n = job.n;
        for (std::uint64_t i = 0; i < job.n; ++i) {
            Vec3 p = c0 + rng.in_shell(a, b);
            double val = 0;
            if (!contains(k, p)) {
                auto region = solid_angle_region(k, p);
                val = f(region, rng);
            }
            st.sum += val;
            st.sumsq += val * val;
            if (job.shell == last_shell) {
                double d = norm(p - c0);
                double d2 = d * d;
                st.sum_fd4 += val * d2 * d2;
            }
        }
        stats[ji] = st;
    });

    // ordered per-shell reduction
    McEstimate out;
    out.seed = cfg.seed;
    double total = 0, var_total = 0, tail_sum = 0;
    std::uint64_t tail_n = 0, n_total = 0;
    for (std::size_t si = 0; si < n_shells; ++si) {
        double a = shells.bounds[si], b = shells.bounds[si + 1];
        double vol = 4.0 * M_PI / 3.0 * (b * b * b - a * a * a);
        double sum = 0, sumsq = 0;
        std::uint64_t n = 0;
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
            if (jobs[ji].shell != si) continue;
            sum += stats[ji].sum;
            sumsq += stats[ji].sumsq;
            n += stats[ji].n;
            if (si == last_shell) {
                tail_sum += stats[ji].sum_fd4;
                tail_n += stats[ji].n;
            }
        }
        if (n == 0) continue;
        n_total += n;
        double mean = sum / double(n);
        double var = n > 1 ? std::max(0.0, (sumsq - double(n) * mean * mean) / double(n - 1)) : 0.0;
        total += vol * mean;
        var_total += vol * vol * var / double(n);
    }
    double tail = 0;
    if (last_shell_exists && tail_n > 0) {
        double c_fit = tail_sum / double(tail_n);  // f ~ C * d^-4 on the last octave
        tail = 4 * M_PI * c_fit / shells.r_trunc;
    }
    out.mean = total + tail;
    out.se = std::sqrt(var_total);
    out.samples = n_total;
    out.tail = tail;
    if (std::abs(tail) > 0.1 * std::abs(out.mean))
        throw TailDominates("exterior_integral: truncation tail exceeds 10% of the estimate");
    return out;
}

// Radial quadrature form of the exterior integral for balls: with
// d = r/sin(phi) the solid angle is the cap of radius phi and
//   integral = 4 pi r^3 * int_0^{pi/2} f(phi) cos(phi)/sin^4(phi) dphi.
template <class F>
double exterior_integral_quadrature(const Ball& b, F&& f_of_omega, int panels = 256) {
    double r = b.radius;
    auto integrand = [&](double phi) {
        double s = std::sin(phi);
        return f_of_omega(phi) * std::cos(phi) / (s * s * s * s);
    };
    return 4 * M_PI * r * r * r * gauss_legendre(integrand, 0.0, M_PI / 2, panels);
}

// ---- Theorem verifiers ----

// (1/2) pi M F - 2 pi^2 V = integral over P outside K of alpha(solid angle).
inline VerifierReport verify_thm1(const ConvexPolytope& k, const McConfig& cfg, int threads = 0,
                                  double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(k);
    double lhs = 0.5 * M_PI * q.M * q.F - 2 * M_PI * M_PI * q.V;
    auto rhs = exterior_integral(
        k, [](const SphericalPolygon& region, Rng&) { return alpha_closed(region); }, cfg,
        threads, rtrunc_factor, 101);
    return make_report("thm1_pairs", VerifierSide::from_exact(lhs), VerifierSide::from_mc(rhs),
                       0.02, cfg.seed, "pi*M*F/2 - 2*pi^2*V vs exterior integral of alpha");
}

inline VerifierReport verify_thm1(const Ball& b, const McConfig& cfg, int /*threads*/ = 0,
                                  double /*rtrunc_factor*/ = 20) {
    QuermassTriple q = quermassintegrals(b);
    double lhs = 0.5 * M_PI * q.M * q.F - 2 * M_PI * M_PI * q.V;
    double rhs = exterior_integral_quadrature(b, [](double w) { return cap_alpha(w); });
    return make_report("thm1_pairs", VerifierSide::from_exact(lhs), VerifierSide::from_exact(rhs),
                       0, cfg.seed, "ball: radial quadrature of cap alpha", 1e-8);
}

// M^3 - pi^4 V = integral over P outside K of beta(solid angle); the inner
// beta is itself Monte Carlo (nested budget).
template <class Body>
VerifierReport verify_thm2(const Body& k, const McConfig& cfg, std::uint64_t inner = 1000,
                           int threads = 0, double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(k);
    double lhs = q.M * q.M * q.M - std::pow(M_PI, 4) * q.V;
    auto rhs = exterior_integral(
        k,
        [inner](const auto& region, Rng& rng) {
            return detail::beta_single_pass(region, inner, rng);
        },
        cfg, threads, rtrunc_factor, 102);
    return make_report("thm2_triples", VerifierSide::from_exact(lhs), VerifierSide::from_mc(rhs),
                       0.03, cfg.seed, "M^3 - pi^4*V vs exterior integral of beta");
}

// integral of L(K cap E)^2 dE = integral over P outside K of |Omega(P)|^2 dP + 4 pi^2 V.
inline VerifierReport verify_thm3(const ConvexPolytope& k, const McConfig& cfg, int threads = 0,
                                  double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(k);
    auto lhs = detail::planes_mc(k, cfg, threads, 103, [&k](const Plane& e) {
        double L = slice(k, e).perimeter();
        return L * L;
    });
    auto omega2 = exterior_integral(
        k,
        [](const SphericalPolygon& region, Rng&) {
            double a = area(region);
            return a * a;
        },
        cfg, threads, rtrunc_factor, 104);
    VerifierSide rhs = VerifierSide::from_mc(omega2);
    rhs.value += 4 * M_PI * M_PI * q.V;
    return make_report("thm3_slices", VerifierSide::from_mc(lhs), rhs, 0.02, cfg.seed,
                       "plane integral of L^2 vs exterior |Omega|^2 + 4*pi^2*V");
}

inline VerifierReport verify_thm3(const Ball& b, const McConfig& cfg, int /*threads*/ = 0,
                                  double /*rtrunc_factor*/ = 20) {
    double r = b.radius;
    QuermassTriple q = quermassintegrals(b);
    // slices of a ball are discs of perimeter 2 pi sqrt(r^2 - p^2)
    double lhs = 2 * M_PI * gauss_legendre(
                              [&](double p) {
                                  double L2 = 4 * M_PI * M_PI * (r * r - p * p);
                                  return L2;
                              },
                              -r, r, 128);
    double omega2 = exterior_integral_quadrature(b, [](double w) {
        double a = 2 * M_PI * one_minus_cos(w);
        return a * a;
    });
    double rhs = omega2 + 4 * M_PI * M_PI * q.V;
    return make_report("thm3_slices", VerifierSide::from_exact(lhs), VerifierSide::from_exact(rhs),
                       0, cfg.seed, "ball: both sides by quadrature", 1e-6);
}

// integral over P outside K of |Omega(P)|^2 dP >= 4 pi^2 V, equality iff ball.
inline VerifierReport verify_thm4(const ConvexPolytope& k, const McConfig& cfg, int threads = 0,
                                  double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(k);
    auto omega2 = exterior_integral(
        k,
        [](const SphericalPolygon& region, Rng&) {
            double a = area(region);
            return a * a;
        },
        cfg, threads, rtrunc_factor, 105);
    double rhsv = 4 * M_PI * M_PI * q.V;
    VerifierReport r = make_report("thm4_inequality", VerifierSide::from_mc(omega2),
                                   VerifierSide::from_exact(rhsv), 0, cfg.seed);
    double margin = omega2.mean - rhsv;
    double sig = omega2.se;
    r.sigma_residual = sig > 0 ? margin / sig : std::numeric_limits<double>::infinity();
    r.pass = margin > 5 * sig;
    r.notes = "strict inequality: margin must exceed 5 sigma";
    return r;
}

inline VerifierReport verify_thm4(const Ball& b, const McConfig& cfg, int threads = 0,
                                  double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(b);
    auto omega2 = exterior_integral(
        b,
        [](const SphericalCap& region, Rng&) {
            double a = area(region);
            return a * a;
        },
        cfg, threads, rtrunc_factor, 105);
    double rhsv = 4 * M_PI * M_PI * q.V;
    auto r = make_report("thm4_inequality", VerifierSide::from_mc(omega2),
                         VerifierSide::from_exact(rhsv), 0.01, cfg.seed,
                         "ball equality case: sides agree within 1%");
    return r;
}

// Crofton-Herglotz: integral over lines missing K of D^2 - sin^2 D equals
// 2 M^2 - pi^3 F / 2.
inline VerifierReport verify_herglotz(const ConvexPolytope& k, const McConfig& cfg,
                                      int threads = 0, double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(k);
    double rhs = 2 * q.M * q.M - std::pow(M_PI, 3) * q.F / 2;

    Vec3 c0 = body_center(k);
    double rc = body_circumradius(k);
    double rt = rtrunc_factor * rc;

    // annular strata for the foot point, per direction
    std::vector<double> bounds{0.0, rc};
    std::vector<double> weights{0.30};
    double lo = rc;
    std::vector<double> oct_raw;
    while (lo * 2 < rt * (1 - 1e-12)) {
        bounds.push_back(lo * 2);
        oct_raw.push_back(oct_raw.empty() ? 1.0 : oct_raw.back() * 0.5);
        lo *= 2;
    }
    bounds.push_back(rt);
    oct_raw.push_back(oct_raw.empty() ? 1.0 : oct_raw.back() * 0.5);
    double rs = 0;
    for (double w : oct_raw) rs += w;
    for (double w : oct_raw) weights.push_back(0.70 * w / rs);
    double wsum = 0;
    for (double& w : weights) { w = std::max(w, 0.04); wsum += w; }
    for (double& w : weights) w /= wsum;

    std::size_t ns = weights.size();
    std::vector<std::uint64_t> alloc(ns, 0);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < ns; ++i) {
        alloc[i] = std::uint64_t(double(cfg.samples) * weights[i]);
        assigned += alloc[i];
    }
    for (std::size_t i = 0; assigned < cfg.samples; ++assigned, ++i) alloc[i % ns]++;

    struct Job { std::size_t shell; std::uint64_t n; };
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < ns; ++si) {
        std::uint64_t n = alloc[si];
        if (!n) continue;
        std::uint64_t m = std::max<std::uint64_t>(1, n / cfg.chunk);
        std::uint64_t base = n / m, rem = n % m;
        for (std::uint64_t c = 0; c < m; ++c) jobs.push_back({si, base + (c < rem ? 1 : 0)});
    }
    struct Stat { double sum = 0, sumsq = 0, sum_fr4 = 0; std::uint64_t n = 0; };
    std::vector<Stat> stats(jobs.size());
    parallel_chunks(jobs.size(), threads, [&](std::uint64_t ji) {
        const Job& job = jobs[ji];
        double a = bounds[job.shell], b = bounds[job.shell + 1];
        Rng rng(cfg.seed, 106 * 0x100000000ULL + ji);
        Stat st;
        st.n = job.n;
        for (std::uint64_t i = 0; i < job.n; ++i) {
            Vec3 u = rng.unit_vector();
            auto bas = basis_for(u);
            Vec2 foot = rng.in_annulus(a, b);
            Line g{u, c0 + bas.b1 * foot.x + bas.b2 * foot.y};
            double val = 0;
            if (!line_hits(k, g).hits) {
                double d = dihedral_visual_angle_line(k, g);
                val = x2_minus_sin2(d);
            }
            st.sum += val;
            st.sumsq += val * val;
            if (job.shell == ns - 1) {
                double rho2 = norm2(foot);
                st.sum_fr4 += val * rho2 * rho2;
            }
        }
        stats[ji] = st;
    });

    double total = 0, var_total = 0, tail_sum = 0;
    std::uint64_t tail_n = 0, n_total = 0;
    for (std::size_t si = 0; si < ns; ++si) {
        double a = bounds[si], b = bounds[si + 1];
        double measure = 0.5 * 4 * M_PI * M_PI * (b * b - a * a);
        double sum = 0, sumsq = 0;
        std::uint64_t n = 0;
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
            if (jobs[ji].shell != si) continue;
            sum += stats[ji].sum;
            sumsq += stats[ji].sumsq;
            n += stats[ji].n;
            if (si == ns - 1) { tail_sum += stats[ji].sum_fr4; tail_n += stats[ji].n; }
        }
        if (!n) continue;
        n_total += n;
        double mean = sum / double(n);
        double var = n > 1 ? std::max(0.0, (sumsq - double(n) * mean * mean) / double(n - 1)) : 0.0;
        total += measure * mean;
        var_total += measure * measure * var / double(n);
    }
    double tail = 0;
    if (tail_n > 0) {
        double c_fit = tail_sum / double(tail_n);  // integrand ~ C * rho^-4
        tail = 2 * M_PI * M_PI * c_fit / (rt * rt);
    }
    McEstimate lhs;
    lhs.mean = total + tail;
    lhs.se = std::sqrt(var_total);
    lhs.samples = n_total;
    lhs.seed = cfg.seed;
    lhs.tail = tail;
    if (std::abs(tail) > 0.1 * std::abs(lhs.mean))
        throw TailDominates("verify_herglotz: truncation tail exceeds 10% of the estimate");
    return make_report("crofton_herglotz", VerifierSide::from_mc(lhs),
                       VerifierSide::from_exact(rhs), 0.02, cfg.seed,
                       "lines missing K: integral of D^2 - sin^2 D vs 2*M^2 - pi^3*F/2");
}

inline VerifierReport verify_herglotz(const Ball& b, const McConfig& cfg, int /*threads*/ = 0,
                                      double /*rtrunc_factor*/ = 20) {
    QuermassTriple q = quermassintegrals(b);
    double rhs = 2 * q.M * q.M - std::pow(M_PI, 3) * q.F / 2;
    // rho = r / sin(phi), D = 2 phi; dG measure element is 4 pi^2 rho drho
    double r = b.radius;
    double lhs = 4 * M_PI * M_PI * r * r *
                 gauss_legendre(
                     [](double phi) {
                         double s = std::sin(phi);
                         return x2_minus_sin2(2 * phi) * std::cos(phi) / (s * s * s);
                     },
                     0.0, M_PI / 2, 256);
    return make_report("crofton_herglotz", VerifierSide::from_exact(lhs),
                       VerifierSide::from_exact(rhs), 0, cfg.seed,
                       "ball: 1D quadrature of the line integral", 1e-6);
}

// Measure-factorization consistency: the measure of (line, plane) pairs both
// meeting K computed two ways - product sampling of independent lines and
// planes vs point-first sampling with the |<u,v>| Jacobian, splitting the
// intersection point into the inside-K and outside-K contributions.
template <class Body>
VerifierReport lemma1_consistency(const Body& k, const McConfig& cfg, int threads = 0,
                                  double rtrunc_factor = 20) {
    ensure_measure_normalization();
    QuermassTriple q = quermassintegrals(k);

    auto m_lines = detail::lines_mc(k, cfg, threads, 21,
                                    [&k](const Line& g) { return line_hits(k, g).hits ? 1.0 : 0.0; });
    auto m_planes = detail::planes_mc(k, cfg, threads, 22, [](const Plane&) { return 1.0; });
    VerifierSide route1;
    route1.exact = false;
    route1.value = m_lines.mean * m_planes.mean;
    route1.se = std::sqrt(m_planes.mean * m_planes.mean * m_lines.se * m_lines.se +
                          m_lines.mean * m_lines.mean * m_planes.se * m_planes.se);
    route1.samples = m_lines.samples + m_planes.samples;

    auto pair_mean = sphere_constant_pair(cfg, threads);  // P inside K: sphere constant
    double inside_factor = 0.25 * (4 * M_PI) * (4 * M_PI);
    auto ext = exterior_integral(
        k, [](const auto& region, Rng&) { return alpha_closed(region); }, cfg, threads,
        rtrunc_factor, 23);
    VerifierSide route2;
    route2.exact = false;
    route2.value = q.V * inside_factor * pair_mean.mean + ext.mean;
    route2.se = std::sqrt(std::pow(q.V * inside_factor * pair_mean.se, 2) + ext.se * ext.se);
    route2.samples = pair_mean.samples + ext.samples;
    route2.tail = ext.tail;

    return make_report("lemma1_factorization", route1, route2, 0.02, cfg.seed,
                       "product (G,E) measure vs point-first factorization");
}

// Planar Crofton: integral over P outside K of 2*(w - sin w) dP = L^2 - 2 pi F.
inline VerifierReport verify_planar_crofton(const PlanarConvexPolygon& poly, const McConfig& cfg,
                                            int threads = 0, double rtrunc_factor = 20) {
    double Lb = poly.perimeter();
    double Fb = poly.area();
    double rhs = Lb * Lb - 2 * M_PI * Fb;

    Vec2 c0 = poly.centroid();
    double rc = poly.circumradius();
    double rin = rc;
    for (std::size_t i = 0; i < poly.vertices().size(); ++i) {
        Vec2 a = poly.vertices()[i];
        Vec2 b = poly.vertices()[(i + 1) % poly.vertices().size()];
        Vec2 d = b - a;
        rin = std::min(rin, std::abs(cross(d, c0 - a)) / norm(d));
    }
    double rt = rtrunc_factor * rc;

    std::vector<double> bounds{rin, rc};
    std::vector<double> weights{0.35};
    double lo = rc;
    std::vector<double> oct_raw;
    while (lo * 2 < rt * (1 - 1e-12)) {
        bounds.push_back(lo * 2);
        oct_raw.push_back(oct_raw.empty() ? 1.0 : oct_raw.back() * 0.5);
        lo *= 2;
    }
    bounds.push_back(rt);
    oct_raw.push_back(oct_raw.empty() ? 1.0 : oct_raw.back() * 0.5);
    double rs = 0;
    for (double w : oct_raw) rs += w;
    for (double w : oct_raw) weights.push_back(0.65 * w / rs);
    double wsum = 0;
    for (double& w : weights) { w = std::max(w, 0.04); wsum += w; }
    for (double& w : weights) w /= wsum;

    std::size_t ns = weights.size();
    std::vector<std::uint64_t> alloc(ns, 0);
    std::uint64_t assigned = 0;
    for (std::size_t i = 0; i < ns; ++i) {
        alloc[i] = std::uint64_t(double(cfg.samples) * weights[i]);
        assigned += alloc[i];
    }
    for (std::size_t i = 0; assigned < cfg.samples; ++assigned, ++i) alloc[i % ns]++;

    struct Job { std::size_t shell; std::uint64_t n; };
    std::vector<Job> jobs;
    for (std::size_t si = 0; si < ns; ++si) {
        std::uint64_t n = alloc[si];
        if (!n) continue;
        std::uint64_t m = std::max<std::uint64_t>(1, n / cfg.chunk);
        std::uint64_t base = n / m, rem = n % m;
        for (std::uint64_t c = 0; c < m; ++c) jobs.push_back({si, base + (c < rem ? 1 : 0)});
    }
    struct Stat { double sum = 0, sumsq = 0, sum_fr3 = 0; std::uint64_t n = 0; };
    std::vector<Stat> stats(jobs.size());
    parallel_chunks(jobs.size(), threads, [&](std::uint64_t ji) {
        const Job& job = jobs[ji];
        double a = bounds[job.shell], b = bounds[job.shell + 1];
        Rng rng(cfg.seed, 107 * 0x100000000ULL + ji);
        Stat st;
        st.n = job.n;
        for (std::uint64_t i = 0; i < job.n; ++i) {
            Vec2 p = c0 + rng.in_annulus(a, b);
            double val = 0;
            if (!poly.contains(p)) {
                double w = planar_visual_angle(poly, p);
                val = 2 * x_minus_sin(w);
            }
            st.sum += val;
            st.sumsq += val * val;
            if (job.shell == ns - 1) {
                double d = norm(p - c0);
                st.sum_fr3 += val * d * d * d;
            }
        }
        stats[ji] = st;
    });

    double total = 0, var_total = 0, tail_sum = 0;
    std::uint64_t tail_n = 0, n_total = 0;
    for (std::size_t si = 0; si < ns; ++si) {
        double a = bounds[si], b = bounds[si + 1];
        double measure = M_PI * (b * b - a * a);
        double sum = 0, sumsq = 0;
        std::uint64_t n = 0;
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
            if (jobs[ji].shell != si) continue;
            sum += stats[ji].sum;
            sumsq += stats[ji].sumsq;
            n += stats[ji].n;
            if (si == ns - 1) { tail_sum += stats[ji].sum_fr3; tail_n += stats[ji].n; }
        }
        if (!n) continue;
        n_total += n;
        double mean = sum / double(n);
        double var = n > 1 ? std::max(0.0, (sumsq - double(n) * mean * mean) / double(n - 1)) : 0.0;
        total += measure * mean;
        var_total += measure * measure * var / double(n);
    }
    double tail = 0;
    if (tail_n > 0) {
        double c_fit = tail_sum / double(tail_n);  // integrand ~ C * d^-3
        tail = 2 * M_PI * c_fit / rt;
    }
    McEstimate lhs;
    lhs.mean = total + tail;
    lhs.se = std::sqrt(var_total);
    lhs.samples = n_total;
    lhs.seed = cfg.seed;
    lhs.tail = tail;
    if (std::abs(tail) > 0.1 * std::abs(lhs.mean))
        throw TailDominates("verify_planar_crofton: truncation tail exceeds 10% of the estimate");
    return make_report("planar_crofton", VerifierSide::from_mc(lhs),
                       VerifierSide::from_exact(rhs), 0.02, cfg.seed,
                       "exterior integral of 2*(w - sin w) vs L^2 - 2*pi*F");
}

// ---- constant width bounds (formula evaluators) ----

struct ConstantWidthBounds {
    double width = 0;
    double ratio = 0;       // c = r/R
    double inradius = 0;    // a*c/(1+c)
    double circumradius = 0;  // a/(1+c)
    double slice_sq_upper = 0;     // upper bound on integral of L(K cap E)^2 dE
    double omega_sq_lower = 0;     // lower bound on integral of |Omega|^2 dP
    double omega_sq_upper = 0;     // upper bound on integral of |Omega|^2 dP
    double omega_sq_width_only = 0;  // width-only upper bound
    double remark2_lower = 0;      // dimensionless sandwich for the sphere-equality question
    double remark2_upper = 0;
};

inline double constant_width_min_ratio() { return std::sqrt(8.0 / 3.0) - 1.0; }

inline ConstantWidthBounds constant_width_bounds(double a, double c) {
    if (!(a > 0)) throw DomainError("constant_width_bounds: width must be positive");
    if (c < constant_width_min_ratio() - 1e-12 || c > 1 + 1e-12)
        throw DomainError("constant_width_bounds: ratio outside [sqrt(8/3)-1, 1]");
    ConstantWidthBounds out;
    out.width = a;
    out.ratio = c;
    out.inradius = a * c / (1 + c);
    out.circumradius = a / (1 + c);
    double pi3 = std::pow(M_PI, 3);
    double a3 = a * a * a;
    double c1 = 1 + c;
    out.slice_sq_upper = 8 * pi3 * a3 * (1.0 / (c1 * c1) - 1.0 / 12.0);
    out.omega_sq_lower = 4 * pi3 * a3 * (8.0 / 3.0 * c * c * c / (c1 * c1 * c1) - 1.0 / 6.0);
    out.omega_sq_upper = 4 * pi3 * a3 * (11.0 - 3.0 * c * (3 * c * c + c - 3)) / (6 * c1 * c1 * c1);
    out.omega_sq_width_only = 4.5 * pi3 * a3 * (std::sqrt(6.0) - 2.0);
    out.remark2_lower = (c * c * c - 1) / (c1 * c1 * c1);
    out.remark2_upper = (-23 * c * c * c + 3 * c * c + 3 * c + 17) / (24 * c1 * c1 * c1);
    return out;
}

// Ratio c above which the Proposition's lower bound turns nonnegative,
// located by bisection of 8 c^3 / (3 (1+c)^3) - 1/6.
inline double constant_width_positivity_root() {
    auto f = [](double c) {
        double c1 = 1 + c;
        return 8.0 / 3.0 * c * c * c / (c1 * c1 * c1) - 1.0 / 6.0;
    };
    return bisect(f, constant_width_min_ratio(), 1.0, 1e-12);
}

}  // namespace crofton
