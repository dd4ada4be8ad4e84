// Acceptance suite: one pass/fail line per criterion, full sample budgets.
// Exit status 0 iff every criterion passes.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "crofton/crofton.hpp"
#include "oracles.hpp"

using namespace crofton;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Runner {
    int failures = 0;

    template <class Fn>
    void criterion(int id, const std::string& label, Fn&& fn) {
        double t0 = now_s();
        bool pass = false;
        std::string detail;
        try {
            detail = fn(pass);
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        double dt = now_s() - t0;
        std::printf("[%2d] %s  %-22s %s  (%.1f s)\n", id, pass ? "PASS" : "FAIL", label.c_str(),
                    detail.c_str(), dt);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    Runner run;
    const McConfig mega{42, 1'000'000, 10'000};
    auto cube = build_polytope(oracles::unit_cube_points());
    auto tetra = build_polytope(oracles::regular_tetrahedron_points());
    Ball ball({0, 0, 0}, 1.0);

    run.criterion(1, "sphere constants", [&](bool& pass) {
        auto p = sphere_constant_pair(mega);
        auto t = sphere_constant_triple(mega);
        bool p_ok = std::abs(p.mean - 0.5) <= 3 * p.se;
        bool t_ok = std::abs(t.mean - M_PI / 8) <= 3 * t.se;
        pass = p_ok && t_ok;
        return fmt("pair %.6f+-%.6f (0.5), triple %.6f+-%.6f (%.6f)", p.mean, p.se, t.mean, t.se,
                   M_PI / 8);
    });

    run.criterion(2, "quermassintegrals", [&](bool& pass) {
        auto qb = quermassintegrals(ball);
        auto qc = quermassintegrals(cube);
        pass = close_rel(qb.V, 4 * M_PI / 3, 1e-12) && close_rel(qb.F, 4 * M_PI, 1e-12) &&
               close_rel(qb.M, 4 * M_PI, 1e-12) && close_rel(qc.V, 1.0, 1e-12) &&
               close_rel(qc.F, 6.0, 1e-12) && close_rel(qc.M, 3 * M_PI, 1e-12);
        return fmt("ball (%.12f, %.12f, %.12f), cube (%.12f, %.12f, %.12f)", qb.V, qb.F, qb.M,
                   qc.V, qc.F, qc.M);
    });

    run.criterion(3, "crofton baselines", [&](bool& pass) {
        pass = true;
        double worst = 0;
        auto check = [&](const auto& body) {
            for (const auto& r : crofton_baselines(body, mega)) {
                double rel = std::abs(r.lhs.value - r.rhs.value) / std::abs(r.rhs.value);
                worst = std::max(worst, rel);
                if (rel > 0.01) pass = false;
            }
        };
        check(ball);
        check(cube);
        check(tetra);
        return fmt("15 identities, worst relative error %.4f (tol 0.01)", worst);
    });

    run.criterion(4, "theorem 1 (pairs)", [&](bool& pass) {
        auto rc = verify_thm1(cube, mega);
        double target = 7 * M_PI * M_PI;
        bool cube_ok = close_rel(rc.rhs.value, target, 0.02) && rc.pass;
        auto rb = verify_thm1(ball, mega);
        bool ball_ok = std::abs(rb.rhs.value - rb.lhs.value) <= 1e-8 &&
                       std::abs(rb.rhs.value - 16 * std::pow(M_PI, 3) / 3) <= 1e-8;
        pass = cube_ok && ball_ok;
        return fmt("cube mc %.4f vs 7pi^2 %.4f; ball quad |diff| %.2e", rc.rhs.value, target,
                   std::abs(rb.rhs.value - rb.lhs.value));
    });

    run.criterion(5, "theorem 2 (triples)", [&](bool& pass) {
        McConfig outer{42, 100'000, 10'000};
        auto r = verify_thm2(cube, outer, 1000);
        double target = 27 * std::pow(M_PI, 3) - std::pow(M_PI, 4);
        pass = close_rel(r.rhs.value, target, 0.03) && r.pass;
        return fmt("cube nested mc %.3f vs %.3f (tol 3%%)", r.rhs.value, target);
    });

    run.criterion(6, "theorem 3 (slices)", [&](bool& pass) {
        auto rb = verify_thm3(ball, mega);
        double target = 32 * std::pow(M_PI, 3) / 3;
        bool ball_ok = std::abs(rb.lhs.value - rb.rhs.value) <= 1e-6 &&
                       std::abs(rb.lhs.value - target) <= 1e-6;
        auto rc = verify_thm3(cube, mega);
        bool cube_ok = close_rel(rc.lhs.value, rc.rhs.value, 0.02);
        pass = ball_ok && cube_ok;
        return fmt("ball quad |diff| %.2e; cube lhs %.4f rhs %.4f",
                   std::abs(rb.lhs.value - rb.rhs.value), rc.lhs.value, rc.rhs.value);
    });

    run.criterion(7, "theorem 4 (inequality)", [&](bool& pass) {
        auto rb = verify_thm4(ball, mega);
        double target = 16 * std::pow(M_PI, 3) / 3;
        bool ball_ok = std::abs(rb.lhs.value - rb.rhs.value) <= 0.01 * target;
        auto rc = verify_thm4(cube, mega);
        bool cube_ok = rc.pass && rc.sigma_residual > 5;
        pass = ball_ok && cube_ok;
        return fmt("ball |diff| %.4f (tol %.4f); cube margin %.1f sigma",
                   std::abs(rb.lhs.value - rb.rhs.value), 0.01 * target, rc.sigma_residual);
    });

    run.criterion(8, "crofton-herglotz", [&](bool& pass) {
        auto rb = verify_herglotz(ball, mega);
        bool ball_ok = std::abs(rb.lhs.value - rb.rhs.value) <= 1e-6;
        auto rc = verify_herglotz(cube, mega);
        bool cube_ok = close_rel(rc.lhs.value, rc.rhs.value, 0.02);
        pass = ball_ok && cube_ok;
        return fmt("ball quad |diff| %.2e; cube mc %.3f vs %.3f",
                   std::abs(rb.lhs.value - rb.rhs.value), rc.lhs.value, rc.rhs.value);
    });

    run.criterion(9, "centroids proposition", [&](bool& pass) {
        auto oct = oracles::octant();
        Vec3 c = centroid(oct), cd = centroid_dual(oct), want{M_PI / 4, M_PI / 4, M_PI / 4};
        bool oct_ok = norm(c - want) <= 1e-12 && norm(cd - want) <= 1e-12;
        bool dual_ok = true;
        Rng rng(2718, 0);
        for (int i = 0; i < 20; ++i) {
            auto poly = oracles::random_spherical_polygon(rng);
            if (norm(centroid_dual(poly) - centroid(dual(poly))) > 1e-9) dual_ok = false;
        }
        double res = frenet_identity_residual(make_cap_circle({0, 0, 1}, M_PI / 4, 10'000));
        double res_half = frenet_identity_residual(make_cap_circle({0, 0, 1}, M_PI / 4, 5'000));
        bool frenet_ok = res < 1e-6 && res_half / res > 3.0 && res_half / res < 5.0;
        pass = oct_ok && dual_ok && frenet_ok;
        return fmt("octant |c-want| %.1e; 20 dual routes ok=%d; residual %.2e (ratio %.2f)",
                   norm(c - want), int(dual_ok), res, res_half / res);
    });

    run.criterion(10, "alpha coherence", [&](bool& pass) {
        bool caps_exact = true;
        for (double w = 0.1; w <= M_PI / 2 + 1e-12; w += 0.1) {
            SphericalCap cap(Vec3{0, 0, 1}, std::min(w, M_PI / 2));
            if (!close_rel(alpha_closed(cap), cap_alpha(cap.omega), 1e-12)) caps_exact = false;
        }
        bool mc_ok = true;
        double worst_sig = 0;
        for (double w : {M_PI / 6, M_PI / 4, M_PI / 3}) {
            SphericalCap cap(Vec3{0, 0, 1}, w);
            auto est = alpha_mc(cap, mega);
            double sig = std::abs(est.mean - cap_alpha(w)) / est.se;
            worst_sig = std::max(worst_sig, sig);
            if (sig > 3) mc_ok = false;
        }
        Rng rng(31415, 0);
        for (int i = 0; i < 20; ++i) {
            auto poly = oracles::random_spherical_polygon(rng);
            auto est = alpha_mc(poly, mega);
            double sig = std::abs(est.mean - alpha_closed(poly)) / est.se;
            worst_sig = std::max(worst_sig, sig);
            if (sig > 3) mc_ok = false;
        }
        // planar alpha and beta proportional to w - sin w across three w
        McConfig pcfg{42, 2'000'000, 10'000};
        std::vector<double> ra, rb, sa, sb;
        for (double w : {0.5, 1.0, 2.0}) {
            double ref = w - std::sin(w);
            auto a = planar_alpha(w, pcfg);
            auto b = planar_beta(w, pcfg);
            ra.push_back(a.mean / ref);
            sa.push_back(a.se / ref);
            rb.push_back(b.mean / ref);
            sb.push_back(b.se / ref);
        }
        bool planar_ok = true;
        for (std::size_t i = 0; i < ra.size(); ++i)
            for (std::size_t j = i + 1; j < ra.size(); ++j) {
                if (std::abs(ra[i] - ra[j]) > 3 * std::hypot(sa[i], sa[j])) planar_ok = false;
                if (std::abs(rb[i] - rb[j]) > 3 * std::hypot(sb[i], sb[j])) planar_ok = false;
            }
        pass = caps_exact && mc_ok && planar_ok;
        return fmt("caps exact=%d; worst mc residual %.2f sigma; planar ratios %.4f/%.4f/%.4f",
                   int(caps_exact), worst_sig, ra[0], ra[1], ra[2]);
    });

    run.criterion(11, "beta decomposition", [&](bool& pass) {
        McConfig cfg{42, 2'000'000, 10'000};
        pass = true;
        double worst = 0;
        auto check = [&](auto region) {
            auto b = beta_mc(region, cfg);
            auto g = gamma_mc(region, cfg);
            double rhs = M_PI * M_PI / 2 * alpha_closed(region) + g.mean;
            double sig = std::abs(b.mean - rhs) / std::hypot(b.se, g.se);
            worst = std::max(worst, sig);
            if (sig > 3) pass = false;
        };
        check(SphericalCap(Vec3{0, 0, 1}, M_PI / 6));
        check(SphericalCap(Vec3{0, 0, 1}, M_PI / 4));
        check(SphericalCap(Vec3{0, 0, 1}, M_PI / 3));
        check(oracles::octant());
        return fmt("caps pi/6, pi/4, pi/3 and octant; worst residual %.2f sigma", worst);
    });

    run.criterion(12, "constant width formulas", [&](bool& pass) {
        auto cw = constant_width_bounds(2.0, 1.0);
        double ball_ll = 32 * std::pow(M_PI, 3) / 3;
        bool eq_ok = close_rel(cw.slice_sq_upper, ball_ll, 1e-12) && cw.remark2_lower == 0.0 &&
                     cw.remark2_upper == 0.0;
        double root = constant_width_positivity_root();
        bool root_ok = std::abs(root - 0.657) <= 1e-3;
        pass = eq_ok && root_ok;
        return fmt("c=1 bound %.6f (= 32pi^3/3), remark2 (%.1e, %.1e), root %.6f",
                   cw.slice_sq_upper, cw.remark2_lower, cw.remark2_upper, root);
    });

    run.criterion(13, "determinism", [&](bool& pass) {
        auto go = [&](const std::string& args, const std::string& jsonl,
                      const std::string& out) {
            std::string cmd = std::string(CROFTON_CLI_PATH) + " " + args + " --json " + jsonl +
                              " > " + out + " 2>/dev/null";
            return std::system(cmd.c_str()) == 0;
        };
        bool ran =
            go("verify thm1 --builtin cube --samples 200000 --seed 11 --threads 1",
               "/tmp/crofton_acc_t1.jsonl", "/tmp/crofton_acc_t1.out") &&
            go("verify thm1 --builtin cube --samples 200000 --seed 11 --threads 8",
               "/tmp/crofton_acc_t8.jsonl", "/tmp/crofton_acc_t8.out") &&
            go("verify baselines --builtin ball --samples 200000 --seed 11 --threads 2",
               "/tmp/crofton_acc_b2.jsonl", "/tmp/crofton_acc_b2.out") &&
            go("verify baselines --builtin ball --samples 200000 --seed 11 --threads 7",
               "/tmp/crofton_acc_b7.jsonl", "/tmp/crofton_acc_b7.out");
        std::string a = slurp("/tmp/crofton_acc_t1.jsonl");
        std::string b = slurp("/tmp/crofton_acc_t8.jsonl");
        std::string c = slurp("/tmp/crofton_acc_b2.jsonl");
        std::string d = slurp("/tmp/crofton_acc_b7.jsonl");
        pass = ran && !a.empty() && a == b && !c.empty() && c == d;
        return fmt("thm1 bytes %zu==%zu, baselines bytes %zu==%zu", a.size(), b.size(), c.size(),
                   d.size());
    });

    std::printf("%d of 13 criteria passed\n", 13 - run.failures);
    return run.failures == 0 ? 0 : 1;
}
