// Command-line front end: load bodies, compute quermassintegrals and solid
// angles, run the identity verifiers, and emit JSON-lines reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "crofton/crofton.hpp"
#include "crofton/json_io.hpp"

namespace {

using namespace crofton;

using Body = std::variant<ConvexPolytope, Ball>;

struct Options {
    std::string builtin = "cube";
    std::string body_path;
    double radius = 1.0;
    double samples = 1e6;
    std::uint64_t seed = 42;
    std::uint64_t chunk = 10'000;
    std::uint64_t inner = 1000;
    double rtrunc = 20.0;
    int threads = 0;
    std::string json_path;
    std::string csv_path;
};

std::vector<Vec3> cube_points() {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({double(i & 1), double((i >> 1) & 1), double((i >> 2) & 1)});
    return pts;
}

std::vector<Vec3> tetrahedron_points() {
    return {{0, 0, 0},
            {1, 0, 0},
            {0.5, std::sqrt(3.0) / 2, 0},
            {0.5, std::sqrt(3.0) / 6, std::sqrt(6.0) / 3}};
}

Body make_body(const Options& opt) {
    if (!opt.body_path.empty()) return load_polytope_json(opt.body_path);
    if (opt.builtin == "ball") return Ball({0, 0, 0}, opt.radius);
    if (opt.builtin == "cube") return build_polytope(cube_points());
    if (opt.builtin == "tetrahedron") return build_polytope(tetrahedron_points());
    throw DomainError("unknown builtin body: " + opt.builtin);
}

PlanarConvexPolygon make_planar_body(const Options& opt) {
    if (opt.builtin == "ball") return PlanarConvexPolygon::regular_ngon(64, opt.radius);
    if (opt.builtin == "tetrahedron")
        return PlanarConvexPolygon::from_ordered({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    return PlanarConvexPolygon::from_ordered({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

ordered_json body_descriptor(const Options& opt) {
    ordered_json j;
    if (!opt.body_path.empty()) {
        j["file"] = opt.body_path;
    } else {
        j["builtin"] = opt.builtin;
        if (opt.builtin == "ball") j["r"] = opt.radius;
    }
    return j;
}

McConfig make_config(const Options& opt) {
    McConfig cfg;
    cfg.seed = opt.seed;
    cfg.samples = std::uint64_t(opt.samples);
    cfg.chunk = std::min<std::uint64_t>(opt.chunk, cfg.samples);
    cfg.validate();
    return cfg;
}

// The manifest fully determines the output; the worker count is absent by
// design since results are invariant to it.
ordered_json manifest(const Options& opt, const std::string& command,
                      const std::string& detail = "") {
    ordered_json j;
    j["command"] = command;
    if (!detail.empty()) j["verifier"] = detail;
    j["body"] = body_descriptor(opt);
    j["seed"] = opt.seed;
    j["samples"] = std::uint64_t(opt.samples);
    j["chunk"] = opt.chunk;
    j["inner"] = opt.inner;
    j["rtrunc"] = opt.rtrunc;
    return ordered_json{{"manifest", j}};
}

class Emitter {
public:
    explicit Emitter(const Options& opt) {
        if (!opt.json_path.empty()) {
            file_.open(opt.json_path);
            if (!file_) throw Error("cannot open output file: " + opt.json_path);
        }
        if (!opt.csv_path.empty()) {
            csv_.open(opt.csv_path);
            if (!csv_) throw Error("cannot open csv file: " + opt.csv_path);
            csv_ << "name,lhs,rhs,se_lhs,se_rhs,sigma_residual,tail,pass\n";
        }
    }

    void line(const ordered_json& j) {
        std::string s = j.dump();
        std::cout << s << "\n";
        if (file_) file_ << s << "\n";
    }

    void report(const VerifierReport& r) {
        line(to_json(r));
        if (csv_) {
            csv_ << r.name << "," << r.lhs.value << "," << r.rhs.value << "," << r.lhs.se << ","
                 << r.rhs.se << "," << r.sigma_residual << ","
                 << (r.lhs.tail ? *r.lhs.tail : (r.rhs.tail ? *r.rhs.tail : 0.0)) << ","
                 << (r.pass ? 1 : 0) << "\n";
        }
    }

private:
    std::ofstream file_;
    std::ofstream csv_;
};

int cmd_body(const Options& opt) {
    Emitter out(opt);
    Body body = make_body(opt);
    QuermassTriple q = std::visit([](const auto& b) { return quermassintegrals(b); }, body);
    out.line(to_json(q));
    return 0;
}

int cmd_solid_angle(const Options& opt, const std::vector<double>& point) {
    Emitter out(opt);
    if (point.size() != 3) throw DomainError("--point needs three coordinates");
    Vec3 p{point[0], point[1], point[2]};
    Body body = make_body(opt);
    ordered_json j;
    if (std::holds_alternative<Ball>(body)) {
        auto cap = solid_angle_ball(std::get<Ball>(body), p);
        j["area"] = area(cap);
        j["alpha"] = alpha_closed(cap);
        j["cap"] = {{"axis", {cap.axis.x, cap.axis.y, cap.axis.z}}, {"omega", cap.omega}};
    } else {
        auto region = solid_angle(std::get<ConvexPolytope>(body), p);
        j["area"] = area(region);
        j["alpha"] = alpha_closed(region);
        ordered_json verts = ordered_json::array();
        for (const auto& v : region.vertices()) verts.push_back({v.x, v.y, v.z});
        j["vertices"] = verts;
    }
    out.line(j);
    return 0;
}

int cmd_verify(const Options& opt, const std::string& name) {
    Emitter out(opt);
    McConfig cfg = make_config(opt);
    std::vector<VerifierReport> reports;

    if (name == "constants") {
        auto p = sphere_constant_pair(cfg, opt.threads);
        reports.push_back(make_report("sphere_constant_pair", VerifierSide::from_mc(p),
                                      VerifierSide::from_exact(0.5), 0.0, cfg.seed,
                                      "mean |<u,v>|; anchors the value 2*pi^2"));
        auto t = sphere_constant_triple(cfg, opt.threads);
        reports.push_back(make_report("sphere_constant_triple", VerifierSide::from_mc(t),
                                      VerifierSide::from_exact(M_PI / 8), 0.0, cfg.seed,
                                      "mean |det|; anchors the value pi^4"));
    } else if (name == "planar") {
        reports.push_back(verify_planar_crofton(make_planar_body(opt), cfg, opt.threads, opt.rtrunc));
    } else {
        Body body = make_body(opt);
        auto visit = [&](auto&& fn) { std::visit(fn, body); };
        if (name == "baselines") {
            visit([&](const auto& b) { reports = crofton_baselines(b, cfg, opt.threads); });
        } else if (name == "lemma1") {
            visit([&](const auto& b) {
                reports.push_back(lemma1_consistency(b, cfg, opt.threads, opt.rtrunc));
            });
        } else if (name == "thm1") {
            visit([&](const auto& b) {
                reports.push_back(verify_thm1(b, cfg, opt.threads, opt.rtrunc));
            });
        } else if (name == "thm2") {
            visit([&](const auto& b) {
                reports.push_back(verify_thm2(b, cfg, opt.inner, opt.threads, opt.rtrunc));
            });
        } else if (name == "thm3") {
            visit([&](const auto& b) {
                reports.push_back(verify_thm3(b, cfg, opt.threads, opt.rtrunc));
            });
        } else if (name == "thm4") {
            visit([&](const auto& b) {
                reports.push_back(verify_thm4(b, cfg, opt.threads, opt.rtrunc));
            });
        } else if (name == "herglotz") {
            visit([&](const auto& b) {
                reports.push_back(verify_herglotz(b, cfg, opt.threads, opt.rtrunc));
            });
        } else {
            throw DomainError("unknown verifier: " + name);
        }
    }

    out.line(manifest(opt, "verify", name));
    bool all_pass = true;
    for (const auto& r : reports) {
        out.report(r);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integral geometry of convex bodies: solid angles, set functions, "
                 "Crofton identities"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd, bool mc_flags) {
        cmd->add_option("--builtin", opt.builtin, "builtin body: ball, cube, tetrahedron")
            ->check(CLI::IsMember({"ball", "cube", "tetrahedron"}));
        cmd->add_option("--body", opt.body_path, "polytope JSON file with a points array");
        cmd->add_option("--r", opt.radius, "ball radius");
        cmd->add_option("--json", opt.json_path, "write JSON lines to this file as well");
        cmd->add_option("--csv", opt.csv_path, "write a CSV summary");
        if (mc_flags) {
            cmd->add_option("--samples", opt.samples, "Monte Carlo samples");
            cmd->add_option("--seed", opt.seed, "RNG seed");
            cmd->add_option("--chunk", opt.chunk, "samples per deterministic chunk");
            cmd->add_option("--inner", opt.inner, "inner triple budget (thm2)");
            cmd->add_option("--rtrunc", opt.rtrunc, "truncation radius in circumradii");
            cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
        }
    };

    auto* body_cmd = app.add_subcommand("body", "print V, F, M of a body");
    add_common(body_cmd, false);

    auto* sa_cmd = app.add_subcommand("solid-angle", "solid angle of a body from a point");
    add_common(sa_cmd, false);
    std::vector<double> point;
    sa_cmd->add_option("--point", point, "exterior point x y z")->expected(3);

    auto* verify_cmd = app.add_subcommand("verify", "run an identity verifier");
    add_common(verify_cmd, true);
    std::string verifier;
    verify_cmd
        ->add_option("name", verifier,
                     "thm1, thm2, thm3, thm4, herglotz, baselines, lemma1, planar, constants")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (body_cmd->parsed()) return cmd_body(opt);
        if (sa_cmd->parsed()) return cmd_solid_angle(opt, point);
        if (verify_cmd->parsed()) return cmd_verify(opt, verifier);
    } catch (const PointInsideBody& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
