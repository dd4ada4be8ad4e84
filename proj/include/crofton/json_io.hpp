#pragma once

// JSON envelope for reports and body files. Kept separate so the core
// headers do not depend on the vendored json library.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "crofton/convex_body.hpp"
#include "crofton/measures.hpp"

namespace crofton {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const VerifierSide& s) {
    ordered_json j;
    if (s.exact) {
        j["exact"] = s.value;
    } else {
        j["mean"] = s.value;
        j["se"] = s.se;
        j["samples"] = s.samples;
        if (s.tail)
            j["tail"] = *s.tail;
        else
            j["tail"] = nullptr;
    }
    return j;
}

inline ordered_json to_json(const VerifierReport& r) {
    ordered_json j;
    j["name"] = r.name;
    j["lhs"] = to_json(r.lhs);
    j["rhs"] = to_json(r.rhs);
    j["sigma_residual"] = std::isfinite(r.sigma_residual) ? ordered_json(r.sigma_residual)
                                                          : ordered_json(nullptr);
    j["rel_tol"] = r.rel_tol;
    j["abs_tol"] = r.abs_tol;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    j["notes"] = r.notes;
    return j;
}

inline ordered_json to_json(const QuermassTriple& q) {
    ordered_json j;
    j["V"] = q.V;
    j["F"] = q.F;
    j["M"] = q.M;
    return j;
}

// Body file format: {"points": [[x,y,z], ...]}; the hull is always rebuilt.
inline ConvexPolytope load_polytope_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open body file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (!j.contains("points") || !j["points"].is_array())
        throw Error("body file must contain a \"points\" array");
    std::vector<Vec3> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 3) throw Error("each point must be [x, y, z]");
        pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    return build_polytope(pts);
}

}  // namespace crofton
