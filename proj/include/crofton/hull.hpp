#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "crofton/errors.hpp"
#include "crofton/vec.hpp"

namespace crofton::detail {

struct HullFaces {
    std::vector<Vec3> vertices;               // hull vertices, lexicographically sorted
    std::vector<std::vector<int>> face_loops; // CCW seen from outside
    std::vector<Vec3> face_normals;           // unit outward
};

inline bool lex_less(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

inline std::uint64_t edge_key(int a, int b) {
    return (std::uint64_t(std::uint32_t(a)) << 32) | std::uint32_t(b);
}

// Incremental convex hull of a 3D point set, with coplanar-triangle merging
// so faces come out as maximal polygons. Insertion order is lexicographic,
// which also serves as the tie-break rule.
class HullBuilder {
public:
    HullFaces build(std::vector<Vec3> pts) {
        if (pts.size() < 4) throw DegenerateInput("hull: need at least 4 points");
        std::sort(pts.begin(), pts.end(), lex_less);

        // scale-aware tolerance
        Vec3 lo = pts.front(), hi = pts.front();
        for (const auto& p : pts) {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
        }
        scale_ = 0.5 * norm(hi - lo);
        if (scale_ == 0) throw DegenerateInput("hull: all points coincide");
        eps_ = 1e-9 * scale_;

        pts.erase(std::unique(pts.begin(), pts.end(),
                              [&](const Vec3& a, const Vec3& b) { return norm(a - b) <= eps_; }),
                  pts.end());
        if (pts.size() < 4) throw DegenerateInput("hull: fewer than 4 distinct points");
        pts_ = std::move(pts);

        seed_tetrahedron();
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            if (!used_in_seed(i)) insert_point(int(i));
        }
        return assemble();
    }

private:
    struct Tri {
        int a, b, c;
        Vec3 n;      // unit outward
        double off;  // <n, x> = off on the plane
        bool alive = true;
    };

    std::vector<Vec3> pts_;
    std::vector<Tri> tris_;
    Vec3 interior_{};
    int seed_[4] = {-1, -1, -1, -1};
    double scale_ = 0, eps_ = 0;

    bool used_in_seed(std::size_t i) const {
        return int(i) == seed_[0] || int(i) == seed_[1] || int(i) == seed_[2] || int(i) == seed_[3];
    }

    void seed_tetrahedron() {
        int i0 = 0;
        int i1 = -1;
        double best = eps_;
        for (std::size_t i = 1; i < pts_.size(); ++i) {
            double d = norm(pts_[i] - pts_[i0]);
            if (d > best) { best = d; i1 = int(i); }
        }
        if (i1 < 0) throw DegenerateInput("hull: points coincide");

        Vec3 d01 = pts_[i1] - pts_[i0];
        int i2 = -1;
        best = eps_ * norm(d01);
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            double d = norm(cross(d01, pts_[i] - pts_[i0]));
            if (d > best) { best = d; i2 = int(i); }
        }
        if (i2 < 0) throw DegenerateInput("hull: points are collinear");

        Vec3 n = cross(d01, pts_[i2] - pts_[i0]);
        int i3 = -1;
        best = eps_ * norm(n);
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            double d = std::abs(dot(n, pts_[i] - pts_[i0]));
            if (d > best) { best = d; i3 = int(i); }
        }
        if (i3 < 0) throw DegenerateInput("hull: points are coplanar");

        seed_[0] = i0; seed_[1] = i1; seed_[2] = i2; seed_[3] = i3;
        interior_ = (pts_[i0] + pts_[i1] + pts_[i2] + pts_[i3]) / 4.0;

        add_tri(i0, i1, i2);
        add_tri(i0, i2, i3);
        add_tri(i0, i3, i1);
        add_tri(i1, i3, i2);
    }

    void add_tri(int a, int b, int c) {
        Tri t{a, b, c, {}, 0, true};
        Vec3 n = cross(pts_[b] - pts_[a], pts_[c] - pts_[a]);
        double ln = norm(n);
        if (ln <= eps_ * scale_) {
            // Degenerate sliver; orient by center as fallback.
            n = pts_[a] + pts_[b] + pts_[c] - interior_ * 3.0;
            ln = norm(n);
        }
        n = n / ln;
        if (dot(n, pts_[a] - interior_) < 0) {
            std::swap(t.b, t.c);
            n = -n;
        }
        t.n = n;
        t.off = dot(n, pts_[t.a]);
        tris_.push_back(t);
    }

    static std::uint64_t ekey(int a, int b) { return edge_key(a, b); }

    void insert_point(int pi) {
        const Vec3 p = pts_[pi];
        std::vector<int> visible;
        for (std::size_t t = 0; t < tris_.size(); ++t) {
            if (!tris_[t].alive) continue;
            if (dot(tris_[t].n, p) - tris_[t].off > eps_) visible.push_back(int(t));
        }
        if (visible.empty()) return;  // interior or on-boundary within tolerance

        std::unordered_set<std::uint64_t> vis_edges;
        for (int t : visible) {
            const Tri& tr = tris_[t];
            vis_edges.insert(ekey(tr.a, tr.b));
            vis_edges.insert(ekey(tr.b, tr.c));
            vis_edges.insert(ekey(tr.c, tr.a));
        }
        std::vector<std::pair<int, int>> horizon;
        for (int t : visible) {
            const Tri& tr = tris_[t];
            const int e[3][2] = {{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}};
            for (auto& ed : e) {
                if (!vis_edges.count(ekey(ed[1], ed[0]))) horizon.push_back({ed[0], ed[1]});
            }
        }
        for (int t : visible) tris_[t].alive = false;
        for (auto& ed : horizon) add_tri(ed.first, ed.second, pi);
    }

    HullFaces assemble() {
        std::vector<int> alive;
        for (std::size_t t = 0; t < tris_.size(); ++t)
            if (tris_[t].alive) alive.push_back(int(t));

        // adjacency across directed edges
        std::unordered_map<std::uint64_t, int> owner;
        for (int t : alive) {
            const Tri& tr = tris_[t];
            owner[ekey(tr.a, tr.b)] = t;
            owner[ekey(tr.b, tr.c)] = t;
            owner[ekey(tr.c, tr.a)] = t;
        }
        auto neighbor = [&](int a, int b) -> int {
            auto it = owner.find(ekey(b, a));
            return it == owner.end() ? -1 : it->second;
        };

        // group coplanar triangles (BFS over adjacency)
        std::unordered_map<int, int> group_of;
        std::vector<std::vector<int>> groups;
        const double cos_tol = 1e-10;
        for (int t : alive) {
            if (group_of.count(t)) continue;
            int g = int(groups.size());
            groups.push_back({});
            std::vector<int> stack{t};
            group_of[t] = g;
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                groups[g].push_back(cur);
                const Tri& tr = tris_[cur];
                const int e[3][2] = {{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}};
                for (auto& ed : e) {
                    int nb = neighbor(ed[0], ed[1]);
                    if (nb < 0 || group_of.count(nb)) continue;
                    const Tri& tn = tris_[nb];
                    if (dot(tr.n, tn.n) > 1.0 - cos_tol &&
                        std::abs(dot(tr.n, pts_[tn.a]) - tr.off) < 10 * eps_) {
                        group_of[nb] = g;
                        stack.push_back(nb);
                    }
                }
            }
        }

        // boundary loop of each group
        HullFaces out;
        std::vector<std::vector<int>> loops;
        std::vector<Vec3> normals;
        for (const auto& g : groups) {
            std::unordered_set<int> members(g.begin(), g.end());
            std::unordered_map<int, int> next;  // boundary directed edges a -> b
            Vec3 area_vec{};
            for (int t : g) {
                const Tri& tr = tris_[t];
                area_vec += cross(pts_[tr.b] - pts_[tr.a], pts_[tr.c] - pts_[tr.a]);
                const int e[3][2] = {{tr.a, tr.b}, {tr.b, tr.c}, {tr.c, tr.a}};
                for (auto& ed : e) {
                    int nb = neighbor(ed[0], ed[1]);
                    if (nb < 0 || !members.count(nb)) next[ed[0]] = ed[1];
                }
            }
            if (next.empty()) continue;
            int start = next.begin()->first;
            for (const auto& kv : next) start = std::min(start, kv.first);
            std::vector<int> loop;
            int cur = start;
            do {
                loop.push_back(cur);
                auto it = next.find(cur);
                if (it == next.end()) throw DegenerateInput("hull: open face boundary");
                cur = it->second;
            } while (cur != start && loop.size() <= next.size());
            if (cur != start) throw DegenerateInput("hull: face boundary did not close");

            prune_collinear(loop);
            if (loop.size() < 3) continue;
            loops.push_back(loop);
            normals.push_back(normalized(area_vec));
        }

        // compact vertices, lexicographic order
        std::vector<int> used;
        {
            std::unordered_set<int> seen;
            for (const auto& l : loops)
                for (int v : l)
                    if (seen.insert(v).second) used.push_back(v);
        }
        std::sort(used.begin(), used.end(),
                  [&](int a, int b) { return lex_less(pts_[a], pts_[b]); });
        std::unordered_map<int, int> remap;
        for (std::size_t i = 0; i < used.size(); ++i) remap[used[i]] = int(i);

        out.vertices.reserve(used.size());
        for (int v : used) out.vertices.push_back(pts_[v]);
        for (auto& l : loops) {
            for (int& v : l) v = remap[v];
            // canonical rotation: start at smallest index
            auto mn = std::min_element(l.begin(), l.end());
            std::rotate(l.begin(), mn, l.end());
        }
        out.face_loops = std::move(loops);
        out.face_normals = std::move(normals);
        return out;
    }

    void prune_collinear(std::vector<int>& loop) {
        bool changed = true;
        while (changed && loop.size() > 3) {
            changed = false;
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Vec3& u = pts_[loop[(i + loop.size() - 1) % loop.size()]];
                const Vec3& v = pts_[loop[i]];
                const Vec3& w = pts_[loop[(i + 1) % loop.size()]];
                Vec3 d = w - u;
                double dl = norm(d);
                double dist = dl <= eps_ ? 0.0 : norm(cross(d, v - u)) / dl;
                if (dist <= eps_) {
                    loop.erase(loop.begin() + long(i));
                    changed = true;
                    break;
                }
            }
        }
    }
};

}  // namespace crofton::detail
