#include "cage/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "cage/parallel.hpp"

namespace cage {

namespace {

constexpr double kTau = 6.28318530717958647692;
constexpr double kPoseEqTol = 1e-12;
constexpr double kEndpointTol = 1e-6;

double pose_distance(const Pose2& a, const Pose2& b) {
    double d = max_abs_diff(a.rotation, b.rotation);
    d = std::max(d, std::abs(a.translation.x - b.translation.x));
    d = std::max(d, std::abs(a.translation.y - b.translation.y));
    return d;
}

bool poses_equal(const Pose2& a, const Pose2& b) {
    return pose_distance(a, b) <= kPoseEqTol;
}

// Fixed-block parallel scan returning the first index whose eval is
// true.  Block boundaries are independent of the worker count, so the
// returned index is deterministic.
template <typename Eval>
size_t first_match(size_t n, Eval&& eval, size_t block = 256) {
    std::vector<uint8_t> hit;
    for (size_t begin = 0; begin < n; begin += block) {
        const size_t len = std::min(block, n - begin);
        hit.assign(len, 0);
        parallel_for(len, [&](size_t j) { hit[j] = eval(begin + j) ? 1 : 0; }, 16);
        for (size_t j = 0; j < len; ++j)
            if (hit[j]) return begin + j;
    }
    return SIZE_MAX;
}

struct DisjointSet {
    std::vector<int32_t> parent;

    explicit DisjointSet(size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int32_t find(int32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

bool pose_collides(const Scene& scene, const Pose2& p, std::vector<Vec2>& scratch) {
    transform_points(p, scene.object.vertices, scratch);
    return intersects(scratch, scene.cage);
}

// Nodes, poses and masks shared by the BFS entry points.
struct BfsSpace {
    const Scene& scene;
    FreeSpace fs;
    std::vector<size_t> cells;      // free cell indices, ascending (lex in ix,iy,itheta)
    std::vector<Pose2> poses;       // pose per entry of `cells`

    explicit BfsSpace(const Scene& scene_, FreeSpace fs_) : scene(scene_), fs(std::move(fs_)) {
        for (size_t i = 0; i < fs.free.size(); ++i)
            if (fs.free[i]) cells.push_back(i);
        poses.resize(cells.size());
        const Vec2 anchor = fs.anchor;
        parallel_for(cells.size(), [&](size_t p) {
            int ix, iy, it;
            fs.grid.decode(cells[p], ix, iy, it);
            poses[p] = fs.grid.cell_pose(ix, iy, it, anchor);
        });
    }
};

struct BfsHit {
    int ell = -1;
    std::vector<Twist2> segments;
    int32_t target_pos = -1;  // free-cell position, or -1 for the query target pose
};

// Level-synchronous BFS.  Each level first sweeps direct edges into the
// target (pose or cell mask) so the search never expands deeper than the
// answer; expansion then discovers the next level among unvisited
// non-target cells.  Expansion and sweeps run as deterministic parallel
// maps; all tie-breaking is by ascending cell index.
std::optional<BfsHit> bfs_min_moves(const BfsSpace& sp, const Pose2& from,
                                    const Pose2* to_pose,
                                    const std::vector<uint8_t>* target_mask, int k_max,
                                    EdgeCheck check) {
    const size_t n = sp.cells.size();
    std::vector<uint8_t> visited(n, 0);
    std::vector<int32_t> parent(n, -1);   // -2 marks the from-node
    std::vector<Twist2> via(n);
    std::vector<int32_t> level;           // free-cell positions; -2 = from-node
    level.push_back(-2);

    auto pose_of = [&](int32_t node) -> const Pose2& {
        return node == -2 ? from : sp.poses[node];
    };

    auto trace = [&](int32_t node, std::vector<Twist2> tail) {
        std::vector<Twist2> segs;
        while (node != -2) {
            segs.push_back(via[node]);
            node = parent[node];
        }
        std::reverse(segs.begin(), segs.end());
        for (auto& t : tail) segs.push_back(t);
        return segs;
    };

    std::vector<EdgeWitness> slots(n);
    std::vector<uint8_t> has_edge(n);
    int depth = 0;

    while (!level.empty()) {
        // Sweep: direct edges from this level into the target.
        if (to_pose) {
            const size_t v_hit = first_match(level.size(), [&](size_t vi) {
                auto w = edge_exists(sp.scene, pose_of(level[vi]), *to_pose, k_max, check);
                if (w) slots[vi] = *w;
                return w.has_value();
            });
            if (v_hit != SIZE_MAX)
                return BfsHit{depth + 1, trace(level[v_hit], {slots[v_hit].twist}), -1};
        } else {
            std::vector<int32_t> targets;
            for (size_t p = 0; p < n; ++p)
                if (!visited[p] && (*target_mask)[p]) targets.push_back(int32_t(p));
            for (const int32_t v : level) {
                const size_t u_hit = first_match(targets.size(), [&](size_t ui) {
                    auto w = edge_exists(sp.scene, pose_of(v), sp.poses[targets[ui]],
                                         k_max, check);
                    if (w) slots[ui] = *w;
                    return w.has_value();
                });
                if (u_hit != SIZE_MAX)
                    return BfsHit{depth + 1, trace(v, {slots[u_hit].twist}),
                                  targets[u_hit]};
            }
        }

        // Expansion: discover the next level.
        std::vector<int32_t> next;
        for (const int32_t v : level) {
            std::vector<int32_t> cand;
            cand.reserve(n);
            for (size_t p = 0; p < n; ++p)
                if (!visited[p] && !(target_mask && (*target_mask)[p]))
                    cand.push_back(int32_t(p));
            parallel_for(cand.size(), [&](size_t i) {
                auto w = edge_exists(sp.scene, pose_of(v), sp.poses[cand[i]], k_max, check);
                has_edge[i] = w.has_value();
                if (w) slots[i] = *w;
            });
            for (size_t i = 0; i < cand.size(); ++i) {
                if (!has_edge[i]) continue;
                const int32_t p = cand[i];
                visited[p] = 1;
                parent[p] = v;
                via[p] = slots[i].twist;
                next.push_back(p);
            }
        }
        level = std::move(next);
        ++depth;
    }
    return std::nullopt;
}

std::string edge_note(EdgeCheck check) {
    return check == EdgeCheck::Certified
               ? "edges certified by adaptive sweep; reachability and ell are "
                 "certified upper bounds; non-reachability claims are relative "
                 "to this grid and branch cap"
               : "oracle mode: edges accepted by 4096-point dense sampling; "
                 "grid semantics as in certified mode";
}

EscapeReport run_min_moves(const Scene& scene, const Pose2& from, const Pose2& to,
                           const PoseGrid& grid, EdgeCheck check) {
    BfsSpace sp(scene, build_free_space(scene, grid));
    std::vector<Vec2> scratch;
    if (pose_collides(scene, from, scratch) || pose_collides(scene, to, scratch))
        throw std::invalid_argument("query pose not in K^c");

    EscapeReport rep;
    rep.from_pose = from;
    rep.to_pose = to;
    rep.resolution_note = grid.describe() + "; " + edge_note(check);
    rep.moves.start = from;

    if (poses_equal(from, to)) {
        rep.reachable = true;
        rep.ell = 0;
        return rep;
    }
    auto hit = bfs_min_moves(sp, from, &to, nullptr, grid.k_max, check);
    if (hit) {
        rep.reachable = true;
        rep.ell = hit->ell;
        rep.moves.segments = std::move(hit->segments);
    }
    return rep;
}

}  // namespace

double PoseGrid::dtheta() const { return kTau / ntheta; }

Pose2 PoseGrid::cell_pose(int ix, int iy, int it, const Vec2& centroid) const {
    const Mat2 R = Mat2::rotation(cell_theta(it));
    const Vec2 xy{cell_x(ix), cell_y(iy)};
    return Pose2{R, xy - R * centroid};
}

void PoseGrid::validate(const Scene& scene) const {
    if (nx < 2 || ny < 2 || ntheta < 4)
        throw std::invalid_argument("grid needs nx,ny >= 2 and ntheta >= 4");
    if (k_max < 0)
        throw std::invalid_argument("grid k_max must be >= 0");
    if (!(x_hi > x_lo) || !(y_hi > y_lo))
        throw std::invalid_argument("grid ranges must be non-empty");
    Aabb box = cage_bounding_box(scene.cage);
    if (box.empty()) return;
    box.inflate(polygon_diameter(scene.object));
    if (box.lo.x < x_lo || box.hi.x > x_hi || box.lo.y < y_lo || box.hi.y > y_hi)
        throw std::runtime_error("grid does not cover cage");
}

std::string PoseGrid::describe() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "grid %dx%dx%d over [%g,%g]x[%g,%g], k_max %d", nx, ny,
                  ntheta, x_lo, x_hi, y_lo, y_hi, k_max);
    return buf;
}

FreeSpace build_free_space(const Scene& scene, const PoseGrid& grid) {
    grid.validate(scene);
    FreeSpace fs;
    fs.grid = grid;
    fs.anchor = polygon_centroid(scene.object);
    fs.free.assign(grid.cell_count(), 0);
    parallel_for(grid.cell_count(), [&](size_t idx) {
        thread_local std::vector<Vec2> scratch;
        int ix, iy, it;
        grid.decode(idx, ix, iy, it);
        const Pose2 p = grid.cell_pose(ix, iy, it, fs.anchor);
        transform_points(p, scene.object.vertices, scratch);
        fs.free[idx] = intersects(scratch, scene.cage) ? 0 : 1;
    });
    return fs;
}

std::optional<EdgeWitness> edge_exists(const Scene& scene, const Pose2& a, const Pose2& b,
                                       int k_max, EdgeCheck check) {
    const Pose2 rel = compose(b, inverse(a));
    for (int i = 0; i <= 2 * k_max; ++i) {
        const int k = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);  // 0, +1, -1, +2, -2, ...
        const auto tw = try_log_pose(rel, k);
        if (!tw) continue;
        // Guard against ill-conditioned branch solves: the move must
        // really land on b.
        if (pose_distance(compose(exp_twist(*tw, 1.0), a), b) > kEndpointTol) continue;
        const SimpleMove m{*tw, a};
        const bool ok = check == EdgeCheck::Certified
                            ? certify_simple_move(scene, m).is_free()
                            : dense_sample_free(scene, m, kOracleSamples);
        if (ok) return EdgeWitness{*tw, k};
    }
    return std::nullopt;
}

Components connected_components(const FreeSpace& fs, const Scene& scene) {
    const PoseGrid& grid = fs.grid;
    const size_t n = grid.cell_count();
    // Forward neighbor moves per cell: +x, +y, +theta (the reverse
    // directions are the same edges seen from the neighbor).
    std::vector<uint8_t> ok(n * 3, 0);
    parallel_for(n, [&](size_t idx) {
        if (!fs.free[idx]) return;
        int ix, iy, it;
        grid.decode(idx, ix, iy, it);
        const Pose2 at = grid.cell_pose(ix, iy, it, fs.anchor);
        for (int d = 0; d < 3; ++d) {
            int jx = ix + (d == 0 ? 1 : 0);
            int jy = iy + (d == 1 ? 1 : 0);
            int jt = it + (d == 2 ? 1 : 0);
            if (jx >= grid.nx || jy >= grid.ny) continue;
            jt %= grid.ntheta;
            if (!fs.free[grid.index(jx, jy, jt)]) continue;
            Twist2 tw;
            if (d == 0) tw = Twist2{{grid.dx(), 0.0}, 0.0};
            else if (d == 1) tw = Twist2{{0.0, grid.dy()}, 0.0};
            else {
                // One-bin rotation about the anchored centroid.
                const Vec2 c{grid.cell_x(ix), grid.cell_y(iy)};
                const double w = grid.dtheta();
                tw = Twist2{{w * c.y, -w * c.x}, w};
            }
            if (certify_simple_move(scene, {tw, at}).is_free()) ok[idx * 3 + d] = 1;
        }
    });

    DisjointSet dsu(n);
    for (size_t idx = 0; idx < n; ++idx) {
        if (!fs.free[idx]) continue;
        int ix, iy, it;
        grid.decode(idx, ix, iy, it);
        for (int d = 0; d < 3; ++d) {
            if (!ok[idx * 3 + d]) continue;
            const int jx = ix + (d == 0 ? 1 : 0);
            const int jy = iy + (d == 1 ? 1 : 0);
            const int jt = (it + (d == 2 ? 1 : 0)) % grid.ntheta;
            dsu.unite(int32_t(idx), int32_t(grid.index(jx, jy, jt)));
        }
    }

    Components comps;
    comps.label.assign(n, -1);
    std::vector<int32_t> rename(n, -1);
    for (size_t idx = 0; idx < n; ++idx) {
        if (!fs.free[idx]) continue;
        const int32_t root = dsu.find(int32_t(idx));
        if (rename[root] < 0) rename[root] = comps.count++;
        comps.label[idx] = rename[root];
    }
    return comps;
}

EscapeReport min_simple_moves(const Scene& scene, const Pose2& from, const Pose2& to,
                              const PoseGrid& grid) {
    return run_min_moves(scene, from, to, grid, EdgeCheck::Certified);
}

EscapeReport brute_force_min_moves(const Scene& scene, const Pose2& from, const Pose2& to,
                                   const PoseGrid& grid) {
    return run_min_moves(scene, from, to, grid, EdgeCheck::DenseSampled);
}

EscapeReport escape_to_exterior(const Scene& scene, const Pose2& from, const PoseGrid& grid) {
    BfsSpace sp(scene, build_free_space(scene, grid));
    std::vector<Vec2> scratch;
    if (pose_collides(scene, from, scratch))
        throw std::invalid_argument("query pose not in K^c");

    const Circle circ = cage_bounding_circle(scene.cage);
    const double reach = circ.radius + polygon_diameter(scene.object);
    auto fully_outside = [&](const Pose2& p) {
        thread_local std::vector<Vec2> verts;
        transform_points(p, scene.object.vertices, verts);
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < verts.size(); ++i)
            best = std::min(best, point_segment_distance(circ.center, verts[i],
                                                         verts[(i + 1) % verts.size()]));
        // Center inside the posed object means not outside at all.
        if (point_in_polygon(circ.center, verts)) return false;
        return best > reach;
    };

    EscapeReport rep;
    rep.from_pose = from;
    rep.to_pose = from;
    rep.resolution_note = grid.describe() + "; " + edge_note(EdgeCheck::Certified);
    rep.moves.start = from;

    if (fully_outside(from)) {
        rep.reachable = true;
        rep.ell = 0;
        return rep;
    }

    std::vector<uint8_t> mask(sp.cells.size(), 0);
    parallel_for(sp.cells.size(), [&](size_t p) { mask[p] = fully_outside(sp.poses[p]); });
    if (std::find(mask.begin(), mask.end(), 1) == mask.end())
        throw std::runtime_error("grid has no exterior");

    auto hit = bfs_min_moves(sp, from, nullptr, &mask, grid.k_max, EdgeCheck::Certified);
    if (hit) {
        rep.reachable = true;
        rep.ell = hit->ell;
        rep.moves.segments = std::move(hit->segments);
        rep.to_pose = sp.poses[hit->target_pos];
    }
    return rep;
}

CagingClassification classify_caging(const Scene& scene, const PoseGrid& grid, int ell0) {
    if (ell0 < 1)
        throw std::invalid_argument("ell0 must be >= 1");
    BfsSpace sp(scene, build_free_space(scene, grid));
    const Components comps = connected_components(sp.fs, scene);

    CagingClassification out;
    out.component_count = comps.count;
    if (comps.count >= 2) {
        out.verdict = CagingClassification::Verdict::CompleteCagingSet;
        return out;
    }
    if (comps.count == 0) {
        // No free cell at this resolution; vacuously congruent.
        out.verdict = CagingClassification::Verdict::CongruentSet;
        return out;
    }

    // Landmarks: extreme free cells of the component (min/max of ix, iy,
    // itheta, ix+iy; ties broken by cell index).
    const size_t npos = sp.cells.size();
    auto key = [&](size_t p, int which) {
        int ix, iy, it;
        sp.fs.grid.decode(sp.cells[p], ix, iy, it);
        switch (which) {
            case 0: return ix;
            case 1: return iy;
            case 2: return it;
            default: return ix + iy;
        }
    };
    std::vector<size_t> marks;
    for (int which = 0; which < 4; ++which) {
        size_t lo = 0, hi = 0;
        for (size_t p = 1; p < npos; ++p) {
            if (key(p, which) < key(lo, which)) lo = p;
            if (key(p, which) > key(hi, which)) hi = p;
        }
        marks.push_back(lo);
        marks.push_back(hi);
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    for (size_t i = 0; i < marks.size(); ++i) {
        for (size_t j = i + 1; j < marks.size(); ++j) {
            auto hit = bfs_min_moves(sp, sp.poses[marks[i]], &sp.poses[marks[j]], nullptr,
                                     grid.k_max, EdgeCheck::Certified);
            if (!hit || hit->ell >= ell0) {
                out.verdict = CagingClassification::Verdict::DissociatedAt;
                out.ell0 = ell0;
                return out;
            }
        }
    }
    out.verdict = CagingClassification::Verdict::CongruentSet;
    return out;
}

}  // namespace cage
