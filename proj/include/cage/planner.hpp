#pragma once

// Grid-resolved congruence analysis over SE(2): free configuration
// space, congruence classes (connected components of the free grid under
// certified short moves), minimal simple-move counts between placements,
// and scene classification.
//
// Nodes are grid cell poses plus the query poses; candidate edges
// between two poses are the log branches |k| <= k_max of their relative
// pose, accepted when the sweep certifier returns Free.  Reachability
// and ell are therefore certified upper bounds; any non-reachability or
// lower-bound claim is relative to the grid and branch cap.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cage/geometry.hpp"
#include "cage/sweep.hpp"

namespace cage {

struct PoseGrid {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    int nx = 0, ny = 0, ntheta = 0;
    int k_max = 2;

    double dx() const { return (x_hi - x_lo) / nx; }
    double dy() const { return (y_hi - y_lo) / ny; }
    double dtheta() const;

    size_t cell_count() const { return size_t(nx) * ny * ntheta; }
    size_t index(int ix, int iy, int it) const {
        return (size_t(ix) * ny + iy) * ntheta + it;
    }
    void decode(size_t idx, int& ix, int& iy, int& it) const {
        it = int(idx % ntheta);
        idx /= ntheta;
        iy = int(idx % ny);
        ix = int(idx / ny);
    }

    // Node coordinates: x_i = x_lo + i*dx (likewise y), theta_j = j*dtheta.
    // Doubling nx/ny/ntheta keeps every existing node, so refining the
    // grid can only shorten reported paths.
    double cell_x(int ix) const { return x_lo + ix * dx(); }
    double cell_y(int iy) const { return y_lo + iy * dy(); }
    double cell_theta(int it) const { return it * dtheta(); }

    // Cell pose anchors the object's centroid at the cell point, so the
    // single-bin rotation neighbor (about the centroid) stays in-cell.
    Pose2 cell_pose(int ix, int iy, int it, const Vec2& centroid) const;

    // Throws std::invalid_argument on bad counts ("grid needs nx,ny >= 2
    // and ntheta >= 4") or insufficient extent ("grid does not cover
    // cage": ranges must contain the cage bounding box inflated by the
    // object diameter).
    void validate(const Scene& scene) const;

    std::string describe() const;
};

struct FreeSpace {
    PoseGrid grid;
    Vec2 anchor;                 // object centroid used by cell poses
    std::vector<uint8_t> free;   // 1 iff the cell pose is collision-free
};

struct Components {
    std::vector<int32_t> label;  // per cell; -1 where not free
    int count = 0;
};

struct EdgeWitness {
    Twist2 twist;
    int branch = 0;
};

struct EscapeReport {
    bool reachable = false;
    int ell = -1;                // minimal number of simple moves; 0 iff from == to
    PiecewiseMove moves;         // present iff reachable; certified Free
    Pose2 from_pose;
    Pose2 to_pose;               // for exterior escapes: the reached pose
    std::string resolution_note;
};

struct CagingClassification {
    enum class Verdict { CongruentSet, CompleteCagingSet, DissociatedAt };
    Verdict verdict = Verdict::CongruentSet;
    int component_count = 1;
    int ell0 = 0;  // meaningful iff DissociatedAt
};

// How candidate edges are validated: the sweep certifier (planner) or
// 4096-point dense sampling (the brute-force oracle).
enum class EdgeCheck { Certified, DenseSampled };

inline constexpr int kOracleSamples = 4096;

FreeSpace build_free_space(const Scene& scene, const PoseGrid& grid);

// First certified-free log branch of b relative to a, in branch order
// 0, +1, -1, +2, -2, ...; empty when every branch collides (or carries
// no screw).
std::optional<EdgeWitness> edge_exists(const Scene& scene, const Pose2& a, const Pose2& b,
                                       int k_max, EdgeCheck check = EdgeCheck::Certified);

// Union-find over the +-x, +-y, +-theta cell neighborhood; cells join
// when the connecting short move (one-cell translation, or one-bin
// rotation about the object centroid) certifies Free.
Components connected_components(const FreeSpace& fs, const Scene& scene);

// Breadth-first search for the minimal number of simple moves from
// `from` to `to` (both collision-free, else "query pose not in K^c").
EscapeReport min_simple_moves(const Scene& scene, const Pose2& from, const Pose2& to,
                              const PoseGrid& grid);

// Same contract evaluated with dense-sampled edges and no certifier;
// the independent oracle for tests and --oracle mode.
EscapeReport brute_force_min_moves(const Scene& scene, const Pose2& from, const Pose2& to,
                                   const PoseGrid& grid);

// BFS to the nearest free cell whose posed object lies entirely outside
// the cage bounding circle inflated by one object diameter.  Throws
// "grid has no exterior" when no such cell exists.
EscapeReport escape_to_exterior(const Scene& scene, const Pose2& from, const PoseGrid& grid);

// Complete caging when the free grid splits into >= 2 classes; else
// dissociated at ell0 when some landmark pose pair needs >= ell0 moves;
// else a congruent set.  Landmarks are the extreme free cells of each
// component (min/max of ix, iy, itheta, ix+iy).
CagingClassification classify_caging(const Scene& scene, const PoseGrid& grid, int ell0);

}  // namespace cage
