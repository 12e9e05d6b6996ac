// Posa rotations, END-set closure, incremental longest-path growth,
// fresh-choice boosting, the staged Hamiltonicity pipeline, and exact
// small-n oracles.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "uag/graph.hpp"
#include "uag/rng.hpp"
#include "uag/vertex_subset.hpp"

namespace uag {

struct RotationState {
    std::vector<int> path;  // vertex sequence, anchor first
    int anchor = 0;
    VertexSubset end_set;   // END(path, anchor); empty until closed
    // endpoint -> pivots of the rotation sequence (applied to `path` in
    // order) that realizes it as the free endpoint.
    std::unordered_map<int, std::vector<int>> pivot_sequences;
};

// x0..xi xt xt-1..xi+1: pivot must lie on the path, be adjacent to the free
// endpoint, and not be the free endpoint's path neighbor.
std::vector<int> rotate_path(const UagGraph& g, const std::vector<int>& path, int pivot);

// Same transformation on a state; the END closure is dropped (recompute via
// end_set if needed).
RotationState rotate(const UagGraph& g, const RotationState& state, int pivot);

// Breadth-first closure over rotations keeping `anchor` fixed. Exact: the
// search explores distinct paths, not just distinct endpoints (two paths
// sharing a free endpoint can enable different onward rotations). Intended
// for small graphs; throws if the path family outgrows an internal cap.
RotationState end_set(const UagGraph& g, const std::vector<int>& path, int anchor);

// Path of equal length realizing `endpoint` as the free end, rebuilt by
// replaying the recorded rotations.
std::vector<int> witness_path(const UagGraph& g, const RotationState& state, int endpoint);

// |N(END(P,a))| < 2|END(P,a)|. Caller asserts the path is a longest path.
bool check_end_expansion(const UagGraph& g, const RotationState& state);

struct HamiltonCertificate {
    std::vector<int> cycle;  // cyclic vertex order on [n]
};

// True iff cycle is a permutation of [n], n >= 3, with every cyclically
// consecutive pair an edge of g.
bool verify_certificate(const UagGraph& g, const HamiltonCertificate& cert);

struct CloseOrExtendResult {
    enum class Kind { certificate, longer_path, noop };
    Kind kind = Kind::noop;
    HamiltonCertificate certificate;  // kind == certificate
    std::vector<int> path;            // kind == longer_path
    std::string reason;               // kind == noop
};

// new_edge must join the anchor to an END member and be present in g. Closes
// the witness cycle; a spanning cycle is returned as a certificate, otherwise
// an edge leaving the cycle yields a strictly longer path.
CloseOrExtendResult close_or_extend(const UagGraph& g, const RotationState& state,
                                    std::pair<int, int> new_edge);

struct PathTrajectory {
    int n = 0, k = 0;
    int t0 = 0;                      // floor(sqrt(n))
    std::vector<int> lengths;        // lengths[t] for t in [1, n], in vertices
    std::vector<std::uint8_t> events;  // events[t]: vertex t+1 chose inside END(P_t, a_t)
    std::vector<int> end_sizes;      // |END(P_t, a_t)| per step, for diagnostics
};

// One-at-a-time exposure with k choices per vertex; the tracked path extends
// exactly when the arriving vertex chooses a member of the current END set.
PathTrajectory grow_longest_path_incremental(int n, int k, const RngSpec& rng);

struct GrowthRun {
    UagGraph graph;
    std::vector<int> path;
    int anchor = 0;
    PathTrajectory trajectory;
};
GrowthRun grow_longest_path_run(int n, int k, const RngSpec& rng);

struct BoostResult {
    std::optional<HamiltonCertificate> certificate;
    UagGraph graph;          // input graph plus all fresh edges drawn
    std::vector<int> path;   // tracked path at exit (unset when certified)
    int anchor = 0;
    int exposures = 0;
};

// One boost stage: repeatedly expose the largest not-yet-exposed endpoint
// reachable by rotations (anchored view of the tracked path), drawing k fresh
// choices; a choice hitting the opposite END set closes or extends.
BoostResult boost_with_fresh_choices(const UagGraph& g, std::vector<int> path,
                                     int anchor, int k, const RngSpec& rng);
// Convenience overload: tracks a path grown greedily from vertex 1.
BoostResult boost_with_fresh_choices(const UagGraph& g, int k, const RngSpec& rng);

struct StagedHamiltonResult {
    std::optional<HamiltonCertificate> certificate;
    UagGraph graph;  // the union of all stages' edges
    std::vector<int> stage_path_lengths;  // tracked-path length after each stage
    int stages_run = 0;
    int n = 0;
};

// Stage 0 grows a path in G_{n,stages[0]}; each later stage boosts with
// stages[i] fresh choices per exposure. Failure is a legitimate report.
StagedHamiltonResult staged_hamilton(int n, const std::vector<int>& stages,
                                     const RngSpec& rng);

// Bitmask dynamic program, exact for n <= 18; refuses larger inputs.
bool exact_hamiltonicity(const UagGraph& g);

}  // namespace uag
