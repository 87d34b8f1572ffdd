#pragma once

#include "subtile/golden.hpp"
#include "subtile/symbolic.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

namespace subtile {

// Tilings of the line by two interval tiles, arrayed in the order of a
// Fibonacci symbolic sequence (rule a -> b, b -> ab). Letters reuse the
// Fibonacci alphabet indices: 0 = "a" (the A tile), 1 = "b" (the B tile).

inline constexpr Letter kTileA = 0;
inline constexpr Letter kTileB = 1;

// Prototile lengths. Both must be strictly positive.
struct TileSpec {
    Golden len_a;
    Golden len_b;

    TileSpec(Golden a, Golden b);
    const Golden& length(Letter l) const { return l == kTileA ? len_a : len_b; }
    bool operator==(const TileSpec& o) const {
        return len_a == o.len_a && len_b == o.len_b;
    }
};

// len_a + tau * len_b: equality of this value is exactly the hypothesis
// under which two tile specs give conjugate tiling systems.
Golden length_invariant(const TileSpec& spec);

// Level-k supertile lengths (A_k, B_k): A_{k+1} = B_k, B_{k+1} = A_k + B_k.
std::pair<Golden, Golden> level_lengths(const TileSpec& spec, int k);

// One hierarchy step: the level-k supertile is child `index` of a
// level-(k+1) supertile carrying `parent`.
struct TowerStep {
    Letter parent;
    int index;

    bool operator==(const TowerStep& o) const {
        return parent == o.parent && index == o.index;
    }
};

// Shared, append-only parent chain: a base letter plus one TowerStep per
// level. Steps beyond the forced prefix are chosen by the policy, each
// level's choice a pure function of (seed, level), so the chain is a fixed
// infinite object that queries merely materialize. Every tiling holding a
// spine therefore agrees with every other holder on all combinatorial
// choices, past and future; deepening is idempotent and mutex-protected.
class Spine {
public:
    enum class Policy {
        seeded,   // coin per level among the legal parents
        leftmost, // always child 0: left edges of all supertiles coincide
        rightmost // always the last child: right edges coincide (base must be b)
    };

    Spine(Letter base, std::vector<TowerStep> forced, Policy policy,
          std::uint64_t seed);

    Letter base() const { return base_; }
    Policy policy() const { return policy_; }
    std::uint64_t seed() const { return seed_; }

    // Letter of the level-k supertile (level 0 is the base).
    Letter letter_at(int k) const;
    // Step k joins level k to level k+1.
    TowerStep step_at(int k) const;
    // Levels materialized so far (forced prefix counts).
    int materialized() const;

private:
    void ensure(int levels) const; // callers hold mu_

    Letter base_;
    Policy policy_;
    std::uint64_t seed_;
    mutable std::vector<TowerStep> steps_;
    mutable std::mutex mu_;
};

// A tiling of the line with a hierarchical anchor. Canonical coordinates
// put the left edge of the spine's base supertile at 0; `shift` translates
// the whole tiling, so boundary coordinates are canonical ones plus shift.
// `depth` counts how many subdivision rounds separate the spine's levels
// from the tiling's tile level: the spine's level-j supertile is the
// tiling's level-(j+depth) supertile (substitution raises depth by one).
//
// A glued tiling carries a second, left spine: the right spine (policy
// leftmost) tiles [shift, +inf) and the left spine (policy rightmost)
// tiles (-inf, shift], so the junction at `shift` stays an endpoint of
// supertiles of arbitrarily high level — a designated persistent boundary.
class LineTiling {
public:
    static LineTiling seeded(TileSpec spec, std::uint64_t seed);
    static LineTiling with_tower(TileSpec spec, Letter base,
                                 std::vector<TowerStep> forced,
                                 Spine::Policy policy, std::uint64_t seed);
    static LineTiling glued(TileSpec spec, Letter right_base = kTileA);

    const TileSpec& spec() const { return spec_; }
    const Golden& shift() const { return shift_; }
    int depth() const { return depth_; }
    bool is_glued() const { return left_ != nullptr; }
    // The designated junction coordinate of a glued tiling.
    std::optional<Golden> persistent_boundary() const;

    // Letter of the tiling-level-k supertile on the (right) tower; levels
    // below `depth` descend the all-leftmost path inside the spine's base.
    Letter tower_letter(int k) const;
    TowerStep tower_step(int k) const;

    const std::shared_ptr<Spine>& right_spine() const { return right_; }
    const std::shared_ptr<Spine>& left_spine() const { return left_; }

    LineTiling with_shift(Golden s) const;
    LineTiling with_spec_and_shift(TileSpec spec, Golden s) const;
    LineTiling subdivided(TileSpec spec, Golden s) const; // depth + 1

private:
    LineTiling(std::shared_ptr<Spine> right, std::shared_ptr<Spine> left,
               TileSpec spec, Golden shift, int depth);

    std::shared_ptr<Spine> right_;
    std::shared_ptr<Spine> left_; // non-null only for glued tilings
    TileSpec spec_;
    Golden shift_;
    int depth_;
};

// Same hierarchy and placement: spines with equal generator state (base,
// policy, seed) and no conflicting materialized step, plus equal spec,
// shift, and depth. Two parses of one serialized document compare equal.
// (Distinct hierarchies may still describe equal tilings; this is the
// representational check used for fast paths.)
bool identical(const LineTiling& x, const LineTiling& y);

// sigma^alpha: all boundaries move by alpha.
LineTiling translate(const LineTiling& x, const Golden& alpha);

struct PlacedTile {
    Letter letter;
    Golden left;
    Golden right;
};

// The tiles whose closed extent meets [lo, hi], left to right.
std::vector<PlacedTile> segment(const LineTiling& x, const Golden& lo,
                                const Golden& hi);

// Offset of the origin inside the tile containing it (left edge distance),
// in [0, tile length).
Golden origin_offset(const LineTiling& x);

// Sorted exact boundary coordinates within [-H, H], endpoints included.
struct BoundarySet {
    std::vector<Golden> pts;
};

BoundarySet boundary_points(const LineTiling& x, const Golden& H);

// Exact two-sided Hausdorff distance of two finite point sets. Throws
// std::invalid_argument("Hausdorff undefined on empty set").
Golden hausdorff(const BoundarySet& A, const BoundarySet& B);

// sup over integer n >= 1 of (1/n) * hausdorff of the two boundary sets
// clipped to [-n, n]. Exact: the iteration stops at the first n >= L (the
// larger of the four tile lengths) with L < n * (running max), at which
// point every later term is strictly below the running max. Windows too
// short to contain a boundary are skipped.
Golden tiling_metric(const LineTiling& x, const LineTiling& y);

// Reference comparator: plain maximum of the same terms over n = 1..n_max.
Golden brute_metric(const LineTiling& x, const LineTiling& y, int n_max);

// Image of x in the system with tile lengths Y, holding the hierarchy
// fixed and aligning supertile midpoints level by level. The returned
// offset is the depth-N partial sum of the exact per-level corrections,
// with N chosen so the certified tail bound C / tau^N falls below eps;
// thus the offset is within eps of the limit. Requires
// length_invariant(x.spec()) == length_invariant(Y) exactly, else throws
// std::runtime_error("not conjugate: length invariants differ").
// Glued tilings map junction to junction exactly (the closed-form limit).
LineTiling conjugate(const LineTiling& x, const TileSpec& Y, const Golden& eps);

// The depth-N anchor corrections gamma_0..gamma_{n_levels} of the same
// series (conjugate's offset is shift + gamma_N at its chosen N).
std::vector<Golden> conjugacy_approximants(const LineTiling& x, const TileSpec& Y,
                                           int n_levels);

// C with |limit - gamma_N| <= C / tau^N: C = |len_a(X)-len_a(Y)| * tau^2 / 2.
Golden conjugacy_tail_constant(const TileSpec& X, const TileSpec& Y);

// One subdivision round: boundaries scale by tau and each tile splits per
// the rule; defined for self-similar specs (len_b == tau * len_a), where
// the level-(k+1) lengths are exactly tau times the level-k ones.
LineTiling substitute(const LineTiling& x);

// The substitution conjugated into the system Y: map to the self-similar
// spec with the same invariant, substitute, map back. The combinatorial
// layer is exact; offsets carry the two conjugacies' eps guarantees.
struct ConjugatedSubstitution {
    TileSpec y_spec;
    TileSpec x_spec; // self-similar, same invariant
    Golden eps;

    LineTiling operator()(const LineTiling& y) const;
};

ConjugatedSubstitution conjugated_substitution(const TileSpec& Y, const Golden& eps);

// d( psi(sigma^alpha y), sigma^(alpha*tau) psi(y) ): the commutation
// residual of the conjugated substitution at translation alpha.
Golden commutation_residual(const ConjugatedSubstitution& psi, const LineTiling& y,
                            const Golden& alpha);

// Two tilings over X with identical boundaries on [-R, R] (shared tower
// through the level whose supertile covers the window) whose images under
// the conjugacy to Y differ by the exact translation t: above the shared
// prefix one tower continues rightmost, the other leftmost, and the two
// infinite correction series sum in closed form, giving
// t = -d * (-1/tau)^K with d = (len_a(X) - len_a(Y)) / tau and K the
// divergence level. |t| > 0 whenever the specs differ. `extra_levels`
// shared padding steps raise the divergence level by exactly that amount
// above the first branch-ready level covering the window.
struct NonSbcWitness {
    LineTiling x;
    LineTiling x_prime;
    Golden t;
    int divergence_level;
};

NonSbcWitness non_sbc_witness(const TileSpec& X, const TileSpec& Y, const Golden& R,
                              int extra_levels = 0);

// Smallest rung R0 * tau^j whose worst-case witness translation falls
// below eps: pairs agreeing on [-R, R] have image offsets within |t|.
struct ModulusProbe {
    Golden R;
    int rungs;
    Golden worst_t_abs;
};

ModulusProbe modulus_probe(const TileSpec& X, const TileSpec& Y, const Golden& eps,
                           const Golden& R0, int max_rungs = 256);

// Serialization view of the hierarchy: (level, letter, child index) for
// levels 0..levels-1; the top letter is tower_letter(levels).
struct AddressTriple {
    int level;
    Letter letter;
    int child_index;
};

std::vector<AddressTriple> address_view(const LineTiling& x, int levels);

} // namespace subtile
