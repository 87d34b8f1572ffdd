#include "subtile/line_tiling.hpp"

#include "subtile/rng.hpp"

#include <algorithm>
#include <span>
#include <stdexcept>
#include <utility>

namespace subtile {

namespace {

// Tower growth budget; level-k lengths grow like tau^k, so hitting this
// means a horizon beyond any test's reach (or a stalled one-sided tower).
constexpr int kLevelCap = 400;

const std::vector<Letter>& expansion(Letter l) {
    static const std::vector<Letter> ea{kTileB};          // a -> b
    static const std::vector<Letter> eb{kTileA, kTileB};  // b -> ab
    return l == kTileA ? ea : eb;
}

Letter leftmost_child(Letter l) { return l == kTileA ? kTileB : kTileA; }

const Golden& len_of(const std::pair<Golden, Golden>& lens, Letter l) {
    return l == kTileA ? lens.first : lens.second;
}

void advance_lengths(std::pair<Golden, Golden>& lens) {
    Golden na = lens.second;
    Golden nb = lens.first + lens.second;
    lens.first = std::move(na);
    lens.second = std::move(nb);
}

} // namespace

TileSpec::TileSpec(Golden a, Golden b) : len_a(std::move(a)), len_b(std::move(b)) {
    if (len_a.sign() <= 0 || len_b.sign() <= 0)
        throw std::invalid_argument("tile lengths must be positive");
}

Golden length_invariant(const TileSpec& spec) {
    return spec.len_a + Golden::tau() * spec.len_b;
}

std::pair<Golden, Golden> level_lengths(const TileSpec& spec, int k) {
    if (k < 0) throw std::invalid_argument("negative level");
    std::pair<Golden, Golden> lens{spec.len_a, spec.len_b};
    for (int i = 0; i < k; ++i) advance_lengths(lens);
    return lens;
}

Spine::Spine(Letter base, std::vector<TowerStep> forced, Policy policy,
             std::uint64_t seed)
    : base_(base), policy_(policy), seed_(seed), steps_(std::move(forced)) {
    if (base_ != kTileA && base_ != kTileB)
        throw std::invalid_argument("tower base letter out of range");
    Letter cur = base_;
    for (const TowerStep& s : steps_) {
        if (s.parent != kTileA && s.parent != kTileB)
            throw std::invalid_argument("tower step letter out of range");
        const auto& kids = expansion(s.parent);
        if (s.index < 0 || s.index >= static_cast<int>(kids.size()))
            throw std::invalid_argument("tower step index out of range");
        if (kids[s.index] != cur)
            throw std::invalid_argument("tower step inconsistent with the expansion rule");
        cur = s.parent;
    }
}

void Spine::ensure(int levels) const {
    if (levels > kLevelCap)
        throw std::runtime_error("tower extension budget exceeded");
    while (static_cast<int>(steps_.size()) < levels) {
        int k = static_cast<int>(steps_.size());
        Letter cur = k == 0 ? base_ : steps_.back().parent;
        TowerStep s{kTileB, 0};
        if (cur == kTileA) {
            s = {kTileB, 0}; // a occurs only as b's first child
        } else {
            switch (policy_) {
            case Policy::seeded:
                s = Rng::derive(seed_, static_cast<std::uint64_t>(k)).below(2) == 0
                        ? TowerStep{kTileA, 0}
                        : TowerStep{kTileB, 1};
                break;
            case Policy::leftmost:
                s = {kTileA, 0};
                break;
            case Policy::rightmost:
                s = {kTileB, 1};
                break;
            }
        }
        steps_.push_back(s);
    }
}

Letter Spine::letter_at(int k) const {
    if (k < 0) throw std::invalid_argument("negative level");
    if (k == 0) return base_;
    std::lock_guard<std::mutex> lk(mu_);
    ensure(k);
    return steps_[k - 1].parent;
}

TowerStep Spine::step_at(int k) const {
    if (k < 0) throw std::invalid_argument("negative level");
    std::lock_guard<std::mutex> lk(mu_);
    ensure(k + 1);
    return steps_[k];
}

int Spine::materialized() const {
    std::lock_guard<std::mutex> lk(mu_);
    return static_cast<int>(steps_.size());
}

LineTiling::LineTiling(std::shared_ptr<Spine> right, std::shared_ptr<Spine> left,
                       TileSpec spec, Golden shift, int depth)
    : right_(std::move(right)), left_(std::move(left)), spec_(std::move(spec)),
      shift_(std::move(shift)), depth_(depth) {}

LineTiling LineTiling::seeded(TileSpec spec, std::uint64_t seed) {
    Rng rng(seed);
    Letter base = static_cast<Letter>(rng.below(2));
    std::uint64_t spine_seed = rng.next();
    long long num = static_cast<long long>(rng.below(1u << 20));
    // origin lands inside the base tile: shift in (-base length, 0]
    Golden shift = -(spec.length(base) * Golden(BigRat(num, 1 << 20)));
    auto spine = std::make_shared<Spine>(base, std::vector<TowerStep>{},
                                         Spine::Policy::seeded, spine_seed);
    return LineTiling(std::move(spine), nullptr, std::move(spec), std::move(shift), 0);
}

LineTiling LineTiling::with_tower(TileSpec spec, Letter base,
                                  std::vector<TowerStep> forced,
                                  Spine::Policy policy, std::uint64_t seed) {
    auto spine = std::make_shared<Spine>(base, std::move(forced), policy, seed);
    return LineTiling(std::move(spine), nullptr, std::move(spec), Golden(0), 0);
}

LineTiling LineTiling::glued(TileSpec spec, Letter right_base) {
    auto right = std::make_shared<Spine>(right_base, std::vector<TowerStep>{},
                                         Spine::Policy::leftmost, 0);
    auto left = std::make_shared<Spine>(kTileB, std::vector<TowerStep>{},
                                        Spine::Policy::rightmost, 0);
    return LineTiling(std::move(right), std::move(left), std::move(spec), Golden(0), 0);
}

std::optional<Golden> LineTiling::persistent_boundary() const {
    if (!is_glued()) return std::nullopt;
    return shift_;
}

Letter LineTiling::tower_letter(int k) const {
    if (k < 0) throw std::invalid_argument("negative level");
    if (k >= depth_) return right_->letter_at(k - depth_);
    Letter l = right_->base();
    for (int j = depth_; j > k; --j) l = leftmost_child(l);
    return l;
}

TowerStep LineTiling::tower_step(int k) const {
    if (k < 0) throw std::invalid_argument("negative level");
    if (k >= depth_) return right_->step_at(k - depth_);
    return {tower_letter(k + 1), 0};
}

LineTiling LineTiling::with_shift(Golden s) const {
    return LineTiling(right_, left_, spec_, std::move(s), depth_);
}

LineTiling LineTiling::with_spec_and_shift(TileSpec spec, Golden s) const {
    return LineTiling(right_, left_, std::move(spec), std::move(s), depth_);
}

LineTiling LineTiling::subdivided(TileSpec spec, Golden s) const {
    return LineTiling(right_, left_, std::move(spec), std::move(s), depth_ + 1);
}

namespace {

// Equal as infinite chains: same generator state and no conflicting
// materialized step. Steps past both prefixes regenerate identically
// because each level's policy choice is a pure function of (seed, level).
bool same_chain(const std::shared_ptr<Spine>& a, const std::shared_ptr<Spine>& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->base() != b->base() || a->policy() != b->policy() ||
        a->seed() != b->seed())
        return false;
    int m = std::max(a->materialized(), b->materialized());
    for (int k = 0; k < m; ++k)
        if (!(a->step_at(k) == b->step_at(k))) return false;
    return true;
}

} // namespace

bool identical(const LineTiling& x, const LineTiling& y) {
    return same_chain(x.right_spine(), y.right_spine()) &&
           same_chain(x.left_spine(), y.left_spine()) &&
           x.spec() == y.spec() && x.shift() == y.shift() && x.depth() == y.depth();
}

LineTiling translate(const LineTiling& x, const Golden& alpha) {
    return x.with_shift(x.shift() + alpha);
}

namespace {

// Left edge and level of the first supertile of the spine whose extent
// covers [lo, hi], in the spine's own canonical coordinates (base tile's
// left edge at 0). `depth` maps spine level j to tile level j + depth.
std::pair<int, Golden> cover(const Spine& sp, const TileSpec& spec, int depth,
                             const Golden& lo, const Golden& hi) {
    Golden E(0);
    auto lens = level_lengths(spec, depth);
    for (int j = 0;; ++j) {
        Letter l = sp.letter_at(j);
        if (E <= lo && E + len_of(lens, l) >= hi) return {j, E};
        if (j >= kLevelCap)
            throw std::runtime_error("tower does not reach the horizon");
        TowerStep s = sp.step_at(j);
        if (s.index == 1) E -= lens.first; // the only left sibling is the a child
        advance_lengths(lens);
    }
}

// Emit the level-0 tiles of the level-k supertile `letter` at `left` that
// meet [lo, hi]; subtrees wholly outside the window are pruned.
void descend(const std::vector<std::pair<Golden, Golden>>& lens, int k, Letter letter,
             const Golden& left, const Golden& lo, const Golden& hi,
             std::vector<PlacedTile>& out) {
    Golden right = left + len_of(lens[static_cast<size_t>(k)], letter);
    if (right < lo || left > hi) return;
    if (k == 0) {
        out.push_back({letter, left, std::move(right)});
        return;
    }
    Golden pos = left;
    for (Letter child : expansion(letter)) {
        descend(lens, k - 1, child, pos, lo, hi, out);
        pos += len_of(lens[static_cast<size_t>(k) - 1], child);
    }
}

std::vector<std::pair<Golden, Golden>> length_table(const TileSpec& spec, int top) {
    std::vector<std::pair<Golden, Golden>> lens;
    lens.reserve(static_cast<size_t>(top) + 1);
    lens.emplace_back(spec.len_a, spec.len_b);
    for (int k = 0; k < top; ++k) {
        lens.push_back(lens.back());
        advance_lengths(lens.back());
    }
    return lens;
}

// Tiles of one spine meeting [lo, hi] in its own canonical coordinates.
std::vector<PlacedTile> spine_segment(const Spine& sp, const TileSpec& spec, int depth,
                                      const Golden& lo, const Golden& hi) {
    auto [K, E] = cover(sp, spec, depth, lo, hi);
    auto lens = length_table(spec, K + depth);
    std::vector<PlacedTile> out;
    descend(lens, K + depth, sp.letter_at(K), E, lo, hi, out);
    return out;
}

} // namespace

std::vector<PlacedTile> segment(const LineTiling& x, const Golden& lo, const Golden& hi) {
    if (lo > hi) throw std::invalid_argument("segment bounds out of order");
    Golden clo = lo - x.shift();
    Golden chi = hi - x.shift();
    std::vector<PlacedTile> out;
    if (!x.is_glued()) {
        out = spine_segment(*x.right_spine(), x.spec(), x.depth(), clo, chi);
    } else {
        // left spine tiles (-inf, 0], right spine [0, +inf); junction at 0
        if (clo.sign() <= 0) {
            // the left spine's own right edge sits at its base tile's length
            Golden edge = len_of(level_lengths(x.spec(), x.depth()), x.left_spine()->base());
            Golden cut = golden_min(chi, Golden(0));
            auto tiles = spine_segment(*x.left_spine(), x.spec(), x.depth(),
                                       clo + edge, cut + edge);
            for (auto& t : tiles)
                out.push_back({t.letter, t.left - edge, t.right - edge});
        }
        if (chi.sign() >= 0) {
            Golden cut = golden_max(clo, Golden(0));
            auto tiles = spine_segment(*x.right_spine(), x.spec(), x.depth(), cut, chi);
            out.insert(out.end(), tiles.begin(), tiles.end());
        }
    }
    for (auto& t : out) {
        t.left += x.shift();
        t.right += x.shift();
    }
    return out;
}

Golden origin_offset(const LineTiling& x) {
    auto tiles = segment(x, Golden(0), Golden(0));
    for (const auto& t : tiles)
        if (t.left <= Golden(0) && Golden(0) < t.right) return -t.left;
    // the origin can only sit at the right end of the last returned tile
    // when it is a glued junction with nothing strictly to the right; the
    // junction itself belongs to the right-hand tile, handled above.
    throw std::runtime_error("origin not covered by the expanded segment");
}

BoundarySet boundary_points(const LineTiling& x, const Golden& H) {
    if (H.sign() < 0) throw std::invalid_argument("negative horizon");
    auto tiles = segment(x, -H, H);
    BoundarySet bs;
    auto add = [&](const Golden& p) {
        if (p < -H || p > H) return;
        if (!bs.pts.empty() && bs.pts.back() == p) return;
        bs.pts.push_back(p);
    };
    for (const auto& t : tiles) {
        add(t.left);
        add(t.right);
    }
    return bs;
}

namespace {

Golden directed_hausdorff(std::span<const Golden> A, std::span<const Golden> B) {
    Golden worst(0);
    size_t j = 0;
    for (const Golden& a : A) {
        while (j + 1 < B.size() && B[j + 1] <= a) ++j;
        Golden best = (B[j] - a).abs();
        if (j + 1 < B.size()) best = golden_min(best, (B[j + 1] - a).abs());
        worst = golden_max(worst, best);
    }
    return worst;
}

Golden hausdorff_pts(std::span<const Golden> A, std::span<const Golden> B) {
    return golden_max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

std::span<const Golden> clip_window(const std::vector<Golden>& pts, int n) {
    Golden lo(-n), hi(n);
    auto b = std::lower_bound(pts.begin(), pts.end(), lo);
    auto e = std::upper_bound(pts.begin(), pts.end(), hi);
    return {pts.data() + (b - pts.begin()), static_cast<size_t>(e - b)};
}

Golden max_tile_length(const LineTiling& x, const LineTiling& y) {
    return golden_max(golden_max(x.spec().len_a, x.spec().len_b),
                      golden_max(y.spec().len_a, y.spec().len_b));
}

} // namespace

Golden hausdorff(const BoundarySet& A, const BoundarySet& B) {
    if (A.pts.empty() || B.pts.empty())
        throw std::invalid_argument("Hausdorff undefined on empty set");
    return hausdorff_pts(A.pts, B.pts);
}

Golden tiling_metric(const LineTiling& x, const LineTiling& y) {
    if (identical(x, y)) return Golden(0);
    const Golden L = max_tile_length(x, y);
    Golden best(0);
    int horizon = 4;
    BoundarySet bx = boundary_points(x, Golden(horizon));
    BoundarySet by = boundary_points(y, Golden(horizon));
    for (int n = 1;; ++n) {
        if (n > horizon) {
            horizon *= 2;
            bx = boundary_points(x, Golden(horizon));
            by = boundary_points(y, Golden(horizon));
        }
        auto ax = clip_window(bx.pts, n);
        auto ay = clip_window(by.pts, n);
        if (!ax.empty() && !ay.empty()) {
            Golden term = hausdorff_pts(ax, ay) * Golden(BigRat(1, n));
            best = golden_max(best, std::move(term));
        }
        // from here every term with m > n is at most L/m <= L/n < best
        if (Golden(n) >= L && L < best * Golden(n)) return best;
        if (best.is_zero() && n >= 4096)
            throw std::runtime_error("boundaries agree beyond the metric horizon cap");
    }
}

Golden brute_metric(const LineTiling& x, const LineTiling& y, int n_max) {
    if (n_max < 1) throw std::invalid_argument("horizon must be at least 1");
    BoundarySet bx = boundary_points(x, Golden(n_max));
    BoundarySet by = boundary_points(y, Golden(n_max));
    Golden best(0);
    for (int n = 1; n <= n_max; ++n) {
        auto ax = clip_window(bx.pts, n);
        auto ay = clip_window(by.pts, n);
        if (ax.empty() || ay.empty()) continue;
        Golden term = hausdorff_pts(ax, ay) * Golden(BigRat(1, n));
        best = golden_max(best, std::move(term));
    }
    return best;
}

namespace {

void check_same_invariant(const TileSpec& X, const TileSpec& Y) {
    if (length_invariant(X) != length_invariant(Y))
        throw std::runtime_error("not conjugate: length invariants differ");
}

// Anchor correction of the depth-N midpoint alignment, levels 0..n_levels:
// gamma_N = (lenX_N - lenY_N)(lambda_N) / 2 + sum_{k<N} (preY_k - preX_k),
// where pre is the total length of the left siblings at level k. The image
// tiling is the Y-system tiling over the same spine shifted by
// shift + gamma_N.
std::vector<Golden> gamma_series(const LineTiling& x, const TileSpec& Y, int n_levels) {
    const TileSpec& X = x.spec();
    std::pair<Golden, Golden> lx{X.len_a, X.len_b};
    std::pair<Golden, Golden> ly{Y.len_a, Y.len_b};
    const Golden half(BigRat(1, 2));
    Golden acc(0);
    std::vector<Golden> out;
    out.reserve(static_cast<size_t>(n_levels) + 1);
    for (int k = 0;; ++k) {
        Letter lam = x.tower_letter(k);
        out.push_back(acc + (len_of(lx, lam) - len_of(ly, lam)) * half);
        if (k == n_levels) break;
        TowerStep s = x.tower_step(k);
        if (s.index == 1) acc += ly.first - lx.first;
        advance_lengths(lx);
        advance_lengths(ly);
    }
    return out;
}

// Smallest N with C / tau^N strictly below eps.
int pick_depth(const TileSpec& X, const TileSpec& Y, const Golden& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    const Golden C = conjugacy_tail_constant(X, Y);
    Golden pw(1);
    for (int N = 0; N <= kLevelCap; ++N) {
        if (C < eps * pw) return N;
        pw *= Golden::tau();
    }
    throw std::runtime_error("precision request exceeds the level budget");
}

} // namespace

Golden conjugacy_tail_constant(const TileSpec& X, const TileSpec& Y) {
    // per-level corrections are bounded by |d| tau/2 / tau^N with
    // d = (lenX_a - lenY_a)/tau; summing the geometric tail gives
    // C = |d| tau^3 / 2 = |lenX_a - lenY_a| tau^2 / 2.
    Golden half(BigRat(1, 2));
    return (X.len_a - Y.len_a).abs() * Golden::tau() * Golden::tau() * half;
}

std::vector<Golden> conjugacy_approximants(const LineTiling& x, const TileSpec& Y,
                                           int n_levels) {
    if (n_levels < 0) throw std::invalid_argument("negative level count");
    check_same_invariant(x.spec(), Y);
    return gamma_series(x, Y, n_levels);
}

LineTiling conjugate(const LineTiling& x, const TileSpec& Y, const Golden& eps) {
    check_same_invariant(x.spec(), Y);
    if (x.spec() == Y) return x; // exact identity
    if (x.is_glued()) {
        // the right tower's steps are all child 0, so the correction series
        // is a vanishing midpoint term: the junction maps to itself exactly
        return x.with_spec_and_shift(Y, x.shift());
    }
    int N = pick_depth(x.spec(), Y, eps);
    Golden gamma = gamma_series(x, Y, N).back();
    return x.with_spec_and_shift(Y, x.shift() + gamma);
}

LineTiling substitute(const LineTiling& x) {
    if (x.spec().len_b != x.spec().len_a * Golden::tau())
        throw std::invalid_argument("substitution requires self-similar tile lengths");
    return x.subdivided(x.spec(), x.shift() * Golden::tau());
}

ConjugatedSubstitution conjugated_substitution(const TileSpec& Y, const Golden& eps) {
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    // the self-similar spec (s, s*tau) with the same invariant: s(1+tau^2)
    Golden s = length_invariant(Y) / (Golden(1) + Golden::tau() * Golden::tau());
    TileSpec X(s, s * Golden::tau());
    return {Y, std::move(X), eps};
}

LineTiling ConjugatedSubstitution::operator()(const LineTiling& y) const {
    if (!(y.spec() == y_spec))
        throw std::invalid_argument("tiling spec does not match the action's system");
    return conjugate(substitute(conjugate(y, x_spec, eps)), y_spec, eps);
}

Golden commutation_residual(const ConjugatedSubstitution& psi, const LineTiling& y,
                            const Golden& alpha) {
    LineTiling lhs = psi(translate(y, alpha));
    LineTiling rhs = translate(psi(y), alpha * Golden::tau());
    return tiling_metric(lhs, rhs);
}

NonSbcWitness non_sbc_witness(const TileSpec& X, const TileSpec& Y, const Golden& R,
                              int extra_levels) {
    check_same_invariant(X, Y);
    if (R.sign() <= 0) throw std::invalid_argument("window radius must be positive");
    if (extra_levels < 0) throw std::invalid_argument("negative level padding");

    // deterministic two-sided prefix over base b: grow left, relabel, grow
    // right, repeat; tops run b, b, a, b, b, a, ...
    static const TowerStep kCycle[3] = {{kTileB, 1}, {kTileA, 0}, {kTileB, 0}};
    std::vector<TowerStep> prefix;
    Letter top = kTileB;
    Golden E(0);
    std::pair<Golden, Golden> lens{X.len_a, X.len_b};
    int k = 0;
    while (!(E <= -R && E + len_of(lens, top) >= R)) {
        if (k >= kLevelCap) throw std::runtime_error("tower extension budget exceeded");
        TowerStep s = kCycle[k % 3];
        prefix.push_back(s);
        top = s.parent;
        if (s.index == 1) E -= lens.first;
        advance_lengths(lens);
        ++k;
    }
    if (top == kTileA) {
        // land on a b supertile so the towers can branch there
        prefix.push_back(kCycle[k % 3]); // (b, 0): a is b's first child
        top = kTileB;
        ++k;
    }
    // pad the shared prefix to the first level with tau^k >= R * tau^5.
    // Coverage alone quantizes the branch level to every third step, so a
    // tau-factor window bump would not always move it; the padded level
    // advances by exactly one per tau factor of R, making |t| strictly
    // decrease (by 1/tau) along any geometric window ladder. The padding
    // only widens the agreement region.
    while (tau_pow(k) < R * tau_pow(5)) {
        if (k >= kLevelCap) throw std::runtime_error("tower extension budget exceeded");
        prefix.push_back({kTileB, 1});
        ++k;
    }
    // shared (b, 1) padding keeps the top letter b, so each extra level
    // pushes the divergence up by exactly one
    for (int i = 0; i < extra_levels; ++i) {
        prefix.push_back({kTileB, 1});
        ++k;
    }
    const int k_div = k;

    // above the divergence level one tower keeps growing leftward (all
    // right children), the other rightward (all left children); both
    // correction series telescope, and their difference is exactly
    // t = -d * (-1/tau)^K, d = (lenX_a - lenY_a)/tau.
    LineTiling x = LineTiling::with_tower(X, kTileB, prefix, Spine::Policy::rightmost, 0);
    LineTiling xp = LineTiling::with_tower(X, kTileB, std::move(prefix),
                                           Spine::Policy::leftmost, 0);
    Golden d = (X.len_a - Y.len_a) * tau_pow(-1);
    Golden t = d * tau_pow(-k_div);
    if (k_div % 2 == 0) t = -t;
    return {std::move(x), std::move(xp), std::move(t), k_div};
}

ModulusProbe modulus_probe(const TileSpec& X, const TileSpec& Y, const Golden& eps,
                           const Golden& R0, int max_rungs) {
    check_same_invariant(X, Y);
    if (eps.sign() <= 0) throw std::invalid_argument("eps must be positive");
    if (R0.sign() <= 0) throw std::invalid_argument("ladder base must be positive");
    Golden R = R0;
    for (int j = 0; j < max_rungs; ++j) {
        Golden worst = non_sbc_witness(X, Y, R, 0).t.abs();
        if (worst < eps) return {std::move(R), j, std::move(worst)};
        R *= Golden::tau();
    }
    throw std::runtime_error("modulus ladder budget exceeded");
}

std::vector<AddressTriple> address_view(const LineTiling& x, int levels) {
    if (levels < 0) throw std::invalid_argument("negative level count");
    std::vector<AddressTriple> out;
    out.reserve(static_cast<size_t>(levels));
    for (int k = 0; k < levels; ++k)
        out.push_back({k, x.tower_letter(k), x.tower_step(k).index});
    return out;
}

} // namespace subtile
