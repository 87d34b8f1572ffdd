#include "subtile/plane_tiling.hpp"

#include "subtile/rng.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace subtile {
namespace {

long long floor_ll(const Golden& g) {
    return golden_floor(g).convert_to<long long>();
}

Golden dot(const Vec2G& a, const Vec2G& b) { return a.x * b.x + a.y * b.y; }
Golden cross(const Vec2G& a, const Vec2G& b) { return a.x * b.y - a.y * b.x; }

Vec2G scale(const Vec2G& v, const Golden& k) { return {v.x * k, v.y * k}; }

// Squared distance from a point to a closed axis rectangle.
Golden point_rect_d2(const Vec2G& p, const Golden& x0, const Golden& x1,
                     const Golden& y0, const Golden& y1) {
    Golden zero(0);
    Golden dx = golden_max(zero, golden_max(x0 - p.x, p.x - x1));
    Golden dy = golden_max(zero, golden_max(y0 - p.y, p.y - y1));
    return dx * dx + dy * dy;
}

Golden point_seg_d2(const Vec2G& p, const Vec2G& a, const Vec2G& b) {
    Vec2G d = b - a;
    Vec2G w = p - a;
    Golden den = dot(d, d);
    if (den.is_zero()) return dot(w, w);
    Golden num = dot(w, d);
    if (num.sign() <= 0) return dot(w, w);
    if (num >= den) {
        Vec2G w2 = p - b;
        return dot(w2, w2);
    }
    return dot(w, w) - num * num / den;
}

Golden seg_seg_d2(const Vec2G& a, const Vec2G& b, const Vec2G& c, const Vec2G& d) {
    Golden best = point_seg_d2(a, c, d);
    best = golden_min(best, point_seg_d2(b, c, d));
    best = golden_min(best, point_seg_d2(c, a, b));
    return golden_min(best, point_seg_d2(d, a, b));
}

using Quad = std::array<Vec2G, 4>;

// Separating-axis disjointness for convex quads, winding-agnostic.
bool quads_disjoint(const Quad& A, const Quad& B) {
    auto separated_by_edges_of = [](const Quad& P, const Quad& Q) {
        for (int i = 0; i < 4; ++i) {
            Vec2G e = P[(i + 1) % 4] - P[i];
            Vec2G n{-e.y, e.x};
            bool first = true;
            Golden pmin(0), pmax(0), qmin(0), qmax(0);
            for (const Vec2G& v : P) {
                Golden pr = dot(n, v);
                if (first || pr < pmin) pmin = pr;
                if (first || pr > pmax) pmax = pr;
                first = false;
            }
            first = true;
            for (const Vec2G& v : Q) {
                Golden pr = dot(n, v);
                if (first || pr < qmin) qmin = pr;
                if (first || pr > qmax) qmax = pr;
                first = false;
            }
            if (pmax < qmin || qmax < pmin) return true;
        }
        return false;
    };
    return separated_by_edges_of(A, B) || separated_by_edges_of(B, A);
}

// Squared distance between a closed rectangle and a convex quad; zero iff
// they intersect.
Golden rect_quad_d2(const Golden& x0, const Golden& x1, const Golden& y0,
                    const Golden& y1, const Quad& q) {
    Quad r{Vec2G{x0, y0}, Vec2G{x1, y0}, Vec2G{x1, y1}, Vec2G{x0, y1}};
    if (!quads_disjoint(r, q)) return Golden(0);
    Golden best = seg_seg_d2(r[0], r[1], q[0], q[1]);
    bool first = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Golden d = seg_seg_d2(r[i], r[(i + 1) % 4], q[j], q[(j + 1) % 4]);
            if (first || d < best) best = d;
            first = false;
        }
    return best;
}

void sort_tiles(std::vector<PlacedTile2>& v) {
    std::sort(v.begin(), v.end(), tile2_less);
}

std::string patch_key(std::vector<PlacedTile2> patch) {
    sort_tiles(patch);
    std::ostringstream os;
    for (const auto& t : patch)
        os << t.letter << '|' << t.x0.str() << t.x1.str() << t.y0.str()
           << t.y1.str() << ';';
    return os.str();
}

std::vector<std::string> census_keys_parallel(const PatchSampler& sampler,
                                              std::uint64_t budget) {
    std::vector<std::string> keys(budget);
    long long n = static_cast<long long>(budget);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i)
        keys[static_cast<std::size_t>(i)] =
            patch_key(sampler(static_cast<std::uint64_t>(i)));
    return keys;
}

std::vector<std::string> census_keys_serial(const PatchSampler& sampler,
                                            std::uint64_t budget) {
    std::vector<std::string> keys(budget);
    for (std::uint64_t i = 0; i < budget; ++i)
        keys[static_cast<std::size_t>(i)] = patch_key(sampler(i));
    return keys;
}

CensusResult census_from_keys(const std::vector<std::string>& keys) {
    CensusResult out;
    std::map<std::string, std::uint64_t> seen;
    for (std::uint64_t i = 0; i < keys.size(); ++i)
        if (seen.emplace(keys[static_cast<std::size_t>(i)], i).second)
            out.last_new_sample = i;
    out.classes = seen.size();
    out.saturated = !keys.empty() && out.last_new_sample < keys.size() / 2;
    return out;
}

// Tiles of x meeting {p : d(p, quad) < reach}, in canonical order.
std::vector<PlacedTile2> tiles_near_quad(const Tiling2& x, const Quad& q,
                                         const Golden& reach) {
    Golden x0 = q[0].x, x1 = q[0].x, y0 = q[0].y, y1 = q[0].y;
    for (const Vec2G& v : q) {
        x0 = golden_min(x0, v.x);
        x1 = golden_max(x1, v.x);
        y0 = golden_min(y0, v.y);
        y1 = golden_max(y1, v.y);
    }
    auto cand = x.tiles_in(x0 - reach, x1 + reach, y0 - reach, y1 + reach);
    Golden r2 = reach * reach;
    std::vector<PlacedTile2> out;
    for (const auto& t : cand)
        if (rect_quad_d2(t.x0, t.x1, t.y0, t.y1, q) < r2) out.push_back(t);
    return out;
}

Quad shift_quad(const Quad& q, const Vec2G& u) {
    return {q[0] + u, q[1] + u, q[2] + u, q[3] + u};
}

// One frame condition: x agrees with its shift-translate on every tile
// meeting the open 1-neighborhood of the quad.
std::optional<Vec2G> translate_mismatch(const Tiling2& x, const Quad& q,
                                       const Vec2G& shift) {
    auto a = tiles_near_quad(x, q, Golden(1));
    auto b = tiles_near_quad(x, shift_quad(q, -shift), Golden(1));
    for (auto& t : b) {
        t.x0 += shift.x;
        t.x1 += shift.x;
        t.y0 += shift.y;
        t.y1 += shift.y;
    }
    sort_tiles(b);
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
            continue;
        }
        const PlacedTile2& odd = tile2_less(a[i], b[j]) ? a[i] : b[j];
        return Vec2G{odd.x0, odd.y0};
    }
    if (i < a.size()) return Vec2G{a[i].x0, a[i].y0};
    if (j < b.size()) return Vec2G{b[j].x0, b[j].y0};
    return std::nullopt;
}

// {a along + b cross : a in [0,1], |b| <= 1/8}.
Quad tube_quad(const Vec2G& along, const Vec2G& crossdir) {
    Vec2G m = scale(crossdir, Golden(BigRat(1, 8)));
    return {-m, along - m, along + m, m};
}

// First index of two adjacent B tiles in [-half, half]; widens once.
Golden double_b_edge(const LineTiling& x, long long half) {
    for (int attempt = 0; attempt < 2; ++attempt) {
        auto tiles = segment(x, Golden(-half), Golden(half));
        for (std::size_t i = 0; i + 1 < tiles.size(); ++i)
            if (tiles[i].letter == kTileB && tiles[i + 1].letter == kTileB)
                return tiles[i].left;
        half *= 4;
    }
    throw std::logic_error("no adjacent B pair in the search window");
}

} // namespace

bool tile2_less(const PlacedTile2& a, const PlacedTile2& b) {
    if (a.y0 != b.y0) return a.y0 < b.y0;
    if (a.x0 != b.x0) return a.x0 < b.x0;
    if (a.y1 != b.y1) return a.y1 < b.y1;
    if (a.x1 != b.x1) return a.x1 < b.x1;
    return a.letter < b.letter;
}

Letter product_pair_letter(Letter h, Letter v) { return h * 2 + v; }

ProductTiling::ProductTiling(LineTiling h, LineTiling v)
    : h_(std::move(h)), v_(std::move(v)) {}

ProductTiling ProductTiling::translated(const Vec2G& u) const {
    return ProductTiling(translate(h_, u.x), translate(v_, u.y));
}

std::vector<PlacedTile2> ProductTiling::tiles_in(const Golden& x0,
                                                 const Golden& x1,
                                                 const Golden& y0,
                                                 const Golden& y1) const {
    auto cols = segment(h_, x0, x1);
    auto rows = segment(v_, y0, y1);
    std::vector<PlacedTile2> out;
    out.reserve(cols.size() * rows.size());
    for (const auto& r : rows)
        for (const auto& c : cols)
            out.push_back({product_pair_letter(c.letter, r.letter), c.left,
                           c.right, r.left, r.right});
    return out;
}

ProductTiling product_tiling(const LineTiling& x, const LineTiling& y) {
    return ProductTiling(x, y);
}

PeriodicGrid::PeriodicGrid(std::vector<std::vector<Letter>> rows)
    : rows_(std::move(rows)) {
    if (rows_.empty() || rows_[0].empty())
        throw std::invalid_argument("grid must be nonempty");
    for (const auto& r : rows_)
        if (r.size() != rows_[0].size())
            throw std::invalid_argument("grid rows must have equal length");
}

Letter PeriodicGrid::letter_at(long long i, long long j) const {
    long long px = period_x(), py = period_y();
    long long ci = ((i % px) + px) % px;
    long long cj = ((j % py) + py) % py;
    return rows_[static_cast<std::size_t>(cj)][static_cast<std::size_t>(ci)];
}

std::vector<PlacedTile2> PeriodicGrid::tiles_in(const Golden& x0,
                                                const Golden& x1,
                                                const Golden& y0,
                                                const Golden& y1) const {
    std::vector<PlacedTile2> out;
    for (long long j = floor_ll(y0) - 1; Golden(j) <= y1; ++j) {
        if (Golden(j + 1) < y0) continue;
        for (long long i = floor_ll(x0) - 1; Golden(i) <= x1; ++i) {
            if (Golden(i + 1) < x0) continue;
            out.push_back({letter_at(i, j), Golden(i), Golden(i + 1), Golden(j),
                           Golden(j + 1)});
        }
    }
    return out;
}

RowsTiling::RowsTiling(std::vector<LineTiling> rows, int low, TileSpec spec,
                       Golden horizon, bool image_side)
    : rows_(std::move(rows)),
      low_(low),
      spec_(std::move(spec)),
      horizon_(std::move(horizon)),
      image_side_(image_side) {}

RowsTiling RowsTiling::sample(std::uint64_t seed, int row_count,
                              const Golden& horizon) {
    if (row_count < 1) throw std::invalid_argument("need at least one row");
    TileSpec unit(Golden(1), Golden(1));
    int low = -(row_count / 2);
    std::vector<LineTiling> rows;
    rows.reserve(static_cast<std::size_t>(row_count));
    for (int j = low; j < low + row_count; ++j) {
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(j - low));
        Letter base = static_cast<Letter>(rng.below(2));
        rows.push_back(LineTiling::with_tower(unit, base, {},
                                              Spine::Policy::seeded, rng.next()));
    }
    return RowsTiling(std::move(rows), low, unit, horizon, false);
}

RowsTiling RowsTiling::from_rows(std::vector<LineTiling> rows, int low,
                                 const Golden& horizon) {
    if (rows.empty()) throw std::invalid_argument("need at least one row");
    TileSpec spec = rows.front().spec();
    for (const auto& r : rows)
        if (!(r.spec() == spec))
            throw std::invalid_argument("rows must share one spec");
    bool image = !(spec == TileSpec(Golden(1), Golden(1)));
    return RowsTiling(std::move(rows), low, spec, horizon, image);
}

const LineTiling& RowsTiling::row(int j) const {
    if (j < low_ || j >= high()) throw std::out_of_range("row index");
    return rows_[static_cast<std::size_t>(j - low_)];
}

std::vector<PlacedTile2> RowsTiling::tiles_in(const Golden& x0, const Golden& x1,
                                              const Golden& y0,
                                              const Golden& y1) const {
    std::vector<PlacedTile2> out;
    for (long long j = floor_ll(y0) - 1; Golden(j) <= y1; ++j) {
        if (Golden(j + 1) < y0) continue;
        if (j < low_ || j >= high()) continue;
        for (const auto& t : segment(row(static_cast<int>(j)), x0, x1))
            out.push_back({t.letter, t.left, t.right, Golden(j), Golden(j + 1)});
    }
    return out;
}

RowsTiling rows_conjugate(const RowsTiling& x, const Golden& eps) {
    if (x.image_side_)
        throw std::invalid_argument("rows are already on the image side");
    TileSpec target(Golden::tau(), Golden::tau() - Golden(1));
    std::vector<LineTiling> rows;
    rows.reserve(x.rows_.size());
    for (const auto& r : x.rows_) rows.push_back(conjugate(r, target, eps));
    return RowsTiling(std::move(rows), x.low_, target, x.horizon_, true);
}

int distinct_offsets(const RowsTiling& y, const Golden& R, const Golden& delta) {
    if (y.high() - y.low() < 2)
        throw std::invalid_argument("need at least two rows");
    std::vector<Golden> vals;
    for (int j = y.low(); j + 1 < y.high(); ++j) {
        if (Golden(j + 1) < -R || Golden(j) > R) continue;
        vals.push_back(origin_offset(y.row(j + 1)) - origin_offset(y.row(j)));
    }
    if (vals.empty()) return 0;
    std::sort(vals.begin(), vals.end());
    int count = 1;
    Golden last = vals.front();
    for (const Golden& v : vals)
        if (v - last > delta) {
            ++count;
            last = v;
        }
    return count;
}

CensusResult neighborhood_census(const PatchSampler& sampler,
                                 std::uint64_t budget) {
    return census_from_keys(census_keys_parallel(sampler, budget));
}

CensusResult neighborhood_census_serial(const PatchSampler& sampler,
                                        std::uint64_t budget) {
    return census_from_keys(census_keys_serial(sampler, budget));
}

namespace {

// Tiles meeting the open ball of radius R about the anchor, re-anchored so the
// key is translation-invariant.
std::vector<PlacedTile2> ball_patch(const Tiling2& x, const Vec2G& anchor,
                                    const Golden& R) {
    Golden r2 = R * R;
    std::vector<PlacedTile2> out;
    for (auto& t : x.tiles_in(anchor.x - R, anchor.x + R, anchor.y - R,
                              anchor.y + R)) {
        if (point_rect_d2(anchor, t.x0, t.x1, t.y0, t.y1) >= r2) continue;
        t.x0 -= anchor.x;
        t.x1 -= anchor.x;
        t.y0 -= anchor.y;
        t.y1 -= anchor.y;
        out.push_back(t);
    }
    return out;
}

} // namespace

PatchSampler rows_census_sampler(const RowsTiling& rows, const Golden& R,
                                 std::uint64_t seed, long long tile_span) {
    if (rows.high() - rows.low() < 6)
        throw std::invalid_argument("rows slab too thin to sample interior");
    const Golden half(BigRat(1, 2));
    return [rows, R, seed, tile_span, half](std::uint64_t i) {
        Rng rng = Rng::derive(seed, i);
        int j = rows.low() + 2 +
                static_cast<int>(rng.below(
                    static_cast<std::uint64_t>(rows.high() - rows.low() - 5)));
        long long k = static_cast<long long>(rng.below(
                          static_cast<std::uint64_t>(2 * tile_span + 1))) -
                      tile_span;
        // the ball sits at the center of the sampled tile; the query window
        // is widened so the half-open pick always sees the containing tile
        Vec2G anchor{Golden(0), Golden(j) + half};
        for (const auto& t :
             segment(rows.row(j), Golden(k), Golden(k) + Golden(1)))
            if (t.left <= Golden(k) && Golden(k) < t.right) {
                anchor.x = (t.left + t.right) * half;
                break;
            }
        return ball_patch(rows, anchor, R);
    };
}

PatchSampler grid_census_sampler(const PeriodicGrid& grid, const Golden& R) {
    const Golden half(BigRat(1, 2));
    return [grid, R, half](std::uint64_t i) {
        long long px = grid.period_x(), py = grid.period_y();
        Vec2G anchor{Golden(static_cast<long long>(i) % px) + half,
                     Golden((static_cast<long long>(i) / px) % py) + half};
        return ball_patch(grid, anchor, R);
    };
}

PatchAgreement patch_agree(const Tiling2& u, const Tiling2& v,
                           const ThickenedSegment& region) {
    if (region.r.sign() <= 0)
        throw std::invalid_argument("region thickness must be positive");
    Quad seg{region.a, region.b, region.b, region.a};
    auto au = tiles_near_quad(u, seg, region.r);
    auto av = tiles_near_quad(v, seg, region.r);
    std::size_t i = 0, j = 0;
    while (i < au.size() && j < av.size()) {
        if (au[i] == av[j]) {
            ++i;
            ++j;
            continue;
        }
        const PlacedTile2& odd = tile2_less(au[i], av[j]) ? au[i] : av[j];
        return {false, Vec2G{odd.x0, odd.y0}};
    }
    if (i < au.size()) return {false, Vec2G{au[i].x0, au[i].y0}};
    if (j < av.size()) return {false, Vec2G{av[j].x0, av[j].y0}};
    return {true, std::nullopt};
}

FrameCheck frame_check(const Tiling2& x, const Vec2G& s, const Vec2G& t) {
    if (cross(s, t).is_zero())
        throw std::invalid_argument("frame directions must be linearly independent");
    FrameCheck out;
    out.s = s;
    out.t = t;
    if (auto bad = translate_mismatch(x, tube_quad(s, t), t)) {
        out.failed_condition = 1;
        out.failing_displacement = bad;
        return out;
    }
    if (auto bad = translate_mismatch(x, tube_quad(t, s), s)) {
        out.failed_condition = 2;
        out.failing_displacement = bad;
        return out;
    }
    out.ok = true;
    return out;
}

FramedProduct framed_fibonacci_product(std::uint64_t seed, int scale) {
    if (scale < 0) throw std::invalid_argument("scale must be nonnegative");
    TileSpec fib(Golden(1), Golden::tau());
    Golden h = tau_pow(scale + 1);
    auto centered = [&](std::uint64_t s) {
        Rng rng = Rng::derive(seed, s);
        LineTiling line = LineTiling::seeded(fib, rng.next());
        Golden q = double_b_edge(line, 40);
        for (int k = 0; k < scale; ++k) {
            line = substitute(line);
            q *= Golden::tau();
        }
        // origin at the center of the second supertile of the B pair
        return translate(line, -(q + Golden(BigRat(3, 2)) * h));
    };
    return {ProductTiling(centered(1), centered(2)), Vec2G{h, Golden(0)},
            Vec2G{Golden(0), h}};
}

} // namespace subtile
