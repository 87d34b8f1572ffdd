#pragma once

#include "subtile/line_tiling.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace subtile {

// Exact plane vector (contrast with the lattice Vec2 of the symbolic side).
struct Vec2G {
    Golden x, y;
    bool operator==(const Vec2G& o) const { return x == o.x && y == o.y; }
    Vec2G operator+(const Vec2G& o) const { return {x + o.x, y + o.y}; }
    Vec2G operator-(const Vec2G& o) const { return {x - o.x, y - o.y}; }
    Vec2G operator-() const { return {-x, -y}; }
};

// Axis-aligned tile with exact corners; letter meaning depends on the tiling.
struct PlacedTile2 {
    Letter letter;
    Golden x0, x1, y0, y1;
    bool operator==(const PlacedTile2& o) const {
        return letter == o.letter && x0 == o.x0 && x1 == o.x1 && y0 == o.y0 &&
               y1 == o.y1;
    }
};

// Canonical order: bottom-to-top rows, then left-to-right, then letter.
bool tile2_less(const PlacedTile2& a, const PlacedTile2& b);

// Plane tilings are queried by closed axis-aligned rectangles; every tile
// whose closed rectangle meets the query is returned, in canonical order.
class Tiling2 {
public:
    virtual ~Tiling2() = default;
    virtual std::vector<PlacedTile2> tiles_in(const Golden& x0, const Golden& x1,
                                              const Golden& y0,
                                              const Golden& y1) const = 0;
};

// Product letters are h-major over the two two-letter factors: h * 2 + v.
Letter product_pair_letter(Letter h, Letter v);

// Product of two line tilings: the tile over column i and row j is the
// rectangle with those tiles' extents, carrying the pair letter.
class ProductTiling : public Tiling2 {
public:
    ProductTiling(LineTiling h, LineTiling v);

    const LineTiling& horizontal() const { return h_; }
    const LineTiling& vertical() const { return v_; }

    ProductTiling translated(const Vec2G& u) const;

    std::vector<PlacedTile2> tiles_in(const Golden& x0, const Golden& x1,
                                      const Golden& y0,
                                      const Golden& y1) const override;

private:
    LineTiling h_, v_;
};

ProductTiling product_tiling(const LineTiling& x, const LineTiling& y);

// Unit-square tiling repeating a letter matrix; rows are listed bottom to
// top, and cell (i, j) carries rows[j mod height][i mod width].
class PeriodicGrid : public Tiling2 {
public:
    explicit PeriodicGrid(std::vector<std::vector<Letter>> rows);

    int period_x() const { return static_cast<int>(rows_[0].size()); }
    int period_y() const { return static_cast<int>(rows_.size()); }
    Letter letter_at(long long i, long long j) const;

    std::vector<PlacedTile2> tiles_in(const Golden& x0, const Golden& x1,
                                      const Golden& y0,
                                      const Golden& y1) const override;

private:
    std::vector<std::vector<Letter>> rows_;
};

// Horizontal rows of height one, each an independent line tiling over a
// shared spec. Rows occupy [j, j+1) for j in [low, high); the per-row
// offset is the row's exact shift.
class RowsTiling : public Tiling2 {
public:
    // Independent seeded rows over unit lengths, all anchored at offset 0,
    // so every vertical edge lies at an integer abscissa.
    static RowsTiling sample(std::uint64_t seed, int row_count,
                             const Golden& horizon);

    // Explicit rows sharing one spec; rows over unit lengths count as the
    // source side, anything else as an image side.
    static RowsTiling from_rows(std::vector<LineTiling> rows, int low,
                                const Golden& horizon = Golden(100));

    int low() const { return low_; }
    int high() const { return low_ + static_cast<int>(rows_.size()); }
    const LineTiling& row(int j) const;
    Golden offset(int j) const { return row(j).shift(); }
    const TileSpec& spec() const { return spec_; }
    const Golden& horizon() const { return horizon_; }
    bool image_side() const { return image_side_; }

    std::vector<PlacedTile2> tiles_in(const Golden& x0, const Golden& x1,
                                      const Golden& y0,
                                      const Golden& y1) const override;

    friend RowsTiling rows_conjugate(const RowsTiling&, const Golden&);

private:
    RowsTiling(std::vector<LineTiling> rows, int low, TileSpec spec,
               Golden horizon, bool image_side);
    std::vector<LineTiling> rows_;
    int low_;
    TileSpec spec_;
    Golden horizon_;
    bool image_side_;
};

// Applies the length-changing conjugacy to every row, onto lengths
// (tau, tau-1). Row words are untouched; only the exact offsets move.
RowsTiling rows_conjugate(const RowsTiling& x,
                          const Golden& eps = Golden(BigRat(1, 100000000)));

// Count of pairwise >delta-separated values among the relative offsets of
// adjacent rows meeting [-R, R], each offset reduced to the anchor tile at
// the origin. Maximal-subset counting keeps the count monotone in R.
int distinct_offsets(const RowsTiling& y, const Golden& R,
                     const Golden& delta = Golden(BigRat(1, 1000000)));

// A census sample: tiles around one anchor, already translated so the
// anchor is at the origin. Samplers must be pure per index and thread-safe.
using PatchSampler = std::function<std::vector<PlacedTile2>(std::uint64_t)>;

struct CensusResult {
    std::size_t classes = 0;
    bool saturated = false;
    std::uint64_t last_new_sample = 0; // index that added the final class
};

// Classifies sampled neighborhoods up to translation by exact coordinates.
// Saturation means the last half of the budget added no new class.
CensusResult neighborhood_census(const PatchSampler& sampler,
                                 std::uint64_t budget);
CensusResult neighborhood_census_serial(const PatchSampler& sampler,
                                        std::uint64_t budget);

// Random anchor tiles of a rows tiling: a row away from the slab edges and
// a tile near a random integer abscissa in [-tile_span, tile_span]; the
// patch is every tile meeting the open ball of radius R at the sampled
// tile's center.
PatchSampler rows_census_sampler(const RowsTiling& rows, const Golden& R,
                                 std::uint64_t seed, long long tile_span);

// Deterministic sweep of one period of the grid, same ball convention.
PatchSampler grid_census_sampler(const PeriodicGrid& grid, const Golden& R);

// Exact patch agreement on a thickened segment: all points within r of
// the segment [a, b]. Tiles meeting the open region must coincide.
struct ThickenedSegment {
    Vec2G a, b;
    Golden r; // > 0
};

struct PatchAgreement {
    bool equal = false;
    std::optional<Vec2G> first_mismatch; // lower-left corner of the odd tile
};

PatchAgreement patch_agree(const Tiling2& u, const Tiling2& v,
                           const ThickenedSegment& region);

// Frame test for a pair of independent translations: the tiling must agree
// with its t-translate on every tile meeting the open 1-neighborhood of
// {a s + b t : a in [0,1], |b| <= 1/8}, and with its s-translate on the
// region with the roles of s and t exchanged. Agreement is exact.
struct FrameCheck {
    bool ok = false;
    Vec2G s, t;
    int failed_condition = 0;               // 1: t-translate, 2: s-translate
    std::optional<Vec2G> failing_displacement; // corner of the first odd tile
};

FrameCheck frame_check(const Tiling2& x, const Vec2G& s, const Vec2G& t);

// Product of two Fibonacci line tilings positioned so that a level-`scale`
// two-by-two all-B supertile block sits with the origin at the center of
// its upper-right quarter; s and t are the axis translations by one
// supertile length tau^(scale+1). The frame conditions hold iff the tube
// thickness fits inside the block, which needs scale >= 2.
struct FramedProduct {
    ProductTiling tiling;
    Vec2G s, t;
};

FramedProduct framed_fibonacci_product(std::uint64_t seed, int scale = 2);

} // namespace subtile
