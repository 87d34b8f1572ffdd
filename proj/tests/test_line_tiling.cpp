#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subtile/block_code.hpp"
#include "subtile/line_tiling.hpp"
#include "subtile/rng.hpp"
#include "subtile/substitution1d.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

using namespace subtile;

namespace {

TileSpec fib_spec() { return TileSpec(Golden(1), Golden::tau()); }

// (3-tau, 3-tau): the unit-square spec rescaled onto fib_spec's invariant,
// since (3-tau)(1+tau) = 2+tau.
TileSpec unit_scaled() {
    Golden s = Golden(3) - Golden::tau();
    return TileSpec(s, s);
}

TileSpec unit_spec() { return TileSpec(Golden(1), Golden(1)); }

Golden q(long long num, long long den) { return Golden(BigRat(num, den)); }

Golden eps8() { return q(1, 100000000); }

std::vector<Golden> steps_between(const std::vector<Golden>& g) {
    std::vector<Golden> d;
    for (size_t i = 0; i + 1 < g.size(); ++i) d.push_back(g[i + 1] - g[i]);
    return d;
}

bool has_point(const BoundarySet& bs, const Golden& p) {
    return std::binary_search(bs.pts.begin(), bs.pts.end(), p);
}

} // namespace

TEST_CASE("tile specs and the length invariant") {
    CHECK(length_invariant(fib_spec()) == Golden(BigRat(2), BigRat(1)));
    CHECK(length_invariant(unit_spec()) == Golden(BigRat(1), BigRat(1)));
    // (tau, tau-1) shares the unit spec's invariant: tau + tau(tau-1) = tau^2
    TileSpec stretched(Golden::tau(), Golden::tau() - Golden(1));
    CHECK(length_invariant(stretched) == length_invariant(unit_spec()));
    CHECK(length_invariant(unit_scaled()) == length_invariant(fib_spec()));
    CHECK_THROWS_AS(TileSpec(Golden(0), Golden(1)), std::invalid_argument);
    CHECK_THROWS_AS(TileSpec(Golden(1), Golden(-1)), std::invalid_argument);
}

TEST_CASE("supertile lengths follow the two-term recursion") {
    for (int k = 0; k <= 20; ++k) {
        auto lens = level_lengths(fib_spec(), k);
        CHECK(lens.first == tau_pow(k));
        CHECK(lens.second == tau_pow(k + 1));
    }
    auto l0 = level_lengths(unit_scaled(), 0);
    CHECK(l0.first == unit_scaled().len_a);
    auto l5 = level_lengths(unit_scaled(), 5);
    auto l4 = level_lengths(unit_scaled(), 4);
    CHECK(l5.first == l4.second);
    CHECK(l5.second == l4.first + l4.second);
}

TEST_CASE("boundary extraction matches hand-computed windows") {
    SUBCASE("all tiles of length one give the integer lattice") {
        LineTiling x = LineTiling::with_tower(unit_spec(), kTileA, {},
                                              Spine::Policy::seeded, 7);
        auto bs = boundary_points(x, Golden(2));
        std::vector<Golden> want{Golden(-2), Golden(-1), Golden(0), Golden(1), Golden(2)};
        CHECK(bs.pts == want);
        // half-open clip: only 0 falls inside [-1/2, 1/2]
        CHECK(boundary_points(x, q(1, 2)).pts == std::vector<Golden>{Golden(0)});

        auto shifted = boundary_points(translate(x, q(1, 10)), Golden(1));
        std::vector<Golden> want2{q(-9, 10), q(1, 10)};
        CHECK(shifted.pts == want2);
    }

    SUBCASE("golden-ratio word to the right of the anchor") {
        // base a inside b = "ab": the word right of 0 starts a, b, ...
        LineTiling x = LineTiling::with_tower(fib_spec(), kTileA, {{kTileB, 0}},
                                              Spine::Policy::seeded, 3);
        auto bs = boundary_points(x, q(27, 10));
        std::vector<Golden> right;
        for (const auto& p : bs.pts)
            if (p.sign() >= 0) right.push_back(p);
        std::vector<Golden> want{Golden(0), Golden(1), Golden(1) + Golden::tau()};
        CHECK(right == want);
    }

    SUBCASE("gaps are exactly the tile lengths") {
        for (std::uint64_t seed : {11u, 12u, 13u}) {
            LineTiling x = LineTiling::seeded(fib_spec(), seed);
            auto gaps = steps_between(boundary_points(x, Golden(30)).pts);
            CHECK(!gaps.empty());
            for (const auto& g : gaps)
                CHECK((g == Golden(1) || g == Golden::tau()));
        }
        TileSpec stretched(Golden::tau(), Golden::tau() - Golden(1));
        LineTiling y = LineTiling::seeded(stretched, 14);
        for (const auto& g : steps_between(boundary_points(y, Golden(20)).pts))
            CHECK((g == stretched.len_a || g == stretched.len_b));
    }
}

TEST_CASE("Hausdorff distance on boundary sets") {
    BoundarySet A{{Golden(-1), Golden(0), Golden(1)}};
    BoundarySet B{{q(-9, 10), q(1, 10)}};
    CHECK(hausdorff(A, B) == q(9, 10));
    CHECK(hausdorff(B, A) == q(9, 10));
    CHECK(hausdorff(A, A) == Golden(0));
    BoundarySet C{{Golden(0)}};
    BoundarySet D{{Golden(3)}};
    CHECK(hausdorff(C, D) == Golden(3));
    BoundarySet none;
    CHECK_THROWS_WITH_AS(hausdorff(none, A), "Hausdorff undefined on empty set",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(hausdorff(A, none), "Hausdorff undefined on empty set",
                         std::invalid_argument);
}

TEST_CASE("tiling metric: worked example and certified stop") {
    LineTiling unit = LineTiling::with_tower(unit_spec(), kTileA, {},
                                             Spine::Policy::seeded, 21);
    CHECK(tiling_metric(unit, unit).is_zero());

    // the n = 1 window dominates: 9/10 at n = 1 beats every later term
    LineTiling nudged = translate(unit, q(1, 10));
    CHECK(tiling_metric(unit, nudged) == q(9, 10));
    CHECK(tiling_metric(nudged, unit) == q(9, 10));
    CHECK(brute_metric(unit, nudged, 200) == q(9, 10));

    SUBCASE("stopping rule agrees with the plain sup over n <= 200") {
        for (int i = 0; i < 50; ++i) {
            LineTiling x = LineTiling::seeded(fib_spec(), 500 + 2 * i);
            LineTiling y = LineTiling::seeded(fib_spec(), 501 + 2 * i);
            Golden d = tiling_metric(x, y);
            CHECK(d == brute_metric(x, y, 200));
            CHECK(d == tiling_metric(y, x));
            CHECK(d.sign() > 0);
        }
    }

    SUBCASE("triangle inequality") {
        for (int i = 0; i < 8; ++i) {
            LineTiling x = LineTiling::seeded(fib_spec(), 900 + 3 * i);
            LineTiling y = LineTiling::seeded(fib_spec(), 901 + 3 * i);
            LineTiling z = LineTiling::seeded(fib_spec(), 902 + 3 * i);
            CHECK(tiling_metric(x, z) <= tiling_metric(x, y) + tiling_metric(y, z));
        }
    }
}

TEST_CASE("anchor corrections: certified bound and exact ratio") {
    const TileSpec X = fib_spec();
    const TileSpec Y = unit_scaled();
    const Golden C = conjugacy_tail_constant(X, Y);
    // |1 - (3-tau)| tau^2 / 2 = (2-tau)(1+tau)/2 = 1/2
    CHECK(C == q(1, 2));

    SUBCASE("per-level corrections obey the tail bound") {
        for (std::uint64_t seed : {31u, 32u, 33u, 34u}) {
            LineTiling x = LineTiling::seeded(X, seed);
            auto gam = conjugacy_approximants(x, Y, 28);
            auto c = steps_between(gam);
            for (size_t n = 0; n < c.size(); ++n)
                CHECK(c[n].abs() * tau_pow(static_cast<long long>(n)) <= C);
        }
    }

    SUBCASE("the all-b tower alternates with ratio exactly 1/tau") {
        LineTiling x = LineTiling::with_tower(
            X, kTileB, std::vector<TowerStep>(40, TowerStep{kTileB, 1}),
            Spine::Policy::rightmost, 0);
        auto c = steps_between(conjugacy_approximants(x, Y, 32));
        CHECK(c[0].abs() == Golden(BigRat(1), BigRat(-1, 2))); // (2-tau)/2
        for (size_t n = 0; n + 1 < c.size(); ++n) {
            CHECK(c[n + 1] * Golden::tau() == -c[n]);
            CHECK(c[n].sign() != 0);
        }
    }
}

TEST_CASE("conjugacy: identity, equivariance, round trip") {
    const TileSpec X = fib_spec();
    const TileSpec Y = unit_scaled();

    LineTiling x = LineTiling::seeded(X, 41);
    CHECK(identical(conjugate(x, X, eps8()), x));

    CHECK_THROWS_WITH_AS(conjugate(x, unit_spec(), eps8()),
                         "not conjugate: length invariants differ", std::runtime_error);

    SUBCASE("image is a valid tiling over the target lengths") {
        LineTiling y = conjugate(x, Y, eps8());
        CHECK(y.spec() == Y);
        CHECK(y.right_spine() == x.right_spine());
        for (const auto& g : steps_between(boundary_points(y, Golden(15)).pts))
            CHECK((g == Y.len_a || g == Y.len_b));
    }

    SUBCASE("translation equivariance is exact") {
        for (std::uint64_t seed = 60; seed < 80; ++seed) {
            LineTiling z = LineTiling::seeded(X, seed);
            Golden alpha = q(static_cast<long long>(seed % 7) - 3, 3) +
                           Golden::tau() * q(1, static_cast<long long>(seed % 5) + 1);
            LineTiling lhs = conjugate(translate(z, alpha), Y, eps8());
            LineTiling rhs = translate(conjugate(z, Y, eps8()), alpha);
            CHECK(identical(lhs, rhs));
            CHECK(tiling_metric(lhs, rhs).is_zero()); // 0 < 2 eps
        }
    }

    SUBCASE("round trip returns the original exactly") {
        for (std::uint64_t seed : {45u, 46u, 47u, 48u, 49u, 50u}) {
            LineTiling z = LineTiling::seeded(X, seed);
            CHECK(identical(conjugate(conjugate(z, Y, eps8()), X, eps8()), z));
        }
    }
}

TEST_CASE("persistent junction: gluing, legality, exact image") {
    LineTiling g = LineTiling::glued(fib_spec());
    REQUIRE(g.is_glued());
    CHECK(g.persistent_boundary().value() == Golden(0));
    CHECK(!LineTiling::seeded(fib_spec(), 1).persistent_boundary().has_value());

    auto bs = boundary_points(g, Golden(20));
    CHECK(has_point(bs, Golden(0)));
    for (const auto& gap : steps_between(bs.pts))
        CHECK((gap == Golden(1) || gap == Golden::tau()));

    SUBCASE("words across the junction lie in the substitution language") {
        auto tiles = segment(g, Golden(-25), Golden(25));
        std::vector<Letter> word;
        for (const auto& t : tiles) word.push_back(t.letter);
        auto fib = fibonacci();
        for (long long m = 2; m <= 7; ++m) {
            auto lang = fib.language(m);
            auto seen = word_factors(Pattern::word(word), m);
            CHECK(std::includes(lang.begin(), lang.end(), seen.begin(), seen.end()));
        }
    }

    SUBCASE("the conjugacy maps the junction to the junction exactly") {
        LineTiling moved = translate(g, q(5, 7));
        LineTiling image = conjugate(moved, unit_scaled(), eps8());
        REQUIRE(image.is_glued());
        CHECK(image.persistent_boundary().value() == q(5, 7));
        // the two base tiles flanking the junction give approximants
        // converging to the same image point: the right tower's corrections
        // vanish, the left tower's anchor is already exact
        auto gam = conjugacy_approximants(g, unit_scaled(), 36);
        CHECK(gam[36].abs() <= conjugacy_tail_constant(fib_spec(), unit_scaled()) *
                                   tau_pow(-36));
        CHECK(gam[36].abs() < q(1, 10000000));
    }
}

TEST_CASE("substitution action on self-similar tilings") {
    CHECK_THROWS_AS(substitute(LineTiling::seeded(unit_spec(), 3)),
                    std::invalid_argument);

    LineTiling x = LineTiling::seeded(fib_spec(), 71);
    LineTiling sx = substitute(x);
    CHECK(sx.depth() == x.depth() + 1);
    CHECK(sx.right_spine() == x.right_spine());

    SUBCASE("image tiles are exactly the subdivided rescaled tiles") {
        auto before = boundary_points(x, Golden(4));
        auto after = boundary_points(sx, Golden(7));
        for (const auto& p : before.pts)
            CHECK(std::binary_search(after.pts.begin(), after.pts.end(),
                                     p * Golden::tau()));

        auto image = segment(sx, Golden(-7), Golden(7));
        auto holds = [&](Letter l, const Golden& lo, const Golden& hi) {
            for (const auto& t : image)
                if (t.letter == l && t.left == lo && t.right == hi) return true;
            return false;
        };
        for (const auto& t : segment(x, Golden(-4), Golden(4))) {
            Golden lo = t.left * Golden::tau();
            Golden hi = t.right * Golden::tau();
            if (t.letter == kTileA) {
                CHECK(holds(kTileB, lo, hi));
            } else {
                CHECK(holds(kTileA, lo, lo + Golden(1)));
                CHECK(holds(kTileB, lo + Golden(1), hi));
            }
        }
    }

    SUBCASE("commutes exactly with translation") {
        Golden alpha = q(-2, 5) + Golden::tau() * q(1, 3);
        CHECK(identical(substitute(translate(x, alpha)),
                        translate(sx, alpha * Golden::tau())));
    }

    SUBCASE("the tower shifts down one level") {
        for (int k = 0; k <= 10; ++k) {
            CHECK(sx.tower_letter(k + 1) == x.tower_letter(k));
            CHECK(sx.tower_step(k + 1) == x.tower_step(k));
        }
    }

    SUBCASE("glued junction scales with the tiling") {
        LineTiling g = translate(LineTiling::glued(fib_spec()), q(1, 4));
        CHECK(substitute(g).persistent_boundary().value() == q(1, 4) * Golden::tau());
    }
}

TEST_CASE("substitution conjugated into a non-self-similar system") {
    const TileSpec Y = unit_spec();
    ConjugatedSubstitution psi = conjugated_substitution(Y, eps8());
    CHECK(length_invariant(psi.x_spec) == length_invariant(Y));
    CHECK(psi.x_spec.len_b == psi.x_spec.len_a * Golden::tau());

    LineTiling y = LineTiling::seeded(Y, 83);
    LineTiling py = psi(y);
    CHECK(py.spec() == Y);
    CHECK(py.depth() == y.depth() + 1);
    CHECK(py.right_spine() == y.right_spine());

    SUBCASE("commutation with translation, sped up by tau") {
        for (const Golden& alpha : {q(1, 3), Golden(1), Golden::tau()}) {
            CHECK(commutation_residual(psi, y, alpha).is_zero()); // < 2 eps
        }
    }

    SUBCASE("on the self-similar system it is plain substitution") {
        ConjugatedSubstitution self = conjugated_substitution(fib_spec(), eps8());
        CHECK(self.x_spec == fib_spec());
        LineTiling x = LineTiling::seeded(fib_spec(), 85);
        CHECK(identical(self(x), substitute(x)));
    }

    CHECK_THROWS_AS(psi(LineTiling::seeded(fib_spec(), 86)), std::invalid_argument);
}

TEST_CASE("divergent towers witness that the conjugacy is not local") {
    const TileSpec X = fib_spec();
    const TileSpec Y = unit_scaled();

    NonSbcWitness w = non_sbc_witness(X, Y, Golden(5));
    const int K = w.divergence_level;

    SUBCASE("the pair agrees on the window and splits above it") {
        CHECK(boundary_points(w.x, Golden(5)).pts ==
              boundary_points(w.x_prime, Golden(5)).pts);
        CHECK(w.x.right_spine()->step_at(K) == TowerStep{kTileB, 1});
        CHECK(w.x_prime.right_spine()->step_at(K) == TowerStep{kTileA, 0});
        for (int k = 0; k < K; ++k)
            CHECK(w.x.right_spine()->step_at(k) == w.x_prime.right_spine()->step_at(k));
    }

    SUBCASE("t matches the closed form and the summed series") {
        CHECK(w.t.sign() != 0);
        // |d| = (2 - tau)/tau = 2tau - 3
        CHECK(w.t.abs() == Golden(BigRat(-3), BigRat(2)) * tau_pow(-K));
        int N = K + 45;
        Golden gx = conjugacy_approximants(w.x, Y, N).back();
        Golden gxp = conjugacy_approximants(w.x_prime, Y, N).back();
        Golden gap = (w.t - (gx - gxp)).abs();
        CHECK(gap <= Golden(2) * conjugacy_tail_constant(X, Y) * tau_pow(-N));
    }

    SUBCASE("identical systems give the degenerate zero witness") {
        CHECK(non_sbc_witness(X, X, Golden(5)).t.is_zero());
    }

    SUBCASE("geometric window ladder shrinks t by exactly 1/tau") {
        std::vector<Golden> rungs;
        std::vector<int> base_level;
        Golden R = Golden(3);
        for (int j = 0; j < 5; ++j) {
            rungs.push_back(R);
            base_level.push_back(non_sbc_witness(X, Y, R, 0).divergence_level);
            R *= Golden::tau();
        }
        int K0 = 0;
        for (int j = 0; j < 5; ++j) K0 = std::max(K0, base_level[j] - j);
        std::vector<Golden> ts;
        for (int j = 0; j < 5; ++j) {
            NonSbcWitness wj = non_sbc_witness(X, Y, rungs[j], K0 + j - base_level[j]);
            CHECK(wj.divergence_level == K0 + j);
            CHECK(boundary_points(wj.x, rungs[j]).pts ==
                  boundary_points(wj.x_prime, rungs[j]).pts);
            ts.push_back(wj.t.abs());
        }
        for (size_t j = 0; j + 1 < ts.size(); ++j) {
            CHECK(ts[j + 1].sign() > 0);
            CHECK(ts[j + 1] < ts[j]);
            CHECK(ts[j + 1] * Golden::tau() == ts[j]);
            double ratio = ts[j + 1].to_double() / ts[j].to_double();
            CHECK(std::abs(ratio - 1.0 / Golden::tau().to_double()) < 0.05);
        }
    }
}

TEST_CASE("sliding-window relabeling cannot express the conjugacy") {
    const TileSpec X = fib_spec();
    const TileSpec Y = unit_scaled();
    NonSbcWitness w = non_sbc_witness(X, Y, Golden(6));
    LineTiling fx = conjugate(w.x, Y, eps8());
    LineTiling fxp = conjugate(w.x_prime, Y, eps8());
    REQUIRE((fx.shift() - fxp.shift()).sign() != 0);

    // tokens record the tile letter and the exact in-tile offset of each
    // integer sample point, so any relative translation of the image shows
    // up at radius zero already
    std::map<std::string, Letter> ids;
    auto token_at = [&](const LineTiling& t, long long i) {
        for (const auto& pt : segment(t, Golden(i), Golden(i)))
            if (pt.left <= Golden(i) && Golden(i) < pt.right) {
                std::string key = (pt.letter == kTileA ? "a@" : "b@") +
                                  (Golden(i) - pt.left).str();
                auto [it, unused] = ids.try_emplace(key, static_cast<Letter>(ids.size()));
                return it->second;
            }
        throw std::runtime_error("sample point not covered");
    };
    auto row = [&](const LineTiling& t) {
        std::vector<Letter> letters;
        for (long long i = -4; i <= 4; ++i) letters.push_back(token_at(t, i));
        return Pattern::word(letters);
    };

    std::vector<std::pair<Pattern, Pattern>> samples{{row(w.x), row(fx)},
                                                     {row(w.x_prime), row(fxp)}};
    CHECK(samples[0].first == samples[1].first);   // inputs agree near 0
    CHECK(samples[0].second != samples[1].second); // images are offset by t
    for (int n = 0; n <= 2; ++n) {
        CodeDetection det = detect_code(samples, n);
        CHECK(!det.consistent);
    }
}

TEST_CASE("modulus ladder for the agreement radius") {
    const TileSpec X = fib_spec();
    const TileSpec Y = unit_scaled();

    ModulusProbe same = modulus_probe(X, X, eps8(), Golden(1));
    CHECK(same.rungs == 0);
    CHECK(same.R == Golden(1));
    CHECK(same.worst_t_abs.is_zero());

    // eps at the tile-length scale is satisfied on the first rung
    ModulusProbe coarse = modulus_probe(X, Y, Golden(2), Golden(1));
    CHECK(coarse.rungs == 0);

    SUBCASE("halving eps adds about log_tau(2) rungs on average") {
        // |t| shrinks by exactly 1/tau per rung, so one halving adds
        // floor/ceil of log_tau(2) ~ 1.44 rungs once the tolerance binds;
        // the first probes can sit below the starting eps and add none
        Golden eps = q(1, 10);
        ModulusProbe first = modulus_probe(X, Y, eps, Golden(1));
        ModulusProbe prev = first;
        for (int h = 0; h < 5; ++h) {
            eps = eps * q(1, 2);
            ModulusProbe cur = modulus_probe(X, Y, eps, Golden(1));
            CHECK(cur.worst_t_abs < eps);
            int added = cur.rungs - prev.rungs;
            CHECK(added >= 0);
            CHECK(added <= 2);
            prev = cur;
        }
        int total = prev.rungs - first.rungs;
        CHECK(total >= 3);
        CHECK(total <= 8);
    }
}

TEST_CASE("hierarchical address view") {
    LineTiling x = LineTiling::seeded(fib_spec(), 91);
    auto triples = address_view(x, 12);
    REQUIRE(triples.size() == 12);
    for (int k = 0; k < 12; ++k) {
        CHECK(triples[k].level == k);
        CHECK(triples[k].letter == x.tower_letter(k));
        Letter parent = x.tower_letter(k + 1);
        int idx = triples[k].child_index;
        if (parent == kTileA) {
            CHECK(idx == 0);
            CHECK(triples[k].letter == kTileB);
        } else {
            CHECK((idx == 0 || idx == 1));
            CHECK(triples[k].letter == (idx == 0 ? kTileA : kTileB));
        }
    }
    // substitution shifts the address down one level
    auto sub = address_view(substitute(x), 6);
    for (int k = 0; k < 5; ++k) {
        CHECK(sub[k + 1].letter == triples[k].letter);
        CHECK(sub[k + 1].child_index == triples[k].child_index);
    }
}

TEST_CASE("one-sided towers stop at their fixed edge") {
    LineTiling x = LineTiling::with_tower(fib_spec(), kTileB, {},
                                          Spine::Policy::rightmost, 0);
    // the base tile's right edge never moves, so [-5, 5] is unreachable
    CHECK_THROWS_WITH_AS(boundary_points(x, Golden(5)),
                         "tower does not reach the horizon", std::runtime_error);
    // within the covered side everything works
    auto bs = boundary_points(x, Golden(1));
    CHECK(has_point(bs, Golden(0)));
    for (const auto& g : steps_between(bs.pts))
        CHECK((g == Golden(1) || g == Golden::tau()));
    auto tiles = segment(x, Golden(-40), Golden(0));
    CHECK(!tiles.empty());
    for (const auto& t : tiles) CHECK(t.right <= x.spec().len_b);
}

TEST_CASE("origin offset sits inside the covering tile") {
    LineTiling unit = LineTiling::with_tower(unit_spec(), kTileA, {},
                                             Spine::Policy::seeded, 23);
    CHECK(origin_offset(unit).is_zero());
    CHECK(origin_offset(translate(unit, q(1, 10))) == q(9, 10));

    for (std::uint64_t seed : {101u, 102u, 103u}) {
        LineTiling x = LineTiling::seeded(fib_spec(), seed);
        Golden off = origin_offset(x);
        CHECK(off.sign() >= 0);
        CHECK(off < Golden::tau());
        // the tile's left edge is a boundary point
        CHECK(has_point(boundary_points(x, Golden(3)), -off));
    }
}
