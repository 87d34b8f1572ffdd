#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subtile/rng.hpp"
#include "subtile/substitution2d.hpp"

#include <set>

using namespace subtile;

namespace {
std::string fmt(const Substitution1D& s, const Pattern& p) {
    return format_pattern(s.alphabet(), p);
}
} // namespace

TEST_CASE("fibonacci images") {
    auto fib = fibonacci();
    CHECK(fmt(fib, fib.rule(0)) == "b");
    CHECK(fmt(fib, fib.rule(1)) == "ab");
    CHECK(fmt(fib, fib.iterate(1, 2)) == "bab");
    CHECK(fmt(fib, fib.iterate(1, 3)) == "abbab");
    CHECK(fmt(fib, fib.iterate(1, 4)) == "bababbab");
    CHECK(fmt(fib, fib.iterate(1, 5)) == "abbabbababbab");
    CHECK(fmt(fib, fib.iterate(0, 3)) == "bab"); // psi^3(a) = psi^2(b)
}

TEST_CASE("iterate is consistent with one-step expansion") {
    auto fib = fibonacci();
    for (int k = 1; k <= 10; ++k) {
        // psi^k(b) = psi^(k-1)(a) psi^(k-1)(b)
        Pattern expect_a = fib.iterate(0, k - 1);
        Pattern expect_b = fib.iterate(1, k - 1);
        std::vector<Letter> cat(expect_a.cells());
        cat.insert(cat.end(), expect_b.cells().begin(), expect_b.cells().end());
        CHECK(fib.iterate(1, k) == Pattern::word(cat));
    }
}

TEST_CASE("exact lengths without materializing") {
    auto fib = fibonacci();
    long long want[] = {1, 2, 3, 5, 8, 13, 21};
    for (int k = 0; k <= 6; ++k) CHECK(fib.iterate_length(1, k) == BigInt(want[k]));
    for (int k = 0; k <= 12; ++k)
        CHECK(fib.iterate_length(1, k) == BigInt(fib.iterate(1, k).width()));
    // far past anything materialized
    CHECK(fib.iterate_length(1, 90) == BigInt("7540113804746346429"));
}

TEST_CASE("abelianization and primitivity") {
    auto fib = fibonacci();
    auto m = fib.abelianization();
    // occurrences of letter i in rule(j): rule(a)=b, rule(b)=ab
    CHECK(m[0][0] == 0);
    CHECK(m[1][0] == 1);
    CHECK(m[0][1] == 1);
    CHECK(m[1][1] == 1);
    CHECK(fib.is_primitive());

    Alphabet ab({"a", "b"});
    Substitution1D reducible(ab, {{0, 1}, {1}}); // a -> ab, b -> b
    CHECK(!reducible.is_primitive());
    CHECK_THROWS_WITH(reducible.language(2), "saturation not guaranteed");
    CHECK(!reducible.language_capped(2, 6).empty());
}

TEST_CASE("word language: frozen small cases") {
    auto fib = fibonacci();
    auto& a = fib.alphabet();
    auto words = [&](long long m) {
        std::vector<std::string> out;
        for (const auto& w : fib.language(m)) out.push_back(format_pattern(a, w));
        return out;
    };
    CHECK(words(1) == std::vector<std::string>{"a", "b"});
    CHECK(words(2) == std::vector<std::string>{"ab", "ba", "bb"});
    CHECK(words(3) == std::vector<std::string>{"aba", "abb", "bab", "bba"});
    CHECK(words(4) == std::vector<std::string>{"abab", "abba", "baba", "babb", "bbab"});
}

TEST_CASE("word language matches factors of a deep iterate") {
    auto fib = fibonacci();
    Pattern deep = fib.iterate(1, 25);
    for (long long m = 1; m <= 20; ++m) {
        auto lang = fib.language(m);
        auto oracle = word_factors(deep, m);
        CHECK(lang == oracle);
        CHECK(lang.size() == static_cast<std::size_t>(m + 1));
    }
}

TEST_CASE("factor kernel: parallel matches serial") {
    auto fib = fibonacci();
    Pattern w = fib.iterate(1, 15);
    for (long long m : {1, 2, 5, 9, 16})
        CHECK(word_factors(w, m) == word_factors_serial(w, m));
    CHECK_THROWS(word_factors(w, 0));
}

TEST_CASE("parent relation") {
    auto fib = fibonacci();
    auto pa = fib.parents(0);
    REQUIRE(pa.size() == 1);
    CHECK(pa[0] == std::make_pair(Letter(1), 0)); // a only occurs in rule(b) at slot 0
    auto pb = fib.parents(1);
    REQUIRE(pb.size() == 2);
    CHECK(pb[0] == std::make_pair(Letter(0), 0)); // rule(a) = b
    CHECK(pb[1] == std::make_pair(Letter(1), 1)); // rule(b) = ab
}

TEST_CASE("product rules are the four frozen blocks") {
    auto f2 = fibonacci_product();
    auto& a = f2.alphabet();
    CHECK(a.token(0) == "a*a");
    CHECK(a.token(1) == "a*b");
    CHECK(a.token(2) == "b*a");
    CHECK(a.token(3) == "b*b");
    CHECK(format_pattern(a, f2.rule(a.index("a*a"))) == "b*b");
    CHECK(format_pattern(a, f2.rule(a.index("b*a"))) == "a*b b*b");
    CHECK(format_pattern(a, f2.rule(a.index("a*b"))) == "b*b/b*a");
    CHECK(format_pattern(a, f2.rule(a.index("b*b"))) == "a*b b*b/a*a b*a");
}

TEST_CASE("product formula agrees with recursive pasting") {
    auto f2 = fibonacci_product();
    for (Letter l = 0; l < 4; ++l)
        for (int k = 0; k <= 6; ++k)
            CHECK(f2.iterate2d(l, k) == f2.iterate2d_recursive(l, k));
}

TEST_CASE("level-3 image of b*b holds a constant 2x2 block") {
    auto f2 = fibonacci_product();
    Letter bb = f2.alphabet().index("b*b");
    Pattern big = f2.iterate2d(bb, 3);
    CHECK(big.width() == 5);
    CHECK(big.height() == 5);
    Pattern block = Pattern::grid(2, 2, {bb, bb, bb, bb});
    auto offs = contains(big, block);
    REQUIRE(offs.size() == 1);
    CHECK(offs[0] == Vec2{1, 1}); // psi^3(b) = abbab: bb at position 1
}

TEST_CASE("window language routes agree") {
    auto f2 = fibonacci_product();
    auto sat = f2.language2d(1);
    auto prod = f2.language2d_product(1);
    CHECK(sat == prod);
    CHECK(sat.size() == 16); // 4 h-words x 4 v-words
    CHECK(f2.language2d_product(2).size() == 36);
}

TEST_CASE("level-k product images recur inside deeper ones") {
    auto f2 = fibonacci_product();
    Letter bb = f2.alphabet().index("b*b");
    Pattern base = f2.iterate2d(bb, 2);
    for (int j = 1; j <= 3; ++j)
        CHECK(!contains(f2.iterate2d(bb, 2 + j), base).empty());
}

TEST_CASE("chair table") {
    auto ch = chair();
    auto& a = ch.alphabet();
    CHECK(format_pattern(a, ch.rule(a.index("NE"))) == "NE NE/SW NE");
    CHECK(format_pattern(a, ch.rule(a.index("NW"))) == "NW NW/NW SE");
    CHECK(format_pattern(a, ch.rule(a.index("SE"))) == "NW SE/SE SE");
    CHECK(format_pattern(a, ch.rule(a.index("SW"))) == "SW NE/SW SW");
    // three cells of the parent's orientation, reversed orientation in the
    // remaining corner
    Letter opp[] = {a.index("SW"), a.index("SE"), a.index("NW"), a.index("NE")};
    for (Letter o = 0; o < 4; ++o) {
        int same = 0, other = 0;
        Letter other_letter = 5;
        for (Letter c : ch.rule(o).cells()) {
            if (c == o) ++same;
            else {
                ++other;
                other_letter = c;
            }
        }
        CHECK(same == 3);
        CHECK(other == 1);
        CHECK(other_letter == opp[o]);
    }
}

TEST_CASE("chair self-similarity round trip") {
    auto ch = chair();
    for (Letter o = 0; o < 4; ++o)
        for (int k = 0; k <= 3; ++k) {
            Pattern cur = ch.iterate2d(o, k);
            // paste one-step rule blocks over the level-k pattern by hand
            long long W = cur.width() * 2, H = cur.height() * 2;
            std::vector<Letter> cells(static_cast<std::size_t>(W * H));
            for (long long r = 0; r < cur.height(); ++r)
                for (long long c = 0; c < cur.width(); ++c) {
                    const Pattern& img = ch.rule(cur.at(c, r));
                    for (long long rr = 0; rr < 2; ++rr)
                        for (long long cc = 0; cc < 2; ++cc)
                            cells[static_cast<std::size_t>((r * 2 + rr) * W + c * 2 + cc)] =
                                img.at(cc, rr);
                }
            CHECK(ch.iterate2d(o, k + 1) == Pattern::grid(W, H, std::move(cells)));
        }
}

TEST_CASE("chair window accumulation runs at a fixed cap") {
    auto ch = chair();
    auto lang = ch.language2d_capped(1, 5);
    CHECK(!lang.empty());
    // both orientation classes contribute
    std::set<Letter> seen;
    for (const auto& w : lang)
        for (Letter c : w.cells().cells()) seen.insert(c);
    CHECK(seen.size() == 4);
}
