#pragma once

#include "subtile/substitution1d.hpp"

#include <utility>
#include <vector>

namespace subtile {

// Product of two letter substitutions, acting on the product alphabet
// {u*v}: the image of u*v is the |rule_h(u)| x |rule_v(v)| grid whose cell
// (c, r) is rule_h(u)[c] * rule_v(v)[r]. Product letters are indexed
// h-major: index(u*v) = u * |Av| + v.
class ProductSubstitution2D {
public:
    ProductSubstitution2D(Substitution1D h, Substitution1D v);

    const Substitution1D& horizontal() const { return h_; }
    const Substitution1D& vertical() const { return v_; }
    const Alphabet& alphabet() const { return prod_; }

    Letter pair_letter(Letter hu, Letter vv) const;
    std::pair<Letter, Letter> split(Letter prod) const;

    Pattern rule(Letter prod) const;

    // Cell (c, r) of the level-k image of u*v is psi_h^k(u)[c] * psi_v^k(v)[r].
    Pattern iterate2d(Letter prod, int k) const;
    // Same image built by recursive pasting of one-step rule blocks; row
    // heights and column widths must line up, which the pasting checks.
    Pattern iterate2d_recursive(Letter prod, int k) const;

    // Radius-n square windows of the product system, two routes that must
    // agree: accumulation over levels until stable, and the product of the
    // two one-dimensional languages. Both require primitive factors.
    std::vector<Window> language2d(int n) const;
    std::vector<Window> language2d_product(int n) const;

private:
    Substitution1D h_, v_;
    Alphabet prod_;
};

// fibonacci x fibonacci on the four-letter product alphabet.
ProductSubstitution2D fibonacci_product();

// Square block substitution: every letter maps to a q x q grid.
class BlockSubstitution2D {
public:
    BlockSubstitution2D(Alphabet a, int q, std::vector<Pattern> rules);

    const Alphabet& alphabet() const { return alpha_; }
    int block_size() const { return q_; }
    const Pattern& rule(Letter a) const;

    Pattern iterate2d(Letter a, int k) const;

    // Window accumulation up to a fixed level; block substitutions are not
    // assumed primitive, so no stabilization promise is made.
    std::vector<Window> language2d_capped(int n, int k_cap) const;

private:
    Alphabet alpha_;
    int q_;
    std::vector<Pattern> rules_;
};

// Four orientation letters NE, NW, SE, SW with 2 x 2 images. The image of
// orientation o carries o at o's corner cell and at the two cells adjacent
// to that corner; the remaining (diagonally opposite) cell carries the
// reversed orientation. E.g. NE -> [NE NE / SW NE] (rows top to bottom).
BlockSubstitution2D chair();

} // namespace subtile
