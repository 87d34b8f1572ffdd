#pragma once

#include "subtile/substitution1d.hpp"
#include "subtile/substitution2d.hpp"

#include <string>

namespace subtile {

// Deterministic SVG drawings of substitution patches: the level-0 cells of
// the level-`level` image, colored by letter, under nested outlines of the
// level-j supertiles for every 1 <= j <= level. Cells sit on an integer
// pixel grid, so the byte stream is stable across runs. Cell rects carry
// class="cell", outline rects class="outline".

// q^level x q^level block patch.
std::string render_block_svg(const BlockSubstitution2D& s, Letter a, int level);

// |psi_h^level| x |psi_v^level| product patch; outlines follow the exact
// per-letter expansion widths of each factor.
std::string render_product_svg(const ProductSubstitution2D& s, Letter prod,
                               int level);

// One-row strip of the level-`level` word.
std::string render_word_svg(const Substitution1D& s, Letter a, int level);

} // namespace subtile
