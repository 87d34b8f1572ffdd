#pragma once

#include "subtile/line_tiling.hpp"
#include "subtile/plane_tiling.hpp"
#include "subtile/substitution1d.hpp"
#include "subtile/substitution2d.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace subtile {

// Structured-text input documents. Lines are "key: value"; '#' starts a
// comment; blank lines are skipped. The "kind" key selects the schema and
// every other key must belong to it — unknown or duplicate scalar keys are
// rejected with the offending position.
//
//   kind: substitution1d          kind: product2d
//   letters: a b                  h-letters: a b
//   rule: a -> b                  v-letters: a b
//   rule: b -> a b                h-rule: a -> b   (one per h-letter)
//                                 v-rule: ...      (one per v-letter)
//
//   kind: block2d                 kind: tilespec
//   letters: ne nw se sw          x-len-a: 1
//   block-size: 2                 x-len-b: (0,1)
//   block: ne -> ne ne / sw ne    y-len-a: (0,1)     (y-* optional, paired)
//     (rows top to bottom)        y-len-b: (1,1)
//
//   kind: linetiling              kind: patch
//   len-a: 1                      letters: a b
//   len-b: (0,1)                  row: a b    (top to bottom, as drawn)
//   base: b                       row: b a
//   policy: seeded
//   seed: 42
//   step: b 1      (optional forced tower steps, level by level)
//   shift: (1/2,0) (optional)
//
// Lengths and shifts are exact literals: an integer "3", a rational "3/2",
// or a pair "(u,v)" meaning u + v*tau with rational u, v.

struct RuleParseError : std::runtime_error {
    int line;   // 1-based
    int column; // 1-based
    RuleParseError(int line, int column, const std::string& what);
};

enum class RuleKind {
    substitution1d,
    product2d,
    block2d,
    tilespec,
    linetiling,
    patch
};

struct ParsedRuleFile {
    RuleKind kind;
    std::optional<Substitution1D> sub1d;
    std::optional<ProductSubstitution2D> prod2d;
    std::optional<BlockSubstitution2D> block2d;
    std::optional<TileSpec> spec_x; // tilespec: the x (or only) spec
    std::optional<TileSpec> spec_y;
    std::optional<LineTiling> tiling;
    std::optional<PeriodicGrid> grid;
    std::optional<Alphabet> grid_alphabet; // letter names for grid rows
};

ParsedRuleFile parse_rule_file(const std::string& text);

// Golden literal: "(u,v)" pair, or a bare integer / rational meaning a
// rational multiple of 1. Throws std::invalid_argument.
Golden parse_golden_literal(const std::string& token);
// Exact "(u,v)" form, accepted back by parse_golden_literal.
std::string golden_literal(const Golden& g);

// A "kind: linetiling" document reconstructing x: spec, spine base, policy,
// seed, every materialized tower step as a forced step, and the shift.
// Later levels regenerate identically from (policy, seed), so the document
// pins the same infinite tiling. Glued tilings and tilings that have been
// subdivided in place are not serialized; both throw std::invalid_argument.
std::string serialize_line_tiling(const LineTiling& x);

} // namespace subtile
