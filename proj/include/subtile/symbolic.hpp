#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace subtile {

using Letter = std::uint32_t;

struct Vec2 {
    long long x = 0;
    long long y = 0;
    auto operator<=>(const Vec2&) const = default;
    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
};

// Ordered set of distinct symbol tokens; Letter is an index into it.
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> tokens);

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(Letter i) const;
    Letter index(const std::string& tok) const;
    bool has(const std::string& tok) const { return index_.count(tok) != 0; }
    bool single_char() const { return single_char_; }

    // Tokens joined; no separator when every token is one character,
    // single spaces otherwise.
    std::string format_word(const std::vector<Letter>& w) const;
    std::vector<Letter> parse_word(const std::string& text) const;

    bool operator==(const Alphabet& o) const { return tokens_ == o.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::map<std::string, Letter> index_;
    bool single_char_;
};

// Rectangular array of letters. dim is 1 or 2. Cells are stored row-major
// with row 0 at the BOTTOM: at(c, r) is column c (left to right), row r
// (bottom to top). 1-dimensional patterns have height 1.
class Pattern {
public:
    Pattern() : dim_(1), w_(0), h_(1) {}
    static Pattern word(std::vector<Letter> cells);
    static Pattern grid(long long w, long long h, std::vector<Letter> cells);

    int dim() const { return dim_; }
    long long width() const { return w_; }
    long long height() const { return h_; }
    bool empty() const { return cells_.empty(); }
    std::size_t cell_count() const { return cells_.size(); }

    Letter at(long long c, long long r = 0) const;
    void set(long long c, long long r, Letter v);

    const std::vector<Letter>& cells() const { return cells_; }
    std::vector<Letter> row(long long r) const;

    auto operator<=>(const Pattern&) const = default;

private:
    Pattern(int dim, long long w, long long h, std::vector<Letter> cells)
        : dim_(dim), w_(w), h_(h), cells_(std::move(cells)) {}

    int dim_;
    long long w_, h_;
    std::vector<Letter> cells_;
};

// Square (or, in one dimension, centred interval) pattern of side 2n+1.
class Window {
public:
    Window() : radius_(0) {}
    Window(int radius, Pattern cells);

    int radius() const { return radius_; }
    const Pattern& cells() const { return cells_; }

    auto operator<=>(const Window&) const = default;

private:
    int radius_;
    Pattern cells_;
};

// Infinite configuration obtained by repeating a finite pattern periodically
// in every direction. at() accepts arbitrary lattice coordinates.
class PeriodicConfig {
public:
    explicit PeriodicConfig(Pattern domain);

    const Pattern& domain() const { return domain_; }
    int dim() const { return domain_.dim(); }

    Letter at(Vec2 j) const;
    Letter at(long long x) const { return at(Vec2{x, 0}); }

private:
    Pattern domain_;
};

// sigma^j: the configuration whose value at p is x(p + j).
PeriodicConfig shift(const PeriodicConfig& x, Vec2 j);

// Window of radius n centred at `center`.
Window project(const PeriodicConfig& x, Vec2 center, int n);

// Radius-n window of a finite pattern centred at `center` (pattern-local
// coordinates; y ignored for one-dimensional patterns). Throws
// std::out_of_range when the window pokes out of the pattern.
Window pattern_window(const Pattern& p, Vec2 center, int n);

// All radius-n windows fully contained in the pattern, deduplicated and
// sorted. Throws std::invalid_argument("window exceeds pattern") when the
// pattern is smaller than 2n+1 in any direction. The unsuffixed version
// scans placements in parallel; _serial is the reference implementation.
std::vector<Window> subwindows(const Pattern& p, int n);
std::vector<Window> subwindows_serial(const Pattern& p, int n);

// Offsets (lexicographic, x before y) at which `small` occurs inside `big`.
std::vector<Vec2> contains(const Pattern& big, const Pattern& small);

// Display form: rows top to bottom joined by '/', each row a formatted word.
std::string format_pattern(const Alphabet& a, const Pattern& p);
Pattern parse_pattern(const Alphabet& a, const std::string& text);

} // namespace subtile
