#include "subtile/render_svg.hpp"

#include <stdexcept>
#include <vector>

namespace subtile {

namespace {

constexpr long long kCell = 24; // pixels per level-0 cell

const char* palette(Letter l) {
    static const char* kColors[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                    "#b07aa1", "#edc948", "#76b7b2", "#ff9da7"};
    return kColors[l % 8];
}

std::string num(long long v) { return std::to_string(v); }

std::string header(long long w_cells, long long h_cells) {
    long long w = w_cells * kCell, h = h_cells * kCell;
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " +
           num(h) + "\">\n";
}

std::string cell_rect(long long c, long long r, long long h_cells, Letter l) {
    // pattern row 0 is the bottom row; SVG y grows downward
    long long x = c * kCell, y = (h_cells - 1 - r) * kCell;
    return "<rect class=\"cell\" x=\"" + num(x) + "\" y=\"" + num(y) +
           "\" width=\"" + num(kCell) + "\" height=\"" + num(kCell) +
           "\" fill=\"" + palette(l) + "\" stroke=\"#ffffff\" stroke-width=\"1\"/>\n";
}

std::string outline_rect(long long x0_cells, long long w_cells,
                         long long y0_cells, long long h_cells,
                         long long total_h_cells, int level) {
    long long x = x0_cells * kCell;
    long long y = (total_h_cells - y0_cells - h_cells) * kCell;
    return "<rect class=\"outline\" x=\"" + num(x) + "\" y=\"" + num(y) +
           "\" width=\"" + num(w_cells * kCell) + "\" height=\"" +
           num(h_cells * kCell) + "\" fill=\"none\" stroke=\"#000000\"" +
           " stroke-width=\"" + num(level) + "\"/>\n";
}

// Prefix boundaries (in cells) of the level-j supertiles along one axis:
// the level-(level-j) word lists the supertile letters; each spans the
// exact length of its level-j expansion.
std::vector<long long> axis_cuts(const Substitution1D& s, Letter a, int level,
                                 int j) {
    std::vector<long long> cuts{0};
    Pattern word = s.iterate(a, level - j);
    for (long long i = 0; i < word.width(); ++i)
        cuts.push_back(cuts.back() +
                       s.iterate_length(word.at(i), j).convert_to<long long>());
    return cuts;
}

void check_level(int level) {
    if (level < 0 || level > 12)
        throw std::invalid_argument("render level out of range");
}

} // namespace

std::string render_block_svg(const BlockSubstitution2D& s, Letter a, int level) {
    check_level(level);
    if (a >= s.alphabet().size()) throw std::invalid_argument("unknown letter");
    Pattern p = s.iterate2d(a, level);
    long long side = p.width();
    std::string out = header(side, side);
    for (long long r = 0; r < p.height(); ++r)
        for (long long c = 0; c < p.width(); ++c)
            out += cell_rect(c, r, side, p.at(c, r));
    long long q = s.block_size();
    long long span = 1;
    for (int j = 1; j <= level; ++j) {
        span *= q;
        for (long long y = 0; y < side; y += span)
            for (long long x = 0; x < side; x += span)
                out += outline_rect(x, span, y, span, side, j);
    }
    out += "</svg>\n";
    return out;
}

std::string render_product_svg(const ProductSubstitution2D& s, Letter prod,
                               int level) {
    check_level(level);
    if (prod >= s.alphabet().size()) throw std::invalid_argument("unknown letter");
    auto [hu, vv] = s.split(prod);
    Pattern p = s.iterate2d(prod, level);
    long long w = p.width(), h = p.height();
    std::string out = header(w, h);
    for (long long r = 0; r < h; ++r)
        for (long long c = 0; c < w; ++c)
            out += cell_rect(c, r, h, p.at(c, r));
    for (int j = 1; j <= level; ++j) {
        auto xs = axis_cuts(s.horizontal(), hu, level, j);
        auto ys = axis_cuts(s.vertical(), vv, level, j);
        for (std::size_t yi = 0; yi + 1 < ys.size(); ++yi)
            for (std::size_t xi = 0; xi + 1 < xs.size(); ++xi)
                out += outline_rect(xs[xi], xs[xi + 1] - xs[xi], ys[yi],
                                    ys[yi + 1] - ys[yi], h, j);
    }
    out += "</svg>\n";
    return out;
}

std::string render_word_svg(const Substitution1D& s, Letter a, int level) {
    check_level(level);
    if (a >= s.alphabet().size()) throw std::invalid_argument("unknown letter");
    Pattern p = s.iterate(a, level);
    long long w = p.width();
    std::string out = header(w, 1);
    for (long long c = 0; c < w; ++c) out += cell_rect(c, 0, 1, p.at(c));
    for (int j = 1; j <= level; ++j) {
        auto xs = axis_cuts(s, a, level, j);
        for (std::size_t xi = 0; xi + 1 < xs.size(); ++xi)
            out += outline_rect(xs[xi], xs[xi + 1] - xs[xi], 0, 1, 1, j);
    }
    out += "</svg>\n";
    return out;
}

} // namespace subtile
