#include "subtile/symbolic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subtile {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw std::invalid_argument("empty alphabet");
    single_char_ = true;
    for (Letter i = 0; i < tokens_.size(); ++i) {
        const std::string& t = tokens_[i];
        if (t.empty()) throw std::invalid_argument("empty alphabet token");
        if (t.find_first_of(" \t\n/") != std::string::npos)
            throw std::invalid_argument("alphabet token contains separator: " + t);
        if (!index_.emplace(t, i).second)
            throw std::invalid_argument("duplicate alphabet token: " + t);
        if (t.size() != 1) single_char_ = false;
    }
}

const std::string& Alphabet::token(Letter i) const {
    if (i >= tokens_.size()) throw std::out_of_range("letter out of alphabet");
    return tokens_[i];
}

Letter Alphabet::index(const std::string& tok) const {
    auto it = index_.find(tok);
    if (it == index_.end()) throw std::invalid_argument("unknown token: " + tok);
    return it->second;
}

std::string Alphabet::format_word(const std::vector<Letter>& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single_char_) out += ' ';
        out += token(w[i]);
    }
    return out;
}

std::vector<Letter> Alphabet::parse_word(const std::string& text) const {
    std::vector<Letter> out;
    if (single_char_) {
        for (char c : text) {
            if (isspace(static_cast<unsigned char>(c))) continue;
            out.push_back(index(std::string(1, c)));
        }
    } else {
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) out.push_back(index(tok));
    }
    return out;
}

Pattern Pattern::word(std::vector<Letter> cells) {
    long long w = static_cast<long long>(cells.size());
    return Pattern(1, w, 1, std::move(cells));
}

Pattern Pattern::grid(long long w, long long h, std::vector<Letter> cells) {
    if (w < 0 || h < 0 || static_cast<long long>(cells.size()) != w * h)
        throw std::invalid_argument("pattern cell count does not match extents");
    return Pattern(2, w, h, std::move(cells));
}

Letter Pattern::at(long long c, long long r) const {
    if (c < 0 || c >= w_ || r < 0 || r >= h_)
        throw std::out_of_range("pattern cell out of range");
    return cells_[static_cast<std::size_t>(r * w_ + c)];
}

void Pattern::set(long long c, long long r, Letter v) {
    if (c < 0 || c >= w_ || r < 0 || r >= h_)
        throw std::out_of_range("pattern cell out of range");
    cells_[static_cast<std::size_t>(r * w_ + c)] = v;
}

std::vector<Letter> Pattern::row(long long r) const {
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(w_));
    for (long long c = 0; c < w_; ++c) out.push_back(at(c, r));
    return out;
}

Window::Window(int radius, Pattern cells) : radius_(radius), cells_(std::move(cells)) {
    if (radius < 0) throw std::invalid_argument("negative window radius");
    long long side = 2LL * radius + 1;
    bool ok = cells_.width() == side &&
              (cells_.dim() == 1 ? cells_.height() == 1 : cells_.height() == side);
    if (!ok) throw std::invalid_argument("window extents do not match radius");
}

PeriodicConfig::PeriodicConfig(Pattern domain) : domain_(std::move(domain)) {
    if (domain_.empty()) throw std::invalid_argument("empty periodic domain");
}

namespace {
long long floor_mod(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}
} // namespace

Letter PeriodicConfig::at(Vec2 j) const {
    return domain_.at(floor_mod(j.x, domain_.width()),
                      floor_mod(j.y, domain_.height()));
}

PeriodicConfig shift(const PeriodicConfig& x, Vec2 j) {
    const Pattern& d = x.domain();
    std::vector<Letter> cells;
    cells.reserve(d.cell_count());
    for (long long r = 0; r < d.height(); ++r)
        for (long long c = 0; c < d.width(); ++c)
            cells.push_back(x.at(Vec2{c + j.x, r + j.y}));
    Pattern nd = d.dim() == 1 ? Pattern::word(std::move(cells))
                              : Pattern::grid(d.width(), d.height(), std::move(cells));
    return PeriodicConfig(std::move(nd));
}

Window project(const PeriodicConfig& x, Vec2 center, int n) {
    long long side = 2LL * n + 1;
    std::vector<Letter> cells;
    if (x.dim() == 1) {
        cells.reserve(static_cast<std::size_t>(side));
        for (long long c = -n; c <= n; ++c) cells.push_back(x.at(Vec2{center.x + c, 0}));
        return Window(n, Pattern::word(std::move(cells)));
    }
    cells.reserve(static_cast<std::size_t>(side * side));
    for (long long r = -n; r <= n; ++r)
        for (long long c = -n; c <= n; ++c)
            cells.push_back(x.at(Vec2{center.x + c, center.y + r}));
    return Window(n, Pattern::grid(side, side, std::move(cells)));
}

namespace {

Window window_at(const Pattern& p, int n, long long c0, long long r0) {
    long long side = 2LL * n + 1;
    std::vector<Letter> cells;
    if (p.dim() == 1) {
        cells.reserve(static_cast<std::size_t>(side));
        for (long long c = 0; c < side; ++c) cells.push_back(p.at(c0 + c, 0));
        return Window(n, Pattern::word(std::move(cells)));
    }
    cells.reserve(static_cast<std::size_t>(side * side));
    for (long long r = 0; r < side; ++r)
        for (long long c = 0; c < side; ++c) cells.push_back(p.at(c0 + c, r0 + r));
    return Window(n, Pattern::grid(side, side, std::move(cells)));
}

void check_window_fits(const Pattern& p, int n) {
    long long side = 2LL * n + 1;
    bool fits = p.width() >= side && (p.dim() == 1 || p.height() >= side);
    if (!fits) throw std::invalid_argument("window exceeds pattern");
}

} // namespace

Window pattern_window(const Pattern& p, Vec2 center, int n) {
    long long r0 = p.dim() == 1 ? 0 : center.y - n;
    return window_at(p, n, center.x - n, r0);
}

std::vector<Window> subwindows_serial(const Pattern& p, int n) {
    check_window_fits(p, n);
    long long side = 2LL * n + 1;
    long long cols = p.width() - side + 1;
    long long rows = p.dim() == 1 ? 1 : p.height() - side + 1;
    std::vector<Window> out;
    out.reserve(static_cast<std::size_t>(cols * rows));
    for (long long r = 0; r < rows; ++r)
        for (long long c = 0; c < cols; ++c) out.push_back(window_at(p, n, c, r));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Window> subwindows(const Pattern& p, int n) {
    check_window_fits(p, n);
    long long side = 2LL * n + 1;
    long long cols = p.width() - side + 1;
    long long rows = p.dim() == 1 ? 1 : p.height() - side + 1;
    long long total = cols * rows;
    std::vector<Window> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < total; ++i)
        out[static_cast<std::size_t>(i)] = window_at(p, n, i % cols, i / cols);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Vec2> contains(const Pattern& big, const Pattern& small) {
    if (small.empty()) throw std::invalid_argument("empty pattern in containment test");
    std::vector<Vec2> out;
    if (big.width() < small.width() || big.height() < small.height()) return out;
    for (long long x = 0; x + small.width() <= big.width(); ++x)
        for (long long y = 0; y + small.height() <= big.height(); ++y) {
            bool ok = true;
            for (long long r = 0; ok && r < small.height(); ++r)
                for (long long c = 0; ok && c < small.width(); ++c)
                    if (big.at(x + c, y + r) != small.at(c, r)) ok = false;
            if (ok) out.push_back(Vec2{x, y});
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_pattern(const Alphabet& a, const Pattern& p) {
    std::string out;
    for (long long r = p.height() - 1; r >= 0; --r) {
        if (r != p.height() - 1) out += '/';
        out += a.format_word(p.row(r));
    }
    return out;
}

Pattern parse_pattern(const Alphabet& a, const std::string& text) {
    std::vector<std::vector<Letter>> rows_top_down;
    std::string piece;
    std::istringstream is(text);
    while (std::getline(is, piece, '/')) rows_top_down.push_back(a.parse_word(piece));
    if (rows_top_down.empty()) throw std::invalid_argument("empty pattern literal");
    if (rows_top_down.size() == 1) return Pattern::word(std::move(rows_top_down[0]));
    long long w = static_cast<long long>(rows_top_down[0].size());
    long long h = static_cast<long long>(rows_top_down.size());
    std::vector<Letter> cells(static_cast<std::size_t>(w * h));
    for (long long r = 0; r < h; ++r) {
        const auto& row = rows_top_down[static_cast<std::size_t>(h - 1 - r)];
        if (static_cast<long long>(row.size()) != w)
            throw std::invalid_argument("ragged pattern literal");
        for (long long c = 0; c < w; ++c) cells[static_cast<std::size_t>(r * w + c)] = row[static_cast<std::size_t>(c)];
    }
    return Pattern::grid(w, h, std::move(cells));
}

} // namespace subtile
