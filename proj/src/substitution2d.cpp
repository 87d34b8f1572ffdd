#include "subtile/substitution2d.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace subtile {

namespace {
Alphabet make_product_alphabet(const Alphabet& h, const Alphabet& v) {
    std::vector<std::string> tokens;
    tokens.reserve(h.size() * v.size());
    for (Letter hu = 0; hu < h.size(); ++hu)
        for (Letter vv = 0; vv < v.size(); ++vv)
            tokens.push_back(h.token(hu) + "*" + v.token(vv));
    return Alphabet(std::move(tokens));
}
} // namespace

ProductSubstitution2D::ProductSubstitution2D(Substitution1D h, Substitution1D v)
    : h_(std::move(h)), v_(std::move(v)),
      prod_(make_product_alphabet(h_.alphabet(), v_.alphabet())) {}

Letter ProductSubstitution2D::pair_letter(Letter hu, Letter vv) const {
    if (hu >= h_.alphabet().size() || vv >= v_.alphabet().size())
        throw std::out_of_range("letter out of alphabet");
    return static_cast<Letter>(hu * v_.alphabet().size() + vv);
}

std::pair<Letter, Letter> ProductSubstitution2D::split(Letter prod) const {
    if (prod >= prod_.size()) throw std::out_of_range("letter out of alphabet");
    auto nv = static_cast<Letter>(v_.alphabet().size());
    return {static_cast<Letter>(prod / nv), static_cast<Letter>(prod % nv)};
}

Pattern ProductSubstitution2D::rule(Letter prod) const { return iterate2d(prod, 1); }

Pattern ProductSubstitution2D::iterate2d(Letter prod, int k) const {
    auto [hu, vv] = split(prod);
    Pattern wh = h_.iterate(hu, k);
    Pattern wv = v_.iterate(vv, k);
    long long w = wh.width(), h = wv.width();
    std::vector<Letter> cells;
    cells.reserve(static_cast<std::size_t>(w * h));
    for (long long r = 0; r < h; ++r)
        for (long long c = 0; c < w; ++c)
            cells.push_back(pair_letter(wh.at(c), wv.at(r)));
    return Pattern::grid(w, h, cells);
}

Pattern ProductSubstitution2D::iterate2d_recursive(Letter prod, int k) const {
    if (k < 0) throw std::invalid_argument("negative iteration level");
    if (k == 0) return Pattern::grid(1, 1, {prod});
    Pattern prev = iterate2d_recursive(prod, k - 1);
    // expand each cell by its one-step rule; extents must agree along rows
    // and columns for the paste to be geometrically consistent
    std::vector<long long> col_w(static_cast<std::size_t>(prev.width()), -1);
    std::vector<long long> row_h(static_cast<std::size_t>(prev.height()), -1);
    for (long long r = 0; r < prev.height(); ++r)
        for (long long c = 0; c < prev.width(); ++c) {
            Pattern img = rule(prev.at(c, r));
            auto& cw = col_w[static_cast<std::size_t>(c)];
            auto& rh = row_h[static_cast<std::size_t>(r)];
            if (cw < 0) cw = img.width();
            else if (cw != img.width())
                throw std::runtime_error("inconsistent column widths in paste");
            if (rh < 0) rh = img.height();
            else if (rh != img.height())
                throw std::runtime_error("inconsistent row heights in paste");
        }
    std::vector<long long> col_off(col_w.size() + 1, 0), row_off(row_h.size() + 1, 0);
    for (std::size_t i = 0; i < col_w.size(); ++i) col_off[i + 1] = col_off[i] + col_w[i];
    for (std::size_t i = 0; i < row_h.size(); ++i) row_off[i + 1] = row_off[i] + row_h[i];
    long long W = col_off.back(), H = row_off.back();
    std::vector<Letter> cells(static_cast<std::size_t>(W * H));
    for (long long r = 0; r < prev.height(); ++r)
        for (long long c = 0; c < prev.width(); ++c) {
            Pattern img = rule(prev.at(c, r));
            for (long long rr = 0; rr < img.height(); ++rr)
                for (long long cc = 0; cc < img.width(); ++cc) {
                    long long gx = col_off[static_cast<std::size_t>(c)] + cc;
                    long long gy = row_off[static_cast<std::size_t>(r)] + rr;
                    cells[static_cast<std::size_t>(gy * W + gx)] = img.at(cc, rr);
                }
        }
    return Pattern::grid(W, H, std::move(cells));
}

std::vector<Window> ProductSubstitution2D::language2d(int n) const {
    if (!h_.is_primitive() || !v_.is_primitive())
        throw std::runtime_error("saturation not guaranteed");
    long long side = 2LL * n + 1;
    std::set<Window> seen;
    int stable_since = -1;
    bool stabilized = false;
    for (int k = 0; k <= 64; ++k) {
        bool grew = false;
        bool all_big = true;
        for (Letter l = 0; l < prod_.size(); ++l) {
            auto [hu, vv] = split(l);
            if (h_.iterate_length(hu, k) < side || v_.iterate_length(vv, k) < side) {
                all_big = false;
                continue;
            }
            for (auto& w : subwindows(iterate2d(l, k), n))
                if (seen.insert(std::move(w)).second) grew = true;
        }
        if (grew) stable_since = -1;
        else if (stable_since < 0) stable_since = k;
        if (!grew && all_big && stable_since >= 0 && k > stable_since) {
            stabilized = true;
            break;
        }
    }
    if (!stabilized) throw std::runtime_error("saturation not reached within level budget");
    return std::vector<Window>(seen.begin(), seen.end());
}

std::vector<Window> ProductSubstitution2D::language2d_product(int n) const {
    long long side = 2LL * n + 1;
    auto uh = h_.language(side);
    auto uv = v_.language(side);
    std::vector<Window> out;
    out.reserve(uh.size() * uv.size());
    for (const auto& U : uh)
        for (const auto& V : uv) {
            std::vector<Letter> cells;
            cells.reserve(static_cast<std::size_t>(side * side));
            for (long long r = 0; r < side; ++r)
                for (long long c = 0; c < side; ++c)
                    cells.push_back(pair_letter(U.at(c), V.at(r)));
            out.emplace_back(n, Pattern::grid(side, side, std::move(cells)));
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ProductSubstitution2D fibonacci_product() {
    return ProductSubstitution2D(fibonacci(), fibonacci());
}

BlockSubstitution2D::BlockSubstitution2D(Alphabet a, int q, std::vector<Pattern> rules)
    : alpha_(std::move(a)), q_(q), rules_(std::move(rules)) {
    if (q_ < 2) throw std::invalid_argument("block size must be at least 2");
    if (rules_.size() != alpha_.size())
        throw std::invalid_argument("rule count does not match alphabet");
    for (const auto& r : rules_) {
        if (r.dim() != 2 || r.width() != q_ || r.height() != q_)
            throw std::invalid_argument("rule block has wrong extents");
        for (Letter l : r.cells())
            if (l >= alpha_.size()) throw std::invalid_argument("rule uses letter outside alphabet");
    }
}

const Pattern& BlockSubstitution2D::rule(Letter a) const {
    if (a >= rules_.size()) throw std::out_of_range("letter out of alphabet");
    return rules_[a];
}

Pattern BlockSubstitution2D::iterate2d(Letter a, int k) const {
    if (a >= rules_.size()) throw std::out_of_range("letter out of alphabet");
    if (k < 0) throw std::invalid_argument("negative iteration level");
    if (k == 0) return Pattern::grid(1, 1, {a});
    Pattern prev = iterate2d(a, k - 1);
    long long W = prev.width() * q_, H = prev.height() * q_;
    std::vector<Letter> cells(static_cast<std::size_t>(W * H));
    for (long long r = 0; r < prev.height(); ++r)
        for (long long c = 0; c < prev.width(); ++c) {
            const Pattern& img = rules_[prev.at(c, r)];
            for (long long rr = 0; rr < q_; ++rr)
                for (long long cc = 0; cc < q_; ++cc)
                    cells[static_cast<std::size_t>((r * q_ + rr) * W + (c * q_ + cc))] =
                        img.at(cc, rr);
        }
    return Pattern::grid(W, H, std::move(cells));
}

std::vector<Window> BlockSubstitution2D::language2d_capped(int n, int k_cap) const {
    if (k_cap < 0) throw std::invalid_argument("negative level cap");
    long long side = 2LL * n + 1;
    std::set<Window> seen;
    for (int k = 0; k <= k_cap; ++k) {
        long long extent = 1;
        for (int i = 0; i < k; ++i) extent *= q_;
        if (extent < side) continue;
        for (Letter l = 0; l < alpha_.size(); ++l)
            for (auto& w : subwindows(iterate2d(l, k), n)) seen.insert(std::move(w));
    }
    return std::vector<Window>(seen.begin(), seen.end());
}

BlockSubstitution2D chair() {
    Alphabet a({"NE", "NW", "SE", "SW"});
    Letter NE = 0, NW = 1, SE = 2, SW = 3;
    // cells row-major from the bottom row: {(0,0),(1,0),(0,1),(1,1)}
    auto block = [](Letter sw, Letter se, Letter nw, Letter ne) {
        return Pattern::grid(2, 2, {sw, se, nw, ne});
    };
    std::vector<Pattern> rules(4);
    rules[NE] = block(SW, NE, NE, NE);
    rules[NW] = block(NW, SE, NW, NW);
    rules[SE] = block(SE, SE, NW, SE);
    rules[SW] = block(SW, SW, SW, NE);
    return BlockSubstitution2D(std::move(a), 2, std::move(rules));
}

} // namespace subtile
