#include "subtile/block_code.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace subtile {

namespace {

bool window_less(const std::pair<Window, Letter>& a, const std::pair<Window, Letter>& b) {
    return a.first < b.first;
}

} // namespace

BlockMap::BlockMap(int radius, Alphabet input, Alphabet output,
                   std::vector<std::pair<Window, Letter>> table)
    : radius_(radius), in_(std::move(input)), out_(std::move(output)),
      table_(std::move(table)) {
    if (radius_ < 0) throw std::invalid_argument("negative block map radius");
    for (const auto& [w, l] : table_) {
        if (w.radius() != radius_)
            throw std::invalid_argument("table window radius does not match block map");
        for (Letter c : w.cells().cells())
            if (c >= in_.size())
                throw std::invalid_argument("table window letter outside input alphabet");
        if (l >= out_.size())
            throw std::invalid_argument("table output letter outside output alphabet");
    }
    std::sort(table_.begin(), table_.end(), window_less);
    for (std::size_t i = 1; i < table_.size(); ++i)
        if (table_[i].first == table_[i - 1].first)
            throw std::invalid_argument("duplicate window in block map table");
}

const Letter* BlockMap::find(const Window& w) const {
    auto it = std::lower_bound(table_.begin(), table_.end(),
                               std::pair<Window, Letter>{w, 0}, window_less);
    if (it == table_.end() || it->first != w) return nullptr;
    return &it->second;
}

Letter BlockMap::map_at(const Window& w, Vec2 center) const {
    const Letter* l = find(w);
    if (!l) {
        std::ostringstream msg;
        msg << "window not in block map domain: \"" << format_pattern(in_, w.cells())
            << "\" at center (" << center.x << ", " << center.y << ")";
        throw std::runtime_error(msg.str());
    }
    return *l;
}

std::vector<Window> all_windows_1d(const Alphabet& a, int n) {
    long long side = 2LL * n + 1;
    std::vector<Window> out;
    std::vector<Letter> word(static_cast<std::size_t>(side), 0);
    // Odometer over alphabet^side, most significant digit first.
    for (;;) {
        out.emplace_back(n, Pattern::word(word));
        std::size_t i = word.size();
        while (i > 0 && word[i - 1] + 1 == a.size()) word[--i] = 0;
        if (i == 0) break;
        ++word[i - 1];
    }
    std::sort(out.begin(), out.end());
    return out;
}

SlidingBlockCode code_from_function(int radius, Alphabet input, Alphabet output,
                                    const std::vector<Window>& domain,
                                    const std::function<Letter(const Window&)>& f) {
    std::vector<std::pair<Window, Letter>> table;
    table.reserve(domain.size());
    for (const Window& w : domain) table.emplace_back(w, f(w));
    return SlidingBlockCode{
        BlockMap(radius, std::move(input), std::move(output), std::move(table))};
}

SlidingBlockCode letter_code(const Alphabet& input, const Alphabet& output,
                             const std::vector<Letter>& image) {
    if (image.size() != input.size())
        throw std::invalid_argument("letter image size does not match alphabet");
    return code_from_function(0, input, output, all_windows_1d(input, 0),
                              [&](const Window& w) { return image[w.cells().at(0)]; });
}

SlidingBlockCode identity_code(const Alphabet& a) {
    std::vector<Letter> image(a.size());
    for (Letter i = 0; i < a.size(); ++i) image[i] = i;
    return letter_code(a, a, image);
}

namespace {

// Shared by the periodic and pattern variants: output cell i gets the
// letter under the window at in_center(i). A missing window is recorded as
// the least failing i and rethrown outside the parallel region so the
// reported center is deterministic.
template <class Center>
std::vector<Letter> map_cells(const BlockMap& bm, long long total, const Center& in_center,
                              const std::function<Window(Vec2)>& window_of, bool parallel) {
    std::vector<Letter> cells(static_cast<std::size_t>(total));
    long long first_bad = total;
    if (parallel) {
#pragma omp parallel for schedule(static) reduction(min : first_bad)
        for (long long i = 0; i < total; ++i) {
            const Letter* l = bm.find(window_of(in_center(i)));
            if (l) cells[static_cast<std::size_t>(i)] = *l;
            else if (i < first_bad) first_bad = i;
        }
    } else {
        for (long long i = 0; i < total; ++i) {
            const Letter* l = bm.find(window_of(in_center(i)));
            if (l) cells[static_cast<std::size_t>(i)] = *l;
            else if (i < first_bad) first_bad = i;
        }
    }
    if (first_bad < total) {
        Vec2 c = in_center(first_bad);
        bm.map_at(window_of(c), c); // throws with window and center spelled out
    }
    return cells;
}

PeriodicConfig apply_periodic(const SlidingBlockCode& code, const PeriodicConfig& x,
                              bool parallel) {
    const Pattern& d = x.domain();
    int n = code.radius();
    long long w = d.width(), h = d.height();
    auto center = [w](long long i) { return Vec2{i % w, i / w}; };
    auto window_of = [&](Vec2 c) { return project(x, c, n); };
    std::vector<Letter> cells = map_cells(code.block, w * h, center, window_of, parallel);
    Pattern out = d.dim() == 1 ? Pattern::word(std::move(cells))
                               : Pattern::grid(w, h, std::move(cells));
    return PeriodicConfig(std::move(out));
}

Pattern apply_pattern(const SlidingBlockCode& code, const Pattern& p, bool parallel) {
    int n = code.radius();
    long long side = 2LL * n + 1;
    long long w = p.width() - side + 1;
    long long h = p.dim() == 1 ? 1 : p.height() - side + 1;
    if (w <= 0 || h <= 0) throw std::invalid_argument("window exceeds pattern");
    // Output cell (c,r) sits over input cell (c+n, r+n); centers are input
    // coordinates so errors name the position in the given pattern.
    auto center = [&](long long i) {
        return Vec2{i % w + n, p.dim() == 1 ? 0 : i / w + n};
    };
    auto window_of = [&](Vec2 c) { return pattern_window(p, c, n); };
    std::vector<Letter> cells = map_cells(code.block, w * h, center, window_of, parallel);
    return p.dim() == 1 ? Pattern::word(std::move(cells))
                        : Pattern::grid(w, h, std::move(cells));
}

} // namespace

PeriodicConfig apply(const SlidingBlockCode& code, const PeriodicConfig& x) {
    return apply_periodic(code, x, true);
}
PeriodicConfig apply_serial(const SlidingBlockCode& code, const PeriodicConfig& x) {
    return apply_periodic(code, x, false);
}
Pattern apply(const SlidingBlockCode& code, const Pattern& p) {
    return apply_pattern(code, p, true);
}
Pattern apply_serial(const SlidingBlockCode& code, const Pattern& p) {
    return apply_pattern(code, p, false);
}

SlidingBlockCode compose(const SlidingBlockCode& outer, const SlidingBlockCode& inner) {
    const BlockMap& f = outer.block;
    const BlockMap& g = inner.block;
    if (!(g.output_alphabet() == f.input_alphabet()))
        throw std::invalid_argument("inner output alphabet differs from outer input alphabet");
    for (const auto& entry : g.table())
        if (entry.first.cells().dim() != 1)
            throw std::invalid_argument("compose supports one-dimensional codes only");

    int m = g.radius(), mp = f.radius();
    int k = m + mp;
    long long len = 2LL * k + 1;
    std::vector<std::pair<Window, Letter>> table;

    // Depth-first enumeration of the words of length 2k+1 all of whose
    // radius-m subwords lie in inner's domain; each completed subword is
    // checked as soon as its last letter is placed.
    std::vector<Letter> word;
    word.reserve(static_cast<std::size_t>(len));
    auto emit = [&]() {
        Pattern in = Pattern::word(word);
        Pattern mid = apply_serial(inner, in); // length 2mp+1
        const Letter* out = f.find(Window(mp, mid));
        if (out) table.emplace_back(Window(k, in), *out);
    };
    auto grow = [&](auto&& self) -> void {
        if (static_cast<long long>(word.size()) == len) {
            emit();
            return;
        }
        for (Letter a = 0; a < g.input_alphabet().size(); ++a) {
            word.push_back(a);
            bool ok = true;
            if (static_cast<long long>(word.size()) >= 2LL * m + 1) {
                std::vector<Letter> tail(word.end() - (2LL * m + 1), word.end());
                ok = g.defined(Window(m, Pattern::word(std::move(tail))));
            }
            if (ok) self(self);
            word.pop_back();
        }
    };
    grow(grow);

    if (table.empty()) throw std::runtime_error("composed block map has empty domain");
    return SlidingBlockCode{
        BlockMap(k, g.input_alphabet(), f.output_alphabet(), std::move(table))};
}

ExtensionReport extend_to_Yp(const SlidingBlockCode& code, int p,
                             const PeriodicConfig& candidate,
                             const SftFamily& Y, const SftFamily& X) {
    int m = code.radius();
    if (p < m) throw std::invalid_argument("radius p below the code size");
    MembershipResult in_check = is_member(Y(p), candidate);
    if (!in_check.member)
        throw std::invalid_argument("candidate not a member at radius p");
    ExtensionReport rep{p, in_check, apply(code, candidate), -1, 0};
    for (int r = p - m; r >= 0; --r) {
        ++rep.radii_checked;
        if (is_member(X(r), rep.output).member) {
            rep.largest_r = r;
            break;
        }
    }
    return rep;
}

namespace {

// letter -> first (sample, center) seen for it, per window.
struct Use {
    Letter letter;
    std::size_t sample;
    Vec2 center;
};

class ConflictFinder {
public:
    // Returns true when this use conflicts (different letter, different
    // sample) with a recorded one; fills the detection on conflict.
    bool add(const Window& w, Use u, CodeDetection& det) {
        auto& uses = seen_[w];
        for (const Use& v : uses) {
            if (v.letter != u.letter && v.sample != u.sample) {
                det.consistent = false;
                det.sample_a = v.sample;
                det.sample_b = u.sample;
                det.center_a = v.center;
                det.center_b = u.center;
                det.window = w;
                det.letter_a = v.letter;
                det.letter_b = u.letter;
                return true;
            }
        }
        for (const Use& v : uses)
            if (v.letter == u.letter && v.sample == u.sample) return false;
        uses.push_back(u);
        return false;
    }

private:
    std::map<Window, std::vector<Use>> seen_;
};

} // namespace

CodeDetection detect_code(
    const std::vector<std::pair<PeriodicConfig, PeriodicConfig>>& samples, int n) {
    ConflictFinder finder;
    CodeDetection det;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [in, out] = samples[s];
        const Pattern& d = in.domain();
        for (long long r = 0; r < d.height(); ++r)
            for (long long c = 0; c < d.width(); ++c) {
                Vec2 center{c, r};
                Use u{out.at(center), s, center};
                if (finder.add(project(in, center, n), u, det)) return det;
            }
    }
    return det;
}

CodeDetection detect_code(const std::vector<std::pair<Pattern, Pattern>>& samples,
                          int n) {
    ConflictFinder finder;
    CodeDetection det;
    long long side = 2LL * n + 1;
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& [in, out] = samples[s];
        if (in.width() != out.width() || in.height() != out.height() ||
            in.dim() != out.dim())
            throw std::invalid_argument("sample input and output extents differ");
        long long cols = in.width() - side + 1;
        long long rows = in.dim() == 1 ? 1 : in.height() - side + 1;
        for (long long r = 0; r < rows; ++r)
            for (long long c = 0; c < cols; ++c) {
                Vec2 center{c + n, in.dim() == 1 ? 0 : r + n};
                Use u{out.at(center.x, center.y), s, center};
                if (finder.add(pattern_window(in, center, n), u, det)) return det;
            }
    }
    return det;
}

} // namespace subtile
