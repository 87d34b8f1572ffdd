#include "subtile/finite_type.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace subtile {

bool WindowSFT::allows(const Window& w) const {
    return std::binary_search(allowed.begin(), allowed.end(), w);
}

WindowSFT sft_from_language(const Substitution1D& s, int n) {
    if (n < 0) throw std::invalid_argument("negative window radius");
    std::vector<Window> allowed;
    for (auto& w : s.language(2LL * n + 1)) allowed.emplace_back(n, std::move(w));
    std::sort(allowed.begin(), allowed.end());
    return WindowSFT{s.alphabet(), n, std::move(allowed)};
}

WindowSFT sft_from_language(const ProductSubstitution2D& s, int n) {
    if (n < 0) throw std::invalid_argument("negative window radius");
    return WindowSFT{s.alphabet(), n, s.language2d_product(n)};
}

MembershipResult is_member_serial(const WindowSFT& sft, const PeriodicConfig& x) {
    const Pattern& d = x.domain();
    MembershipResult res;
    for (long long cx = 0; cx < d.width(); ++cx)
        for (long long cy = 0; cy < d.height(); ++cy) {
            ++res.centers_checked;
            Window w = project(x, Vec2{cx, cy}, sft.radius);
            if (!sft.allows(w)) {
                res.member = false;
                res.failing_center = Vec2{cx, cy};
                res.failing_window = std::move(w);
                return res;
            }
        }
    res.member = true;
    return res;
}

MembershipResult is_member(const WindowSFT& sft, const PeriodicConfig& x) {
    const Pattern& d = x.domain();
    long long H = d.height(), total = d.width() * H;
    long long first_bad = total; // sentinel: no failure
#pragma omp parallel for schedule(static) reduction(min : first_bad)
    for (long long i = 0; i < total; ++i) {
        Vec2 c{i / H, i % H}; // lexicographic (x, y) order by index
        if (!sft.allows(project(x, c, sft.radius)) && i < first_bad) first_bad = i;
    }
    MembershipResult res;
    res.centers_checked = total;
    if (first_bad == total) {
        res.member = true;
        return res;
    }
    res.member = false;
    res.failing_center = Vec2{first_bad / H, first_bad % H};
    res.failing_window = project(x, res.failing_center, sft.radius);
    return res;
}

OverlapGraph::OverlapGraph(const WindowSFT& sft)
    : radius_(sft.radius), windows_(sft.allowed) {
    if (!windows_.empty() && windows_.front().cells().dim() != 1)
        throw std::invalid_argument("overlap graph requires one-dimensional windows");
    long long span = 2LL * radius_ + 1;
    succ_.assign(windows_.size(), {});
    for (std::size_t i = 0; i < windows_.size(); ++i)
        for (std::size_t j = 0; j < windows_.size(); ++j) {
            bool ok = true;
            for (long long k = 0; ok && k + 1 < span; ++k)
                if (windows_[i].cells().at(k + 1) != windows_[j].cells().at(k)) ok = false;
            if (ok) succ_[i].push_back(j);
        }
}

namespace {
bool is_min_rotation(const std::vector<Letter>& w) {
    std::size_t p = w.size();
    for (std::size_t s = 1; s < p; ++s)
        for (std::size_t i = 0; i < p; ++i) {
            Letter rot = w[(i + s) % p];
            if (rot < w[i]) return false;
            if (rot > w[i]) break;
        }
    return true;
}

bool least_period_is(const std::vector<Letter>& w, std::size_t p) {
    for (std::size_t d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        bool rep = true;
        for (std::size_t i = 0; rep && i < p; ++i)
            if (w[i] != w[i % d]) rep = false;
        if (rep) return false;
    }
    return true;
}
} // namespace

std::vector<Pattern> OverlapGraph::closed_walk_words(long long p) const {
    if (p <= 0) throw std::invalid_argument("period must be positive");
    std::set<std::vector<Letter>> words;
    std::vector<std::size_t> walk;
    auto spell = [&](const std::vector<std::size_t>& vs) {
        std::vector<Letter> w;
        w.reserve(static_cast<std::size_t>(p));
        for (std::size_t v : vs) w.push_back(windows_[v].cells().at(radius_));
        // canonical representative: minimal rotation
        std::vector<Letter> best = w;
        for (std::size_t s = 1; s < w.size(); ++s) {
            std::vector<Letter> rot;
            rot.reserve(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) rot.push_back(w[(i + s) % w.size()]);
            if (rot < best) best = rot;
        }
        words.insert(std::move(best));
    };
    std::function<void(std::size_t)> dfs = [&](std::size_t start) {
        if (walk.size() == static_cast<std::size_t>(p)) {
            // closed: last vertex must step back to the start
            const auto& out = succ_[walk.back()];
            if (std::find(out.begin(), out.end(), start) != out.end()) spell(walk);
            return;
        }
        for (std::size_t nxt : succ_[walk.back()]) {
            walk.push_back(nxt);
            dfs(start);
            walk.pop_back();
        }
    };
    for (std::size_t v = 0; v < windows_.size(); ++v) {
        walk.assign(1, v);
        dfs(v);
    }
    std::vector<Pattern> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(Pattern::word(w));
    return out;
}

std::vector<Pattern> OverlapGraph::words_of_length(long long len) const {
    long long span = 2LL * radius_ + 1;
    if (len < span) throw std::invalid_argument("word shorter than window span");
    std::set<std::vector<Letter>> words;
    std::vector<Letter> cur;
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
        if (static_cast<long long>(cur.size()) == len) {
            words.insert(cur);
            return;
        }
        for (std::size_t nxt : succ_[v]) {
            cur.push_back(windows_[nxt].cells().at(span - 1));
            dfs(nxt);
            cur.pop_back();
        }
    };
    for (std::size_t v = 0; v < windows_.size(); ++v) {
        cur.clear();
        for (long long i = 0; i < span; ++i) cur.push_back(windows_[v].cells().at(i));
        dfs(v);
    }
    std::vector<Pattern> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(Pattern::word(w));
    return out;
}

std::vector<PeriodicConfig> periodic_points_1d(const WindowSFT& sft, long long p) {
    OverlapGraph g(sft);
    std::vector<PeriodicConfig> out;
    for (auto& w : g.closed_walk_words(p)) out.emplace_back(std::move(w));
    return out;
}

namespace {
int min_level_with_length(const Substitution1D& s, Letter a, const BigInt& target) {
    for (int k = 0;; ++k) {
        if (s.iterate_length(a, k) >= target) return k;
        if (k > 256) throw std::runtime_error("substitution does not expand");
    }
}
} // namespace

Corollary1Witness corollary1_configuration(const Substitution1D& s, int n) {
    if (n < 0) throw std::invalid_argument("negative window radius");
    auto lang2 = s.language(2);
    for (Letter c = 0; c < s.alphabet().size(); ++c) {
        Pattern cc = Pattern::word({c, c});
        if (!std::binary_search(lang2.begin(), lang2.end(), cc)) continue;
        int k = min_level_with_length(s, c, BigInt(2 * n + 1));
        return Corollary1Witness{c, k, PeriodicConfig(s.iterate(c, k))};
    }
    throw std::runtime_error("hypothesis of Corollary 1 not witnessed");
}

Corollary1Witness corollary1_configuration(const ProductSubstitution2D& s, int n) {
    if (n < 0) throw std::invalid_argument("negative window radius");
    auto lang_h = s.horizontal().language(2);
    auto lang_v = s.vertical().language(2);
    for (Letter hu = 0; hu < s.horizontal().alphabet().size(); ++hu) {
        if (!std::binary_search(lang_h.begin(), lang_h.end(), Pattern::word({hu, hu})))
            continue;
        for (Letter vv = 0; vv < s.vertical().alphabet().size(); ++vv) {
            if (!std::binary_search(lang_v.begin(), lang_v.end(), Pattern::word({vv, vv})))
                continue;
            int kh = min_level_with_length(s.horizontal(), hu, BigInt(2 * n + 1));
            int kv = min_level_with_length(s.vertical(), vv, BigInt(2 * n + 1));
            int k = std::max(kh, kv);
            Letter c = s.pair_letter(hu, vv);
            return Corollary1Witness{c, k, PeriodicConfig(s.iterate2d(c, k))};
        }
    }
    throw std::runtime_error("hypothesis of Corollary 1 not witnessed");
}

std::optional<Corollary1Witness> corollary1_configuration(const BlockSubstitution2D& s,
                                                          int n, int search_depth) {
    if (n < 0) throw std::invalid_argument("negative window radius");
    for (int K = 1; K <= search_depth; ++K)
        for (Letter l = 0; l < s.alphabet().size(); ++l) {
            Pattern big = s.iterate2d(l, K);
            for (Letter c = 0; c < s.alphabet().size(); ++c) {
                Pattern cc = Pattern::grid(2, 2, {c, c, c, c});
                if (contains(big, cc).empty()) continue;
                long long side = 2LL * n + 1;
                int k = 0;
                long long extent = 1;
                while (extent < side) {
                    extent *= s.block_size();
                    ++k;
                }
                return Corollary1Witness{c, k, PeriodicConfig(s.iterate2d(c, k))};
            }
        }
    return std::nullopt;
}

Refutation1D refute_membership(const WordLanguage& lang, const PeriodicConfig& x,
                               long long m_cap) {
    if (x.dim() != 1) throw std::invalid_argument("expected a one-dimensional configuration");
    long long p = x.domain().width();
    for (long long m = 1; m <= m_cap; ++m) {
        auto allowed = lang(m);
        for (long long s = 0; s < p; ++s) {
            std::vector<Letter> w;
            w.reserve(static_cast<std::size_t>(m));
            for (long long i = 0; i < m; ++i) w.push_back(x.at(s + i));
            Pattern word = Pattern::word(std::move(w));
            if (!std::binary_search(allowed.begin(), allowed.end(), word))
                return Refutation1D{true, m, std::move(word)};
        }
    }
    return Refutation1D{};
}

Refutation2D refute_membership(const WindowLanguage& lang, const PeriodicConfig& x,
                               int m_cap) {
    if (x.dim() != 2) throw std::invalid_argument("expected a two-dimensional configuration");
    const Pattern& d = x.domain();
    for (int m = 0; m <= m_cap; ++m) {
        auto allowed = lang(m);
        for (long long cx = 0; cx < d.width(); ++cx)
            for (long long cy = 0; cy < d.height(); ++cy) {
                Window w = project(x, Vec2{cx, cy}, m);
                if (!std::binary_search(allowed.begin(), allowed.end(), w))
                    return Refutation2D{true, m, std::move(w)};
            }
    }
    return Refutation2D{};
}

SeparationCertificate separation_certificate(const ProductSubstitution2D& s, int n,
                                             int m_cap) {
    SeparationCertificate cert{n, corollary1_configuration(s, n), {}};
    cert.refutation = refute_membership(
        [&](int m) { return s.language2d_product(m); }, cert.periodic.config, m_cap);
    if (!cert.refutation.refuted)
        throw std::runtime_error("separation refutation not found within radius cap");
    return cert;
}

bool validate(const ProductSubstitution2D& s, const SeparationCertificate& cert) {
    // the periodic configuration really lies in the radius-n approximation
    WindowSFT sft = sft_from_language(s, cert.n);
    if (!is_member(sft, cert.periodic.config).member) return false;
    // and the refuting window really is outside the language
    if (!cert.refutation.refuted) return false;
    auto allowed = s.language2d_product(cert.refutation.m);
    if (std::binary_search(allowed.begin(), allowed.end(), cert.refutation.window))
        return false;
    // the refutation must look past the approximation radius, otherwise it
    // would contradict membership
    return cert.refutation.m > cert.n;
}

namespace {
AperiodicityCertificate aperiodicity_impl(const Alphabet& alpha, const WordLanguage& lang,
                                          long long period_cap, long long m_cap) {
    AperiodicityCertificate cert;
    cert.period_cap = period_cap;
    cert.m_cap = m_cap;
    cert.all_refuted = true;
    for (long long p = 1; p <= period_cap; ++p) {
        // enumerate candidate period words, canonical up to rotation
        std::vector<Letter> w(static_cast<std::size_t>(p), 0);
        std::uint64_t total = 1;
        for (long long i = 0; i < p; ++i) total *= alpha.size();
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t c = code;
            for (long long i = 0; i < p; ++i) {
                w[static_cast<std::size_t>(i)] = static_cast<Letter>(c % alpha.size());
                c /= alpha.size();
            }
            if (!is_min_rotation(w) || !least_period_is(w, static_cast<std::size_t>(p)))
                continue;
            PeriodicCandidate cand;
            cand.period = p;
            cand.word = Pattern::word(w);
            cand.refutation = refute_membership(lang, PeriodicConfig(cand.word), m_cap);
            if (!cand.refutation.refuted) cert.all_refuted = false;
            cert.candidates.push_back(std::move(cand));
        }
    }
    return cert;
}
} // namespace

AperiodicityCertificate aperiodicity_certificate_1d(const Substitution1D& s,
                                                    long long period_cap, long long m_cap) {
    return aperiodicity_impl(
        s.alphabet(), [&](long long m) { return s.language(m); }, period_cap, m_cap);
}

AperiodicityCertificate aperiodicity_certificate_1d(const WindowSFT& sft,
                                                    long long period_cap, long long m_cap) {
    OverlapGraph g(sft);
    auto lang = [&](long long m) -> std::vector<Pattern> {
        long long span = 2LL * sft.radius + 1;
        if (m >= span) return g.words_of_length(m);
        std::set<Pattern> short_words;
        for (const auto& w : sft.allowed)
            for (auto& f : word_factors_serial(w.cells(), m)) short_words.insert(std::move(f));
        return std::vector<Pattern>(short_words.begin(), short_words.end());
    };
    return aperiodicity_impl(sft.alpha, lang, period_cap, m_cap);
}

} // namespace subtile
