#include "subtile/substitution1d.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace subtile {

namespace {
Pattern slice(const Pattern& w, long long start, long long m) {
    std::vector<Letter> cells;
    cells.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) cells.push_back(w.at(start + i));
    return Pattern::word(std::move(cells));
}
} // namespace

std::vector<Pattern> word_factors_serial(const Pattern& w, long long m) {
    if (w.dim() != 1) throw std::invalid_argument("factors of a non-word pattern");
    if (m <= 0) throw std::invalid_argument("factor length must be positive");
    std::vector<Pattern> out;
    for (long long s = 0; s + m <= w.width(); ++s) out.push_back(slice(w, s, m));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Pattern> word_factors(const Pattern& w, long long m) {
    if (w.dim() != 1) throw std::invalid_argument("factors of a non-word pattern");
    if (m <= 0) throw std::invalid_argument("factor length must be positive");
    long long total = w.width() - m + 1;
    if (total <= 0) return {};
    std::vector<Pattern> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (long long s = 0; s < total; ++s)
        out[static_cast<std::size_t>(s)] = slice(w, s, m);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Substitution1D::Substitution1D(Alphabet a, std::vector<std::vector<Letter>> rules)
    : alpha_(std::move(a)), memo_(std::make_shared<Memo>()) {
    if (rules.size() != alpha_.size())
        throw std::invalid_argument("rule count does not match alphabet");
    rules_.reserve(rules.size());
    for (auto& img : rules) {
        if (img.empty()) throw std::invalid_argument("empty substitution image");
        for (Letter l : img)
            if (l >= alpha_.size()) throw std::invalid_argument("rule uses letter outside alphabet");
        rules_.push_back(Pattern::word(std::move(img)));
    }
}

const Pattern& Substitution1D::rule(Letter a) const {
    if (a >= rules_.size()) throw std::out_of_range("letter out of alphabet");
    return rules_[a];
}

Pattern Substitution1D::iterate(Letter a, int k) const {
    if (a >= rules_.size()) throw std::out_of_range("letter out of alphabet");
    if (k < 0) throw std::invalid_argument("negative iteration level");
    if (k == 0) return Pattern::word({a});
    std::lock_guard<std::mutex> lock(memo_->mu);
    // iterative fill so deep levels do not recurse while holding the lock
    for (int lvl = 1; lvl <= k; ++lvl) {
        for (Letter l = 0; l < rules_.size(); ++l) {
            auto key = std::make_pair(l, lvl);
            if (memo_->words.count(key)) continue;
            std::vector<Letter> cells;
            for (long long i = 0; i < rules_[l].width(); ++i) {
                Letter child = rules_[l].at(i);
                if (lvl == 1) {
                    cells.push_back(child);
                } else {
                    const Pattern& sub = memo_->words.at(std::make_pair(child, lvl - 1));
                    for (long long j = 0; j < sub.width(); ++j) cells.push_back(sub.at(j));
                }
            }
            memo_->words.emplace(key, Pattern::word(std::move(cells)));
        }
    }
    return memo_->words.at(std::make_pair(a, k));
}

BigInt Substitution1D::iterate_length(Letter a, int k) const {
    if (a >= rules_.size()) throw std::out_of_range("letter out of alphabet");
    if (k < 0) throw std::invalid_argument("negative iteration level");
    if (k == 0) return 1;
    std::lock_guard<std::mutex> lock(memo_->mu);
    for (int lvl = 1; lvl <= k; ++lvl) {
        for (Letter l = 0; l < rules_.size(); ++l) {
            auto key = std::make_pair(l, lvl);
            if (memo_->lengths.count(key)) continue;
            BigInt len = 0;
            for (long long i = 0; i < rules_[l].width(); ++i) {
                Letter child = rules_[l].at(i);
                len += lvl == 1 ? BigInt(1) : memo_->lengths.at(std::make_pair(child, lvl - 1));
            }
            memo_->lengths.emplace(key, std::move(len));
        }
    }
    return memo_->lengths.at(std::make_pair(a, k));
}

std::vector<std::vector<BigInt>> Substitution1D::abelianization() const {
    std::size_t n = alpha_.size();
    std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
    for (Letter j = 0; j < n; ++j)
        for (long long i = 0; i < rules_[j].width(); ++i) m[rules_[j].at(i)][j] += 1;
    return m;
}

bool Substitution1D::is_primitive() const {
    std::size_t n = alpha_.size();
    auto m = abelianization();
    auto positive = [&](const std::vector<std::vector<BigInt>>& q) {
        for (const auto& row : q)
            for (const auto& e : row)
                if (e == 0) return false;
        return true;
    };
    auto mul = [&](const std::vector<std::vector<BigInt>>& p,
                   const std::vector<std::vector<BigInt>>& q) {
        std::vector<std::vector<BigInt>> r(n, std::vector<BigInt>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (p[i][k] != 0)
                    for (std::size_t j = 0; j < n; ++j) r[i][j] += p[i][k] * q[k][j];
        return r;
    };
    auto acc = m;
    // Wielandt: primitive matrices reach positivity by power n^2 - 2n + 2
    std::size_t limit = n * n + 1;
    for (std::size_t p = 1; p <= limit; ++p) {
        if (positive(acc)) return true;
        acc = mul(acc, m);
    }
    return false;
}

std::vector<Pattern> Substitution1D::language_impl(long long m, int k_cap,
                                                   bool* stabilized) const {
    if (m <= 0) throw std::invalid_argument("word length must be positive");
    std::set<Pattern> seen;
    if (stabilized) *stabilized = false;
    int stable_since = -1;
    for (int k = 0; k <= k_cap; ++k) {
        bool grew = false;
        bool all_long = true;
        for (Letter l = 0; l < rules_.size(); ++l) {
            if (iterate_length(l, k) < m) {
                all_long = false;
                continue;
            }
            for (auto& f : word_factors(iterate(l, k), m))
                if (seen.insert(std::move(f)).second) grew = true;
        }
        if (grew) stable_since = -1;
        else if (stable_since < 0) stable_since = k;
        if (!grew && all_long && stable_since >= 0 && k > stable_since) {
            if (stabilized) *stabilized = true;
            break;
        }
    }
    return std::vector<Pattern>(seen.begin(), seen.end());
}

std::vector<Pattern> Substitution1D::language(long long m) const {
    if (!is_primitive()) throw std::runtime_error("saturation not guaranteed");
    bool stabilized = false;
    auto out = language_impl(m, 64, &stabilized);
    if (!stabilized) throw std::runtime_error("saturation not reached within level budget");
    return out;
}

std::vector<Pattern> Substitution1D::language_capped(long long m, int k_cap) const {
    if (k_cap < 0) throw std::invalid_argument("negative level cap");
    return language_impl(m, k_cap, nullptr);
}

std::vector<std::pair<Letter, int>> Substitution1D::parents(Letter a) const {
    if (a >= rules_.size()) throw std::out_of_range("letter out of alphabet");
    std::vector<std::pair<Letter, int>> out;
    for (Letter p = 0; p < rules_.size(); ++p)
        for (long long i = 0; i < rules_[p].width(); ++i)
            if (rules_[p].at(i) == a) out.emplace_back(p, static_cast<int>(i));
    return out;
}

Substitution1D fibonacci() {
    Alphabet ab({"a", "b"});
    // a -> b, b -> ab
    return Substitution1D(ab, {{1}, {0, 1}});
}

} // namespace subtile
