#pragma once

#include "subtile/golden.hpp"
#include "subtile/symbolic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace subtile {

// All length-m factors (contiguous subwords) of a one-dimensional pattern,
// deduplicated and sorted. The unsuffixed version scans starting positions
// in parallel; _serial is the reference implementation.
std::vector<Pattern> word_factors(const Pattern& w, long long m);
std::vector<Pattern> word_factors_serial(const Pattern& w, long long m);

// Letter substitution on a finite alphabet: each letter maps to a nonempty
// word. iterate() is memoized and shared between copies.
class Substitution1D {
public:
    Substitution1D(Alphabet a, std::vector<std::vector<Letter>> rules);

    const Alphabet& alphabet() const { return alpha_; }
    const Pattern& rule(Letter a) const;

    // k-fold application to a single letter; k = 0 is the letter itself.
    Pattern iterate(Letter a, int k) const;
    // Exact length of iterate(a, k) without materializing it.
    BigInt iterate_length(Letter a, int k) const;

    // M[i][j] = occurrences of letter i in rule(j).
    std::vector<std::vector<BigInt>> abelianization() const;
    // Some power of the abelianization matrix is entrywise positive.
    bool is_primitive() const;

    // All length-m words occurring in the subshift: the union over levels k
    // of the factors of iterate(a, k), accumulated until it stabilizes and
    // every letter's expansion is at least m long. Throws
    // std::runtime_error("saturation not guaranteed") unless the
    // substitution is primitive; language_capped() skips that check and
    // reports the union up to the given level instead.
    std::vector<Pattern> language(long long m) const;
    std::vector<Pattern> language_capped(long long m, int k_cap) const;

    // (parent letter, child index) pairs with rule(parent)[index] == a,
    // parent letters in alphabet order, indices ascending.
    std::vector<std::pair<Letter, int>> parents(Letter a) const;

private:
    std::vector<Pattern> language_impl(long long m, int k_cap, bool* stabilized) const;

    Alphabet alpha_;
    std::vector<Pattern> rules_;

    struct Memo {
        std::map<std::pair<Letter, int>, Pattern> words;
        std::map<std::pair<Letter, int>, BigInt> lengths;
        std::mutex mu;
    };
    std::shared_ptr<Memo> memo_;
};

// a -> b, b -> ab on alphabet {a, b}.
Substitution1D fibonacci();

} // namespace subtile
