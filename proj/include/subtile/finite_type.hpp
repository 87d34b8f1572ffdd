#pragma once

#include "subtile/substitution2d.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace subtile {

// Finite-type approximation cut at window radius n: the configurations all
// of whose radius-n windows lie in `allowed` (kept sorted).
struct WindowSFT {
    Alphabet alpha;
    int radius = 0;
    std::vector<Window> allowed;

    bool allows(const Window& w) const;
};

WindowSFT sft_from_language(const Substitution1D& s, int n);
WindowSFT sft_from_language(const ProductSubstitution2D& s, int n);

struct MembershipResult {
    bool member = false;
    long long centers_checked = 0;
    Vec2 failing_center{};   // meaningful when !member
    Window failing_window{}; // meaningful when !member
};

// Checks every center in one fundamental domain of the periodic
// configuration. The unsuffixed version scans centers in parallel and
// reports the lexicographically first failure; _serial is the reference.
MembershipResult is_member(const WindowSFT& sft, const PeriodicConfig& x);
MembershipResult is_member_serial(const WindowSFT& sft, const PeriodicConfig& x);

// De Bruijn-style overlap graph of a one-dimensional WindowSFT: vertices
// are the allowed windows, with an edge u -> w when u and w agree on their
// 2n-letter overlap. Closed walks of length p correspond to period-p
// points; open walks spell the SFT-consistent words.
class OverlapGraph {
public:
    explicit OverlapGraph(const WindowSFT& sft);

    std::size_t vertex_count() const { return windows_.size(); }
    const Window& vertex(std::size_t i) const { return windows_[i]; }
    const std::vector<std::vector<std::size_t>>& edges() const { return succ_; }

    // Period-p configurations of the SFT, deduplicated up to shift; each is
    // returned through its lexicographically minimal period word.
    std::vector<Pattern> closed_walk_words(long long p) const;

    // All SFT-consistent words of the given length (>= the window span).
    std::vector<Pattern> words_of_length(long long len) const;

private:
    int radius_;
    std::vector<Window> windows_;
    std::vector<std::vector<std::size_t>> succ_;
};

// Period-p points of a one-dimensional SFT, up to shift.
std::vector<PeriodicConfig> periodic_points_1d(const WindowSFT& sft, long long p);

// Periodic configuration living inside the radius-n approximation of a
// substitution system, built by repeating the level-k image of a letter c
// whose doubled block (cc, or the 2x2 all-c square) occurs in the language.
// Throws std::runtime_error("hypothesis of Corollary 1 not witnessed") when
// the search finds no such letter.
struct Corollary1Witness {
    Letter c = 0;
    int level = 0;
    PeriodicConfig config;
};
Corollary1Witness corollary1_configuration(const Substitution1D& s, int n);
Corollary1Witness corollary1_configuration(const ProductSubstitution2D& s, int n);
std::optional<Corollary1Witness> corollary1_configuration(const BlockSubstitution2D& s,
                                                          int n, int search_depth);

// Smallest-length witness that a periodic configuration does not belong to
// the system with the given word language. One-dimensional: word lengths
// m = 1.. m_cap; two-dimensional: window radii m = 0..m_cap.
struct Refutation1D {
    bool refuted = false;
    long long m = 0;
    Pattern word;
};
struct Refutation2D {
    bool refuted = false;
    int m = 0;
    Window window;
};
using WordLanguage = std::function<std::vector<Pattern>(long long)>; // length -> words
using WindowLanguage = std::function<std::vector<Window>(int)>;      // radius -> windows

Refutation1D refute_membership(const WordLanguage& lang, const PeriodicConfig& x,
                               long long m_cap);
Refutation2D refute_membership(const WindowLanguage& lang, const PeriodicConfig& x,
                               int m_cap);

// X_n != X, witnessed by a periodic configuration of X_n together with a
// window of it that the full system's language excludes.
struct SeparationCertificate {
    int n = 0;
    Corollary1Witness periodic;
    Refutation2D refutation;
};
SeparationCertificate separation_certificate(const ProductSubstitution2D& s, int n,
                                             int m_cap);
bool validate(const ProductSubstitution2D& s, const SeparationCertificate& cert);

// Every periodic configuration with least period <= period_cap is refuted
// by a word of length <= m_cap, or flagged as a survivor.
struct PeriodicCandidate {
    long long period = 0;
    Pattern word; // lexicographically minimal rotation
    Refutation1D refutation;
};
struct AperiodicityCertificate {
    long long period_cap = 0;
    long long m_cap = 0;
    std::vector<PeriodicCandidate> candidates;
    bool all_refuted = false;
};
AperiodicityCertificate aperiodicity_certificate_1d(const Substitution1D& s,
                                                    long long period_cap, long long m_cap);
AperiodicityCertificate aperiodicity_certificate_1d(const WindowSFT& sft,
                                                    long long period_cap, long long m_cap);

} // namespace subtile
