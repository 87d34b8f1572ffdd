#pragma once

#include "subtile/finite_type.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace subtile {

// Explicit finite map from radius-n input windows to output letters. The
// table is total on its declared domain and nothing else: looking up a
// window outside the domain is a hard error, never a default letter.
// Windows carry their dimension, so a map built over 1D windows only ever
// applies to 1D configurations.
class BlockMap {
public:
    BlockMap(int radius, Alphabet input, Alphabet output,
             std::vector<std::pair<Window, Letter>> table);

    int radius() const { return radius_; }
    const Alphabet& input_alphabet() const { return in_; }
    const Alphabet& output_alphabet() const { return out_; }
    const std::vector<std::pair<Window, Letter>>& table() const { return table_; }

    // nullptr when the window is not in the declared domain.
    const Letter* find(const Window& w) const;
    bool defined(const Window& w) const { return find(w) != nullptr; }

    // Throws std::runtime_error naming the window and the center when the
    // window is outside the declared domain.
    Letter map_at(const Window& w, Vec2 center) const;

private:
    int radius_;
    Alphabet in_, out_;
    std::vector<std::pair<Window, Letter>> table_; // sorted by window
};

// phi(x)_j = Phi(window of radius n around j). The code size is the block
// map's radius.
struct SlidingBlockCode {
    BlockMap block;

    int radius() const { return block.radius(); }
};

// All radius-n windows over a one-dimensional alphabet: the full-shift
// domain of (2n+1)-letter words, sorted.
std::vector<Window> all_windows_1d(const Alphabet& a, int n);

// Table built by evaluating `f` on each window of `domain`.
SlidingBlockCode code_from_function(int radius, Alphabet input, Alphabet output,
                                    const std::vector<Window>& domain,
                                    const std::function<Letter(const Window&)>& f);

// Radius-0 code mapping letter i of `input` to image[i] in `output`, with
// the full one-dimensional shift as domain.
SlidingBlockCode letter_code(const Alphabet& input, const Alphabet& output,
                             const std::vector<Letter>& image);

// letter_code with the identity image.
SlidingBlockCode identity_code(const Alphabet& a);

// Pointwise application. Periodic input keeps its periods; finite patterns
// lose a margin of n cells on every side (every side of the box that
// exists: both ends in 1D, all four sides in 2D). Pattern input smaller
// than one window throws std::invalid_argument("window exceeds pattern");
// a window outside the map's domain throws as in BlockMap::map_at. The
// unsuffixed versions fill cells in parallel; _serial are the references.
PeriodicConfig apply(const SlidingBlockCode& code, const PeriodicConfig& x);
PeriodicConfig apply_serial(const SlidingBlockCode& code, const PeriodicConfig& x);
Pattern apply(const SlidingBlockCode& code, const Pattern& p);
Pattern apply_serial(const SlidingBlockCode& code, const Pattern& p);

// Composition with code sizes adding: outer of size m' after inner of size
// m gives a code of size m+m'. Its table is built by enumerating every
// one-dimensional word of length 2(m+m')+1 all of whose radius-m windows
// lie in inner's domain, applying inner to the word and outer to the
// resulting radius-m' window at the center; words whose image is outside
// outer's domain are omitted. One-dimensional codes only; requires inner's
// output alphabet to equal outer's input alphabet.
SlidingBlockCode compose(const SlidingBlockCode& outer, const SlidingBlockCode& inner);

// Family of finite-type approximations, by window radius.
using SftFamily = std::function<WindowSFT(int)>;

// apply() on a radius-p member of Y's finite-type approximation, plus the
// membership grade of the image against X's approximations: every radius-m
// window of a Y_p member occurs in Y, so a code whose domain covers Y's
// allowed radius-m windows extends to all of Y_p without new table entries.
struct ExtensionReport {
    int p = 0;
    MembershipResult input_check;   // candidate against Y(p)
    PeriodicConfig output;
    int largest_r = -1;             // largest r <= p-m with output in X(r); -1 if none
    long long radii_checked = 0;    // how many r values were tested (from p-m downward)
};

// Throws std::invalid_argument("candidate not a member at radius p") when
// the candidate fails the Y(p) membership check; otherwise applies the code
// and scans r = p-m, p-m-1, ... 0 until the image verifies as a member.
ExtensionReport extend_to_Yp(const SlidingBlockCode& code, int p,
                             const PeriodicConfig& candidate,
                             const SftFamily& Y, const SftFamily& X);

// Sampling refuter for "these aligned input/output pairs came from one
// sliding block code of radius n": scans all centers of every sample,
// records the output letter under each radius-n input window, and reports
// the first pair of *distinct* samples assigning different outputs to the
// same input window. Consistent samples (and a single sample) leave the
// hypothesis standing; a conflict refutes it.
struct CodeDetection {
    bool consistent = true;
    // Populated when !consistent:
    std::size_t sample_a = 0, sample_b = 0;
    Vec2 center_a{}, center_b{};
    Window window;
    Letter letter_a = 0, letter_b = 0;
};

// Aligned periodic pairs: output value at j is read at the same lattice
// point j as the input window's center.
CodeDetection detect_code(
    const std::vector<std::pair<PeriodicConfig, PeriodicConfig>>& samples, int n);

// Aligned finite excerpts: input and output pattern of one sample have
// equal extents and cell (c,r) of both refers to the same lattice point.
// Samples too small to hold one window contribute no centers.
CodeDetection detect_code(const std::vector<std::pair<Pattern, Pattern>>& samples,
                          int n);

} // namespace subtile
