#pragma once

#include "subtile/golden.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subtile {

// FNV-1a, 64-bit, over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);
// 16 lowercase hex digits, zero padded.
std::string hex64(std::uint64_t v);

// "(u,v) ~ d.dd...": exact coordinates in the basis {1, tau} plus a fixed-
// precision decimal for human readers. The exact half round-trips; the
// decimal is display only.
std::string golden_repr(const Golden& g, int precision = 8);

// Ordered key/value document with nested sections. Lines appear exactly in
// insertion order and numbers render deterministically, so a report built
// from equal inputs is byte-equal. Keys and section names must be
// nonempty and free of ':' and newlines.
class Report {
public:
    explicit Report(std::string command);

    void kv(std::string_view key, std::string_view value);
    void kv(std::string_view key, const char* value);
    void kv(std::string_view key, long long v);
    void kv(std::string_view key, std::uint64_t v);
    void kv(std::string_view key, int v);
    void kv(std::string_view key, bool v); // "true" / "false"
    void kv(std::string_view key, const Golden& g, int precision = 8);

    // key: fnv1a64:<hex> of the given bytes.
    void digest(std::string_view key, std::string_view bytes);

    // "name:" introducing a two-space indented block; end() closes it.
    void begin(std::string_view section);
    void end();

    // The whole document, one trailing newline, no trailing spaces.
    std::string str() const;

private:
    void line(std::string text);

    std::vector<std::string> lines_;
    int indent_ = 0;
};

} // namespace subtile
