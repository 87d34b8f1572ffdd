#include "subtile/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace subtile {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string golden_repr(const Golden& g, int precision) {
    if (precision < 0 || precision > 40)
        throw std::invalid_argument("precision out of range");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, g.to_double());
    return g.str() + " ~ " + buf;
}

Report::Report(std::string command) {
    line("command: " + std::move(command));
}

namespace {

void check_key(std::string_view key) {
    if (key.empty() || key.find(':') != std::string_view::npos ||
        key.find('\n') != std::string_view::npos)
        throw std::invalid_argument("bad report key");
}

} // namespace

void Report::line(std::string text) {
    lines_.push_back(std::string(2 * static_cast<std::size_t>(indent_), ' ') +
                     std::move(text));
}

void Report::kv(std::string_view key, std::string_view value) {
    check_key(key);
    if (value.find('\n') != std::string_view::npos)
        throw std::invalid_argument("report values are single-line");
    line(std::string(key) + ": " + std::string(value));
}

void Report::kv(std::string_view key, const char* value) {
    kv(key, std::string_view(value));
}

void Report::kv(std::string_view key, long long v) {
    kv(key, std::string_view(std::to_string(v)));
}

void Report::kv(std::string_view key, std::uint64_t v) {
    kv(key, std::string_view(std::to_string(v)));
}

void Report::kv(std::string_view key, int v) {
    kv(key, static_cast<long long>(v));
}

void Report::kv(std::string_view key, bool v) {
    kv(key, std::string_view(v ? "true" : "false"));
}

void Report::kv(std::string_view key, const Golden& g, int precision) {
    kv(key, std::string_view(golden_repr(g, precision)));
}

void Report::digest(std::string_view key, std::string_view bytes) {
    kv(key, std::string_view("fnv1a64:" + hex64(fnv1a64(bytes))));
}

void Report::begin(std::string_view section) {
    check_key(section);
    line(std::string(section) + ":");
    ++indent_;
}

void Report::end() {
    if (indent_ == 0) throw std::logic_error("Report::end without begin");
    --indent_;
}

std::string Report::str() const {
    std::string out;
    for (const auto& l : lines_) {
        out += l;
        out += '\n';
    }
    return out;
}

} // namespace subtile
