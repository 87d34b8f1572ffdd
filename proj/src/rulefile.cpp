#include "subtile/rulefile.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <vector>

namespace subtile {

RuleParseError::RuleParseError(int line_, int column_, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_) + ", column " +
                         std::to_string(column_) + ": " + what),
      line(line_), column(column_) {}

Golden parse_golden_literal(const std::string& token) {
    std::string s = token;
    s.erase(std::remove_if(s.begin(), s.end(),
                           [](unsigned char c) { return std::isspace(c); }),
            s.end());
    if (!s.empty() && s.front() == '(') return Golden::parse(s);
    return Golden(rat_parse(s));
}

std::string golden_literal(const Golden& g) { return g.str(); }

namespace {

struct Token {
    std::string text;
    int col; // 1-based
};

struct Entry {
    int line = 0;
    int key_col = 0;
    int val_col = 0;
    std::string key;
    std::string val; // trimmed
    bool used = false;
};

std::vector<Token> tokens_of(const std::string& s, int base_col) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
        if (i >= s.size()) break;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
            ++j;
        out.push_back({s.substr(i, j - i), base_col + static_cast<int>(i)});
        i = j;
    }
    return out;
}

class Doc {
public:
    explicit Doc(const std::string& text) {
        int lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string line = text.substr(
                pos, nl == std::string::npos ? std::string::npos : nl - pos);
            ++lineno;
            pos = nl == std::string::npos ? text.size() + 1 : nl + 1;

            if (std::size_t hash = line.find('#'); hash != std::string::npos)
                line.resize(hash);
            std::size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos) continue;
            std::size_t colon = line.find(':');
            if (colon == std::string::npos || colon <= first)
                throw RuleParseError(lineno, static_cast<int>(first) + 1,
                                     "expected 'key: value'");
            Entry e;
            e.line = lineno;
            e.key_col = static_cast<int>(first) + 1;
            e.key = line.substr(first, colon - first);
            while (!e.key.empty() &&
                   std::isspace(static_cast<unsigned char>(e.key.back())))
                e.key.pop_back();
            std::size_t vstart = line.find_first_not_of(" \t\r", colon + 1);
            if (vstart == std::string::npos)
                throw RuleParseError(lineno, static_cast<int>(colon) + 2,
                                     "missing value after '" + e.key + ":'");
            std::size_t vend = line.find_last_not_of(" \t\r");
            e.val_col = static_cast<int>(vstart) + 1;
            e.val = line.substr(vstart, vend - vstart + 1);
            entries_.push_back(std::move(e));
        }
        if (entries_.empty()) throw RuleParseError(1, 1, "empty document");
    }

    Entry& unique(const std::string& key) {
        Entry* found = nullptr;
        for (auto& e : entries_)
            if (e.key == key) {
                if (found)
                    throw RuleParseError(e.line, e.key_col,
                                         "duplicate key '" + key + "'");
                found = &e;
            }
        if (!found)
            throw RuleParseError(entries_.back().line, 1,
                                 "missing required key '" + key + "'");
        found->used = true;
        return *found;
    }

    Entry* optional(const std::string& key) {
        Entry* found = nullptr;
        for (auto& e : entries_)
            if (e.key == key) {
                if (found)
                    throw RuleParseError(e.line, e.key_col,
                                         "duplicate key '" + key + "'");
                found = &e;
            }
        if (found) found->used = true;
        return found;
    }

    std::vector<Entry*> all(const std::string& key) {
        std::vector<Entry*> out;
        for (auto& e : entries_)
            if (e.key == key) {
                e.used = true;
                out.push_back(&e);
            }
        return out;
    }

    void reject_unknown() const {
        for (const auto& e : entries_)
            if (!e.used)
                throw RuleParseError(e.line, e.key_col,
                                     "unknown key '" + e.key + "'");
    }

private:
    std::vector<Entry> entries_;
};

Alphabet parse_letters(const Entry& e) {
    auto toks = tokens_of(e.val, e.val_col);
    std::set<std::string> seen;
    std::vector<std::string> names;
    for (const auto& t : toks) {
        if (!seen.insert(t.text).second)
            throw RuleParseError(e.line, t.col,
                                 "duplicate letter '" + t.text + "'");
        names.push_back(t.text);
    }
    if (names.empty())
        throw RuleParseError(e.line, e.val_col, "empty letter list");
    return Alphabet(names);
}

Letter letter_of(const Alphabet& a, const Token& t, int line) {
    if (!a.has(t.text))
        throw RuleParseError(line, t.col, "unknown letter '" + t.text + "'");
    return a.index(t.text);
}

// "lhs -> rhs...": returns (lhs token, rhs tokens).
std::pair<Token, std::vector<Token>> split_arrow(const Entry& e) {
    auto toks = tokens_of(e.val, e.val_col);
    if (toks.size() < 3 || toks[1].text != "->")
        throw RuleParseError(e.line, e.val_col,
                             "expected 'letter -> word' after '" + e.key + ":'");
    return {toks[0], std::vector<Token>(toks.begin() + 2, toks.end())};
}

Substitution1D parse_sub1d(Doc& doc, const std::string& letters_key,
                           const std::string& rule_key) {
    Alphabet alpha = parse_letters(doc.unique(letters_key));
    std::vector<std::vector<Letter>> rules(alpha.size());
    std::vector<bool> have(alpha.size(), false);
    for (Entry* e : doc.all(rule_key)) {
        auto [lhs, rhs] = split_arrow(*e);
        Letter l = letter_of(alpha, lhs, e->line);
        if (have[l])
            throw RuleParseError(e->line, lhs.col,
                                 "second rule for '" + lhs.text + "'");
        have[l] = true;
        for (const auto& t : rhs)
            rules[l].push_back(letter_of(alpha, t, e->line));
    }
    for (Letter l = 0; l < alpha.size(); ++l)
        if (!have[l])
            throw RuleParseError(1, 1, "no rule for '" + alpha.token(l) + "'");
    return Substitution1D(alpha, std::move(rules));
}

BlockSubstitution2D parse_block2d(Doc& doc) {
    Alphabet alpha = parse_letters(doc.unique("letters"));
    const Entry& qe = doc.unique("block-size");
    int q = 0;
    try {
        q = std::stoi(qe.val);
    } catch (const std::exception&) {
        throw RuleParseError(qe.line, qe.val_col, "bad block size");
    }
    if (q < 1 || std::to_string(q) != qe.val)
        throw RuleParseError(qe.line, qe.val_col, "bad block size");

    std::vector<std::optional<Pattern>> rules(alpha.size());
    for (Entry* e : doc.all("block")) {
        auto [lhs, rhs] = split_arrow(*e);
        Letter l = letter_of(alpha, lhs, e->line);
        if (rules[l])
            throw RuleParseError(e->line, lhs.col,
                                 "second block for '" + lhs.text + "'");
        // rows are written top to bottom and separated by '/'
        std::vector<std::vector<Letter>> rows(1);
        for (const auto& t : rhs) {
            if (t.text == "/") {
                rows.emplace_back();
                continue;
            }
            rows.back().push_back(letter_of(alpha, t, e->line));
        }
        if (rows.size() != static_cast<std::size_t>(q))
            throw RuleParseError(e->line, e->val_col,
                                 "block must have " + std::to_string(q) +
                                     " rows");
        std::vector<Letter> cells;
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
            if (it->size() != static_cast<std::size_t>(q))
                throw RuleParseError(e->line, e->val_col,
                                     "each block row must have " +
                                         std::to_string(q) + " letters");
            cells.insert(cells.end(), it->begin(), it->end());
        }
        rules[l] = Pattern::grid(q, q, std::move(cells));
    }
    std::vector<Pattern> final_rules;
    for (Letter l = 0; l < alpha.size(); ++l) {
        if (!rules[l])
            throw RuleParseError(1, 1, "no block for '" + alpha.token(l) + "'");
        final_rules.push_back(std::move(*rules[l]));
    }
    return BlockSubstitution2D(alpha, q, std::move(final_rules));
}

Golden golden_field(const Entry& e) {
    try {
        return parse_golden_literal(e.val);
    } catch (const std::invalid_argument& err) {
        throw RuleParseError(e.line, e.val_col, err.what());
    }
}

TileSpec spec_fields(Doc& doc, const std::string& a_key,
                     const std::string& b_key) {
    const Entry& ea = doc.unique(a_key);
    Golden a = golden_field(ea);
    Golden b = golden_field(doc.unique(b_key));
    try {
        return TileSpec(a, b);
    } catch (const std::invalid_argument& err) {
        throw RuleParseError(ea.line, ea.val_col, err.what());
    }
}

LineTiling parse_line_tiling(Doc& doc) {
    static const Alphabet tile_names(std::vector<std::string>{"a", "b"});
    TileSpec spec = spec_fields(doc, "len-a", "len-b");
    const Entry& be = doc.unique("base");
    Letter base = letter_of(tile_names, {be.val, be.val_col}, be.line);

    const Entry& pe = doc.unique("policy");
    Spine::Policy policy;
    if (pe.val == "seeded")
        policy = Spine::Policy::seeded;
    else if (pe.val == "leftmost")
        policy = Spine::Policy::leftmost;
    else if (pe.val == "rightmost")
        policy = Spine::Policy::rightmost;
    else
        throw RuleParseError(pe.line, pe.val_col,
                             "policy must be seeded, leftmost or rightmost");

    const Entry& se = doc.unique("seed");
    std::uint64_t seed = 0;
    try {
        std::size_t used = 0;
        seed = std::stoull(se.val, &used);
        if (used != se.val.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw RuleParseError(se.line, se.val_col, "bad seed");
    }

    std::vector<TowerStep> steps;
    for (Entry* e : doc.all("step")) {
        auto toks = tokens_of(e->val, e->val_col);
        if (toks.size() != 2)
            throw RuleParseError(e->line, e->val_col,
                                 "expected 'step: letter index'");
        Letter parent = letter_of(tile_names, toks[0], e->line);
        int index = -1;
        try {
            std::size_t used = 0;
            index = std::stoi(toks[1].text, &used);
            if (used != toks[1].text.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            index = -1;
        }
        if (index < 0)
            throw RuleParseError(e->line, toks[1].col, "bad child index");
        steps.push_back({parent, index});
    }

    Golden shift(0);
    if (Entry* e = doc.optional("shift")) shift = golden_field(*e);

    try {
        return translate(
            LineTiling::with_tower(spec, base, std::move(steps), policy, seed),
            shift);
    } catch (const std::exception& err) {
        throw RuleParseError(be.line, be.val_col, err.what());
    }
}

std::pair<PeriodicGrid, Alphabet> parse_patch(Doc& doc) {
    Alphabet alpha = parse_letters(doc.unique("letters"));
    auto row_entries = doc.all("row");
    if (row_entries.empty())
        throw RuleParseError(1, 1, "patch needs at least one row");
    // file rows read top to bottom; the grid stores bottom row first
    std::vector<std::vector<Letter>> rows;
    for (auto it = row_entries.rbegin(); it != row_entries.rend(); ++it) {
        std::vector<Letter> row;
        for (const auto& t : tokens_of((*it)->val, (*it)->val_col))
            row.push_back(letter_of(alpha, t, (*it)->line));
        rows.push_back(std::move(row));
    }
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].size() != rows[0].size())
            throw RuleParseError(row_entries[rows.size() - 1 - i]->line,
                                 row_entries[rows.size() - 1 - i]->val_col,
                                 "rows must have equal length");
    return {PeriodicGrid(std::move(rows)), std::move(alpha)};
}

} // namespace

ParsedRuleFile parse_rule_file(const std::string& text) {
    Doc doc(text);
    const Entry& kind = doc.unique("kind");

    ParsedRuleFile out;
    if (kind.val == "substitution1d") {
        out.kind = RuleKind::substitution1d;
        out.sub1d = parse_sub1d(doc, "letters", "rule");
    } else if (kind.val == "product2d") {
        out.kind = RuleKind::product2d;
        Substitution1D h = parse_sub1d(doc, "h-letters", "h-rule");
        Substitution1D v = parse_sub1d(doc, "v-letters", "v-rule");
        out.prod2d = ProductSubstitution2D(std::move(h), std::move(v));
    } else if (kind.val == "block2d") {
        out.kind = RuleKind::block2d;
        out.block2d = parse_block2d(doc);
    } else if (kind.val == "tilespec") {
        out.kind = RuleKind::tilespec;
        out.spec_x = spec_fields(doc, "x-len-a", "x-len-b");
        Entry* ya = doc.optional("y-len-a");
        Entry* yb = doc.optional("y-len-b");
        if (static_cast<bool>(ya) != static_cast<bool>(yb))
            throw RuleParseError(kind.line, kind.key_col,
                                 "y-len-a and y-len-b come together");
        if (ya) {
            Golden a = golden_field(*ya);
            Golden b = golden_field(*yb);
            try {
                out.spec_y = TileSpec(a, b);
            } catch (const std::invalid_argument& err) {
                throw RuleParseError(ya->line, ya->val_col, err.what());
            }
        }
    } else if (kind.val == "linetiling") {
        out.kind = RuleKind::linetiling;
        out.tiling = parse_line_tiling(doc);
    } else if (kind.val == "patch") {
        out.kind = RuleKind::patch;
        auto [grid, alpha] = parse_patch(doc);
        out.grid = std::move(grid);
        out.grid_alphabet = std::move(alpha);
    } else {
        throw RuleParseError(kind.line, kind.val_col,
                             "unknown kind '" + kind.val + "'");
    }
    doc.reject_unknown();
    return out;
}

std::string serialize_line_tiling(const LineTiling& x) {
    if (x.is_glued())
        throw std::invalid_argument("glued tilings are not serialized");
    if (x.depth() != 0)
        throw std::invalid_argument("subdivided tilings are not serialized");
    const Spine& spine = *x.right_spine();
    auto letter_name = [](Letter l) { return l == kTileA ? "a" : "b"; };
    std::string out = "kind: linetiling\n";
    out += "len-a: " + golden_literal(x.spec().len_a) + "\n";
    out += "len-b: " + golden_literal(x.spec().len_b) + "\n";
    out += std::string("base: ") + letter_name(spine.base()) + "\n";
    switch (spine.policy()) {
        case Spine::Policy::seeded: out += "policy: seeded\n"; break;
        case Spine::Policy::leftmost: out += "policy: leftmost\n"; break;
        case Spine::Policy::rightmost: out += "policy: rightmost\n"; break;
    }
    out += "seed: " + std::to_string(spine.seed()) + "\n";
    for (int k = 0; k < spine.materialized(); ++k) {
        TowerStep s = spine.step_at(k);
        out += std::string("step: ") + letter_name(s.parent) + " " +
               std::to_string(s.index) + "\n";
    }
    out += "shift: " + golden_literal(x.shift()) + "\n";
    return out;
}

} // namespace subtile
