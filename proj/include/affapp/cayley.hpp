#pragma once

// Plain-text Cayley table format.
//
//   line 1      order n
//   line 2      optional: "g" <count> <generator indices...>
//   next n      row i holds the n products i*j, 0-based and whitespace separated
//
// Index 0 must be the identity.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "affapp/group.hpp"

namespace affapp {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::size_t parse_index(std::string_view tok, int line) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw FormatError("not a nonnegative integer: '" + std::string(tok) + "'", line);
    return v;
}

}  // namespace detail

/// Parses a Cayley table. Throws FormatError on malformed input and
/// GroupAxiomError if the table is not a group.
inline Group parse_cayley(std::string_view text, std::string name = "cayley") {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    while (!lines.empty() && detail::split_ws(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw FormatError("empty input", 1);

    auto head = detail::split_ws(lines[0]);
    if (head.size() != 1) throw FormatError("first line must hold the order", 1);
    const std::size_t n = detail::parse_index(head[0], 1);
    if (n == 0) throw FormatError("order must be positive", 1);
    if (n > Group::kDenseLimit) throw CapacityError("order exceeds the dense table limit");

    std::size_t row_line = 1;
    std::vector<Elem> gens;
    if (lines.size() > 1) {
        auto toks = detail::split_ws(lines[1]);
        if (!toks.empty() && toks[0] == "g") {
            if (toks.size() < 2) throw FormatError("generator line needs a count", 2);
            const std::size_t count = detail::parse_index(toks[1], 2);
            if (count == 0 || toks.size() != count + 2)
                throw FormatError("generator count does not match the listed indices", 2);
            for (std::size_t i = 2; i < toks.size(); ++i) {
                std::size_t v = detail::parse_index(toks[i], 2);
                if (v >= n) throw FormatError("generator index out of range", 2);
                gens.push_back(static_cast<Elem>(v));
            }
            row_line = 2;
        }
    }
    if (lines.size() - row_line != n)
        throw FormatError("expected " + std::to_string(n) + " table rows, found " +
                              std::to_string(lines.size() - row_line),
                          static_cast<int>(lines.size()));

    std::vector<Elem> table;
    table.reserve(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        const int lineno = static_cast<int>(row_line + r + 1);
        auto toks = detail::split_ws(lines[row_line + r]);
        if (toks.size() != n)
            throw FormatError("row has " + std::to_string(toks.size()) + " entries, expected " +
                                  std::to_string(n),
                              lineno);
        for (auto tok : toks) {
            std::size_t v = detail::parse_index(tok, lineno);
            if (v >= n) throw FormatError("index " + std::to_string(v) + " out of range", lineno);
            table.push_back(static_cast<Elem>(v));
        }
    }

    Group g = Group::from_table(std::move(name), n, std::move(table), std::move(gens));
    auto report = validate(g);
    if (!report.ok()) throw GroupAxiomError("not a group: " + report.failures.front());
    return g;
}

inline Group load_cayley_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cayley(ss.str(), "file(" + path + ")");
}

inline std::string serialize_cayley(const Group& g) {
    if (!g.is_dense()) throw CapacityError("only dense carriers can be serialized");
    std::string out = std::to_string(g.order()) + "\n";
    out += "g " + std::to_string(g.generators().size());
    for (Elem s : g.generators()) out += " " + std::to_string(s);
    out += "\n";
    for (Elem a = 0; a < g.order(); ++a) {
        for (Elem b = 0; b < g.order(); ++b) {
            if (b) out += ' ';
            out += std::to_string(g.mul(a, b));
        }
        out += '\n';
    }
    return out;
}

}  // namespace affapp
