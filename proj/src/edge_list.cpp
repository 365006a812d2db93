#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "pathlaw/error.hpp"
#include "pathlaw/graph.hpp"

namespace pathlaw {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Next whitespace-delimited token, advancing `rest`; empty at end of line.
std::string_view next_token(std::string_view& rest) {
    std::size_t i = 0;
    while (i < rest.size() && is_space(rest[i]))
        ++i;
    std::size_t j = i;
    while (j < rest.size() && !is_space(rest[j]))
        ++j;
    const auto token = rest.substr(i, j - i);
    rest.remove_prefix(j);
    return token;
}

std::int64_t parse_id(std::string_view token, std::size_t line_no) {
    std::int64_t value = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ParseError("expected integer node id, got '" + std::string(token) + "'", line_no);
    return value;
}

} // namespace

EdgeListLoad load_edge_list(std::istream& in) {
    EdgeListLoad result;
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view rest(line);
        const auto first = next_token(rest);
        if (first.empty())
            continue;
        if (first.front() == '%' || first.front() == '#') {
            ++result.comment_lines;
            continue;
        }
        const auto second = next_token(rest);
        if (second.empty())
            throw ParseError("expected two node ids", line_no);
        // Further columns (KONECT weights, timestamps) are ignored.
        raw.emplace_back(parse_id(first, line_no), parse_id(second, line_no));
    }
    if (raw.empty())
        throw EmptyInputError("edge list contains no edges");

    std::vector<std::int64_t> ids;
    ids.reserve(2 * raw.size());
    for (const auto& [a, b] : raw) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    const auto dense = [&](std::int64_t id) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) {
        if (a == b) {
            ++result.self_loops_dropped;
            continue;
        }
        NodeId u = dense(a);
        NodeId v = dense(b);
        if (u > v)
            std::swap(u, v);
        edges.push_back({u, v});
    }
    const std::size_t before = edges.size();
    result.graph = Graph(ids.size(), std::move(edges));
    result.duplicates_dropped = before - result.graph.edge_count();
    result.graph.set_original_ids(std::move(ids));
    return result;
}

EdgeListLoad load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open edge list '" + path + "'");
    return load_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << (g.directed() ? "% asym unweighted\n" : "% sym unweighted\n");
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

} // namespace pathlaw
