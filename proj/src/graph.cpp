#include "rendezvous/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace rendezvous {

namespace {

std::string line_error(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

// Parses a whitespace-separated line into unsigned integers; returns false if
// any token is not a non-negative integer.
bool parse_unsigned_fields(std::string_view line, std::vector<std::size_t>& out) {
    out.clear();
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos >= line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + end, value);
        if (ec != std::errc{} || ptr != line.data() + end) return false;
        out.push_back(value);
        pos = end;
    }
    return true;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (end == text.size()) break;
        start = end + 1;
    }
    // trailing blank lines are ignored
    while (!lines.empty() && lines.back().find_first_not_of(" \t") == std::string_view::npos) {
        lines.pop_back();
    }
    return lines;
}

}  // namespace

RegularGraph::RegularGraph(std::size_t degree, std::vector<std::vector<std::size_t>> adjacency,
                           GraphFamily family, std::size_t side)
    : degree_(degree), adjacency_(std::move(adjacency)), family_(family), side_(side) {
    const std::size_t n = adjacency_.size();
    if (n == 0) throw std::invalid_argument("graph must have at least one vertex");
    if (degree_ == 0) throw std::invalid_argument("degree must be positive");
    if ((n * degree_) % 2 != 0) {
        throw std::invalid_argument("n*d must be even (n=" + std::to_string(n) +
                                    ", d=" + std::to_string(degree_) + ")");
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto& nb = adjacency_[v];
        if (nb.size() != degree_) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " has degree " +
                                        std::to_string(nb.size()) + ", expected " +
                                        std::to_string(degree_));
        }
        for (std::size_t i = 0; i < nb.size(); ++i) {
            if (nb[i] >= n) throw std::invalid_argument("neighbor out of range at vertex " + std::to_string(v));
            if (nb[i] == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(v));
            if (i > 0 && nb[i] <= nb[i - 1]) {
                throw std::invalid_argument("adjacency of vertex " + std::to_string(v) +
                                            " is not sorted and distinct");
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u : adjacency_[v]) {
            if (!std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v)) {
                throw std::invalid_argument("asymmetric adjacency between " + std::to_string(v) +
                                            " and " + std::to_string(u));
            }
        }
    }
}

bool RegularGraph::adjacent(std::size_t u, std::size_t v) const {
    const auto& nb = adjacency_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

bool RegularGraph::connected() const {
    std::vector<char> seen(order(), 0);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t u : adjacency_[v]) {
            if (!seen[u]) {
                seen[u] = 1;
                ++reached;
                frontier.push(u);
            }
        }
    }
    return reached == order();
}

std::string RegularGraph::descriptor() const {
    switch (family_) {
        case GraphFamily::Circle: return "circle(" + std::to_string(side_) + ")";
        case GraphFamily::Torus: return "torus(" + std::to_string(side_) + ")";
        case GraphFamily::General: break;
    }
    return "regular(" + std::to_string(order()) + "," + std::to_string(degree_) + ")";
}

RegularGraph build_circle(std::size_t n) {
    if (n < 3) throw std::invalid_argument("circle needs N >= 3, got " + std::to_string(n));
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        adj[i] = {(i + n - 1) % n, (i + 1) % n};
        std::sort(adj[i].begin(), adj[i].end());
    }
    return RegularGraph(2, std::move(adj), GraphFamily::Circle, n);
}

RegularGraph build_torus(std::size_t n) {
    if (n < 3) throw std::invalid_argument("torus needs N >= 3, got " + std::to_string(n));
    std::vector<std::vector<std::size_t>> adj(n * n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            auto& nb = adj[TorusCoord{x, y}.index(n)];
            nb = {TorusCoord{(x + n - 1) % n, y}.index(n), TorusCoord{(x + 1) % n, y}.index(n),
                  TorusCoord{x, (y + n - 1) % n}.index(n), TorusCoord{x, (y + 1) % n}.index(n)};
            std::sort(nb.begin(), nb.end());
        }
    }
    return RegularGraph(4, std::move(adj), GraphFamily::Torus, n);
}

RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (d == 0 || n == 0) throw std::invalid_argument("random_regular needs n, d > 0");
    if ((n * d) % 2 != 0) {
        throw std::invalid_argument("n*d must be even for a d-regular graph (n=" + std::to_string(n) +
                                    ", d=" + std::to_string(d) + ")");
    }
    if (d >= n) throw std::invalid_argument("degree must be smaller than the vertex count");

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> stubs(n * d);
    for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = i / d;

    for (int attempt = 0; attempt < kMaxRegularAttempts; ++attempt) {
        std::shuffle(stubs.begin(), stubs.end(), rng);
        std::vector<std::vector<std::size_t>> adj(n);
        bool simple = true;
        for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
            std::size_t u = stubs[i], v = stubs[i + 1];
            if (u == v || std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) {
                simple = false;
                break;
            }
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        if (!simple) continue;
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
        RegularGraph g(d, std::move(adj));
        if (g.connected()) return g;
    }
    throw std::runtime_error("random_regular: no simple connected " + std::to_string(d) +
                             "-regular graph on " + std::to_string(n) + " vertices after " +
                             std::to_string(kMaxRegularAttempts) + " attempts");
}

RegularGraph read_graph(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw std::invalid_argument("line 1: missing \"n d\" header");

    std::vector<std::size_t> fields;
    if (!parse_unsigned_fields(lines[0], fields) || fields.size() != 2) {
        throw std::invalid_argument(line_error(1, "header must be \"n d\""));
    }
    const std::size_t n = fields[0], d = fields[1];
    if (n == 0 || d == 0) throw std::invalid_argument(line_error(1, "n and d must be positive"));
    if ((n * d) % 2 != 0) throw std::invalid_argument(line_error(1, "n*d must be even"));
    const std::size_t expected_edges = n * d / 2;

    std::vector<std::vector<std::size_t>> adj(n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t line_no = li + 1;
        if (!parse_unsigned_fields(lines[li], fields) || fields.size() != 2) {
            throw std::invalid_argument(line_error(line_no, "expected \"u v\""));
        }
        std::size_t u = fields[0], v = fields[1];
        if (u >= n || v >= n) throw std::invalid_argument(line_error(line_no, "vertex out of range"));
        if (u == v) throw std::invalid_argument(line_error(line_no, "self-loop at vertex " + std::to_string(u)));
        if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
            throw std::invalid_argument(line_error(line_no, "duplicate edge " + std::to_string(u) + " " +
                                                                std::to_string(v)));
        }
        adj[u].push_back(v);
        adj[v].push_back(u);
        if (adj[u].size() > d || adj[v].size() > d) {
            throw std::invalid_argument(line_error(line_no, "vertex degree exceeds " + std::to_string(d)));
        }
    }
    if (seen.size() != expected_edges) {
        throw std::invalid_argument("edge count mismatch: expected " + std::to_string(expected_edges) +
                                    ", found " + std::to_string(seen.size()));
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    return RegularGraph(d, std::move(adj));
}

std::string write_graph(const RegularGraph& g) {
    std::ostringstream out;
    out << g.order() << ' ' << g.degree() << '\n';
    for (std::size_t u = 0; u < g.order(); ++u) {
        for (std::size_t v : g.neighbors(u)) {
            if (u < v) out << u << ' ' << v << '\n';
        }
    }
    return out.str();
}

}  // namespace rendezvous
