#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rendezvous {

// Which construction produced a graph. Circle and torus graphs carry their
// side length so walk specs that depend on the lattice layout can be checked.
enum class GraphFamily { Circle, Torus, General };

// Undirected simple d-regular graph. Immutable after construction.
class RegularGraph {
public:
    // Validates the adjacency lists: sorted, distinct, symmetric, no
    // self-loops, every list of length d. Throws std::invalid_argument.
    RegularGraph(std::size_t degree, std::vector<std::vector<std::size_t>> adjacency,
                 GraphFamily family = GraphFamily::General, std::size_t side = 0);

    std::size_t order() const { return adjacency_.size(); }
    std::size_t degree() const { return degree_; }
    GraphFamily family() const { return family_; }
    // Lattice side N for circle/torus graphs, 0 otherwise.
    std::size_t side() const { return side_; }

    const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
    bool adjacent(std::size_t u, std::size_t v) const;
    bool connected() const;

    // Short human-readable label, e.g. "circle(8)" or "regular(10,3)".
    std::string descriptor() const;

    friend bool operator==(const RegularGraph& a, const RegularGraph& b) {
        return a.degree_ == b.degree_ && a.adjacency_ == b.adjacency_;
    }

private:
    std::size_t degree_;
    std::vector<std::vector<std::size_t>> adjacency_;
    GraphFamily family_;
    std::size_t side_;
};

// Vertex (x, y) of an N x N torus maps to index x*N + y.
struct TorusCoord {
    std::size_t x = 0;
    std::size_t y = 0;

    std::size_t index(std::size_t side) const { return x * side + y; }
    static TorusCoord from_index(std::size_t index, std::size_t side) {
        return {index / side, index % side};
    }
    friend bool operator==(const TorusCoord&, const TorusCoord&) = default;
};

RegularGraph build_circle(std::size_t n);
RegularGraph build_torus(std::size_t n);

// Configuration-model sampler with whole-sample rejection: stubs are shuffled
// into a perfect matching and the matching is discarded if it yields a
// self-loop, a multi-edge or a disconnected graph.
inline constexpr int kMaxRegularAttempts = 10000;
RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed);

// Edge-list text: "n d" header then one "u v" pair per line (0-based).
RegularGraph read_graph(std::string_view text);
std::string write_graph(const RegularGraph& g);

}  // namespace rendezvous
