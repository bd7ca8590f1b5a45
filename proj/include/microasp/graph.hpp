#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace microasp {

using Vertex = std::uint32_t;  // 1-based
using Edge = std::pair<Vertex, Vertex>;

/// Simple graph with a reproducible identifier. Undirected edges are stored
/// with u < v; self-loops and duplicate edges are rejected by make().
struct Graph {
    std::string id;
    Vertex n = 0;
    bool directed = false;
    std::vector<Edge> edges;

    /// Normalizes and checks the invariants; throws InvalidArgument.
    static Graph make(std::string id, Vertex n, bool directed, std::vector<Edge> edges);

    bool has_edge(Vertex u, Vertex v) const;
    /// Identifier derived from the content, used when a file carries none.
    std::string content_id() const;
    /// Export in the `p graph` text format including the `c id` line.
    std::string to_text() const;

    bool operator==(const Graph&) const = default;
};

}  // namespace microasp
