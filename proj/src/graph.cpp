#include "microasp/graph.hpp"

#include "microasp/error.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace microasp {

Graph Graph::make(std::string id, Vertex n, bool directed, std::vector<Edge> edges) {
    std::set<Edge> seen;
    for (auto& [u, v] : edges) {
        if (u < 1 || v < 1 || u > n || v > n) {
            throw InvalidArgument("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range 1.." +
                                  std::to_string(n));
        }
        if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
        if (!directed && u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second) {
            throw InvalidArgument("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        }
    }
    Graph g{std::move(id), n, directed, std::move(edges)};
    if (g.id.empty()) g.id = g.content_id();
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (!directed && u > v) std::swap(u, v);
    return std::find(edges.begin(), edges.end(), Edge{u, v}) != edges.end();
}

std::string Graph::content_id() const {
    // FNV-1a over the canonical edge listing
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(n);
    mix(directed ? 1 : 0);
    for (const auto& [u, v] : edges) {
        mix(u);
        mix(v);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("hash-") + buf;
}

std::string Graph::to_text() const {
    std::ostringstream out;
    out << "p graph " << n << ' ' << edges.size() << ' ' << (directed ? "directed" : "undirected") << '\n';
    out << "c id " << id << '\n';
    for (const auto& [u, v] : edges) out << "e " << u << ' ' << v << '\n';
    return out.str();
}

}  // namespace microasp
