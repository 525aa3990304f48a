#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdtk/graph_family.hpp"
#include "hdtk/vertex_id.hpp"

namespace hdtk {

struct WindowLimits {
    std::size_t max_vertices = 1'000'000;
};

// A finite, connected, induced subgraph of a family together with the ambient
// degree of each of its vertices. All linear algebra happens on windows.
//
// Edges are stored once, in canonical orientation: tail < head under the
// VertexId order. Vertex order is the construction order (BFS order for balls,
// VertexId order for induced_window).
class FiniteWindow {
public:
    struct Edge {
        std::uint32_t tail;
        std::uint32_t head;
    };

    struct Incidence {
        std::uint32_t neighbor;
        std::uint32_t edge;
    };

    // Builds the induced window on `vertices` (distinct). Throws InvalidWindow
    // when the result is disconnected or has no edge.
    static FiniteWindow build(const GraphFamily& family, std::vector<VertexId> vertices,
                              const WindowLimits& limits = {});

    const std::string& family_name() const noexcept { return family_name_; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    std::span<const VertexId> vertices() const noexcept { return vertices_; }
    const VertexId& vertex(std::size_t i) const { return vertices_[i]; }
    std::optional<std::size_t> index_of(const VertexId& x) const;
    bool contains(const VertexId& x) const { return index_.contains(x); }

    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t k) const { return edges_[k]; }

    std::span<const Incidence> incident(std::size_t i) const {
        return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
    }

    std::uint32_t internal_degree(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }
    std::uint32_t full_degree(std::size_t i) const { return full_degree_[i]; }
    bool on_boundary(std::size_t i) const { return full_degree_[i] > internal_degree(i); }
    std::size_t sigma_size() const noexcept { return sigma_size_; }

    // Index of the edge joining window vertices a and b, if any.
    std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const;

    // Window edge for an oriented ambient edge, with +1 if it is stored in this
    // orientation and -1 if reversed.
    std::optional<std::pair<std::size_t, int>> find_edge(const OrientedEdge& e) const;

    OrientedEdge canonical_edge(std::size_t k) const {
        return {vertices_[edges_[k].tail], vertices_[edges_[k].head]};
    }

private:
    FiniteWindow() = default;

    std::string family_name_;
    std::vector<VertexId> vertices_;
    std::unordered_map<VertexId, std::uint32_t, VertexIdHash> index_;
    std::vector<std::uint32_t> offsets_;
    std::vector<Incidence> adjacency_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> full_degree_;
    std::size_t sigma_size_ = 0;
};

using WindowPtr = std::shared_ptr<const FiniteWindow>;

// Vertices within `radius` of any source, in breadth-first order (sources first).
std::vector<VertexId> bfs_vertices(const GraphFamily& family, std::span<const VertexId> sources,
                                   int radius, const WindowLimits& limits = {});

// Ball of the given radius around `center`. radius 0 has no edge and is rejected.
WindowPtr ball(const GraphFamily& family, const VertexId& center, int radius,
               const WindowLimits& limits = {});

// The radius-r neighbourhood of both endpoints of e.
WindowPtr edge_ball(const GraphFamily& family, const OrientedEdge& e, int radius,
                    const WindowLimits& limits = {});

WindowPtr induced_window(const GraphFamily& family, std::span<const VertexId> vs,
                         const WindowLimits& limits = {});

// Graph distance if it is at most cutoff, std::nullopt otherwise.
std::optional<int> distance(const GraphFamily& family, const VertexId& x, const VertexId& y,
                            int cutoff);

// All distances from x up to cutoff.
std::unordered_map<VertexId, int, VertexIdHash> distances_from(const GraphFamily& family,
                                                               const VertexId& x, int cutoff);

// C_k(a): every vertex within k of some vertex of a, sorted by VertexId.
std::vector<VertexId> neighborhood(const GraphFamily& family, std::span<const VertexId> a, int k,
                                   const WindowLimits& limits = {});

// The boundary vertices of the window, sorted by VertexId.
std::vector<VertexId> sigma(const FiniteWindow& window);

// {"vertices": [...], "edges": [[i, j], ...], "full_degree": [...], "sigma": [...]}
// with indices into the vertex list and vertices in the family's text format.
std::string window_to_json(const FiniteWindow& window, const GraphFamily& family);

} // namespace hdtk
