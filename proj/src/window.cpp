#include "hdtk/window.hpp"

#include <algorithm>
#include <deque>

#include "hdtk/errors.hpp"

namespace hdtk {

namespace {

void check_limit(std::size_t count, const WindowLimits& limits) {
    if (count > limits.max_vertices) {
        throw SizeLimitExceeded("window exceeds " + std::to_string(limits.max_vertices) + " vertices");
    }
}

} // namespace

FiniteWindow FiniteWindow::build(const GraphFamily& family, std::vector<VertexId> vertices,
                                 const WindowLimits& limits) {
    check_limit(vertices.size(), limits);
    FiniteWindow w;
    w.family_name_ = family.name();
    w.vertices_ = std::move(vertices);
    const std::size_t n = w.vertices_.size();
    w.index_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!w.index_.emplace(w.vertices_[i], static_cast<std::uint32_t>(i)).second) {
            throw InvalidWindow("duplicate vertex in window");
        }
    }

    w.full_degree_.resize(n);
    w.offsets_.assign(n + 1, 0);
    std::vector<VertexId> nbrs;
    std::vector<std::uint32_t> inside;
    // First pass: degrees and internal adjacency in neighbor order.
    std::vector<std::uint32_t> flat;
    flat.reserve(n * 4);
    for (std::size_t i = 0; i < n; ++i) {
        family.neighbors(w.vertices_[i], nbrs);
        w.full_degree_[i] = static_cast<std::uint32_t>(nbrs.size());
        for (const auto& y : nbrs) {
            if (auto it = w.index_.find(y); it != w.index_.end()) {
                flat.push_back(it->second);
            }
        }
        w.offsets_[i + 1] = static_cast<std::uint32_t>(flat.size());
    }

    // Second pass: number each edge once, from its lower-index endpoint.
    w.adjacency_.resize(flat.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (auto slot = w.offsets_[i]; slot < w.offsets_[i + 1]; ++slot) {
            const auto j = flat[slot];
            w.adjacency_[slot].neighbor = j;
            if (i < j) {
                const auto k = static_cast<std::uint32_t>(w.edges_.size());
                const bool forward = w.vertices_[i] < w.vertices_[j];
                w.edges_.push_back(forward ? Edge{static_cast<std::uint32_t>(i), j}
                                           : Edge{j, static_cast<std::uint32_t>(i)});
                w.adjacency_[slot].edge = k;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (auto slot = w.offsets_[i]; slot < w.offsets_[i + 1]; ++slot) {
            const auto j = w.adjacency_[slot].neighbor;
            if (j < i) {
                // The edge was numbered from j; find it there.
                for (const auto& inc : w.incident(j)) {
                    if (inc.neighbor == i) {
                        w.adjacency_[slot].edge = inc.edge;
                        break;
                    }
                }
            }
        }
    }

    if (w.edges_.empty()) {
        throw InvalidWindow("window has no edge");
    }
    std::vector<bool> seen(n, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto x = stack.back();
        stack.pop_back();
        for (const auto& inc : w.incident(x)) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = true;
                ++reached;
                stack.push_back(inc.neighbor);
            }
        }
    }
    if (reached != n) {
        throw InvalidWindow("window is not connected");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (w.on_boundary(i)) {
            ++w.sigma_size_;
        }
    }
    return w;
}

std::optional<std::size_t> FiniteWindow::index_of(const VertexId& x) const {
    if (auto it = index_.find(x); it != index_.end()) {
        return it->second;
    }
    return std::nullopt;
}

std::optional<std::size_t> FiniteWindow::edge_between(std::size_t a, std::size_t b) const {
    for (const auto& inc : incident(a)) {
        if (inc.neighbor == b) {
            return inc.edge;
        }
    }
    return std::nullopt;
}

std::optional<std::pair<std::size_t, int>> FiniteWindow::find_edge(const OrientedEdge& e) const {
    auto a = index_of(e.tail);
    auto b = index_of(e.head);
    if (!a || !b) {
        return std::nullopt;
    }
    auto k = edge_between(*a, *b);
    if (!k) {
        return std::nullopt;
    }
    return std::pair{*k, edges_[*k].tail == *a ? 1 : -1};
}

std::vector<VertexId> bfs_vertices(const GraphFamily& family, std::span<const VertexId> sources,
                                   int radius, const WindowLimits& limits) {
    std::vector<VertexId> order;
    std::unordered_map<VertexId, int, VertexIdHash> dist;
    for (const auto& s : sources) {
        if (dist.emplace(s, 0).second) {
            order.push_back(s);
        }
    }
    check_limit(order.size(), limits);
    std::vector<VertexId> nbrs;
    for (std::size_t head = 0; head < order.size(); ++head) {
        const VertexId x = order[head];
        const int dx = dist[x];
        if (dx >= radius) {
            continue;
        }
        family.neighbors(x, nbrs);
        for (const auto& y : nbrs) {
            if (dist.emplace(y, dx + 1).second) {
                order.push_back(y);
                check_limit(order.size(), limits);
            }
        }
    }
    return order;
}

WindowPtr ball(const GraphFamily& family, const VertexId& center, int radius, const WindowLimits& limits) {
    if (radius < 0) {
        throw InvalidWindow("ball radius must be nonnegative");
    }
    auto vs = bfs_vertices(family, std::span(&center, 1), radius, limits);
    return std::make_shared<const FiniteWindow>(FiniteWindow::build(family, std::move(vs), limits));
}

WindowPtr edge_ball(const GraphFamily& family, const OrientedEdge& e, int radius, const WindowLimits& limits) {
    if (radius < 0) {
        throw InvalidWindow("edge ball radius must be nonnegative");
    }
    if (e.tail == e.head || !family.adjacent(e.tail, e.head)) {
        throw MissingEdge("(" + family.format(e.tail) + ", " + family.format(e.head) + ") is not an edge of " +
                          family.name());
    }
    const VertexId ends[2] = {e.tail, e.head};
    auto vs = bfs_vertices(family, ends, radius, limits);
    return std::make_shared<const FiniteWindow>(FiniteWindow::build(family, std::move(vs), limits));
}

WindowPtr induced_window(const GraphFamily& family, std::span<const VertexId> vs, const WindowLimits& limits) {
    std::vector<VertexId> sorted(vs.begin(), vs.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) {
        throw InvalidWindow("empty vertex set");
    }
    return std::make_shared<const FiniteWindow>(FiniteWindow::build(family, std::move(sorted), limits));
}

std::unordered_map<VertexId, int, VertexIdHash> distances_from(const GraphFamily& family, const VertexId& x,
                                                               int cutoff) {
    std::unordered_map<VertexId, int, VertexIdHash> dist{{x, 0}};
    std::deque<VertexId> queue{x};
    std::vector<VertexId> nbrs;
    while (!queue.empty()) {
        VertexId y = queue.front();
        queue.pop_front();
        const int dy = dist[y];
        if (dy >= cutoff) {
            continue;
        }
        family.neighbors(y, nbrs);
        for (const auto& z : nbrs) {
            if (dist.emplace(z, dy + 1).second) {
                queue.push_back(z);
            }
        }
    }
    return dist;
}

std::optional<int> distance(const GraphFamily& family, const VertexId& x, const VertexId& y, int cutoff) {
    if (x == y) {
        return 0;
    }
    // Bidirectional search: expand the smaller frontier one full layer at a time.
    std::unordered_map<VertexId, int, VertexIdHash> from_x{{x, 0}}, from_y{{y, 0}};
    std::vector<VertexId> frontier_x{x}, frontier_y{y}, next, nbrs;
    int depth_x = 0, depth_y = 0;
    while (depth_x + depth_y < cutoff && !frontier_x.empty() && !frontier_y.empty()) {
        const bool grow_x = frontier_x.size() <= frontier_y.size();
        auto& frontier = grow_x ? frontier_x : frontier_y;
        auto& mine = grow_x ? from_x : from_y;
        auto& other = grow_x ? from_y : from_x;
        int& depth = grow_x ? depth_x : depth_y;
        next.clear();
        std::optional<int> best;
        for (const auto& v : frontier) {
            family.neighbors(v, nbrs);
            for (const auto& z : nbrs) {
                if (mine.emplace(z, depth + 1).second) {
                    next.push_back(z);
                    if (auto it = other.find(z); it != other.end()) {
                        const int total = depth + 1 + it->second;
                        if (!best || total < *best) {
                            best = total;
                        }
                    }
                }
            }
        }
        ++depth;
        if (best) {
            return *best <= cutoff ? best : std::nullopt;
        }
        frontier.swap(next);
    }
    return std::nullopt;
}

std::vector<VertexId> neighborhood(const GraphFamily& family, std::span<const VertexId> a, int k,
                                   const WindowLimits& limits) {
    if (k < 0) {
        throw InvalidWindow("neighborhood radius must be nonnegative");
    }
    auto vs = bfs_vertices(family, a, k, limits);
    std::sort(vs.begin(), vs.end());
    return vs;
}

std::vector<VertexId> sigma(const FiniteWindow& window) {
    std::vector<VertexId> out;
    for (std::size_t i = 0; i < window.num_vertices(); ++i) {
        if (window.on_boundary(i)) {
            out.push_back(window.vertex(i));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace hdtk
