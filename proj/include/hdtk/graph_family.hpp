#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hdtk/vertex_id.hpp"

namespace hdtk {

namespace detail {

// Neighbor oracle behind a GraphFamily. Implementations must be simple
// (no loops, no repeats), symmetric and connected from their origin.
class FamilyImpl {
public:
    virtual ~FamilyImpl() = default;

    // Appends the neighbors of x to out in a fixed order.
    virtual void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const = 0;

    virtual std::string format(const VertexId& x) const = 0;
    virtual VertexId parse(std::string_view text) const = 0;
};

} // namespace detail

enum class FamilyKind { Lattice, Tree, Ladder, Comb, DiagLattice };

// A bounded-degree, connected, simple graph described by its neighbor function.
// Built-in families are infinite; finite graphs can be wrapped with
// make_finite_family() so they can serve as their own ambient graph.
class GraphFamily {
public:
    GraphFamily(std::string name, int degree_bound, VertexId origin, bool finite,
                std::shared_ptr<const detail::FamilyImpl> impl);

    const std::string& name() const noexcept { return name_; }
    int degree_bound() const noexcept { return degree_bound_; }
    const VertexId& origin() const noexcept { return origin_; }
    bool is_finite() const noexcept { return finite_; }

    // Replaces the contents of out with the neighbors of x.
    void neighbors(const VertexId& x, std::vector<VertexId>& out) const {
        out.clear();
        impl_->append_neighbors(x, out);
    }

    std::vector<VertexId> neighbors(const VertexId& x) const {
        std::vector<VertexId> out;
        impl_->append_neighbors(x, out);
        return out;
    }

    bool adjacent(const VertexId& x, const VertexId& y) const;

    // Text encoding used by CSV/JSON exports; parse(format(x)) == x.
    std::string format(const VertexId& x) const { return impl_->format(x); }
    VertexId parse(std::string_view text) const { return impl_->parse(text); }

private:
    std::string name_;
    int degree_bound_;
    VertexId origin_;
    bool finite_;
    std::shared_ptr<const detail::FamilyImpl> impl_;
};

// lattice(d): Z^d, d in [1, VertexId::kCapacity].
// tree(d): the d-regular tree, d >= 3, vertices are reduced words over d involutions.
// ladder: Z x {0,1}. comb: Z^2 keeping vertical edges and the horizontal axis.
// diag_lattice: Z^2 plus the diagonal (x,y)-(x+1,y+1) in every unit square.
GraphFamily make_family(FamilyKind kind, int d = 0);

// Name-based construction: "lattice", "tree", "ladder", "comb", "diag_lattice".
GraphFamily make_family(std::string_view name, int d = 0);

// Short CLI-style names: "z<d>", "tree<d>", "lattice"/"tree" with explicit d,
// "ladder", "comb", "diag" / "diag_lattice". d <= 0 means "not given".
GraphFamily parse_family_spec(std::string_view spec, int d = 0);

// A finite connected graph as its own ambient family. Vertex i is labelled
// labels[i]; VertexIds follow the lexicographic order of the labels.
GraphFamily make_finite_family(std::string name, const std::vector<std::string>& labels,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges);

} // namespace hdtk
