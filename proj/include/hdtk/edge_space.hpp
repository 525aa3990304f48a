#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hdtk/window.hpp"

namespace hdtk {

inline constexpr double kDefaultTol = 1e-10;

// Real function on the vertices of a window; zero outside it.
class VertexFunction {
public:
    explicit VertexFunction(WindowPtr window);
    VertexFunction(WindowPtr window, std::vector<double> values);

    static VertexFunction constant(WindowPtr window, double value);
    static VertexFunction from(WindowPtr window, const std::function<double(const VertexId&)>& fn);

    const FiniteWindow& window() const noexcept { return *window_; }
    const WindowPtr& window_ptr() const noexcept { return window_; }

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    // Value at an ambient vertex, 0 outside the window.
    double at(const VertexId& x) const;

    VertexFunction& operator+=(const VertexFunction& other);
    VertexFunction& operator-=(const VertexFunction& other);
    VertexFunction& operator*=(double alpha);

private:
    WindowPtr window_;
    std::vector<double> values_;
};

VertexFunction operator+(VertexFunction a, const VertexFunction& b);
VertexFunction operator-(VertexFunction a, const VertexFunction& b);
VertexFunction operator*(double alpha, VertexFunction v);

// Antisymmetric function on the oriented edges of a window, stored once per
// canonically oriented edge. Reading the reverse orientation negates.
class EdgeFunction {
public:
    explicit EdgeFunction(WindowPtr window);
    EdgeFunction(WindowPtr window, std::vector<double> values);

    const FiniteWindow& window() const noexcept { return *window_; }
    const WindowPtr& window_ptr() const noexcept { return window_; }

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    double& operator[](std::size_t k) { return values_[k]; }

    // u(tail, head) for window vertex indices joined by an edge; 0 otherwise.
    double oriented(std::size_t tail, std::size_t head) const;

    // u(e) for an ambient oriented edge; 0 when e is not a window edge.
    double at(const OrientedEdge& e) const;

    EdgeFunction& operator+=(const EdgeFunction& other);
    EdgeFunction& operator-=(const EdgeFunction& other);
    EdgeFunction& operator*=(double alpha);

private:
    WindowPtr window_;
    std::vector<double> values_;
};

EdgeFunction operator+(EdgeFunction a, const EdgeFunction& b);
EdgeFunction operator-(EdgeFunction a, const EdgeFunction& b);
EdgeFunction operator*(double alpha, EdgeFunction u);

// dv(x,y) = v(y) - v(x) on window edges.
EdgeFunction differential(const VertexFunction& v);

// d*u(x) = sum over window neighbours y of u(y,x).
VertexFunction codifferential(const EdgeFunction& u);

// <u,w> = 1/2 sum over oriented edges = sum over canonical edges.
double inner(const EdgeFunction& u, const EdgeFunction& w);
double norm(const EdgeFunction& u);

// Standard l2(V) product.
double inner(const VertexFunction& v, const VertexFunction& w);

// 1 on e, -1 on the reverse, 0 elsewhere. Throws MissingEdge.
EdgeFunction edge_indicator(WindowPtr window, const OrientedEdge& e);

// 0/1 per canonical edge: 1 iff both endpoints lie in a.
std::vector<std::uint8_t> chi(const FiniteWindow& window, std::span<const VertexId> a);
EdgeFunction masked(const EdgeFunction& u, std::span<const std::uint8_t> mask);

struct CheckResult {
    bool holds;
    double max_residual;
};

// d*u = 0 within tol. interior_only skips boundary vertices.
CheckResult is_flow(const EdgeFunction& u, bool interior_only = true, double tol = kDefaultTol);

// v(x) equals the mean over its window neighbours within tol.
CheckResult is_harmonic(const VertexFunction& v, bool interior_only = true, double tol = kDefaultTol);

// <dv, dv>
double energy(const VertexFunction& v);

// CSV rows "tail,head,value" / "id,value", ordered by VertexId.
void write_edge_csv(std::ostream& out, const EdgeFunction& u, const GraphFamily& family);
void write_vertex_csv(std::ostream& out, const VertexFunction& v, const GraphFamily& family);

} // namespace hdtk
