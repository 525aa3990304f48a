#include "hdtk/edge_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "hdtk/errors.hpp"
#include "hdtk/format.hpp"
#include "hdtk/summation.hpp"

namespace hdtk {

namespace {

void require_finite(std::span<const double> values) {
    for (double x : values) {
        if (!std::isfinite(x)) {
            throw ConfigError("function values must be finite");
        }
    }
}

void require_same(const WindowPtr& a, const WindowPtr& b) {
    if (a.get() != b.get()) {
        throw IncompatibleDomain("functions live on different windows");
    }
}

} // namespace

VertexFunction::VertexFunction(WindowPtr window)
    : window_(std::move(window)), values_(window_->num_vertices(), 0.0) {}

VertexFunction::VertexFunction(WindowPtr window, std::vector<double> values)
    : window_(std::move(window)), values_(std::move(values)) {
    if (values_.size() != window_->num_vertices()) {
        throw IncompatibleDomain("vertex function has " + std::to_string(values_.size()) +
                                 " values for " + std::to_string(window_->num_vertices()) + " vertices");
    }
    require_finite(values_);
}

VertexFunction VertexFunction::constant(WindowPtr window, double value) {
    const auto n = window->num_vertices();
    return VertexFunction(std::move(window), std::vector<double>(n, value));
}

VertexFunction VertexFunction::from(WindowPtr window, const std::function<double(const VertexId&)>& fn) {
    std::vector<double> values(window->num_vertices());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = fn(window->vertex(i));
    }
    return VertexFunction(std::move(window), std::move(values));
}

double VertexFunction::at(const VertexId& x) const {
    auto i = window_->index_of(x);
    return i ? values_[*i] : 0.0;
}

VertexFunction& VertexFunction::operator+=(const VertexFunction& other) {
    require_same(window_, other.window_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

VertexFunction& VertexFunction::operator-=(const VertexFunction& other) {
    require_same(window_, other.window_);
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] -= other.values_[i];
    }
    return *this;
}

VertexFunction& VertexFunction::operator*=(double alpha) {
    for (double& x : values_) {
        x *= alpha;
    }
    return *this;
}

VertexFunction operator+(VertexFunction a, const VertexFunction& b) { return a += b; }
VertexFunction operator-(VertexFunction a, const VertexFunction& b) { return a -= b; }
VertexFunction operator*(double alpha, VertexFunction v) { return v *= alpha; }

EdgeFunction::EdgeFunction(WindowPtr window) : window_(std::move(window)), values_(window_->num_edges(), 0.0) {}

EdgeFunction::EdgeFunction(WindowPtr window, std::vector<double> values)
    : window_(std::move(window)), values_(std::move(values)) {
    if (values_.size() != window_->num_edges()) {
        throw IncompatibleDomain("edge function has " + std::to_string(values_.size()) + " values for " +
                                 std::to_string(window_->num_edges()) + " edges");
    }
    require_finite(values_);
}

double EdgeFunction::oriented(std::size_t tail, std::size_t head) const {
    auto k = window_->edge_between(tail, head);
    if (!k) {
        return 0.0;
    }
    return window_->edge(*k).tail == tail ? values_[*k] : -values_[*k];
}

double EdgeFunction::at(const OrientedEdge& e) const {
    auto found = window_->find_edge(e);
    if (!found) {
        return 0.0;
    }
    return found->second * values_[found->first];
}

EdgeFunction& EdgeFunction::operator+=(const EdgeFunction& other) {
    require_same(window_, other.window_);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] += other.values_[k];
    }
    return *this;
}

EdgeFunction& EdgeFunction::operator-=(const EdgeFunction& other) {
    require_same(window_, other.window_);
    for (std::size_t k = 0; k < values_.size(); ++k) {
        values_[k] -= other.values_[k];
    }
    return *this;
}

EdgeFunction& EdgeFunction::operator*=(double alpha) {
    for (double& x : values_) {
        x *= alpha;
    }
    return *this;
}

EdgeFunction operator+(EdgeFunction a, const EdgeFunction& b) { return a += b; }
EdgeFunction operator-(EdgeFunction a, const EdgeFunction& b) { return a -= b; }
EdgeFunction operator*(double alpha, EdgeFunction u) { return u *= alpha; }

EdgeFunction differential(const VertexFunction& v) {
    const auto& w = v.window();
    std::vector<double> du(w.num_edges());
    for (std::size_t k = 0; k < du.size(); ++k) {
        const auto& e = w.edge(k);
        du[k] = v[e.head] - v[e.tail];
    }
    return EdgeFunction(v.window_ptr(), std::move(du));
}

VertexFunction codifferential(const EdgeFunction& u) {
    const auto& w = u.window();
    std::vector<double> out(w.num_vertices());
    for (std::size_t x = 0; x < out.size(); ++x) {
        CompensatedSum s;
        for (const auto& inc : w.incident(x)) {
            // u(y, x): positive when x is the head of the stored edge.
            s.add(w.edge(inc.edge).head == x ? u[inc.edge] : -u[inc.edge]);
        }
        out[x] = s.value();
    }
    return VertexFunction(u.window_ptr(), std::move(out));
}

double inner(const EdgeFunction& u, const EdgeFunction& w) {
    require_same(u.window_ptr(), w.window_ptr());
    return compensated_dot(u.values(), w.values());
}

double norm(const EdgeFunction& u) { return std::sqrt(inner(u, u)); }

double inner(const VertexFunction& v, const VertexFunction& w) {
    require_same(v.window_ptr(), w.window_ptr());
    return compensated_dot(v.values(), w.values());
}

EdgeFunction edge_indicator(WindowPtr window, const OrientedEdge& e) {
    auto found = window->find_edge(e);
    if (!found) {
        throw MissingEdge("edge is not inside the window");
    }
    EdgeFunction u(std::move(window));
    u[found->first] = found->second;
    return u;
}

std::vector<std::uint8_t> chi(const FiniteWindow& window, std::span<const VertexId> a) {
    std::vector<bool> in(window.num_vertices(), false);
    for (const auto& x : a) {
        if (auto i = window.index_of(x)) {
            in[*i] = true;
        }
    }
    std::vector<std::uint8_t> mask(window.num_edges());
    for (std::size_t k = 0; k < mask.size(); ++k) {
        const auto& e = window.edge(k);
        mask[k] = (in[e.tail] && in[e.head]) ? 1 : 0;
    }
    return mask;
}

EdgeFunction masked(const EdgeFunction& u, std::span<const std::uint8_t> mask) {
    if (mask.size() != u.size()) {
        throw IncompatibleDomain("mask size does not match edge count");
    }
    EdgeFunction out = u;
    for (std::size_t k = 0; k < mask.size(); ++k) {
        if (!mask[k]) {
            out[k] = 0.0;
        }
    }
    return out;
}

CheckResult is_flow(const EdgeFunction& u, bool interior_only, double tol) {
    if (!(tol > 0)) {
        throw ConfigError("tolerance must be positive");
    }
    const auto div = codifferential(u);
    const auto& w = u.window();
    double worst = 0.0;
    for (std::size_t x = 0; x < w.num_vertices(); ++x) {
        if (interior_only && w.on_boundary(x)) {
            continue;
        }
        worst = std::max(worst, std::abs(div[x]));
    }
    return {worst <= tol, worst};
}

CheckResult is_harmonic(const VertexFunction& v, bool interior_only, double tol) {
    if (!(tol > 0)) {
        throw ConfigError("tolerance must be positive");
    }
    const auto& w = v.window();
    double worst = 0.0;
    for (std::size_t x = 0; x < w.num_vertices(); ++x) {
        if (interior_only && w.on_boundary(x)) {
            continue;
        }
        CompensatedSum s;
        for (const auto& inc : w.incident(x)) {
            s.add(v[inc.neighbor]);
        }
        const double mean = s.value() / static_cast<double>(w.internal_degree(x));
        worst = std::max(worst, std::abs(v[x] - mean));
    }
    return {worst <= tol, worst};
}

double energy(const VertexFunction& v) {
    auto dv = differential(v);
    return inner(dv, dv);
}

void write_edge_csv(std::ostream& out, const EdgeFunction& u, const GraphFamily& family) {
    const auto& w = u.window();
    std::vector<std::size_t> order(w.num_edges());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
        const auto& ea = w.edge(a);
        const auto& eb = w.edge(b);
        if (w.vertex(ea.tail) != w.vertex(eb.tail)) {
            return w.vertex(ea.tail) < w.vertex(eb.tail);
        }
        return w.vertex(ea.head) < w.vertex(eb.head);
    });
    out << "tail,head,value\n";
    for (auto k : order) {
        const auto& e = w.edge(k);
        out << family.format(w.vertex(e.tail)) << ',' << family.format(w.vertex(e.head)) << ','
            << format_double(u[k]) << '\n';
    }
}

void write_vertex_csv(std::ostream& out, const VertexFunction& v, const GraphFamily& family) {
    const auto& w = v.window();
    std::vector<std::size_t> order(w.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return w.vertex(a) < w.vertex(b); });
    out << "id,value\n";
    for (auto i : order) {
        out << family.format(w.vertex(i)) << ',' << format_double(v[i]) << '\n';
    }
}

} // namespace hdtk
