#include "hdtk/hodge.hpp"
#include "hdtk/format.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hdtk/summation.hpp"

namespace hdtk {

namespace {

bool effectively_free(const FiniteWindow& w, LaplacianMode mode) {
    return mode == LaplacianMode::Free || w.sigma_size() == 0;
}

std::vector<double> degrees(const FiniteWindow& w, LaplacianMode mode) {
    std::vector<double> deg(w.num_vertices());
    for (std::size_t i = 0; i < deg.size(); ++i) {
        deg[i] = mode == LaplacianMode::Free ? w.internal_degree(i) : w.full_degree(i);
    }
    return deg;
}

void apply(const FiniteWindow& w, std::span<const double> deg, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        double s = deg[i] * x[i];
        for (const auto& inc : w.incident(i)) {
            s -= x[inc.neighbor];
        }
        y[i] = s;
    }
}

void remove_mean(std::span<double> x) {
    const double mean = compensated_total(x) / static_cast<double>(x.size());
    for (double& xi : x) {
        xi -= mean;
    }
}

double l2(std::span<const double> x) { return std::sqrt(compensated_dot(x, x)); }

double true_residual(const FiniteWindow& w, std::span<const double> deg, std::span<const double> b,
                     std::span<const double> x, std::vector<double>& r) {
    apply(w, deg, x, r);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = b[i] - r[i];
    }
    return l2(r);
}

// Preconditioned CG from x = 0. b must already be consistent for singular modes.
SolveReport pcg(const FiniteWindow& w, std::span<const double> deg, std::span<const double> b, std::span<double> x,
                double tol) {
    const std::size_t n = b.size();
    std::fill(x.begin(), x.end(), 0.0);
    const double bnorm = l2(b);
    if (bnorm == 0.0) {
        return {0, 0.0, true};
    }
    const std::size_t cap = std::max<std::size_t>(20 * n, 100);
    std::vector<double> r(b.begin(), b.end()), z(n), p(n), ap(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = r[i] / deg[i];
    }
    p = z;
    double rz = compensated_dot(r, z);
    double rel = 1.0;
    for (std::size_t it = 1; it <= cap; ++it) {
        apply(w, deg, p, ap);
        const double pap = compensated_dot(p, ap);
        if (!(pap > 0.0)) {
            rel = true_residual(w, deg, b, x, r) / bnorm;
            return {it, rel, rel <= tol};
        }
        const double alpha = rz / pap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rel = l2(r) / bnorm;
        if (rel <= tol) {
            // Guard against drift of the recursively updated residual.
            rel = true_residual(w, deg, b, x, r) / bnorm;
            if (rel <= tol) {
                return {it, rel, true};
            }
            for (std::size_t i = 0; i < n; ++i) {
                z[i] = r[i] / deg[i];
            }
            p = z;
            rz = compensated_dot(r, z);
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = r[i] / deg[i];
        }
        const double rz_next = compensated_dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = z[i] + beta * p[i];
        }
    }
    rel = true_residual(w, deg, b, x, r) / bnorm;
    return {cap, rel, rel <= tol};
}

// Potential of an edge function on an acyclic window by summing along BFS
// paths from vertex 0; exact because every edge function there is a gradient.
std::vector<double> integrate_on_tree(const EdgeFunction& u) {
    const auto& w = u.window();
    std::vector<double> v(w.num_vertices(), 0.0);
    std::vector<bool> seen(w.num_vertices(), false);
    std::vector<std::size_t> queue{0};
    seen[0] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const auto x = queue[head];
        for (const auto& inc : w.incident(x)) {
            if (!seen[inc.neighbor]) {
                seen[inc.neighbor] = true;
                const double step = w.edge(inc.edge).tail == x ? u[inc.edge] : -u[inc.edge];
                v[inc.neighbor] = v[x] + step;
                queue.push_back(inc.neighbor);
            }
        }
    }
    return v;
}

} // namespace

const char* to_string(LaplacianMode mode) { return mode == LaplacianMode::Free ? "free" : "embedded"; }

VertexFunction laplacian_apply(const VertexFunction& v, LaplacianMode mode) {
    const auto& w = v.window();
    const auto deg = degrees(w, mode);
    std::vector<double> out(w.num_vertices());
    apply(w, deg, v.values(), out);
    return VertexFunction(v.window_ptr(), std::move(out));
}

LaplacianSolution solve_laplacian(const VertexFunction& rhs, LaplacianMode mode, double tol) {
    if (!(tol > 0)) {
        throw ConfigError("tolerance must be positive");
    }
    const auto& w = rhs.window();
    const bool singular = effectively_free(w, mode);
    const auto deg = degrees(w, singular ? LaplacianMode::Free : mode);
    std::vector<double> b(rhs.values().begin(), rhs.values().end());
    if (singular) {
        CompensatedSum total, mass;
        for (double x : b) {
            total.add(x);
            mass.add(std::abs(x));
        }
        if (std::abs(total.value()) > tol * std::max(mass.value(), 1.0)) {
            throw IncompatibleRhs("free Laplacian needs a right-hand side summing to zero (sum = " +
                                  format_double(total.value()) + ")");
        }
        remove_mean(b);
    }
    std::vector<double> x(b.size());
    const auto report = pcg(w, deg, b, x, tol);
    if (!report.converged) {
        throw LaplacianSolveFailure("conjugate gradients stalled at relative residual " +
                                        format_double(report.relative_residual) + " after " +
                                        std::to_string(report.iterations) + " iterations",
                                    report);
    }
    if (singular) {
        remove_mean(x);
    }
    return {VertexFunction(rhs.window_ptr(), std::move(x)), report};
}

StarProjection project_star(const EdgeFunction& u, LaplacianMode mode, double tol) {
    const auto& w = u.window();
    const bool free = effectively_free(w, mode);

    if (free && cycle_rank(w) == 0) {
        auto v = integrate_on_tree(u);
        remove_mean(v);
        VertexFunction potential(u.window_ptr(), std::move(v));
        const double score = inner(u, u);
        return {std::move(potential), u, score, 0.0, {0, 0.0, true}};
    }

    auto solution = solve_laplacian(codifferential(u), mode, tol);
    auto projection = differential(solution.potential);
    const double score = inner(projection, u);

    CompensatedSum resid;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double diff = u[k] - projection[k];
        resid.add(diff * diff);
    }
    if (!free) {
        // Edges leaving the window carry dv(x, y) = -v(x) and u = 0.
        const auto& v = solution.potential;
        for (std::size_t i = 0; i < w.num_vertices(); ++i) {
            const double missing = w.full_degree(i) - w.internal_degree(i);
            if (missing > 0) {
                resid.add(missing * v[i] * v[i]);
            }
        }
    }
    return {std::move(solution.potential), std::move(projection), score, std::sqrt(resid.value()),
            solution.report};
}

HodgeParts hodge_decompose_finite(const EdgeFunction& u, double tol) {
    auto star = project_star(u, LaplacianMode::Free, tol);
    EdgeFunction diamond = u - star.projection;
    return {std::move(star.projection), std::move(diamond), star.report};
}

std::size_t cycle_rank(const FiniteWindow& window) {
    return window.num_edges() + 1 - window.num_vertices();
}

} // namespace hdtk
