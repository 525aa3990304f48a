#pragma once

#include <cstddef>
#include <string>

#include "hdtk/edge_space.hpp"
#include "hdtk/errors.hpp"

namespace hdtk {

// FREE uses window-internal degrees (the window as a graph in its own right).
// EMBEDDED uses ambient degrees: potentials vanish outside the window, so edges
// leaving it add to the diagonal without coupling.
enum class LaplacianMode { Free, Embedded };

const char* to_string(LaplacianMode mode);

struct SolveReport {
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = true;
};

class LaplacianSolveFailure : public SolverFailure {
public:
    LaplacianSolveFailure(const std::string& what, SolveReport report)
        : SolverFailure(what), report_(report) {}

    const SolveReport& report() const noexcept { return report_; }

private:
    SolveReport report_;
};

// (Lv)(x) = deg(x) v(x) - sum of v over window neighbours.
VertexFunction laplacian_apply(const VertexFunction& v, LaplacianMode mode);

struct LaplacianSolution {
    VertexFunction potential;
    SolveReport report;
};

// Jacobi-preconditioned conjugate gradients to relative residual <= tol.
// FREE requires sum(rhs) == 0 and returns the zero-mean solution. EMBEDDED on a
// window without boundary has the same kernel as FREE and is treated as FREE.
LaplacianSolution solve_laplacian(const VertexFunction& rhs, LaplacianMode mode, double tol = kDefaultTol);

struct StarProjection {
    VertexFunction potential;
    // Window-internal part of d(potential).
    EdgeFunction projection;
    // <P u, u> = <d potential, u>.
    double score;
    // |u - P u| in the ambient l2, including edges that leave the window in
    // EMBEDDED mode.
    double residual_norm;
    SolveReport report;
};

// Orthogonal projection of u onto {dv : supp v inside the window}; the mode
// chooses between the window's own differential and the ambient one.
StarProjection project_star(const EdgeFunction& u, LaplacianMode mode, double tol = kDefaultTol);

struct HodgeParts {
    EdgeFunction star_part;
    EdgeFunction diamond_part;
    SolveReport report;
};

// u = star_part + diamond_part with star_part exact and diamond_part a flow on
// the window viewed as a finite graph.
HodgeParts hodge_decompose_finite(const EdgeFunction& u, double tol = kDefaultTol);

// |E| - |V| + 1
std::size_t cycle_rank(const FiniteWindow& window);

} // namespace hdtk
