#include "hdtk/dimension.hpp"

#include <algorithm>

#include "hdtk/parallel.hpp"
#include "hdtk/summation.hpp"

namespace hdtk {

namespace {

OrientedEdge canonical(const OrientedEdge& e) { return e.head < e.tail ? e.reversed() : e; }

void require_radius(int radius) {
    if (radius < 1) {
        throw ConfigError("score radius must be at least 1, got " + std::to_string(radius));
    }
}

} // namespace

EdgeScores edge_scores(const GraphFamily& family, const OrientedEdge& e, int radius, const ScoreOptions& options) {
    require_radius(radius);
    // Both orientations share one computation; the trace is sign-invariant.
    const auto ce = canonical(e);
    auto window = edge_ball(family, ce, radius, options.limits);
    const auto indicator = edge_indicator(window, ce);

    const auto embedded = project_star(indicator, LaplacianMode::Embedded, options.tol);
    const auto free = project_star(indicator, LaplacianMode::Free, options.tol);

    EdgeScores out;
    out.radius = radius;
    out.star = embedded.score;
    out.diamond = 1.0 - free.score;
    out.hd = 1.0 - out.star - out.diamond;
    out.cg_iterations = embedded.report.iterations + free.report.iterations;
    out.residual = std::max(embedded.report.relative_residual, free.report.relative_residual);
    out.ball_vertices = window->num_vertices();
    return out;
}

double star_score(const GraphFamily& family, const OrientedEdge& e, int radius, const ScoreOptions& options) {
    require_radius(radius);
    auto window = edge_ball(family, canonical(e), radius, options.limits);
    return project_star(edge_indicator(window, canonical(e)), LaplacianMode::Embedded, options.tol).score;
}

double diamond_score(const GraphFamily& family, const OrientedEdge& e, int radius, const ScoreOptions& options) {
    require_radius(radius);
    auto window = edge_ball(family, canonical(e), radius, options.limits);
    return 1.0 - project_star(edge_indicator(window, canonical(e)), LaplacianMode::Free, options.tol).score;
}

double hd_score(const GraphFamily& family, const OrientedEdge& e, int radius, const ScoreOptions& options) {
    return edge_scores(family, e, radius, options).hd;
}

ScoreReport score_report(const GraphFamily& family, const OrientedEdge& e, std::span<const int> radii,
                         const ScoreOptions& options) {
    ScoreReport report{e, std::vector<EdgeScores>(radii.size())};
    parallel_for(radii.size(), options.jobs,
                 [&](std::size_t i) { report.rows[i] = edge_scores(family, e, radii[i], options); });
    return report;
}

WindowTraces window_traces(const GraphFamily& family, const FiniteWindow& window, int radius,
                           const ScoreOptions& options) {
    require_radius(radius);
    std::vector<EdgeScores> per_edge(window.num_edges());
    parallel_for(per_edge.size(), options.jobs, [&](std::size_t k) {
        per_edge[k] = edge_scores(family, window.canonical_edge(k), radius, options);
    });
    CompensatedSum star, diamond, hd;
    WindowTraces out;
    for (const auto& s : per_edge) {
        star.add(s.star);
        diamond.add(s.diamond);
        hd.add(s.hd);
        out.cg_iterations += s.cg_iterations;
    }
    const auto m = static_cast<double>(per_edge.size());
    out.star = star.value() / m;
    out.diamond = diamond.value() / m;
    out.hd = hd.value() / m;
    return out;
}

double dim_window(const GraphFamily& family, const FiniteWindow& window, Subspace space, int radius,
                  const ScoreOptions& options) {
    if (space == Subspace::Full) {
        return 1.0;
    }
    const auto traces = window_traces(family, window, radius, options);
    switch (space) {
    case Subspace::Star:
        return traces.star;
    case Subspace::Diamond:
        return traces.diamond;
    default:
        return traces.hd;
    }
}

FolnerRow folner_row(const FiniteWindow& window, int radius) {
    FolnerRow row;
    row.radius = radius;
    row.num_vertices = window.num_vertices();
    row.num_edges = window.num_edges();
    row.sigma_size = window.sigma_size();
    row.ratio_v = static_cast<double>(row.sigma_size) / static_cast<double>(row.num_vertices);
    row.ratio_e = static_cast<double>(row.sigma_size) / static_cast<double>(row.num_edges);
    return row;
}

std::vector<FolnerRow> folner_profile(const GraphFamily& family, const VertexId& center, std::span<const int> radii,
                                      const WindowLimits& limits) {
    std::vector<FolnerRow> rows;
    int previous = 0;
    for (int r : radii) {
        if (r < 1 || r <= previous) {
            throw ConfigError("Folner radii must be positive and strictly increasing");
        }
        previous = r;
        rows.push_back(folner_row(*ball(family, center, r, limits), r));
    }
    return rows;
}

Lemma3Result lemma3_check(const GraphFamily& family, const FiniteWindow& window, int radius,
                          const ScoreOptions& options) {
    const auto traces = window_traces(family, window, radius, options);
    Lemma3Result out;
    out.lhs = traces.star + traces.diamond;
    out.rhs = 1.0 - static_cast<double>(window.sigma_size()) / static_cast<double>(window.num_edges());
    out.holds = out.lhs >= out.rhs - options.tol;
    return out;
}

std::vector<Corollary4Row> corollary4_table(const GraphFamily& family, const VertexId& center,
                                            std::span<const int> window_radii, int score_radius_factor,
                                            const ScoreOptions& options, int max_score_radius) {
    if (score_radius_factor < 1) {
        throw ConfigError("score radius factor must be at least 1");
    }
    std::vector<Corollary4Row> rows;
    int previous = 0;
    for (int r : window_radii) {
        if (r < 1 || r <= previous) {
            throw ConfigError("window radii must be positive and strictly increasing");
        }
        previous = r;
        auto window = ball(family, center, r, options.limits);
        Corollary4Row row;
        row.window_radius = r;
        row.score_radius = score_radius_factor * r;
        if (max_score_radius > 0) {
            // exponential-growth families cannot afford factor * r
            row.score_radius = std::min(row.score_radius, max_score_radius);
        }
        row.hd_dim_estimate = window_traces(family, *window, row.score_radius, options).hd;
        row.sigma_over_e = static_cast<double>(window->sigma_size()) / static_cast<double>(window->num_edges());
        rows.push_back(row);
    }
    return rows;
}

} // namespace hdtk
