#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hdtk/hodge.hpp"

namespace hdtk {

struct ScoreOptions {
    double tol = kDefaultTol;
    WindowLimits limits{};
    std::size_t jobs = 1;
};

// Projection traces <P e, e> of one edge indicator, estimated on the radius-r
// neighbourhood of the edge's two endpoints:
//   star    - EMBEDDED projection onto gradients of potentials supported there
//             (nondecreasing in r, tends to the trace for the closure of
//             finitely supported gradients);
//   diamond - 1 - FREE projection on the induced ball, the trace of its cycle
//             space (nondecreasing in r);
//   hd      - 1 - star - diamond, an upper estimate for the trace of the
//             harmonic Dirichlet part (nonincreasing in r).
struct EdgeScores {
    int radius = 0;
    double star = 0.0;
    double diamond = 0.0;
    double hd = 0.0;
    std::size_t cg_iterations = 0;
    double residual = 0.0;
    std::size_t ball_vertices = 0;
};

EdgeScores edge_scores(const GraphFamily& family, const OrientedEdge& e, int radius,
                       const ScoreOptions& options = {});

double star_score(const GraphFamily& family, const OrientedEdge& e, int radius, const ScoreOptions& options = {});
double diamond_score(const GraphFamily& family, const OrientedEdge& e, int radius,
                     const ScoreOptions& options = {});
double hd_score(const GraphFamily& family, const OrientedEdge& e, int radius, const ScoreOptions& options = {});

struct ScoreReport {
    OrientedEdge edge;
    std::vector<EdgeScores> rows; // one per radius, in input order
};

ScoreReport score_report(const GraphFamily& family, const OrientedEdge& e, std::span<const int> radii,
                         const ScoreOptions& options = {});

enum class Subspace { Star, Diamond, Hd, Full };

struct WindowTraces {
    double star = 0.0;
    double diamond = 0.0;
    double hd = 0.0;
    std::size_t cg_iterations = 0;
};

// Averages of the per-edge scores over the window's edges.
WindowTraces window_traces(const GraphFamily& family, const FiniteWindow& window, int radius,
                           const ScoreOptions& options = {});

double dim_window(const GraphFamily& family, const FiniteWindow& window, Subspace space, int radius,
                  const ScoreOptions& options = {});

struct FolnerRow {
    int radius = 0;
    std::size_t num_vertices = 0;
    std::size_t num_edges = 0;
    std::size_t sigma_size = 0;
    double ratio_v = 0.0;
    double ratio_e = 0.0;
};

FolnerRow folner_row(const FiniteWindow& window, int radius);

std::vector<FolnerRow> folner_profile(const GraphFamily& family, const VertexId& center, std::span<const int> radii,
                                      const WindowLimits& limits = {});

struct Lemma3Result {
    double lhs = 0.0; // star + diamond traces, a lower estimate
    double rhs = 0.0; // 1 - |sigma| / |E|
    bool holds = false;
};

Lemma3Result lemma3_check(const GraphFamily& family, const FiniteWindow& window, int radius,
                          const ScoreOptions& options = {});

struct Corollary4Row {
    int window_radius = 0;
    int score_radius = 0;
    double hd_dim_estimate = 0.0;
    double sigma_over_e = 0.0;
};

// For each window radius R: ball(center, R) and the HD trace estimated with
// score radius factor * R. No ordering is enforced on the output.
std::vector<Corollary4Row> corollary4_table(const GraphFamily& family, const VertexId& center,
                                            std::span<const int> window_radii, int score_radius_factor,
                                            const ScoreOptions& options = {}, int max_score_radius = 0);

} // namespace hdtk
