#include <doctest.h>

#include <random>

#include "hdtk/errors.hpp"
#include "hdtk/hodge.hpp"
#include "oracles.hpp"

using namespace hdtk;

namespace {

GraphFamily cycle(int n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (int i = 0; i < n; ++i) {
        labels.push_back("v" + std::to_string(i));
        edges.emplace_back(i, (i + 1) % n);
    }
    return make_finite_family("cycle" + std::to_string(n), labels, edges);
}

WindowPtr whole(const GraphFamily& g) { return ball(g, g.origin(), 64); }

WindowPtr single_edge() {
    auto z = make_family(FamilyKind::Lattice, 1);
    return induced_window(z, std::vector<VertexId>{VertexId{0}, VertexId{1}});
}

} // namespace

TEST_CASE("laplacian apply") {
    auto z = make_family(FamilyKind::Lattice, 1);
    auto w = ball(z, z.origin(), 1);
    auto one = VertexFunction::constant(w, 1.0);
    const auto free_one = laplacian_apply(one, LaplacianMode::Free);
    for (double x : free_one.values()) {
        CHECK(x == 0.0);
    }
    auto emb = laplacian_apply(one, LaplacianMode::Embedded);
    CHECK(emb.at(VertexId{-1}) == 1.0);
    CHECK(emb.at(VertexId{0}) == 0.0);
    CHECK(emb.at(VertexId{1}) == 1.0);

    auto e = single_edge();
    auto lv = laplacian_apply(VertexFunction(e, {1.0, 0.0}), LaplacianMode::Free);
    CHECK(lv[0] == 1.0);
    CHECK(lv[1] == -1.0);
}

TEST_CASE("laplacian solves") {
    auto e = single_edge();
    auto zero = solve_laplacian(VertexFunction(e), LaplacianMode::Free);
    CHECK(zero.potential[0] == 0.0);
    CHECK(zero.potential[1] == 0.0);

    auto sol = solve_laplacian(VertexFunction(e, {1.0, -1.0}), LaplacianMode::Free);
    CHECK(sol.potential[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sol.potential[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(sol.report.converged);

    CHECK_THROWS_AS(solve_laplacian(VertexFunction(e, {1.0, 0.0}), LaplacianMode::Free), IncompatibleRhs);

    auto z = make_family(FamilyKind::Lattice, 1);
    auto w = ball(z, z.origin(), 1);
    auto rhs = VertexFunction::from(w, [](const VertexId& x) { return x == VertexId{0}; });
    auto emb = solve_laplacian(rhs, LaplacianMode::Embedded);
    std::vector<double> dense_rhs(rhs.values().begin(), rhs.values().end());
    auto ref = oracle::laplacian_solve(*w, dense_rhs, true);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(emb.potential[i] == doctest::Approx(ref(i)).epsilon(1e-10));
    }
    CHECK(emb.potential.at(VertexId{0}) == doctest::Approx(1.0));
    CHECK(emb.potential.at(VertexId{1}) == doctest::Approx(0.5));
}

TEST_CASE("laplacian solves agree with dense solves on random windows") {
    std::mt19937_64 rng(11);
    for (const auto& g : {make_family(FamilyKind::Lattice, 2), make_family(FamilyKind::DiagLattice),
                          make_family(FamilyKind::Ladder)}) {
        auto w = induced_window(g, oracle::random_blob(g, 40, rng));
        auto rhs = oracle::random_values(w->num_vertices(), rng);
        const auto emb = solve_laplacian(VertexFunction(w, rhs), LaplacianMode::Embedded);
        const auto emb_ref = oracle::laplacian_solve(*w, rhs, true);
        double mean = 0.0;
        for (double x : rhs) {
            mean += x / rhs.size();
        }
        for (double& x : rhs) {
            x -= mean;
        }
        const auto fre = solve_laplacian(VertexFunction(w, rhs), LaplacianMode::Free);
        const auto fre_ref = oracle::laplacian_solve(*w, rhs, false);
        for (std::size_t i = 0; i < w->num_vertices(); ++i) {
            CHECK(emb.potential[i] == doctest::Approx(emb_ref(i)).epsilon(1e-7));
            CHECK(fre.potential[i] == doctest::Approx(fre_ref(i)).epsilon(1e-7).scale(1.0));
        }
    }
}

TEST_CASE("star projection closed forms") {
    auto tri = cycle(3);
    auto w3 = whole(tri);
    auto p3 = project_star(edge_indicator(w3, w3->canonical_edge(0)), LaplacianMode::Free);
    CHECK(p3.score == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    auto sq = cycle(4);
    auto w4 = whole(sq);
    auto p4 = project_star(edge_indicator(w4, w4->canonical_edge(1)), LaplacianMode::Free);
    CHECK(p4.score == doctest::Approx(0.75).epsilon(1e-12));

    // idempotent on differentials
    auto g = make_family(FamilyKind::Lattice, 2);
    auto w = ball(g, g.origin(), 3);
    auto u = differential(VertexFunction::from(w, [](const VertexId& x) { return x[0] * x[1] + 0.5 * x[0]; }));
    auto p = project_star(u, LaplacianMode::Free);
    CHECK(p.score == doctest::Approx(inner(u, u)).epsilon(1e-10));
    CHECK(norm(p.projection - u) <= 1e-8);

    // embedded: v supported in the window but nonzero on sigma still leaks onto outside edges
    auto inner_only = differential(VertexFunction::from(w, [](const VertexId& x) {
        return std::abs(x[0]) + std::abs(x[1]) <= 1 ? 1.0 : 0.0;
    }));
    auto pe = project_star(inner_only, LaplacianMode::Embedded);
    CHECK(pe.score == doctest::Approx(inner(inner_only, inner_only)).epsilon(1e-10));
    CHECK(pe.residual_norm <= 1e-8);
}

TEST_CASE("star projection matches the dense oracle in both modes") {
    std::mt19937_64 rng(3);
    for (const auto& g : {make_family(FamilyKind::Lattice, 2), make_family(FamilyKind::Tree, 3),
                          make_family(FamilyKind::Comb), make_family(FamilyKind::DiagLattice)}) {
        auto w = induced_window(g, oracle::random_blob(g, 35, rng));
        auto values = oracle::random_values(w->num_edges(), rng);
        EdgeFunction u(w, values);
        for (bool embedded : {false, true}) {
            auto p = project_star(u, embedded ? LaplacianMode::Embedded : LaplacianMode::Free);
            auto ref = oracle::star_projection(*w, values, embedded);
            for (std::size_t k = 0; k < w->num_edges(); ++k) {
                CHECK(p.projection[k] == doctest::Approx(ref(k)).epsilon(1e-7).scale(1.0));
            }
            double score = 0.0;
            for (std::size_t k = 0; k < w->num_edges(); ++k) {
                score += ref(k) * values[k];
            }
            CHECK(p.score == doctest::Approx(score).epsilon(1e-8));
        }
    }
}

TEST_CASE("free score dominates embedded score") {
    std::mt19937_64 rng(5);
    auto g = make_family(FamilyKind::Lattice, 2);
    auto w = induced_window(g, oracle::random_blob(g, 80, rng));
    for (std::size_t k = 0; k < w->num_edges(); k += 7) {
        auto chi = edge_indicator(w, w->canonical_edge(k));
        CHECK(project_star(chi, LaplacianMode::Free).score >=
              project_star(chi, LaplacianMode::Embedded).score - 1e-10);
    }
}

TEST_CASE("finite hodge decomposition") {
    auto tri = cycle(3);
    auto w3 = whole(tri);
    auto parts = hodge_decompose_finite(edge_indicator(w3, w3->canonical_edge(0)));
    CHECK(inner(parts.star_part, parts.star_part) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(inner(parts.diamond_part, parts.diamond_part) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    auto g = make_family(FamilyKind::Lattice, 2);
    auto w = ball(g, g.origin(), 3);
    auto u = differential(VertexFunction::from(w, [](const VertexId& x) { return double(x[0] * x[0]); }));
    auto dv = hodge_decompose_finite(u);
    CHECK(norm(dv.diamond_part) <= 1e-8);

    auto tree = make_family(FamilyKind::Tree, 3);
    auto wt = ball(tree, tree.origin(), 4);
    std::mt19937_64 rng(1);
    auto tu = hodge_decompose_finite(EdgeFunction(wt, oracle::random_values(wt->num_edges(), rng)));
    for (double x : tu.diamond_part.values()) {
        CHECK(x == 0.0);
    }
}

TEST_CASE("decomposition orthogonality, flow property and rank accounting") {
    std::mt19937_64 rng(99);
    const std::vector<GraphFamily> fams{make_family(FamilyKind::Lattice, 2), make_family(FamilyKind::Lattice, 3),
                                        make_family(FamilyKind::DiagLattice), make_family(FamilyKind::Ladder),
                                        make_family(FamilyKind::Comb)};
    for (int trial = 0; trial < 15; ++trial) {
        const auto& g = fams[trial % fams.size()];
        auto w = induced_window(g, oracle::random_blob(g, 10 + rng() % 120, rng));
        EdgeFunction u(w, oracle::random_values(w->num_edges(), rng));
        auto parts = hodge_decompose_finite(u);
        CHECK(std::abs(inner(parts.star_part, parts.diamond_part)) <= 1e-8 * inner(u, u));
        auto flow = is_flow(parts.diamond_part, false, 1e-8);
        CHECK(flow.holds);
        CHECK(norm(u - parts.star_part - parts.diamond_part) == 0.0);
        if (w->num_edges() <= 50) {
            auto [rs, rd] = oracle::hodge_ranks(*w);
            CHECK(rs == static_cast<Eigen::Index>(w->num_vertices() - 1));
            CHECK(rd == static_cast<Eigen::Index>(cycle_rank(*w)));
            CHECK(rs + rd == static_cast<Eigen::Index>(w->num_edges()));
        }
    }
}

TEST_CASE("cycle rank") {
    CHECK(cycle_rank(*whole(cycle(3))) == 1);
    auto z = make_family(FamilyKind::Lattice, 1);
    CHECK(cycle_rank(*ball(z, z.origin(), 5)) == 0);
    auto g = make_family(FamilyKind::Lattice, 2);
    for (int n : {2, 3, 6}) {
        std::vector<VertexId> box;
        for (int x = 0; x < n; ++x) {
            for (int y = 0; y < n; ++y) {
                box.push_back(VertexId{x, y});
            }
        }
        CHECK(cycle_rank(*induced_window(g, box)) == static_cast<std::size_t>((n - 1) * (n - 1)));
    }
}
