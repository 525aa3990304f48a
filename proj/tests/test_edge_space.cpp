#include <doctest.h>

#include <random>
#include <sstream>

#include "hdtk/edge_space.hpp"
#include "hdtk/errors.hpp"
#include "oracles.hpp"

using namespace hdtk;

namespace {

GraphFamily z1() { return make_family(FamilyKind::Lattice, 1); }
GraphFamily z2() { return make_family(FamilyKind::Lattice, 2); }

GraphFamily cycle(int n) {
    std::vector<std::string> labels;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (int i = 0; i < n; ++i) {
        labels.push_back("v" + std::to_string(i));
        edges.emplace_back(i, (i + 1) % n);
    }
    return make_finite_family("cycle" + std::to_string(n), labels, edges);
}

EdgeFunction circulation(const GraphFamily& g, const WindowPtr& w, const std::vector<VertexId>& loop) {
    EdgeFunction u(w);
    for (std::size_t i = 0; i < loop.size(); ++i) {
        auto found = w->find_edge({loop[i], loop[(i + 1) % loop.size()]});
        REQUIRE(found);
        u[found->first] += found->second;
    }
    (void)g;
    return u;
}

} // namespace

TEST_CASE("differential") {
    auto g = z1();
    auto w = ball(g, g.origin(), 2);
    auto c = differential(VertexFunction::constant(w, 3.5));
    for (double x : c.values()) {
        CHECK(x == 0.0);
    }
    auto ramp = differential(VertexFunction::from(w, [](const VertexId& x) { return double(x[0]); }));
    for (double x : ramp.values()) {
        CHECK(x == 1.0);
    }
    auto z = z2();
    auto wz = ball(z, z.origin(), 2);
    auto spike = differential(VertexFunction::from(wz, [](const VertexId& x) { return x == VertexId{0, 0}; }));
    int touched = 0;
    for (std::size_t k = 0; k < wz->num_edges(); ++k) {
        const auto e = wz->canonical_edge(k);
        const bool at_origin = e.tail == VertexId{0, 0} || e.head == VertexId{0, 0};
        CHECK(std::abs(spike[k]) == (at_origin ? 1.0 : 0.0));
        touched += at_origin;
        if (at_origin) {
            CHECK(spike.at({VertexId{0, 0}, e.tail == VertexId{0, 0} ? e.head : e.tail}) == -1.0);
        }
    }
    CHECK(touched == 4);
}

TEST_CASE("codifferential") {
    auto g = z1();
    auto w = induced_window(g, std::vector<VertexId>{VertexId{0}, VertexId{1}});
    EdgeFunction u(w);
    u[0] = 1.0; // (0,1)
    auto du = codifferential(u);
    CHECK(du.at(VertexId{0}) == -1.0);
    CHECK(du.at(VertexId{1}) == 1.0);

    CHECK(inner(codifferential(EdgeFunction(w)), codifferential(EdgeFunction(w))) == 0.0);

    auto c4 = cycle(4);
    auto w4 = ball(c4, c4.origin(), 3);
    auto circ = circulation(c4, w4, {c4.parse("v0"), c4.parse("v1"), c4.parse("v2"), c4.parse("v3")});
    const auto div = codifferential(circ);
    for (double x : div.values()) {
        CHECK(x == 0.0);
    }
}

TEST_CASE("inner product and indicators") {
    auto g = z2();
    auto w = ball(g, g.origin(), 2);
    OrientedEdge e{VertexId{0, 0}, VertexId{0, 1}};
    auto chi_e = edge_indicator(w, e);
    auto chi_rev = edge_indicator(w, e.reversed());
    CHECK(inner(chi_e, chi_e) == 1.0);
    CHECK(inner(chi_e, chi_rev) == -1.0);
    CHECK(inner(chi_e, EdgeFunction(w)) == 0.0);
    CHECK(chi_e.at(e) == 1.0);
    CHECK(chi_e.at(e.reversed()) == -1.0);
    CHECK(chi_e.at({VertexId{0, 0}, VertexId{1, 0}}) == 0.0);
    CHECK_THROWS_AS(edge_indicator(w, {VertexId{0, 0}, VertexId{1, 1}}), MissingEdge);
    CHECK_THROWS_AS(edge_indicator(w, {VertexId{5, 0}, VertexId{6, 0}}), MissingEdge);

    auto other = ball(g, g.origin(), 2);
    CHECK_THROWS_AS(inner(chi_e, EdgeFunction(other)), IncompatibleDomain);
}

TEST_CASE("antisymmetry, adjointness, positive definiteness on random data") {
    std::mt19937_64 rng(7);
    for (const auto& g : {z2(), make_family(FamilyKind::Tree, 3), make_family(FamilyKind::DiagLattice),
                          make_family(FamilyKind::Comb)}) {
        auto w = induced_window(g, oracle::random_blob(g, 60, rng));
        EdgeFunction u(w, oracle::random_values(w->num_edges(), rng));
        VertexFunction v(w, oracle::random_values(w->num_vertices(), rng));
        for (std::size_t k = 0; k < w->num_edges(); ++k) {
            const auto e = w->canonical_edge(k);
            CHECK(u.at(e) == -u.at(e.reversed()));
        }
        CHECK(inner(differential(v), u) == doctest::Approx(inner(v, codifferential(u))).epsilon(1e-12));
        CHECK(inner(u, u) > 0.0);
        // half-weighted oriented sum equals the canonical sum
        double oriented = 0.0;
        for (std::size_t i = 0; i < w->num_vertices(); ++i) {
            for (const auto& inc : w->incident(i)) {
                const double val = u.oriented(i, inc.neighbor);
                oriented += val * val;
            }
        }
        CHECK(0.5 * oriented == doctest::Approx(inner(u, u)).epsilon(1e-12));
    }
}

TEST_CASE("chi masks") {
    auto g = z1();
    auto w = ball(g, g.origin(), 2);
    auto all = chi(*w, w->vertices());
    CHECK(std::all_of(all.begin(), all.end(), [](auto b) { return b == 1; }));
    auto none = chi(*w, {});
    CHECK(std::all_of(none.begin(), none.end(), [](auto b) { return b == 0; }));
    std::vector<VertexId> a{VertexId{-1}, VertexId{0}, VertexId{1}};
    auto mid = chi(*w, a);
    for (std::size_t k = 0; k < w->num_edges(); ++k) {
        const auto e = w->canonical_edge(k);
        const bool inside = std::abs(e.tail[0]) <= 1 && std::abs(e.head[0]) <= 1;
        CHECK(mid[k] == (inside ? 1 : 0));
    }
    EdgeFunction u(w);
    for (std::size_t k = 0; k < w->num_edges(); ++k) {
        u[k] = 1.0 + w->canonical_edge(k).tail[0] + 2; // 1..4 from left to right
    }
    auto m = masked(u, mid);
    CHECK(inner(m, m) == 4.0 + 9.0);
}

TEST_CASE("flows and harmonicity") {
    auto c4 = cycle(4);
    auto w4 = ball(c4, c4.origin(), 3);
    auto circ = circulation(c4, w4, {c4.parse("v0"), c4.parse("v1"), c4.parse("v2"), c4.parse("v3")});
    auto res = is_flow(circ, false);
    CHECK(res.holds);
    CHECK(res.max_residual == 0.0);
    CHECK(is_flow(EdgeFunction(w4), false).holds);

    auto g = z2();
    auto w = ball(g, g.origin(), 2);
    auto spike = VertexFunction::from(w, [](const VertexId& x) { return x == VertexId{0, 0}; });
    auto flow = is_flow(differential(spike));
    CHECK_FALSE(flow.holds);
    CHECK(flow.max_residual == 4.0);

    CHECK(is_harmonic(VertexFunction::constant(w, 2.0)).holds);
    CHECK_FALSE(is_harmonic(spike).holds);
    auto z = z1();
    auto wz = ball(z, z.origin(), 4);
    CHECK(is_harmonic(VertexFunction::from(wz, [](const VertexId& x) { return double(x[0]); })).holds);
    // the ramp is not harmonic once boundary vertices are judged from inside the window
    CHECK_FALSE(is_harmonic(VertexFunction::from(wz, [](const VertexId& x) { return double(x[0]); }), false).holds);
}

TEST_CASE("energy") {
    auto z = z1();
    for (int r = 1; r <= 4; ++r) {
        auto w = ball(z, z.origin(), r);
        CHECK(energy(VertexFunction::constant(w, 1.0)) == 0.0);
        CHECK(energy(VertexFunction::from(w, [](const VertexId& x) { return double(x[0]); })) == 2.0 * r);
    }
    auto g = z2();
    auto w = ball(g, g.origin(), 2);
    CHECK(energy(VertexFunction::from(w, [](const VertexId& x) { return x == VertexId{0, 0}; })) == 4.0);
}

TEST_CASE("CSV export is ordered") {
    auto z = z1();
    auto w = ball(z, z.origin(), 1);
    auto v = VertexFunction::from(w, [](const VertexId& x) { return 0.5 * x[0]; });
    std::ostringstream ve, ee;
    write_vertex_csv(ve, v, z);
    CHECK(ve.str() == "id,value\n-1,-0.5\n0,0\n1,0.5\n");
    write_edge_csv(ee, differential(v), z);
    CHECK(ee.str() == "tail,head,value\n-1,0,0.5\n0,1,0.5\n");
}
