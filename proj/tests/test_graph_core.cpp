#include <doctest.h>

#include <algorithm>
#include <json.hpp>
#include <set>

#include "hdtk/errors.hpp"
#include "hdtk/graph_family.hpp"
#include "hdtk/window.hpp"
#include "oracles.hpp"

using namespace hdtk;

namespace {

std::set<VertexId> as_set(const std::vector<VertexId>& v) { return {v.begin(), v.end()}; }

std::vector<VertexId> box(int n) {
    std::vector<VertexId> out;
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            out.push_back(VertexId{x, y});
        }
    }
    return out;
}

std::vector<GraphFamily> all_families() {
    return {make_family(FamilyKind::Lattice, 1), make_family(FamilyKind::Lattice, 2),
            make_family(FamilyKind::Lattice, 3), make_family(FamilyKind::Tree, 3),
            make_family(FamilyKind::Tree, 4),    make_family(FamilyKind::Ladder),
            make_family(FamilyKind::Comb),       make_family(FamilyKind::DiagLattice)};
}

} // namespace

TEST_CASE("vertex ids order and hash consistently") {
    VertexId a{0, 1}, b{1, 0}, c{0, 1};
    CHECK(a == c);
    CHECK(a.hash() == c.hash());
    CHECK(a < b);
    CHECK_FALSE(b < a);
    CHECK(VertexId{5} < VertexId{0, 0});
    CHECK(a.with(1, 7) == VertexId{0, 7});
}

TEST_CASE("lattice and ladder neighbours") {
    auto z2 = make_family(FamilyKind::Lattice, 2);
    CHECK(as_set(z2.neighbors(VertexId{0, 0})) ==
          std::set<VertexId>{VertexId{1, 0}, VertexId{-1, 0}, VertexId{0, 1}, VertexId{0, -1}});
    CHECK(z2.degree_bound() == 4);

    auto ladder = make_family(FamilyKind::Ladder);
    CHECK(as_set(ladder.neighbors(VertexId{0, 0})) ==
          std::set<VertexId>{VertexId{1, 0}, VertexId{-1, 0}, VertexId{0, 1}});
    CHECK(ladder.degree_bound() == 3);

    auto tree = make_family(FamilyKind::Tree, 3);
    CHECK(tree.neighbors(tree.origin()).size() == 3);

    auto comb = make_family(FamilyKind::Comb);
    CHECK(comb.neighbors(VertexId{3, 0}).size() == 4);
    CHECK(as_set(comb.neighbors(VertexId{3, 2})) == std::set<VertexId>{VertexId{3, 1}, VertexId{3, 3}});

    auto diag = make_family(FamilyKind::DiagLattice);
    CHECK(diag.adjacent(VertexId{0, 0}, VertexId{1, 1}));
    CHECK_FALSE(diag.adjacent(VertexId{0, 0}, VertexId{1, -1}));
}

TEST_CASE("family invariants on sampled vertices") {
    for (const auto& g : all_families()) {
        CAPTURE(g.name());
        auto w = ball(g, g.origin(), 3);
        for (const auto& x : w->vertices()) {
            auto ns = g.neighbors(x);
            CHECK(ns.size() <= static_cast<std::size_t>(g.degree_bound()));
            CHECK(std::find(ns.begin(), ns.end(), x) == ns.end());
            CHECK(as_set(ns).size() == ns.size());
            for (const auto& y : ns) {
                CHECK(g.adjacent(y, x));
            }
            CHECK(g.parse(g.format(x)) == x);
        }
    }
}

TEST_CASE("family construction errors") {
    CHECK_THROWS_AS(make_family("hexagonal"), InvalidFamily);
    CHECK_THROWS_AS(make_family(FamilyKind::Tree, 2), InvalidFamily);
    CHECK_THROWS_AS(make_family(FamilyKind::Lattice, 0), InvalidFamily);
    CHECK_THROWS_AS(parse_family_spec("tree"), InvalidFamily);
    CHECK_THROWS_AS(parse_family_spec("z2", 3), InvalidFamily);
    CHECK(parse_family_spec("z3").name() == "lattice3");
    CHECK(parse_family_spec("tree", 5).name() == "tree5");
    CHECK(parse_family_spec("diag").name() == "diag_lattice");
    auto t = make_family(FamilyKind::Tree, 3);
    CHECK_THROWS_AS(t.parse("t0.0"), InvalidFamily);
    CHECK_THROWS_AS(make_family(FamilyKind::Ladder).parse("0:2"), InvalidFamily);
}

TEST_CASE("ball counts") {
    auto z2 = make_family(FamilyKind::Lattice, 2);
    auto b = ball(z2, z2.origin(), 1);
    CHECK(b->num_vertices() == 5);
    CHECK(b->num_edges() == 4);
    CHECK(b->sigma_size() == 4);
    CHECK(sigma(*b) == std::vector<VertexId>{VertexId{-1, 0}, VertexId{0, -1}, VertexId{0, 1}, VertexId{1, 0}});

    auto tree = make_family(FamilyKind::Tree, 3);
    CHECK(ball(tree, tree.origin(), 2)->num_vertices() == 10);
    for (int r = 1; r <= 6; ++r) {
        CHECK(sigma(*ball(tree, tree.origin(), r)).size() == static_cast<std::size_t>(3 << (r - 1)));
    }

    auto z = make_family(FamilyKind::Lattice, 1);
    for (int r = 1; r <= 5; ++r) {
        auto w = ball(z, z.origin(), r);
        CHECK(w->num_vertices() == static_cast<std::size_t>(2 * r + 1));
        CHECK(w->num_edges() == static_cast<std::size_t>(2 * r));
        CHECK(sigma(*w) == std::vector<VertexId>{VertexId{-r}, VertexId{r}});
    }
    CHECK_THROWS_AS(ball(z, z.origin(), 0), InvalidWindow);
}

TEST_CASE("balls are nested and every new vertex touches the previous ball") {
    for (const auto& g : all_families()) {
        CAPTURE(g.name());
        auto inner = ball(g, g.origin(), 2);
        auto outer = ball(g, g.origin(), 3);
        for (const auto& x : inner->vertices()) {
            CHECK(outer->contains(x));
        }
        for (const auto& x : outer->vertices()) {
            if (inner->contains(x)) {
                continue;
            }
            auto ns = g.neighbors(x);
            CHECK(std::any_of(ns.begin(), ns.end(), [&](const VertexId& y) { return inner->contains(y); }));
        }
        auto dist = oracle::bfs(g, g.origin(), 4);
        for (std::size_t i = 0; i < inner->num_vertices(); ++i) {
            const auto& x = inner->vertex(i);
            bool has_outer = false;
            for (const auto& y : g.neighbors(x)) {
                has_outer = has_outer || dist.at(y) == 3;
            }
            if (dist.at(x) == 2 && has_outer) {
                CHECK(inner->on_boundary(i));
            }
        }
    }
}

TEST_CASE("window degree bookkeeping") {
    for (const auto& g : all_families()) {
        auto w = ball(g, g.origin(), 3);
        for (std::size_t i = 0; i < w->num_vertices(); ++i) {
            const auto ns = g.neighbors(w->vertex(i));
            const auto outside =
                std::count_if(ns.begin(), ns.end(), [&](const VertexId& y) { return !w->contains(y); });
            CHECK(w->internal_degree(i) + outside == w->full_degree(i));
            CHECK(w->on_boundary(i) == (outside > 0));
        }
        // induced: every ambient edge between window vertices is present
        std::size_t count = 0;
        for (std::size_t i = 0; i < w->num_vertices(); ++i) {
            for (const auto& y : g.neighbors(w->vertex(i))) {
                count += w->contains(y) ? 1 : 0;
            }
        }
        CHECK(count == 2 * w->num_edges());
        for (std::size_t k = 0; k < w->num_edges(); ++k) {
            const auto e = w->canonical_edge(k);
            CHECK(e.tail < e.head);
        }
    }
}

TEST_CASE("induced windows") {
    auto z2 = make_family(FamilyKind::Lattice, 2);
    for (int n : {2, 3, 5}) {
        auto w = induced_window(z2, box(n));
        CHECK(w->num_vertices() == static_cast<std::size_t>(n * n));
        CHECK(w->num_edges() == static_cast<std::size_t>(2 * n * (n - 1)));
        CHECK(w->sigma_size() == static_cast<std::size_t>(4 * n - 4));
    }
    CHECK(sigma(*induced_window(z2, box(3))).size() == 8);

    auto z = make_family(FamilyKind::Lattice, 1);
    auto single = induced_window(z, std::vector<VertexId>{VertexId{0}, VertexId{1}});
    CHECK(single->num_edges() == 1);
    CHECK(single->sigma_size() == 2);

    CHECK_THROWS_AS(induced_window(z2, std::vector<VertexId>{VertexId{0, 0}, VertexId{2, 2}}), InvalidWindow);
    CHECK_THROWS_AS(induced_window(z2, std::vector<VertexId>{VertexId{0, 0}}), InvalidWindow);
}

TEST_CASE("size cap is an error") {
    auto tree = make_family(FamilyKind::Tree, 3);
    WindowLimits small;
    small.max_vertices = 100;
    CHECK_THROWS_AS(ball(tree, tree.origin(), 8, small), SizeLimitExceeded);
    CHECK_NOTHROW(ball(tree, tree.origin(), 5, small));
}

TEST_CASE("distances") {
    auto z2 = make_family(FamilyKind::Lattice, 2);
    CHECK(distance(z2, VertexId{0, 0}, VertexId{3, 4}, 100) == 7);
    CHECK(distance(z2, VertexId{0, 0}, VertexId{3, 4}, 6) == std::nullopt);
    CHECK(distance(z2, VertexId{2, 2}, VertexId{2, 2}, 1) == 0);

    auto tree = make_family(FamilyKind::Tree, 3);
    for (const auto& x : sigma(*ball(tree, tree.origin(), 2))) {
        CHECK(distance(tree, tree.origin(), x, 10) == 2);
    }

    // against plain BFS, and symmetric
    for (const auto& g : all_families()) {
        auto ref = oracle::bfs(g, g.origin(), 5);
        auto from = distances_from(g, g.origin(), 5);
        CHECK(from.size() == ref.size());
        for (const auto& [x, dx] : ref) {
            CHECK(from.at(x) == dx);
            CHECK(distance(g, x, g.origin(), 5) == dx);
        }
    }
}

TEST_CASE("neighbourhoods") {
    auto z = make_family(FamilyKind::Lattice, 1);
    CHECK(neighborhood(z, std::vector<VertexId>{VertexId{0}}, 2) ==
          std::vector<VertexId>{VertexId{-2}, VertexId{-1}, VertexId{0}, VertexId{1}, VertexId{2}});
    auto z2 = make_family(FamilyKind::Lattice, 2);
    CHECK(neighborhood(z2, std::vector<VertexId>{VertexId{0, 0}}, 1).size() == 5);
    std::vector<VertexId> a{VertexId{3, 1}, VertexId{0, 0}};
    auto same = neighborhood(z2, a, 0);
    CHECK(as_set(same) == as_set(a));
    auto one = as_set(neighborhood(z2, a, 1));
    auto two = as_set(neighborhood(z2, a, 2));
    CHECK(std::includes(two.begin(), two.end(), one.begin(), one.end()));
}

TEST_CASE("edge ball contains both radius balls") {
    auto z2 = make_family(FamilyKind::Lattice, 2);
    OrientedEdge e{VertexId{0, 0}, VertexId{1, 0}};
    auto w = edge_ball(z2, e, 2);
    auto a = ball(z2, e.tail, 2), b = ball(z2, e.head, 2);
    CHECK(w->num_vertices() == as_set([&] {
              std::vector<VertexId> all(a->vertices().begin(), a->vertices().end());
              all.insert(all.end(), b->vertices().begin(), b->vertices().end());
              return all;
          }()).size());
    CHECK_THROWS_AS(edge_ball(z2, {VertexId{0, 0}, VertexId{1, 1}}, 2), MissingEdge);
}

TEST_CASE("finite families") {
    auto tri = make_finite_family("triangle", {"a", "b", "c"}, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(tri.is_finite());
    auto w = ball(tri, tri.origin(), 5);
    CHECK(w->num_vertices() == 3);
    CHECK(w->sigma_size() == 0);
    CHECK(tri.format(tri.parse("b")) == "b");
    CHECK_THROWS_AS(make_finite_family("split", {"a", "b", "c", "d"}, {{0, 1}, {2, 3}}), InvalidFamily);
    CHECK_THROWS_AS(make_finite_family("loop", {"a", "b"}, {{0, 0}}), InvalidFamily);
}

TEST_CASE("window JSON export") {
    auto z = make_family(FamilyKind::Lattice, 1);
    auto w = induced_window(z, std::vector<VertexId>{VertexId{1}, VertexId{-1}, VertexId{0}});
    auto doc = nlohmann::json::parse(window_to_json(*w, z));
    REQUIRE(doc["vertices"].size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(doc["vertices"][i] == z.format(w->vertex(i)));
        CHECK(doc["full_degree"][i] == 2);
    }
    CHECK(doc["edges"].size() == 2);
    for (const auto& e : doc["edges"]) {
        CHECK(z.adjacent(w->vertex(e[0].get<std::size_t>()), w->vertex(e[1].get<std::size_t>())));
    }
    std::set<std::string> boundary;
    for (const auto& i : doc["sigma"]) {
        boundary.insert(doc["vertices"][i.get<std::size_t>()].get<std::string>());
    }
    CHECK(boundary == std::set<std::string>{"-1", "1"});
}
