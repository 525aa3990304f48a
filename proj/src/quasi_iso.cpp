#include "hdtk/quasi_iso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "hdtk/parallel.hpp"
#include "hdtk/summation.hpp"

namespace hdtk {

namespace {

std::int32_t floor_div(std::int32_t x, std::int32_t f) {
    return x >= 0 ? x / f : -((-x + f - 1) / f);
}

bool is_lattice(const GraphFamily& family) {
    return !family.is_finite() && family.name().starts_with("lattice");
}

struct EdgeKey {
    VertexId a;
    VertexId b;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const noexcept { return k.a.hash() * 0x9e3779b97f4a7c15ULL ^ k.b.hash(); }
};

EdgeKey edge_key(const VertexId& x, const VertexId& y) { return x < y ? EdgeKey{x, y} : EdgeKey{y, x}; }

// Deterministic shortest path from a to b (BFS, first-discovered parents).
std::vector<VertexId> shortest_path(const GraphFamily& family, const VertexId& a, const VertexId& b, int cutoff) {
    if (a == b) {
        return {a};
    }
    std::unordered_map<VertexId, VertexId, VertexIdHash> parent{{a, a}};
    std::vector<VertexId> layer{a}, next, nbrs;
    for (int depth = 0; depth < cutoff && !layer.empty(); ++depth) {
        next.clear();
        for (const auto& x : layer) {
            family.neighbors(x, nbrs);
            for (const auto& y : nbrs) {
                if (!parent.emplace(y, x).second) {
                    continue;
                }
                if (y == b) {
                    std::vector<VertexId> path{b};
                    for (VertexId z = b; z != a;) {
                        z = parent.at(z);
                        path.push_back(z);
                    }
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                next.push_back(y);
            }
        }
        layer.swap(next);
    }
    throw DistanceCutoffExceeded("no path within " + std::to_string(cutoff) + " steps between " +
                                 family.format(a) + " and " + family.format(b));
}

PathMultiplicity count_paths(const GraphFamily& family, const std::vector<std::pair<VertexId, VertexId>>& ends,
                             int cutoff) {
    PathMultiplicity out;
    std::unordered_map<EdgeKey, int, EdgeKeyHash> count;
    for (const auto& [a, b] : ends) {
        const auto path = shortest_path(family, a, b, cutoff);
        const int length = static_cast<int>(path.size()) - 1;
        out.max_path_length = std::max(out.max_path_length, length);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const int c = ++count[edge_key(path[i], path[i + 1])];
            out.max_multiplicity = std::max(out.max_multiplicity, c);
        }
    }
    return out;
}

std::vector<VertexId> all_vertices(const FiniteWindow& w) { return {w.vertices().begin(), w.vertices().end()}; }

} // namespace

QuasiMap::QuasiMap(std::string name, GraphFamily source, GraphFamily target, Fn map, double claimed_distortion)
    : name_(std::move(name)),
      source_(std::move(source)),
      target_(std::move(target)),
      map_(std::move(map)),
      claimed_(claimed_distortion) {
    if (!(claimed_ >= 1.0)) {
        throw ConfigError("claimed distortion must be at least 1");
    }
}

QuasiMap identity_map(const GraphFamily& family) {
    return {"identity", family, family, [](const VertexId& x) { return x; }, 1.0};
}

QuasiMap translation_map(const GraphFamily& family, std::vector<int> offset) {
    if (!is_lattice(family) && family.name() != "diag_lattice") {
        throw ConfigError("translations are defined on lattice and diag_lattice families only");
    }
    if (offset.size() != family.origin().size()) {
        throw ConfigError("translation offset has the wrong dimension");
    }
    std::string name = "translation";
    for (int t : offset) {
        name += "_" + std::to_string(t);
    }
    return {name, family, family,
            [offset = std::move(offset)](const VertexId& x) {
                VertexId y = x;
                for (std::size_t i = 0; i < offset.size(); ++i) {
                    y = y.with(i, x[i] + offset[i]);
                }
                return y;
            },
            1.0};
}

QuasiMap coarsening_map(const GraphFamily& lattice, int factor) {
    if (!is_lattice(lattice)) {
        throw ConfigError("coarsening is defined on lattice families only");
    }
    if (factor < 2) {
        throw ConfigError("coarsening factor must be at least 2");
    }
    const auto d = static_cast<int>(lattice.origin().size());
    // the lower inequality is strict and max(f, d(f-1)) is attained
    const double claimed = std::max(factor, d * (factor - 1)) + 1;
    return {"coarsening" + std::to_string(factor), lattice, lattice,
            [factor](const VertexId& x) {
                VertexId y = x;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    y = y.with(i, floor_div(x[i], factor));
                }
                return y;
            },
            claimed};
}

QuasiMap parity_rounding_map(const GraphFamily& lattice) {
    if (!is_lattice(lattice)) {
        throw ConfigError("parity rounding is defined on lattice families only");
    }
    const auto d = static_cast<double>(lattice.origin().size());
    return {"parity_rounding", lattice, lattice,
            [](const VertexId& x) {
                VertexId y = x;
                for (std::size_t i = 0; i < x.size(); ++i) {
                    y = y.with(i, 2 * floor_div(x[i], 2));
                }
                return y;
            },
            std::max(2.0, d) + 1.0};
}

QuasiMap lattice_to_diag_map() {
    return {"lattice_to_diag", make_family(FamilyKind::Lattice, 2), make_family(FamilyKind::DiagLattice),
            [](const VertexId& x) { return x; }, 2.0};
}

QuasiMap diag_to_lattice_map() {
    return {"diag_to_lattice", make_family(FamilyKind::DiagLattice), make_family(FamilyKind::Lattice, 2),
            [](const VertexId& x) { return x; }, 2.0};
}

QuasiMap compose(const QuasiMap& outer, const QuasiMap& inner) {
    if (inner.target().name() != outer.source().name()) {
        throw ConfigError("cannot compose " + outer.name() + " after " + inner.name() + ": families differ");
    }
    return {outer.name() + "_after_" + inner.name(), inner.source(), outer.target(),
            [outer, inner](const VertexId& x) { return outer(inner(x)); },
            outer.claimed_distortion() * inner.claimed_distortion()};
}

QuasiMap quasi_inverse(const QuasiMap& f, std::span<const VertexId> domain, std::span<const VertexId> search,
                       int cutoff) {
    // Smallest preimage of every image point.
    std::unordered_map<VertexId, VertexId, VertexIdHash> preimage;
    for (const auto& x : search) {
        const auto y = f(x);
        auto [it, inserted] = preimage.emplace(y, x);
        if (!inserted && x < it->second) {
            it->second = x;
        }
    }
    auto table = std::make_shared<std::unordered_map<VertexId, VertexId, VertexIdHash>>();
    const auto& target = f.target();
    std::vector<VertexId> nbrs;
    for (const auto& y : domain) {
        std::unordered_set<VertexId, VertexIdHash> seen{y};
        std::vector<VertexId> layer{y}, next;
        std::optional<VertexId> best;
        for (int depth = 0; depth <= cutoff && !layer.empty(); ++depth) {
            for (const auto& z : layer) {
                if (auto it = preimage.find(z); it != preimage.end()) {
                    if (!best || it->second < *best) {
                        best = it->second;
                    }
                }
            }
            if (best) {
                break;
            }
            next.clear();
            for (const auto& z : layer) {
                target.neighbors(z, nbrs);
                for (const auto& w : nbrs) {
                    if (seen.insert(w).second) {
                        next.push_back(w);
                    }
                }
            }
            layer.swap(next);
        }
        if (!best) {
            throw DistanceCutoffExceeded("no image point within " + std::to_string(cutoff) + " of " +
                                         target.format(y));
        }
        table->emplace(y, *best);
    }
    const double k = f.claimed_distortion();
    return {"inverse_of_" + f.name(), f.target(), f.source(),
            [table, target](const VertexId& y) {
                auto it = table->find(y);
                if (it == table->end()) {
                    throw InsufficientWindow("quasi-inverse is not tabulated at " + target.format(y));
                }
                return it->second;
            },
            2.0 * k * k};
}

DistortionEstimate distortion_estimate(const QuasiMap& f, const FiniteWindow& window, int cutoff) {
    if (cutoff < 1) {
        throw ConfigError("distance cutoff must be positive");
    }
    const std::size_t n = window.num_vertices();
    std::vector<VertexId> images(n);
    std::vector<std::unordered_map<VertexId, int, VertexIdHash>> ds(n), dt(n);
    for (std::size_t i = 0; i < n; ++i) {
        images[i] = f(window.vertex(i));
        ds[i] = distances_from(f.source(), window.vertex(i), cutoff);
        dt[i] = distances_from(f.target(), images[i], cutoff);
    }

    DistortionEstimate out;
    const double k = f.claimed_distortion();
    double sup = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::optional<int> s, t;
            if (auto it = ds[i].find(window.vertex(j)); it != ds[i].end()) {
                s = it->second;
            }
            if (auto it = dt[i].find(images[j]); it != dt[i].end()) {
                t = it->second;
            }
            if (!s || !t) {
                ++out.inconclusive_pairs;
                out.violations.push_back({window.vertex(i), window.vertex(j), s, t, true});
                continue;
            }
            const double sd = *s, td = *t;
            sup = std::max({sup, td / sd, sd / (td + 1.0)});
            if (td > k * sd || sd / k - 1.0 >= td) {
                out.violations.push_back({window.vertex(i), window.vertex(j), s, t, false});
            }
        }
    }

    // Target region the window's image is expected to cover: the ball around
    // f(vertex 0) strictly inside the image of the window boundary.
    int rho = std::numeric_limits<int>::max();
    int reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto it = dt[0].find(images[i]);
        const int d = it == dt[0].end() ? cutoff + 1 : it->second;
        reach = std::max(reach, d);
        if (window.on_boundary(i)) {
            rho = std::min(rho, d - 1);
        }
    }
    if (rho == std::numeric_limits<int>::max()) {
        rho = reach;
    }
    if (rho >= 0) {
        const auto region = bfs_vertices(f.target(), std::span(&images[0], 1), rho);
        // Multi-source BFS from the image set.
        std::unordered_map<VertexId, int, VertexIdHash> to_image;
        std::vector<VertexId> queue;
        for (const auto& y : images) {
            if (to_image.emplace(y, 0).second) {
                queue.push_back(y);
            }
        }
        std::vector<VertexId> nbrs;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId y = queue[head];
            const int dy = to_image[y];
            if (dy >= cutoff) {
                continue;
            }
            f.target().neighbors(y, nbrs);
            for (const auto& z : nbrs) {
                if (to_image.emplace(z, dy + 1).second) {
                    queue.push_back(z);
                }
            }
        }
        for (const auto& y : region) {
            auto it = to_image.find(y);
            out.density_gap = std::max(out.density_gap, it == to_image.end() ? cutoff + 1 : it->second);
        }
    }
    out.k_est = std::max(sup, static_cast<double>(out.density_gap));
    return out;
}

int wobbling_displacement(const QuasiMap& f, const FiniteWindow& window, int cutoff) {
    if (!f.is_endomap()) {
        throw ConfigError(f.name() + " is not an endomap");
    }
    int worst = 0;
    for (const auto& x : window.vertices()) {
        auto d = distance(f.source(), x, f(x), cutoff);
        if (!d) {
            throw DistanceCutoffExceeded("displacement of " + f.source().format(x) + " exceeds " +
                                         std::to_string(cutoff));
        }
        worst = std::max(worst, *d);
    }
    return worst;
}

VertexFunction pullback(const QuasiMap& f, const VertexFunction& v, WindowPtr source_window) {
    std::vector<double> values(source_window->num_vertices());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = v.at(f(source_window->vertex(i)));
    }
    return VertexFunction(std::move(source_window), std::move(values));
}

double PathMultiplicity::energy_constant() const {
    return std::sqrt(static_cast<double>(max_path_length) * static_cast<double>(max_multiplicity));
}

double PathMultiplicity::square_constant() const {
    return static_cast<double>(max_path_length) * static_cast<double>(max_multiplicity);
}

PathMultiplicity edge_path_multiplicity(const QuasiMap& f, const FiniteWindow& window, int cutoff) {
    std::vector<std::pair<VertexId, VertexId>> ends;
    ends.reserve(window.num_edges());
    for (std::size_t k = 0; k < window.num_edges(); ++k) {
        const auto e = window.canonical_edge(k);
        ends.emplace_back(f(e.tail), f(e.head));
    }
    return count_paths(f.target(), ends, cutoff);
}

PathMultiplicity displacement_path_multiplicity(const QuasiMap& f, const FiniteWindow& window, int cutoff) {
    if (!f.is_endomap()) {
        throw ConfigError(f.name() + " is not an endomap");
    }
    std::vector<std::pair<VertexId, VertexId>> ends;
    ends.reserve(window.num_vertices());
    for (const auto& x : window.vertices()) {
        ends.emplace_back(x, f(x));
    }
    return count_paths(f.source(), ends, cutoff);
}

double ball_size_bound(int degree_bound, int radius) {
    double total = 1.0, layer = degree_bound;
    for (int i = 0; i < radius; ++i) {
        total += layer;
        layer *= degree_bound - 1;
    }
    return total;
}

double lemma5_apriori_constant(double k, int source_degree_bound) {
    // Sources of edges whose paths meet a common target edge have images within
    // 2k of each other, hence lie within k(2k+1) of each other.
    const int spread = static_cast<int>(std::ceil(k * (2.0 * k + 1.0)));
    const double multiplicity = source_degree_bound * ball_size_bound(source_degree_bound, spread);
    return std::sqrt(std::floor(k) * multiplicity);
}

double lemma6_apriori_constant(int displacement, int degree_bound) {
    return displacement * ball_size_bound(degree_bound, displacement);
}

Lemma5Result lemma5_check(const QuasiMap& f, const VertexFunction& v, WindowPtr source_window,
                          std::optional<std::span<const VertexId>> a) {
    std::vector<VertexId> set_a;
    if (a) {
        for (const auto& x : *a) {
            if (source_window->contains(x)) {
                set_a.push_back(x);
            }
        }
    } else {
        set_a = all_vertices(*source_window);
    }
    std::vector<VertexId> image;
    image.reserve(set_a.size());
    for (const auto& x : set_a) {
        image.push_back(f(x));
    }
    const int spread = static_cast<int>(std::floor(f.claimed_distortion() / 2.0));
    const auto b = neighborhood(f.target(), image, spread);
    for (const auto& y : b) {
        if (!v.window().contains(y)) {
            throw InsufficientWindow("target window misses " + f.target().format(y) +
                                     " from the neighbourhood of the image");
        }
    }

    const auto pulled = pullback(f, v, source_window);
    Lemma5Result out;
    out.lhs = norm(masked(differential(pulled), chi(*source_window, set_a)));
    out.rhs = norm(masked(differential(v), chi(v.window(), b)));
    if (out.rhs > 0.0) {
        out.ratio = out.lhs / out.rhs;
    } else {
        out.ratio = out.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    return out;
}

Lemma6Result lemma6_check(const QuasiMap& f, const VertexFunction& v, const FiniteWindow& window, int cutoff) {
    Lemma6Result out;
    out.displacement = wobbling_displacement(f, window, cutoff);
    const auto vs = all_vertices(window);
    const auto enlarged = neighborhood(f.source(), vs, out.displacement);
    for (const auto& y : enlarged) {
        if (!v.window().contains(y)) {
            throw InsufficientWindow("function window misses " + f.source().format(y) +
                                     " from the displacement neighbourhood");
        }
    }
    CompensatedSum diff;
    for (const auto& x : vs) {
        const double delta = v.at(f(x)) - v.at(x);
        diff.add(delta * delta);
    }
    out.diff_norm = std::sqrt(diff.value());
    const auto du = masked(differential(v), chi(v.window(), enlarged));
    out.energy = inner(du, du);
    return out;
}

std::vector<ResidualRow> star_membership_residual(const GraphFamily& family, const EdgeFunction& u,
                                                  const VertexId& center, std::span<const int> radii,
                                                  const ScoreOptions& options) {
    std::vector<ResidualRow> rows(radii.size());
    parallel_for(radii.size(), options.jobs, [&](std::size_t i) {
        auto window = ball(family, center, radii[i], options.limits);
        EdgeFunction moved(window);
        const auto& src = u.window();
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (u[k] == 0.0) {
                continue;
            }
            auto found = window->find_edge(src.canonical_edge(k));
            if (!found) {
                throw InsufficientWindow("support of u leaves the radius-" + std::to_string(radii[i]) + " ball");
            }
            moved[found->first] = found->second * u[k];
        }
        auto projection = project_star(moved, LaplacianMode::Embedded, options.tol);
        rows[i] = {radii[i], projection.residual_norm, projection.report};
    });
    return rows;
}

} // namespace hdtk
