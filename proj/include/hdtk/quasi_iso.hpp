#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdtk/dimension.hpp"

namespace hdtk {

// A vertex map between two families with a claimed distortion k >= 1.
class QuasiMap {
public:
    using Fn = std::function<VertexId(const VertexId&)>;

    QuasiMap(std::string name, GraphFamily source, GraphFamily target, Fn map, double claimed_distortion);

    const std::string& name() const noexcept { return name_; }
    const GraphFamily& source() const noexcept { return source_; }
    const GraphFamily& target() const noexcept { return target_; }
    double claimed_distortion() const noexcept { return claimed_; }
    bool is_endomap() const noexcept { return source_.name() == target_.name(); }

    VertexId operator()(const VertexId& x) const { return map_(x); }

private:
    std::string name_;
    GraphFamily source_;
    GraphFamily target_;
    Fn map_;
    double claimed_;
};

QuasiMap identity_map(const GraphFamily& family);

// x -> x + offset on lattice and diag_lattice families.
QuasiMap translation_map(const GraphFamily& family, std::vector<int> offset);

// x -> floor(x / factor) coordinatewise on a lattice; distortion `factor`.
QuasiMap coarsening_map(const GraphFamily& lattice, int factor = 2);

// x -> 2 floor(x / 2) coordinatewise on a lattice: a wobbling.
QuasiMap parity_rounding_map(const GraphFamily& lattice);

// Identity on coordinates between Z^2 and the diagonal lattice (both ways).
QuasiMap lattice_to_diag_map();
QuasiMap diag_to_lattice_map();

// outer after inner; claimed distortion is the product.
QuasiMap compose(const QuasiMap& outer, const QuasiMap& inner);

// Nearest-preimage quasi-inverse of f, tabulated on `domain` (target vertices).
// Preimages are searched among `search` (source vertices); ties go to the
// smallest VertexId. Throws DistanceCutoffExceeded if some domain vertex has no
// image point within cutoff. Claimed distortion 2k^2.
QuasiMap quasi_inverse(const QuasiMap& f, std::span<const VertexId> domain, std::span<const VertexId> search,
                       int cutoff);

struct PairViolation {
    VertexId x;
    VertexId y;
    std::optional<int> source_distance;
    std::optional<int> target_distance;
    bool inconclusive = false;
};

struct DistortionEstimate {
    // Supremum of dt/ds, ds/(dt+1) and the density gap over the window, at
    // least 1. The defining inequalities hold for every k above it.
    double k_est = 1.0;
    // Largest distance from a vertex of the covered target region to the image.
    int density_gap = 0;
    std::vector<PairViolation> violations;
    std::size_t inconclusive_pairs = 0;
};

DistortionEstimate distortion_estimate(const QuasiMap& f, const FiniteWindow& window, int cutoff);

// max over the window of d(x, f(x)). Throws DistanceCutoffExceeded.
int wobbling_displacement(const QuasiMap& f, const FiniteWindow& window, int cutoff = 64);

// (f* v)(x) = v(f(x)); zero where f(x) leaves v's window.
VertexFunction pullback(const QuasiMap& f, const VertexFunction& v, WindowPtr source_window);

// Fixed shortest paths and their edge multiplicities, as in the path-counting
// proofs of the energy bounds.
struct PathMultiplicity {
    int max_path_length = 0;
    int max_multiplicity = 0;

    // |d f* v| <= sqrt(L M) |dv| for the edge paths f(x) -> f(y).
    double energy_constant() const;
    // |f* v - v|^2 <= L M |dv|^2 for the displacement paths x -> f(x).
    double square_constant() const;
};

// Paths f(x) -> f(y) for every edge (x, y) of the window.
PathMultiplicity edge_path_multiplicity(const QuasiMap& f, const FiniteWindow& window, int cutoff = 64);

// Paths x -> f(x) for every window vertex (endomaps only).
PathMultiplicity displacement_path_multiplicity(const QuasiMap& f, const FiniteWindow& window, int cutoff = 64);

// Largest possible ball size in a graph of maximum degree `degree_bound`.
double ball_size_bound(int degree_bound, int radius);

// Bounds that depend only on distortion / displacement and degree.
double lemma5_apriori_constant(double k, int source_degree_bound);
double lemma6_apriori_constant(int displacement, int degree_bound);

struct Lemma5Result {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
};

// lhs = |d(f* v) chi_A| on the source window, rhs = |dv chi_B| on v's window
// with B the floor(k/2)-neighbourhood of f(A); every fixed path of length <= k
// between images of A stays inside B. A empty means every source vertex.
// Throws InsufficientWindow when B is not inside v's window.
Lemma5Result lemma5_check(const QuasiMap& f, const VertexFunction& v, WindowPtr source_window,
                          std::optional<std::span<const VertexId>> a = std::nullopt);

struct Lemma6Result {
    double diff_norm = 0.0; // l2(V) norm of f* v - v over the window
    double energy = 0.0;    // <dv, dv> over C_m(window), m the displacement
    int displacement = 0;
};

// v must live on a window containing C_m(window). Throws InsufficientWindow.
Lemma6Result lemma6_check(const QuasiMap& f, const VertexFunction& v, const FiniteWindow& window, int cutoff = 64);

struct ResidualRow {
    int radius = 0;
    double residual = 0.0;
    SolveReport report;
};

// |u - P u| for the projection onto gradients of potentials supported in
// ball(center, r), for each r. supp(u) must lie inside every ball.
std::vector<ResidualRow> star_membership_residual(const GraphFamily& family, const EdgeFunction& u,
                                                  const VertexId& center, std::span<const int> radii,
                                                  const ScoreOptions& options = {});

} // namespace hdtk
