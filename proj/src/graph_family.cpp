#include "hdtk/graph_family.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <unordered_set>

#include "hdtk/errors.hpp"

namespace hdtk {

namespace {

std::int32_t parse_int(std::string_view text) {
    std::int32_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) {
        throw InvalidFamily("cannot parse integer '" + std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

std::string join_coords(const VertexId& x) {
    std::string out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0) {
            out += ':';
        }
        out += std::to_string(x[i]);
    }
    return out;
}

VertexId parse_coords(std::string_view text, std::size_t expected) {
    auto parts = split(text, ':');
    if (parts.size() != expected) {
        throw InvalidFamily("expected " + std::to_string(expected) + " coordinates in '" +
                            std::string(text) + "'");
    }
    std::array<std::int32_t, VertexId::kCapacity> coords{};
    for (std::size_t i = 0; i < parts.size(); ++i) {
        coords[i] = parse_int(parts[i]);
    }
    return VertexId(std::span<const std::int32_t>(coords.data(), expected));
}

class LatticeImpl final : public detail::FamilyImpl {
public:
    explicit LatticeImpl(int d) : d_(static_cast<std::size_t>(d)) {}

    void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const override {
        for (std::size_t i = 0; i < d_; ++i) {
            out.push_back(x.with(i, x[i] + 1));
            out.push_back(x.with(i, x[i] - 1));
        }
    }

    std::string format(const VertexId& x) const override { return join_coords(x); }
    VertexId parse(std::string_view text) const override { return parse_coords(text, d_); }

private:
    std::size_t d_;
};

class LadderImpl final : public detail::FamilyImpl {
public:
    void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const override {
        out.push_back(x.with(0, x[0] + 1));
        out.push_back(x.with(0, x[0] - 1));
        out.push_back(x.with(1, 1 - x[1]));
    }

    std::string format(const VertexId& x) const override { return join_coords(x); }

    VertexId parse(std::string_view text) const override {
        auto x = parse_coords(text, 2);
        if (x[1] != 0 && x[1] != 1) {
            throw InvalidFamily("ladder rung coordinate must be 0 or 1");
        }
        return x;
    }
};

class CombImpl final : public detail::FamilyImpl {
public:
    void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const override {
        if (x[1] == 0) {
            out.push_back(x.with(0, x[0] + 1));
            out.push_back(x.with(0, x[0] - 1));
        }
        out.push_back(x.with(1, x[1] + 1));
        out.push_back(x.with(1, x[1] - 1));
    }

    std::string format(const VertexId& x) const override { return join_coords(x); }
    VertexId parse(std::string_view text) const override { return parse_coords(text, 2); }
};

class DiagLatticeImpl final : public detail::FamilyImpl {
public:
    void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const override {
        out.push_back(x.with(0, x[0] + 1));
        out.push_back(x.with(0, x[0] - 1));
        out.push_back(x.with(1, x[1] + 1));
        out.push_back(x.with(1, x[1] - 1));
        out.push_back(VertexId{x[0] + 1, x[1] + 1});
        out.push_back(VertexId{x[0] - 1, x[1] - 1});
    }

    std::string format(const VertexId& x) const override { return join_coords(x); }
    VertexId parse(std::string_view text) const override { return parse_coords(text, 2); }
};

// The d-regular tree as the Cayley graph of the free product of d copies of
// Z/2: vertices are words with no two equal adjacent letters. Slot 0 holds the
// word length; the remaining slots pack letters, first letter lowest.
class TreeImpl final : public detail::FamilyImpl {
public:
    explicit TreeImpl(int d)
        : d_(d),
          bits_(std::bit_width(static_cast<unsigned>(d - 1))),
          per_slot_(30 / bits_),
          max_length_(per_slot_ * static_cast<int>(VertexId::kCapacity - 1)) {}

    void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const override {
        const int n = x[0];
        const int last = n > 0 ? letter(x, n - 1) : -1;
        for (int s = 0; s < d_; ++s) {
            if (s == last) {
                out.push_back(set_letter(x, n - 1, 0).with(0, n - 1));
            } else {
                if (n >= max_length_) {
                    throw SizeLimitExceeded("tree word longer than " + std::to_string(max_length_) +
                                            " letters");
                }
                out.push_back(set_letter(x, n, s).with(0, n + 1));
            }
        }
    }

    std::string format(const VertexId& x) const override {
        std::string out = "t";
        for (int i = 0; i < x[0]; ++i) {
            if (i > 0) {
                out += '.';
            }
            out += std::to_string(letter(x, i));
        }
        return out;
    }

    VertexId parse(std::string_view text) const override {
        if (text.empty() || text.front() != 't') {
            throw InvalidFamily("tree vertex must look like t or t0.1.2, got '" + std::string(text) + "'");
        }
        VertexId x = root();
        text.remove_prefix(1);
        if (text.empty()) {
            return x;
        }
        int prev = -1;
        for (auto part : split(text, '.')) {
            int s = parse_int(part);
            if (s < 0 || s >= d_ || s == prev) {
                throw InvalidFamily("not a reduced tree word");
            }
            const int n = x[0];
            if (n >= max_length_) {
                throw SizeLimitExceeded("tree word too long");
            }
            x = set_letter(x, n, s).with(0, n + 1);
            prev = s;
        }
        return x;
    }

    VertexId root() const {
        std::array<std::int32_t, VertexId::kCapacity> zeros{};
        return VertexId(std::span<const std::int32_t>(zeros.data(), zeros.size()));
    }

private:
    int letter(const VertexId& x, int i) const {
        const auto slot = static_cast<std::size_t>(1 + i / per_slot_);
        const int shift = (i % per_slot_) * bits_;
        return (x[slot] >> shift) & ((1 << bits_) - 1);
    }

    VertexId set_letter(const VertexId& x, int i, int s) const {
        const auto slot = static_cast<std::size_t>(1 + i / per_slot_);
        const int shift = (i % per_slot_) * bits_;
        const std::int32_t mask = ((1 << bits_) - 1) << shift;
        return x.with(slot, (x[slot] & ~mask) | (s << shift));
    }

    int d_;
    int bits_;
    int per_slot_;
    int max_length_;
};

class FiniteImpl final : public detail::FamilyImpl {
public:
    FiniteImpl(std::vector<std::string> labels, std::vector<std::vector<std::int32_t>> adjacency)
        : labels_(std::move(labels)), adjacency_(std::move(adjacency)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            index_.emplace(labels_[i], static_cast<std::int32_t>(i));
        }
    }

    void append_neighbors(const VertexId& x, std::vector<VertexId>& out) const override {
        for (auto y : adjacency_.at(static_cast<std::size_t>(x[0]))) {
            out.push_back(VertexId{y});
        }
    }

    std::string format(const VertexId& x) const override {
        return labels_.at(static_cast<std::size_t>(x[0]));
    }

    VertexId parse(std::string_view text) const override {
        auto it = index_.find(std::string(text));
        if (it == index_.end()) {
            throw InvalidFamily("unknown vertex label '" + std::string(text) + "'");
        }
        return VertexId{it->second};
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::int32_t>> adjacency_;
    std::map<std::string, std::int32_t> index_;
};

VertexId zero_vertex(std::size_t d) {
    std::array<std::int32_t, VertexId::kCapacity> zeros{};
    return VertexId(std::span<const std::int32_t>(zeros.data(), d));
}

} // namespace

GraphFamily::GraphFamily(std::string name, int degree_bound, VertexId origin, bool finite,
                         std::shared_ptr<const detail::FamilyImpl> impl)
    : name_(std::move(name)),
      degree_bound_(degree_bound),
      origin_(origin),
      finite_(finite),
      impl_(std::move(impl)) {}

bool GraphFamily::adjacent(const VertexId& x, const VertexId& y) const {
    auto nbrs = neighbors(x);
    return std::find(nbrs.begin(), nbrs.end(), y) != nbrs.end();
}

GraphFamily make_family(FamilyKind kind, int d) {
    switch (kind) {
    case FamilyKind::Lattice:
        if (d < 1 || d > static_cast<int>(VertexId::kCapacity)) {
            throw InvalidFamily("lattice dimension must be in [1, " +
                                std::to_string(VertexId::kCapacity) + "], got " + std::to_string(d));
        }
        return {"lattice" + std::to_string(d), 2 * d, zero_vertex(static_cast<std::size_t>(d)), false,
                std::make_shared<LatticeImpl>(d)};
    case FamilyKind::Tree: {
        if (d < 3 || d > 1024) {
            throw InvalidFamily("tree degree must be in [3, 1024], got " + std::to_string(d));
        }
        auto impl = std::make_shared<TreeImpl>(d);
        auto root = impl->root();
        return {"tree" + std::to_string(d), d, root, false, std::move(impl)};
    }
    case FamilyKind::Ladder:
        return {"ladder", 3, VertexId{0, 0}, false, std::make_shared<LadderImpl>()};
    case FamilyKind::Comb:
        return {"comb", 4, VertexId{0, 0}, false, std::make_shared<CombImpl>()};
    case FamilyKind::DiagLattice:
        return {"diag_lattice", 6, VertexId{0, 0}, false, std::make_shared<DiagLatticeImpl>()};
    }
    throw InvalidFamily("unknown family kind");
}

GraphFamily make_family(std::string_view name, int d) {
    if (name == "lattice") {
        return make_family(FamilyKind::Lattice, d);
    }
    if (name == "tree") {
        return make_family(FamilyKind::Tree, d);
    }
    if (name == "ladder") {
        return make_family(FamilyKind::Ladder);
    }
    if (name == "comb") {
        return make_family(FamilyKind::Comb);
    }
    if (name == "diag_lattice") {
        return make_family(FamilyKind::DiagLattice);
    }
    throw InvalidFamily("unknown family '" + std::string(name) + "'");
}

GraphFamily parse_family_spec(std::string_view spec, int d) {
    auto with_suffix = [&](std::string_view prefix, FamilyKind kind) -> std::optional<GraphFamily> {
        if (!spec.starts_with(prefix)) {
            return std::nullopt;
        }
        auto rest = spec.substr(prefix.size());
        if (rest.empty()) {
            if (d <= 0) {
                throw InvalidFamily("family '" + std::string(spec) + "' needs --d");
            }
            return make_family(kind, d);
        }
        if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            return std::nullopt;
        }
        int n = parse_int(rest);
        if (d > 0 && d != n) {
            throw InvalidFamily("family '" + std::string(spec) + "' conflicts with --d " + std::to_string(d));
        }
        return make_family(kind, n);
    };
    if (spec == "ladder") {
        return make_family(FamilyKind::Ladder);
    }
    if (spec == "comb") {
        return make_family(FamilyKind::Comb);
    }
    if (spec == "diag" || spec == "diag_lattice") {
        return make_family(FamilyKind::DiagLattice);
    }
    for (auto [prefix, kind] : {std::pair{std::string_view("lattice"), FamilyKind::Lattice},
                                std::pair{std::string_view("tree"), FamilyKind::Tree},
                                std::pair{std::string_view("z"), FamilyKind::Lattice}}) {
        if (auto f = with_suffix(prefix, kind)) {
            return *f;
        }
    }
    throw InvalidFamily("unknown family '" + std::string(spec) + "'");
}

GraphFamily make_finite_family(std::string name, const std::vector<std::string>& labels,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (labels.empty()) {
        throw InvalidFamily("finite family needs at least one vertex");
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
        throw InvalidFamily("duplicate vertex labels");
    }
    // Renumber vertices so that VertexId order matches label order.
    std::vector<std::size_t> order(labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
    std::vector<std::size_t> rank(labels.size());
    std::vector<std::string> sorted_labels(labels.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        rank[order[r]] = r;
        sorted_labels[r] = labels[order[r]];
    }

    std::vector<std::set<std::int32_t>> adj(labels.size());
    for (auto [a, b] : edges) {
        if (a >= labels.size() || b >= labels.size() || a == b) {
            throw InvalidFamily("finite family edge out of range or a self-loop");
        }
        adj[rank[a]].insert(static_cast<std::int32_t>(rank[b]));
        adj[rank[b]].insert(static_cast<std::int32_t>(rank[a]));
    }
    std::vector<std::vector<std::int32_t>> adjacency(labels.size());
    int max_degree = 0;
    for (std::size_t i = 0; i < adj.size(); ++i) {
        adjacency[i].assign(adj[i].begin(), adj[i].end());
        max_degree = std::max(max_degree, static_cast<int>(adjacency[i].size()));
    }

    std::vector<bool> seen(labels.size(), false);
    std::queue<std::size_t> queue;
    queue.push(0);
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        auto x = queue.front();
        queue.pop();
        for (auto y : adjacency[x]) {
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                ++reached;
                queue.push(static_cast<std::size_t>(y));
            }
        }
    }
    if (reached != labels.size()) {
        throw InvalidFamily("finite family '" + name + "' is not connected");
    }

    return {std::move(name), std::max(max_degree, 1), VertexId{0}, true,
            std::make_shared<FiniteImpl>(std::move(sorted_labels), std::move(adjacency))};
}

} // namespace hdtk
