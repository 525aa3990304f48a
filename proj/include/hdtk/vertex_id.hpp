#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>

namespace hdtk {

// Canonical vertex encoding: a short tuple of 32-bit integers. Lattice-like
// families store coordinates; trees store a packed reduced word. Unused slots
// are always zero, so member-wise comparison is both equality and a strict
// total order.
class VertexId {
public:
    static constexpr std::size_t kCapacity = 6;

    VertexId() = default;

    VertexId(std::initializer_list<std::int32_t> coords);

    explicit VertexId(std::span<const std::int32_t> coords);

    std::size_t size() const noexcept { return size_; }

    std::int32_t operator[](std::size_t i) const noexcept { return coords_[i]; }

    std::span<const std::int32_t> coords() const noexcept { return {coords_.data(), size_}; }

    VertexId with(std::size_t i, std::int32_t value) const noexcept {
        VertexId out = *this;
        out.coords_[i] = value;
        return out;
    }

    std::size_t hash() const noexcept;

    friend bool operator==(const VertexId&, const VertexId&) = default;
    friend std::strong_ordering operator<=>(const VertexId& a, const VertexId& b) noexcept {
        if (auto c = a.size_ <=> b.size_; c != 0) {
            return c;
        }
        return std::lexicographical_compare_three_way(a.coords_.begin(), a.coords_.end(),
                                                      b.coords_.begin(), b.coords_.end());
    }

private:
    std::array<std::int32_t, kCapacity> coords_{};
    std::uint8_t size_ = 0;
};

struct VertexIdHash {
    std::size_t operator()(const VertexId& v) const noexcept { return v.hash(); }
};

// An oriented edge (tail, head). Reversal swaps the endpoints.
struct OrientedEdge {
    VertexId tail;
    VertexId head;

    OrientedEdge reversed() const { return {head, tail}; }

    friend bool operator==(const OrientedEdge&, const OrientedEdge&) = default;
};

} // namespace hdtk

template <>
struct std::hash<hdtk::VertexId> {
    std::size_t operator()(const hdtk::VertexId& v) const noexcept { return v.hash(); }
};
