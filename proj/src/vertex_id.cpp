#include "hdtk/vertex_id.hpp"

#include "hdtk/errors.hpp"

namespace hdtk {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

VertexId::VertexId(std::initializer_list<std::int32_t> coords)
    : VertexId(std::span<const std::int32_t>(coords.begin(), coords.size())) {}

VertexId::VertexId(std::span<const std::int32_t> coords) {
    if (coords.size() > kCapacity) {
        throw InvalidFamily("vertex encoding longer than " + std::to_string(kCapacity) + " coordinates");
    }
    std::copy(coords.begin(), coords.end(), coords_.begin());
    size_ = static_cast<std::uint8_t>(coords.size());
}

std::size_t VertexId::hash() const noexcept {
    std::uint64_t h = splitmix64(size_);
    for (std::size_t i = 0; i < size_; ++i) {
        h = splitmix64(h ^ static_cast<std::uint32_t>(coords_[i]));
    }
    return static_cast<std::size_t>(h);
}

} // namespace hdtk
