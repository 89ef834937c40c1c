#ifndef SAWKIT_VERTEX_HPP
#define SAWKIT_VERTEX_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <tuple>

namespace sawkit {

// Canonical vertex coordinates, one layout shared by every family:
//   - lattices use x, y, z (unused axes fixed at 0);
//   - regular trees use (word, wlen): the path from the tree root, 2 bits per
//     letter;
//   - the grandparent graph uses x = horocycle level (increasing toward the
//     distinguished end xi) and (word, wlen) = the binary path from the point
//     where the vertex's upward ray joins the all-zeros spine, stored with
//     leading zeros stripped so equal vertices have equal encodings.
struct VertexId {
    std::int32_t x = 0;
    std::int32_t y = 0;
    std::int32_t z = 0;
    std::uint64_t word = 0;
    std::uint32_t wlen = 0;

    friend bool operator==(const VertexId&, const VertexId&) = default;
    friend auto operator<=>(const VertexId& a, const VertexId& b) {
        return std::tie(a.x, a.y, a.z, a.word, a.wlen) <=>
               std::tie(b.x, b.y, b.z, b.word, b.wlen);
    }

    static VertexId at(std::int32_t x, std::int32_t y = 0, std::int32_t z = 0) {
        VertexId v;
        v.x = x;
        v.y = y;
        v.z = z;
        return v;
    }
};

struct VertexHash {
    std::size_t operator()(const VertexId& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        auto mix = [&h](std::uint64_t x) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 29;
        };
        mix(static_cast<std::uint32_t>(v.x));
        mix((static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.y)) << 32) |
            static_cast<std::uint32_t>(v.z));
        mix(v.word);
        mix(v.wlen);
        return static_cast<std::size_t>(h);
    }
};

} // namespace sawkit

#endif
