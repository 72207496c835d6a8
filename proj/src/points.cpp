#include "ffpm/points.hpp"

namespace ffpm {

std::uint64_t space_size(std::uint64_t q, std::size_t n, std::uint64_t limit) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (size > limit / q) {
            throw GuardError(std::to_string(q) + "^" + std::to_string(n) + " exceeds the enumeration limit " +
                             std::to_string(limit));
        }
        size *= q;
    }
    if (size > limit) throw GuardError("enumeration limit exceeded");
    return size;
}

std::uint64_t point_index(std::uint32_t q, std::span<const Elem> point) {
    std::uint64_t index = 0;
    for (const auto x : point) index = index * q + x;
    return index;
}

void point_from_index(std::uint32_t q, std::uint64_t index, std::span<Elem> out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Elem>(index % q);
        index /= q;
    }
}

std::vector<Elem> point_from_index(std::uint32_t q, std::size_t n, std::uint64_t index) {
    std::vector<Elem> out(n);
    point_from_index(q, index, out);
    return out;
}

}  // namespace ffpm
