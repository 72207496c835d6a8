#pragma once

// Points of GF(q)^n are indexed in mixed radix with x_1 as the most
// significant digit, so index order is lexicographic order on coordinates.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ffpm/field.hpp"

namespace ffpm {

// q^n, or GuardError when it exceeds `limit`.
std::uint64_t space_size(std::uint64_t q, std::size_t n, std::uint64_t limit = std::uint64_t{1} << 40);

std::uint64_t point_index(std::uint32_t q, std::span<const Elem> point);
void point_from_index(std::uint32_t q, std::uint64_t index, std::span<Elem> out);
std::vector<Elem> point_from_index(std::uint32_t q, std::size_t n, std::uint64_t index);

}  // namespace ffpm
