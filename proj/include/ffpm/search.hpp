#pragma once

// Sets A in GF(q)^n whose difference set meets im(Phi) only at 0.

#include <cstdint>
#include <optional>
#include <vector>

#include "ffpm/rankbound.hpp"
#include "ffpm/witness.hpp"

namespace ffpm {

inline constexpr std::uint64_t kMaxExhaustivePoints = std::uint64_t{1} << 14;
inline constexpr std::uint64_t kMaxGreedyPoints = std::uint64_t{1} << 24;

struct AvoidanceInstance {
    FieldPtr field;
    std::size_t n = 0;
    std::vector<std::uint64_t> image;      // im(Phi), sorted
    std::vector<std::uint64_t> forbidden;  // (im(Phi) u -im(Phi)) \ {0}, sorted
    bool image_symmetric = false;          // im(Phi) = -im(Phi)

    static AvoidanceInstance from_map(const PolynomialMap& phi);
    static AvoidanceInstance from_image(FieldPtr field, std::size_t n, std::vector<std::uint64_t> image);
};

// {Phi(a) : a in GF(q)^m} as sorted point indices.
std::vector<std::uint64_t> enumerate_image(const PolynomialMap& phi);

// True iff a - a' is outside im(Phi) for every ordered pair a != a'.
bool verify_avoiding(const PointSet& a, const AvoidanceInstance& inst);

struct SearchResult {
    PointSet best_set;
    std::size_t best_size = 0;
    bool optimal = false;
    std::uint64_t nodes_explored = 0;
    // The Cayley graph splits into cosets of the subgroup generated by the
    // forbidden set; the exhaustive search solves one coset.
    std::size_t component_size = 0;
    std::size_t component_count = 0;
};

// Maximum avoiding set by branch and bound with 0 pinned. Returns the best set
// found with optimal = false when the node budget runs out.
SearchResult max_avoiding_exhaustive(const AvoidanceInstance& inst, std::uint64_t budget);

// One greedy pass in index order, or in an order shuffled by `seed`.
SearchResult greedy_avoiding(const AvoidanceInstance& inst, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace ffpm
