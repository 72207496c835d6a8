#pragma once

// Polynomial maps GF(q)^m -> GF(q)^n and the low-degree polynomial supported
// on their image.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ffpm/bounds.hpp"
#include "ffpm/polyring.hpp"
#include "ffpm/transform.hpp"

namespace ffpm {

inline constexpr std::uint64_t kMaxSourcePoints = std::uint64_t{1} << 24;
inline constexpr std::uint64_t kMaxSupportCheckPoints = std::uint64_t{1} << 20;

class PolynomialMap {
public:
    PolynomialMap(FieldPtr field, std::size_t source_arity, std::vector<MultivariatePolynomial> components);

    static PolynomialMap identity(FieldPtr field, std::size_t n);

    const FieldPtr& field() const { return field_; }
    std::size_t source_arity() const { return m_; }
    std::size_t target_arity() const { return components_.size(); }
    const std::vector<MultivariatePolynomial>& components() const { return components_; }

    // Maximum total degree of the reduced components.
    Degree degree() const { return degree_; }

    std::vector<Elem> operator()(std::span<const Elem> a) const;

    // Phi(a) for every a in GF(q)^m, as target point indices in source index order.
    std::vector<std::uint64_t> image_indices() const;

private:
    FieldPtr field_;
    std::size_t m_;
    std::vector<MultivariatePolynomial> components_;
    Degree degree_ = Degree::neg_inf();
};

struct FiberCounts {
    FunctionTable table;                 // (|Phi^{-1}(x)| mod p) in the prime subfield
    std::vector<std::uint64_t> counts;   // exact |Phi^{-1}(x)|
    std::uint64_t at_zero = 0;
};

FiberCounts fiber_counting_function(const PolynomialMap& phi);

struct WitnessReport {
    MultivariatePolynomial polynomial;
    std::uint64_t fiber_count_at_zero = 0;
    std::uint64_t map_degree = 0;     // d
    Rational degree_bound_rhs;        // (q-1)(n - m/d)
    bool degree_ok = false;           // deg P <= rhs
    bool support_checked = false;     // false when q^n exceeds the check limit
    bool support_ok = false;          // P(x) != 0 implies x in im(Phi)
    bool nonzero_at_zero = false;     // P(0) != 0
    std::optional<std::vector<std::uint64_t>> image;  // sorted point indices when checked

    bool all_hold() const { return degree_ok && (support_ok || !support_checked) && nonzero_at_zero; }
};

// Throws HypothesisError when |Phi^{-1}(0)| is divisible by p.
WitnessReport build_witness(const PolynomialMap& phi);

// floor((n-1)/k) + 1
std::size_t power_map_source_arity(std::size_t n, std::uint64_t k);

// b(T) -> b(T)^k on polynomials of degree < m, coefficients in P_{q,n}.
PolynomialMap kth_power_map(const FieldPtr& field, std::size_t n, std::uint64_t k);

// b(T) -> F(b(T)) with m = floor((n-1)/deg F) + 1. Requires F(0) = 0, deg F >= 1.
PolynomialMap composed_map(const FieldPtr& field, std::size_t n, const UnivariatePolynomial& f);

// max D_q(j) over the nonzero coefficients F_j, j >= 1.
std::uint64_t composed_degree_bound(const UnivariatePolynomial& f);

struct CoprimalityCheck {
    std::uint64_t root_count = 0;
    bool ok = false;  // root_count not divisible by p
};

CoprimalityCheck check_coprimality(const UnivariatePolynomial& f);

}  // namespace ffpm
