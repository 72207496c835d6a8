#pragma once

// The GF(q)-valued transform between function tables on GF(q)^n and their
// reduced polynomial representatives.

#include <cstdint>
#include <span>
#include <vector>

#include "ffpm/field.hpp"
#include "ffpm/polyring.hpp"

namespace ffpm {

// Dense table of a function GF(q)^n -> GF(q), indexed as in points.hpp.
class FunctionTable {
public:
    FunctionTable(FieldPtr field, std::size_t arity);
    FunctionTable(FieldPtr field, std::size_t arity, std::vector<Elem> values);

    const FieldPtr& field() const { return field_; }
    std::size_t arity() const { return arity_; }
    std::size_t size() const { return values_.size(); }

    Elem operator[](std::size_t index) const { return values_[index]; }
    Elem& operator[](std::size_t index) { return values_[index]; }
    Elem at(std::span<const Elem> point) const;

    const std::vector<Elem>& values() const { return values_; }

    bool operator==(const FunctionTable& rhs) const;

private:
    FieldPtr field_;
    std::size_t arity_;
    std::vector<Elem> values_;
};

// Dense tables are limited to 2^24 points.
inline constexpr std::uint64_t kMaxTablePoints = std::uint64_t{1} << 24;

// sigma_a(x) = -x^{q-1-a} for a > 0, and 1_{x=0} for a = 0.
Elem sigma(const Field& field, std::uint32_t a, Elem x);

// S_{a,b} = sum_x x^b sigma_a(x), by direct summation. Row a, column b.
std::vector<std::vector<Elem>> kernel_orthogonality(const Field& field);

enum class AnalyzeMethod {
    axis_factorized,  // n passes of the length-q kernel, O(n q^{n+1})
    direct,           // the full double sum, O(q^{2n}); oracle only
};

MultivariatePolynomial analyze(const FunctionTable& f, AnalyzeMethod method = AnalyzeMethod::axis_factorized);

FunctionTable synthesize(const MultivariatePolynomial& p);

// Dense coefficient table (same indexing as points, digit i = alpha_i) and back.
std::vector<Elem> dense_coefficients(const MultivariatePolynomial& p);
MultivariatePolynomial from_dense_coefficients(const FieldPtr& field, std::size_t arity,
                                               std::span<const Elem> coeffs);

}  // namespace ffpm
