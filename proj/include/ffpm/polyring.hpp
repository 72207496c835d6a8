#pragma once

// Reduced multivariate polynomials over GF(q): every variable has degree at
// most q-1, so each polynomial is the unique representative of a function
// GF(q)^n -> GF(q). Also univariate polynomials over GF(q).

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ffpm/field.hpp"

namespace ffpm {

// Total degree of a polynomial; the zero polynomial has degree -inf, which
// orders below every integer.
class Degree {
public:
    constexpr Degree(std::int64_t value) : value_(value), finite_(true) {}  // NOLINT: implicit on purpose
    static constexpr Degree neg_inf() { return Degree(); }

    constexpr bool is_neg_inf() const { return !finite_; }
    std::int64_t value() const;

    constexpr std::strong_ordering operator<=>(const Degree& rhs) const {
        if (!finite_ || !rhs.finite_) return finite_ <=> rhs.finite_;
        return value_ <=> rhs.value_;
    }
    constexpr bool operator==(const Degree& rhs) const { return (*this <=> rhs) == 0; }

    std::string to_string() const { return finite_ ? std::to_string(value_) : "-inf"; }

private:
    constexpr Degree() : value_(0), finite_(false) {}
    std::int64_t value_;
    bool finite_;
};

// Exponent e reduced to {0..q-1} using x^q = x on GF(q).
constexpr std::uint64_t reduce_exponent(std::uint64_t e, std::uint64_t q) {
    return e <= q - 1 ? e : ((e - 1) % (q - 1)) + 1;
}

class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {}
    ExponentVector(std::initializer_list<std::uint32_t> entries) : entries_(entries) {}

    static ExponentVector zeros(std::size_t arity) { return ExponentVector(std::vector<std::uint32_t>(arity, 0)); }

    std::size_t arity() const { return entries_.size(); }
    std::uint32_t operator[](std::size_t i) const { return entries_[i]; }
    std::uint32_t& operator[](std::size_t i) { return entries_[i]; }
    std::span<const std::uint32_t> entries() const { return entries_; }
    std::uint64_t total_degree() const;

    // Graded lexicographic: by total degree, then lexicographic on entries.
    std::strong_ordering operator<=>(const ExponentVector& rhs) const;
    bool operator==(const ExponentVector& rhs) const = default;

private:
    std::vector<std::uint32_t> entries_;
};

std::strong_ordering graded_lex(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

class MultivariatePolynomial;

struct Term {
    ExponentVector exponents;
    Elem coefficient;
};

// Collects terms in any order (unreduced exponents allowed) and produces the
// canonical polynomial.
class TermAccumulator {
public:
    TermAccumulator(FieldPtr field, std::size_t arity);

    // Exponents are reduced with reduce_exponent before storage.
    void add(std::span<const std::uint32_t> exponents, Elem coefficient);
    // Exponents must already be reduced.
    void add_reduced(std::span<const std::uint32_t> exponents, Elem coefficient);

    MultivariatePolynomial finish() &&;

private:
    FieldPtr field_;
    std::size_t arity_;
    std::vector<std::uint32_t> exps_;
    std::vector<Elem> coeffs_;
};

class MultivariatePolynomial {
public:
    MultivariatePolynomial(FieldPtr field, std::size_t arity);

    static MultivariatePolynomial constant(FieldPtr field, std::size_t arity, Elem c);
    static MultivariatePolynomial variable(FieldPtr field, std::size_t arity, std::size_t index);
    static MultivariatePolynomial monomial(FieldPtr field, const ExponentVector& exponents, Elem c);
    static MultivariatePolynomial from_terms(FieldPtr field, std::size_t arity, std::span<const Term> terms);

    const FieldPtr& field() const { return field_; }
    std::size_t arity() const { return arity_; }
    std::size_t term_count() const { return coeffs_.size(); }
    bool is_zero() const { return coeffs_.empty(); }

    // Terms are stored in ascending graded-lex order.
    std::span<const std::uint32_t> exponents(std::size_t term) const {
        return {exps_.data() + term * arity_, arity_};
    }
    Elem coefficient(std::size_t term) const { return coeffs_[term]; }
    Elem coefficient_of(std::span<const std::uint32_t> exponents) const;
    std::vector<Term> terms() const;

    Degree degree() const;
    // Largest single-variable exponent over all terms.
    std::uint32_t max_variable_degree() const;

    Elem evaluate(std::span<const Elem> point) const;

    MultivariatePolynomial operator+(const MultivariatePolynomial& rhs) const;
    MultivariatePolynomial operator-(const MultivariatePolynomial& rhs) const;
    MultivariatePolynomial operator*(const MultivariatePolynomial& rhs) const;
    MultivariatePolynomial operator-() const;
    MultivariatePolynomial scaled(Elem c) const;
    MultivariatePolynomial pow(std::uint64_t e) const;

    bool operator==(const MultivariatePolynomial& rhs) const;

    std::string to_string() const;

private:
    friend class TermAccumulator;

    void check_compatible(const MultivariatePolynomial& rhs) const;

    FieldPtr field_;
    std::size_t arity_;
    std::vector<std::uint32_t> exps_;
    std::vector<Elem> coeffs_;
};

MultivariatePolynomial poly_add(const MultivariatePolynomial& a, const MultivariatePolynomial& b);
MultivariatePolynomial poly_mul(const MultivariatePolynomial& a, const MultivariatePolynomial& b);
Elem evaluate(const MultivariatePolynomial& p, std::span<const Elem> point);

// Composition P(maps_1(a), ..., maps_m(a)); maps share one arity.
MultivariatePolynomial substitute(const MultivariatePolynomial& p, std::span<const MultivariatePolynomial> maps);

class UnivariatePolynomial {
public:
    // Coefficients low-to-high; trailing zeros are dropped.
    UnivariatePolynomial(FieldPtr field, std::vector<Elem> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<Elem>& coefficients() const { return coeffs_; }
    Elem coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    Degree degree() const;
    Elem evaluate(Elem x) const;

    bool operator==(const UnivariatePolynomial& rhs) const;

private:
    FieldPtr field_;
    std::vector<Elem> coeffs_;
};

// Coefficients g_0..g_{n-1} of (a_0 + a_1 T + ... + a_{m-1} T^{m-1})^k as
// reduced polynomials in a_0..a_{m-1}. Uses the base-q digits of k and the
// Frobenius identity, so deg g_i <= digit sum of k. Requires (m-1)k < n.
std::vector<MultivariatePolynomial> univariate_pow_expand(const FieldPtr& field, std::size_t m, std::uint64_t k,
                                                          std::size_t n);

}  // namespace ffpm
