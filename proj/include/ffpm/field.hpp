#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ffpm/error.hpp"

namespace ffpm {

// An element of GF(q) encoded as its index in enumeration order: the
// integer sum_j c_j p^j of its polynomial-basis coefficients c_0..c_{r-1}.
// Index 0 is zero and index 1 is one.
using Elem = std::uint32_t;

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

bool is_prime(std::uint64_t n);

// Trial division by every monic polynomial of degree 1..deg/2 over GF(p).
// `poly` is low-to-high.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

// Lowest monic irreducible of degree r over GF(p), ordering candidates by the
// integer whose base-p digits are (c_{r-1}, ..., c_0).
std::vector<std::uint32_t> lowest_irreducible(std::uint32_t p, std::uint32_t r);

// Parameters of GF(p^r). `modulus` is low-to-high, monic of degree r, and
// empty when r == 1.
struct FieldSpec {
    std::uint32_t p = 2;
    std::uint32_t r = 1;
    std::vector<std::uint32_t> modulus;

    std::uint32_t q() const;

    static FieldSpec prime(std::uint32_t p);
    static FieldSpec with_default_modulus(std::uint32_t p, std::uint32_t r);
    // Factors q as p^r and picks the default modulus.
    static FieldSpec for_order(std::uint64_t q);
    // `p=2 r=2 modulus=1,1,1`; r defaults to 1 and modulus to the default.
    static FieldSpec parse(std::string_view text);

    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Arithmetic context for GF(q). Immutable once built.
class Field {
public:
    // Validates the spec (prime p, irreducible monic modulus, q <= 2^20).
    static FieldPtr make(FieldSpec spec);
    static FieldPtr of_order(std::uint64_t q);

    const FieldSpec& spec() const { return spec_; }
    std::uint32_t p() const { return spec_.p; }
    std::uint32_t r() const { return spec_.r; }
    std::uint32_t q() const { return q_; }

    bool same_as(const Field& other) const { return this == &other || spec_ == other.spec_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    // 0^0 = 1.
    Elem pow(Elem a, std::uint64_t e) const;

    // n * 1 in the prime subfield.
    Elem from_integer(std::int64_t n) const;

    std::vector<std::uint32_t> coefficients(Elem a) const;
    Elem from_coefficients(std::span<const std::uint32_t> coeffs) const;

    // All q elements, zero first, in index order.
    std::vector<Elem> elements() const;

    // Coefficient tuple `c_0,c_1,...,c_{r-1}`; a bare residue when r == 1.
    std::string format(Elem a) const;
    Elem parse(std::string_view text) const;

    // A generator of the multiplicative group.
    Elem primitive_element() const { return generator_; }

private:
    explicit Field(FieldSpec spec);

    Elem poly_mul(Elem a, Elem b) const;

    FieldSpec spec_;
    std::uint32_t q_ = 0;
    Elem generator_ = 1;
    std::vector<Elem> add_table_;  // q*q, only for small extension fields
    std::vector<Elem> neg_table_;
    std::vector<Elem> exp_;  // exp_[i] = g^i, i in [0, 2(q-1))
    std::vector<std::uint32_t> log_;
};

// Field element carrying its field; arithmetic checks that operands match.
class FieldElement {
public:
    FieldElement(FieldPtr field, Elem value);

    const FieldPtr& field() const { return field_; }
    Elem value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator/(const FieldElement& rhs) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& rhs) const;

    std::string to_string() const { return field_->format(value_); }

private:
    const Field& common(const FieldElement& rhs) const;

    FieldPtr field_;
    Elem value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);
FieldElement pow(const FieldElement& a, std::uint64_t e);
std::vector<FieldElement> enumerate(const FieldPtr& field);

}  // namespace ffpm
