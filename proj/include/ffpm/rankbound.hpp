#pragma once

// Difference matrices M[a][a'] = P(a - a') and the rank bound obtained by
// splitting P(x + y) into parts of low degree in x or in y.

#include <cstdint>
#include <span>
#include <vector>

#include "ffpm/polyring.hpp"

namespace ffpm {

// Distinct points of GF(q)^n kept in ascending index order.
class PointSet {
public:
    PointSet(FieldPtr field, std::size_t arity, std::vector<std::uint64_t> indices);
    static PointSet from_points(FieldPtr field, std::size_t arity, const std::vector<std::vector<Elem>>& points);

    const FieldPtr& field() const { return field_; }
    std::size_t arity() const { return arity_; }
    std::size_t size() const { return indices_.size(); }
    const std::vector<std::uint64_t>& indices() const { return indices_; }
    std::vector<Elem> point(std::size_t i) const;

    bool operator==(const PointSet& rhs) const {
        return field_->same_as(*rhs.field_) && arity_ == rhs.arity_ && indices_ == rhs.indices_;
    }

private:
    FieldPtr field_;
    std::size_t arity_;
    std::vector<std::uint64_t> indices_;
};

// Dense row-major matrix over GF(q).
class GfMatrix {
public:
    GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols);

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Elem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    GfMatrix operator*(const GfMatrix& rhs) const;
    GfMatrix operator+(const GfMatrix& rhs) const;
    GfMatrix transposed() const;
    bool operator==(const GfMatrix& rhs) const;

private:
    FieldPtr field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

GfMatrix difference_matrix(const MultivariatePolynomial& p, const PointSet& a);

// Row rank by Gaussian elimination; GF(2) uses bit-packed rows.
std::size_t rank_gf(const GfMatrix& m);

// {gamma in {0..q-1}^n : 2|gamma| <= deg}, graded-lex order. Empty for deg = -inf.
std::vector<ExponentVector> half_degree_monomials(std::uint32_t q, std::size_t n, Degree deg);

// P(x + y) as a reduced polynomial in (x_1..x_n, y_1..y_n).
MultivariatePolynomial shifted_sum(const MultivariatePolynomial& p);

// P(x + y) = sum_{gamma in S} x^gamma a_gamma(y) + y^gamma b_gamma(x).
// A term x^beta y^delta goes to the x side when 2|beta| <= deg P, otherwise
// to the y side (where 2|delta| < deg P).
struct ClpSplit {
    std::vector<ExponentVector> monomials;        // S
    std::vector<MultivariatePolynomial> x_side;   // a_gamma, polynomials in y
    std::vector<MultivariatePolynomial> y_side;   // b_gamma, polynomials in x
    MultivariatePolynomial shifted;               // P(x + y)

    Elem evaluate(std::span<const Elem> x, std::span<const Elem> y) const;
};

ClpSplit clp_split(const MultivariatePolynomial& p);

struct RankCertificate {
    std::size_t rank = 0;
    std::vector<ExponentVector> monomials;  // S
    // M = x_left * x_right + y_left * y_right with inner dimension |S|.
    GfMatrix x_left;
    GfMatrix x_right;
    GfMatrix y_left;
    GfMatrix y_right;
    GfMatrix matrix;

    std::size_t bound() const { return 2 * monomials.size(); }
};

// Throws ConsistencyError if the factorization does not reproduce M or the
// rank exceeds 2|S|.
RankCertificate certify(const MultivariatePolynomial& p, const PointSet& a);

}  // namespace ffpm
