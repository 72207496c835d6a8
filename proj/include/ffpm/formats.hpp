#pragma once

// Text formats for polynomials, function tables, maps, point sets and
// matrices. Field elements are written as coefficient tuples `c_0,...,c_{r-1}`.

#include <optional>
#include <string>
#include <string_view>

#include "ffpm/rankbound.hpp"
#include "ffpm/transform.hpp"
#include "ffpm/witness.hpp"

namespace ffpm {

// One term per line, `<coeff> : <alpha_1> ... <alpha_n>`, graded-lex order.
std::string format_polynomial(const MultivariatePolynomial& p);
// Arity is inferred from the first term unless given; `#` starts a comment.
MultivariatePolynomial parse_polynomial(const FieldPtr& field, std::string_view text,
                                        std::optional<std::size_t> arity = std::nullopt);

// Univariate F(X): one `<coeff> : <j>` line per nonzero coefficient F_j.
// Exponents are not reduced.
std::string format_univariate(const UnivariatePolynomial& f);
UnivariatePolynomial parse_univariate(const FieldPtr& field, std::string_view text);

// Header `q=<q> n=<n>` then q^n values in index order.
std::string format_table(const FunctionTable& f);
// Without `field`, the default field of order q is used.
FunctionTable parse_table(std::string_view text, const FieldPtr& field = nullptr);

// Field-spec line, `q n m` line, then `component <i>` blocks of terms.
std::string format_map(const PolynomialMap& phi);
PolynomialMap parse_map(std::string_view text);

// Header `q=<q> n=<n>` then one point per line as n coefficient tuples.
std::string format_point_set(const PointSet& a);
PointSet parse_point_set(std::string_view text, const FieldPtr& field = nullptr);

// Header `rows cols q` then one row per line.
std::string format_matrix(const GfMatrix& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace ffpm
