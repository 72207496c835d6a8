#pragma once

// Closed-form constants and tail quantities for the extremal-set bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ffpm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Real = long double;

// Sum of the base-q digits of k.
std::uint64_t digit_sum(std::uint64_t k, std::uint64_t q);
// max over 1 <= k' <= k of digit_sum(k', q).
std::uint64_t max_digit_sum_upto(std::uint64_t k, std::uint64_t q);

// (2 k^2 D_q(k)^2 ln q)^{-1}
Real c_main(std::uint64_t k, std::uint64_t q);
// (2 k^2 (q-1)^2 (1 + log_q k)^2 ln q)^{-1}
Real c_prime(std::uint64_t k, std::uint64_t q);

// 2 q^n exp(-m^2 / (2 n d^2)); requires 0 < m <= n and d >= 1.
Real hoeffding_bound(std::uint64_t q, std::uint64_t n, std::uint64_t m, std::uint64_t d);

// counts[s] = #{alpha in {0..q-1}^n : |alpha| = s}, s = 0..(q-1)n.
std::vector<BigInt> degree_distribution(std::uint64_t q, std::uint64_t n);

// #{alpha in {0..q-1}^n : |alpha| <= t}.
BigInt count_at_most(std::uint64_t q, std::uint64_t n, const Rational& t);

// Pr(X_1 + ... + X_n <= t) for X_i i.i.d. uniform on {0..q-1}, exactly.
Rational exact_tail(std::uint64_t q, std::uint64_t n, const Rational& t);

// (q-1)(n - m/d), the degree bound on the witness polynomial.
Rational witness_degree_bound(std::uint64_t q, std::uint64_t n, std::uint64_t m, std::uint64_t d);

Real to_real(const Rational& x);
BigInt floor_of(const Rational& x);

enum class Theorem { power, composed };

// 2 q^{(1-c)n} with c = c_main (power) or c_prime (composed).
Real theorem_threshold(Theorem which, std::uint64_t q, std::uint64_t n, std::uint64_t k);

struct BoundReport {
    std::uint64_t q = 0;
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;            // floor((n-1)/k) + 1
    std::uint64_t d = 0;            // degree used in the Hoeffding form
    std::uint64_t digit_sum = 0;    // D_q(k)
    Real c = 0;
    Real c_prime = 0;
    Real threshold = 0;             // 2 q^{(1-c)n}
    Real threshold_prime = 0;       // 2 q^{(1-c')n}
    Real hoeffding = 0;             // 2 q^n e^{-m^2/2nd^2}
    Rational tail_point;            // (1/2)(q-1)(n - m/d)
    Rational tail;                  // exact Pr(sum X_i <= tail_point)
    BigInt exact_count;             // q^n * tail
    BigInt space;                   // q^n
    bool hoeffding_vacuous = false; // hoeffding >= q^n
    bool exact_vacuous = false;     // 2 * exact_count >= q^n
};

// For the power map, d = D_q(k). When `composed_degree` is set it replaces d
// (the sup of digit sums over the composed polynomial's support).
BoundReport bound_report(std::uint64_t q, std::uint64_t n, std::uint64_t k,
                         std::optional<std::uint64_t> composed_degree = std::nullopt);

std::string to_decimal(const Rational& x, int digits = 12);

}  // namespace ffpm
