#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ffpm/bounds.hpp"
#include "ffpm/error.hpp"

using namespace ffpm;

namespace {

// Reference values computed in double from the closed forms.
double ref_c(double k, double q, double d) { return 1.0 / (2.0 * k * k * d * d * std::log(q)); }

double ref_c_prime(double k, double q) {
    const double l = 1.0 + std::log(k) / std::log(q);
    return 1.0 / (2.0 * k * k * (q - 1) * (q - 1) * l * l * std::log(q));
}

std::uint64_t ref_digits(std::uint64_t k, std::uint64_t q) {
    // Digit sum via repeated subtraction of the largest power.
    std::uint64_t s = 0;
    while (k > 0) {
        std::uint64_t pw = 1;
        while (pw * q <= k) pw *= q;
        k -= pw;
        ++s;
    }
    return s;
}

// Brute-force count of alpha in {0..q-1}^n with |alpha| <= t.
std::uint64_t brute_count(std::uint64_t q, std::uint64_t n, std::int64_t t) {
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < n; ++i) total *= q;
    std::uint64_t hits = 0;
    for (std::uint64_t x = 0; x < total; ++x) {
        std::uint64_t s = 0;
        for (std::uint64_t y = x, i = 0; i < n; ++i, y /= q) s += y % q;
        if (static_cast<std::int64_t>(s) <= t) ++hits;
    }
    return hits;
}

}  // namespace

TEST_CASE("digit sums") {
    CHECK(digit_sum(4, 2) == 1);
    CHECK(digit_sum(3, 2) == 2);
    CHECK(digit_sum(5, 3) == 3);
    CHECK(digit_sum(0, 7) == 0);
    for (std::uint64_t q = 2; q <= 9; ++q) {
        for (std::uint64_t k = 0; k <= 200; ++k) CHECK(digit_sum(k, q) == ref_digits(k, q));
    }
    CHECK(max_digit_sum_upto(6, 2) == 2);
    CHECK(max_digit_sum_upto(7, 2) == 3);
    CHECK_THROWS_AS(digit_sum(5, 1), ContractError);
}

TEST_CASE("constants") {
    CHECK(double(c_main(2, 3)) == doctest::Approx(0.0284).epsilon(1e-2));
    CHECK(double(c_main(3, 2)) == doctest::Approx(0.0200).epsilon(1e-2));
    CHECK(double(c_prime(2, 3)) == doctest::Approx(0.0107).epsilon(1e-2));
    CHECK(double(c_main(3, 2)) == doctest::Approx(1.0 / (72.0 * std::numbers::ln2)).epsilon(1e-14));
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        for (std::uint64_t k = 2; k <= 30; ++k) {
            const double d = static_cast<double>(ref_digits(k, q));
            CHECK(double(c_main(k, q)) == doctest::Approx(ref_c(double(k), double(q), d)).epsilon(1e-13));
            CHECK(double(c_prime(k, q)) == doctest::Approx(ref_c_prime(double(k), double(q))).epsilon(1e-13));
            // D_q(k) <= (q-1)(1 + log_q k), hence c' <= c.
            CHECK(c_prime(k, q) <= c_main(k, q) * (1 + 1e-12L));
            if (k > 2) CHECK(c_prime(k, q) < c_prime(k - 1, q));
        }
    }
    // k = q: digit sum 1, log_q k = 1.
    for (std::uint64_t q : {2, 3, 5, 7}) {
        const double qq = double(q);
        CHECK(double(c_prime(q, q)) ==
              doctest::Approx(1.0 / (2.0 * qq * qq * (qq - 1) * (qq - 1) * 4.0 * std::log(qq))).epsilon(1e-13));
        CHECK(double(c_main(q, q)) == doctest::Approx(1.0 / (2.0 * qq * qq * std::log(qq))).epsilon(1e-13));
    }
    CHECK_THROWS_AS(c_main(1, 3), ContractError);
    CHECK_THROWS_AS(c_prime(2, 1), ContractError);
}

TEST_CASE("Hoeffding form") {
    CHECK(double(hoeffding_bound(2, 4, 2, 2)) == doctest::Approx(28.24).epsilon(1e-3));
    CHECK(double(hoeffding_bound(2, 4, 2, 2)) == doctest::Approx(32.0 * std::exp(-0.125)).epsilon(1e-14));
    CHECK_THROWS_AS(hoeffding_bound(2, 4, 0, 2), ContractError);
    CHECK_THROWS_AS(hoeffding_bound(2, 4, 5, 2), ContractError);
    CHECK_THROWS_AS(hoeffding_bound(2, 4, 2, 0), ContractError);
}

TEST_CASE("exact tails") {
    CHECK(exact_tail(2, 2, Rational(1)) == Rational(3, 4));
    CHECK(exact_tail(2, 4, Rational(1)) == Rational(5, 16));
    CHECK(exact_tail(3, 3, Rational(6)) == Rational(1));
    CHECK(exact_tail(3, 3, Rational(-1)) == Rational(0));
    CHECK(exact_tail(3, 3, Rational(1, 2)) == Rational(1, 27));
    CHECK(count_at_most(2, 4, Rational(3, 2)) == 5);
    const auto dist = degree_distribution(3, 2);
    CHECK(dist == std::vector<BigInt>{1, 2, 3, 2, 1});

    for (std::uint64_t q : {2, 3, 4, 5}) {
        for (std::uint64_t n = 1; n <= 6; ++n) {
            const std::int64_t top = static_cast<std::int64_t>((q - 1) * n);
            for (std::int64_t t = -1; t <= top + 1; ++t) {
                CHECK(count_at_most(q, n, Rational(t)) == brute_count(q, n, t));
                // Symmetry of the digit-sum distribution about (q-1)n/2.
                if (t >= 0 && t < top) {
                    const Rational below = exact_tail(q, n, Rational(t));
                    const Rational above = 1 - exact_tail(q, n, Rational(top - t - 1));
                    CHECK(below == above);
                }
            }
        }
    }
}

TEST_CASE("exact tail is dominated by the Hoeffding form") {
    for (std::uint64_t q : {2, 3, 5}) {
        for (std::uint64_t n = 1; n <= 30; ++n) {
            for (std::uint64_t m = 1; m <= n; ++m) {
                for (std::uint64_t d = 1; d <= 4; ++d) {
                    const Rational t = witness_degree_bound(q, n, m, d) / 2;
                    const Real count = to_real(exact_tail(q, n, t)) * std::pow(Real(q), Real(n));
                    REQUIRE(2 * count <= hoeffding_bound(q, n, m, d) * (1 + 1e-12L));
                }
            }
        }
    }
}

TEST_CASE("witness degree bound and report") {
    CHECK(witness_degree_bound(2, 4, 2, 2) == Rational(3));
    CHECK(witness_degree_bound(3, 5, 2, 3) == Rational(26, 3));
    const auto r = bound_report(2, 4, 3);
    CHECK(r.m == 2);
    CHECK(r.d == 2);
    CHECK(r.digit_sum == 2);
    CHECK(r.tail_point == Rational(3, 2));
    CHECK(r.tail == Rational(5, 16));
    CHECK(r.exact_count == 5);
    CHECK(r.space == 16);
    CHECK(r.hoeffding_vacuous);
    CHECK_FALSE(r.exact_vacuous);
    CHECK(double(r.threshold) == doctest::Approx(2.0 * std::pow(2.0, 4.0 * (1.0 - 1.0 / (72.0 * std::numbers::ln2)))));
    CHECK(double(r.threshold) == doctest::Approx(30.3).epsilon(1e-2));
    const auto rc = bound_report(2, 4, 3, 3);
    CHECK(rc.d == 3);
    CHECK(rc.tail_point == Rational(5, 3));
    CHECK_THROWS_AS(bound_report(2, 4, 1), ContractError);
    CHECK(to_decimal(Rational(5, 16)) == "0.3125");
    CHECK(floor_of(Rational(-1, 2)) == -1);
    CHECK(floor_of(Rational(7, 2)) == 3);
}
