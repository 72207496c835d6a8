#include "ffpm/bounds.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ffpm/error.hpp"

namespace ffpm {

std::uint64_t digit_sum(std::uint64_t k, std::uint64_t q) {
    if (q < 2) throw ContractError("digit_sum needs base q >= 2");
    std::uint64_t s = 0;
    while (k > 0) {
        s += k % q;
        k /= q;
    }
    return s;
}

std::uint64_t max_digit_sum_upto(std::uint64_t k, std::uint64_t q) {
    std::uint64_t best = 0;
    for (std::uint64_t j = 1; j <= k; ++j) best = std::max(best, digit_sum(j, q));
    return best;
}

Real c_main(std::uint64_t k, std::uint64_t q) {
    if (k < 2 || q < 2) throw ContractError("c(k,q) needs k >= 2 and q >= 2");
    const Real kk = static_cast<Real>(k);
    const Real d = static_cast<Real>(digit_sum(k, q));
    return 1.0L / (2.0L * kk * kk * d * d * std::log(static_cast<Real>(q)));
}

Real c_prime(std::uint64_t k, std::uint64_t q) {
    if (k < 2 || q < 2) throw ContractError("c'(k,q) needs k >= 2 and q >= 2");
    const Real kk = static_cast<Real>(k);
    const Real lq = std::log(static_cast<Real>(q));
    const Real one_plus = 1.0L + std::log(kk) / lq;
    const Real qm1 = static_cast<Real>(q - 1);
    return 1.0L / (2.0L * kk * kk * qm1 * qm1 * one_plus * one_plus * lq);
}

Real hoeffding_bound(std::uint64_t q, std::uint64_t n, std::uint64_t m, std::uint64_t d) {
    if (m == 0 || m > n) throw ContractError("hoeffding_bound needs 0 < m <= n");
    if (d == 0) throw ContractError("hoeffding_bound needs d >= 1");
    const Real mm = static_cast<Real>(m);
    const Real dd = static_cast<Real>(d);
    const Real nn = static_cast<Real>(n);
    return 2.0L * std::pow(static_cast<Real>(q), nn) * std::exp(-mm * mm / (2.0L * nn * dd * dd));
}

std::vector<BigInt> degree_distribution(std::uint64_t q, std::uint64_t n) {
    if (q < 2) throw ContractError("degree_distribution needs q >= 2");
    std::vector<BigInt> counts{1};
    for (std::uint64_t i = 0; i < n; ++i) {
        // Multiply by 1 + x + ... + x^{q-1} with a sliding window sum.
        std::vector<BigInt> next(counts.size() + q - 1);
        BigInt window = 0;
        for (std::size_t s = 0; s < next.size(); ++s) {
            if (s < counts.size()) window += counts[s];
            if (s >= q && s - q < counts.size()) window -= counts[s - q];
            next[s] = window;
        }
        counts = std::move(next);
    }
    return counts;
}

BigInt floor_of(const Rational& x) {
    const BigInt num = boost::multiprecision::numerator(x);
    const BigInt den = boost::multiprecision::denominator(x);
    BigInt quotient = num / den;
    if (num < 0 && quotient * den != num) quotient -= 1;
    return quotient;
}

BigInt count_at_most(std::uint64_t q, std::uint64_t n, const Rational& t) {
    const BigInt limit = floor_of(t);
    if (limit < 0) return 0;
    const auto counts = degree_distribution(q, n);
    BigInt total = 0;
    for (std::size_t s = 0; s < counts.size() && BigInt(s) <= limit; ++s) total += counts[s];
    return total;
}

Rational exact_tail(std::uint64_t q, std::uint64_t n, const Rational& t) {
    BigInt space = 1;
    for (std::uint64_t i = 0; i < n; ++i) space *= q;
    return Rational(count_at_most(q, n, t), space);
}

Rational witness_degree_bound(std::uint64_t q, std::uint64_t n, std::uint64_t m, std::uint64_t d) {
    if (d == 0) throw ContractError("degree bound needs d >= 1");
    return Rational(BigInt(q - 1)) * (Rational(BigInt(n)) - Rational(BigInt(m), BigInt(d)));
}

Real to_real(const Rational& x) {
    return boost::multiprecision::numerator(x).convert_to<Real>() /
           boost::multiprecision::denominator(x).convert_to<Real>();
}

Real theorem_threshold(Theorem which, std::uint64_t q, std::uint64_t n, std::uint64_t k) {
    const Real c = which == Theorem::power ? c_main(k, q) : c_prime(k, q);
    return 2.0L * std::pow(static_cast<Real>(q), (1.0L - c) * static_cast<Real>(n));
}

BoundReport bound_report(std::uint64_t q, std::uint64_t n, std::uint64_t k,
                         std::optional<std::uint64_t> composed_degree) {
    if (q < 2) throw ContractError("q must be at least 2");
    if (n < 1) throw ContractError("n must be at least 1");
    if (k < 2) throw ContractError("k must be at least 2");
    BoundReport r;
    r.q = q;
    r.n = n;
    r.k = k;
    r.m = (n - 1) / k + 1;
    r.digit_sum = digit_sum(k, q);
    r.d = composed_degree.value_or(r.digit_sum);
    if (r.d == 0) throw ContractError("degree must be at least 1");
    r.c = c_main(k, q);
    r.c_prime = c_prime(k, q);
    r.threshold = theorem_threshold(Theorem::power, q, n, k);
    r.threshold_prime = theorem_threshold(Theorem::composed, q, n, k);
    r.hoeffding = hoeffding_bound(q, n, r.m, r.d);
    r.tail_point = witness_degree_bound(q, n, r.m, r.d) / 2;
    r.tail = exact_tail(q, n, r.tail_point);
    r.exact_count = count_at_most(q, n, r.tail_point);
    r.space = 1;
    for (std::uint64_t i = 0; i < n; ++i) r.space *= q;
    r.hoeffding_vacuous = r.hoeffding >= r.space.convert_to<Real>();
    r.exact_vacuous = 2 * r.exact_count >= r.space;
    return r;
}

std::string to_decimal(const Rational& x, int digits) {
    std::ostringstream out;
    out << std::setprecision(digits) << to_real(x);
    return out.str();
}

}  // namespace ffpm
