#include "ffpm/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ffpm {

std::int64_t Degree::value() const {
    if (!finite_) throw ContractError("degree of the zero polynomial has no integer value");
    return value_;
}

std::uint64_t ExponentVector::total_degree() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::uint64_t{0});
}

std::strong_ordering graded_lex(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    const auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    const auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da <=> db;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

std::strong_ordering ExponentVector::operator<=>(const ExponentVector& rhs) const {
    return graded_lex(entries_, rhs.entries_);
}

TermAccumulator::TermAccumulator(FieldPtr field, std::size_t arity) : field_(std::move(field)), arity_(arity) {}

void TermAccumulator::add(std::span<const std::uint32_t> exponents, Elem coefficient) {
    if (exponents.size() != arity_) throw SpecError("term arity mismatch");
    if (coefficient == 0) return;
    const std::uint64_t q = field_->q();
    for (const auto e : exponents) exps_.push_back(static_cast<std::uint32_t>(reduce_exponent(e, q)));
    coeffs_.push_back(coefficient);
}

void TermAccumulator::add_reduced(std::span<const std::uint32_t> exponents, Elem coefficient) {
    if (coefficient == 0) return;
    exps_.insert(exps_.end(), exponents.begin(), exponents.end());
    coeffs_.push_back(coefficient);
}

MultivariatePolynomial TermAccumulator::finish() && {
    MultivariatePolynomial out(field_, arity_);
    const std::size_t count = coeffs_.size();
    if (count == 0) return out;
    const std::size_t n = arity_;
    // Precompute degrees so the sort compares cheaply.
    std::vector<std::uint64_t> degree(count, 0);
    for (std::size_t t = 0; t < count; ++t) {
        for (std::size_t i = 0; i < n; ++i) degree[t] += exps_[t * n + i];
    }
    std::vector<std::uint32_t> order(count);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (degree[x] != degree[y]) return degree[x] < degree[y];
        return std::lexicographical_compare(exps_.begin() + x * n, exps_.begin() + (x + 1) * n,
                                            exps_.begin() + y * n, exps_.begin() + (y + 1) * n);
    });
    const Field& f = *field_;
    std::size_t t = 0;
    while (t < count) {
        const std::uint32_t head = order[t];
        Elem sum = coeffs_[head];
        std::size_t u = t + 1;
        while (u < count && std::equal(exps_.begin() + head * n, exps_.begin() + (head + 1) * n,
                                       exps_.begin() + std::size_t{order[u]} * n)) {
            sum = f.add(sum, coeffs_[order[u]]);
            ++u;
        }
        if (sum != 0) {
            out.exps_.insert(out.exps_.end(), exps_.begin() + head * n, exps_.begin() + (head + 1) * n);
            out.coeffs_.push_back(sum);
        }
        t = u;
    }
    return out;
}

MultivariatePolynomial::MultivariatePolynomial(FieldPtr field, std::size_t arity)
    : field_(std::move(field)), arity_(arity) {
    if (!field_) throw SpecError("polynomial without a field");
}

MultivariatePolynomial MultivariatePolynomial::constant(FieldPtr field, std::size_t arity, Elem c) {
    TermAccumulator acc(std::move(field), arity);
    const std::vector<std::uint32_t> zero(arity, 0);
    acc.add_reduced(zero, c);
    return std::move(acc).finish();
}

MultivariatePolynomial MultivariatePolynomial::variable(FieldPtr field, std::size_t arity, std::size_t index) {
    if (index >= arity) throw SpecError("variable index out of range");
    std::vector<std::uint32_t> e(arity, 0);
    e[index] = 1;
    return monomial(std::move(field), ExponentVector(std::move(e)), 1);
}

MultivariatePolynomial MultivariatePolynomial::monomial(FieldPtr field, const ExponentVector& exponents, Elem c) {
    TermAccumulator acc(std::move(field), exponents.arity());
    acc.add(exponents.entries(), c);
    return std::move(acc).finish();
}

MultivariatePolynomial MultivariatePolynomial::from_terms(FieldPtr field, std::size_t arity,
                                                          std::span<const Term> terms) {
    TermAccumulator acc(field, arity);
    for (const auto& term : terms) {
        if (term.coefficient >= field->q()) throw SpecError("coefficient out of range");
        acc.add(term.exponents.entries(), term.coefficient);
    }
    return std::move(acc).finish();
}

Elem MultivariatePolynomial::coefficient_of(std::span<const std::uint32_t> exponents) const {
    if (exponents.size() != arity_) throw SpecError("exponent arity mismatch");
    std::size_t lo = 0;
    std::size_t hi = coeffs_.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto c = graded_lex(this->exponents(mid), exponents);
        if (c == 0) return coeffs_[mid];
        if (c < 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return 0;
}

std::vector<Term> MultivariatePolynomial::terms() const {
    std::vector<Term> out;
    out.reserve(coeffs_.size());
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        const auto e = exponents(t);
        out.push_back({ExponentVector(std::vector<std::uint32_t>(e.begin(), e.end())), coeffs_[t]});
    }
    return out;
}

Degree MultivariatePolynomial::degree() const {
    if (coeffs_.empty()) return Degree::neg_inf();
    // Graded order keeps the highest-degree term last.
    const auto e = exponents(coeffs_.size() - 1);
    return static_cast<std::int64_t>(std::accumulate(e.begin(), e.end(), std::uint64_t{0}));
}

std::uint32_t MultivariatePolynomial::max_variable_degree() const {
    return exps_.empty() ? 0 : *std::max_element(exps_.begin(), exps_.end());
}

Elem MultivariatePolynomial::evaluate(std::span<const Elem> point) const {
    if (point.size() != arity_) {
        throw SpecError("point has " + std::to_string(point.size()) + " coordinates, polynomial arity is " +
                        std::to_string(arity_));
    }
    const Field& f = *field_;
    Elem sum = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        Elem prod = coeffs_[t];
        const auto e = exponents(t);
        for (std::size_t i = 0; i < arity_ && prod != 0; ++i) {
            if (e[i] != 0) prod = f.mul(prod, f.pow(point[i], e[i]));
        }
        sum = f.add(sum, prod);
    }
    return sum;
}

void MultivariatePolynomial::check_compatible(const MultivariatePolynomial& rhs) const {
    if (arity_ != rhs.arity_) {
        throw SpecError("polynomial arity mismatch: " + std::to_string(arity_) + " vs " + std::to_string(rhs.arity_));
    }
    if (!field_->same_as(*rhs.field_)) throw SpecError("polynomials over different fields");
}

MultivariatePolynomial MultivariatePolynomial::operator+(const MultivariatePolynomial& rhs) const {
    check_compatible(rhs);
    // Both operands are sorted; merge.
    MultivariatePolynomial out(field_, arity_);
    const Field& f = *field_;
    std::size_t i = 0;
    std::size_t j = 0;
    auto push = [&](std::span<const std::uint32_t> e, Elem c) {
        if (c == 0) return;
        out.exps_.insert(out.exps_.end(), e.begin(), e.end());
        out.coeffs_.push_back(c);
    };
    while (i < term_count() || j < rhs.term_count()) {
        if (j == rhs.term_count()) {
            push(exponents(i), coeffs_[i]);
            ++i;
        } else if (i == term_count()) {
            push(rhs.exponents(j), rhs.coeffs_[j]);
            ++j;
        } else {
            const auto c = graded_lex(exponents(i), rhs.exponents(j));
            if (c < 0) {
                push(exponents(i), coeffs_[i]);
                ++i;
            } else if (c > 0) {
                push(rhs.exponents(j), rhs.coeffs_[j]);
                ++j;
            } else {
                push(exponents(i), f.add(coeffs_[i], rhs.coeffs_[j]));
                ++i;
                ++j;
            }
        }
    }
    return out;
}

MultivariatePolynomial MultivariatePolynomial::operator-() const {
    MultivariatePolynomial out = *this;
    for (auto& c : out.coeffs_) c = field_->neg(c);
    return out;
}

MultivariatePolynomial MultivariatePolynomial::operator-(const MultivariatePolynomial& rhs) const {
    return *this + (-rhs);
}

MultivariatePolynomial MultivariatePolynomial::scaled(Elem c) const {
    if (c == 0) return MultivariatePolynomial(field_, arity_);
    MultivariatePolynomial out = *this;
    for (auto& x : out.coeffs_) x = field_->mul(x, c);
    return out;
}

MultivariatePolynomial MultivariatePolynomial::operator*(const MultivariatePolynomial& rhs) const {
    check_compatible(rhs);
    const Field& f = *field_;
    const std::uint32_t q = f.q();
    TermAccumulator acc(field_, arity_);
    std::vector<std::uint32_t> e(arity_);
    for (std::size_t s = 0; s < term_count(); ++s) {
        const auto a = exponents(s);
        for (std::size_t t = 0; t < rhs.term_count(); ++t) {
            const auto b = rhs.exponents(t);
            for (std::size_t i = 0; i < arity_; ++i) {
                const std::uint32_t sum = a[i] + b[i];
                e[i] = sum <= q - 1 ? sum : sum - (q - 1);
            }
            acc.add_reduced(e, f.mul(coeffs_[s], rhs.coeffs_[t]));
        }
    }
    return std::move(acc).finish();
}

MultivariatePolynomial MultivariatePolynomial::pow(std::uint64_t e) const {
    MultivariatePolynomial result = constant(field_, arity_, 1);
    MultivariatePolynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool MultivariatePolynomial::operator==(const MultivariatePolynomial& rhs) const {
    return arity_ == rhs.arity_ && field_->same_as(*rhs.field_) && exps_ == rhs.exps_ && coeffs_ == rhs.coeffs_;
}

std::string MultivariatePolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream out;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        if (t) out << " + ";
        const auto e = exponents(t);
        bool constant_term = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
        if (coeffs_[t] != 1 || constant_term) {
            const std::string c = field_->format(coeffs_[t]);
            out << (field_->r() > 1 ? "(" + c + ")" : c);
        }
        for (std::size_t i = 0; i < arity_; ++i) {
            if (e[i] == 0) continue;
            out << "x" << (i + 1);
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

MultivariatePolynomial poly_add(const MultivariatePolynomial& a, const MultivariatePolynomial& b) { return a + b; }
MultivariatePolynomial poly_mul(const MultivariatePolynomial& a, const MultivariatePolynomial& b) { return a * b; }
Elem evaluate(const MultivariatePolynomial& p, std::span<const Elem> point) { return p.evaluate(point); }

MultivariatePolynomial substitute(const MultivariatePolynomial& p, std::span<const MultivariatePolynomial> maps) {
    if (maps.size() != p.arity()) {
        throw SpecError("substitute: " + std::to_string(maps.size()) + " maps for arity " +
                        std::to_string(p.arity()));
    }
    if (maps.empty()) return p;
    const std::size_t target = maps.front().arity();
    for (const auto& g : maps) {
        if (g.arity() != target) throw SpecError("substitute: maps differ in arity");
        if (!g.field()->same_as(*p.field())) throw SpecError("substitute: maps over a different field");
    }
    // powers[i][e] = maps[i]^e, filled on demand.
    std::vector<std::vector<MultivariatePolynomial>> powers(maps.size());
    for (std::size_t i = 0; i < maps.size(); ++i) {
        powers[i].push_back(MultivariatePolynomial::constant(p.field(), target, 1));
    }
    auto power = [&](std::size_t i, std::uint32_t e) -> const MultivariatePolynomial& {
        while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * maps[i]);
        return powers[i][e];
    };
    MultivariatePolynomial out(p.field(), target);
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        const auto e = p.exponents(t);
        MultivariatePolynomial prod = MultivariatePolynomial::constant(p.field(), target, p.coefficient(t));
        for (std::size_t i = 0; i < e.size() && !prod.is_zero(); ++i) {
            if (e[i] != 0) prod = prod * power(i, e[i]);
        }
        out = out + prod;
    }
    return out;
}

UnivariatePolynomial::UnivariatePolynomial(FieldPtr field, std::vector<Elem> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw SpecError("polynomial without a field");
    for (auto c : coeffs_) {
        if (c >= field_->q()) throw SpecError("coefficient out of range");
    }
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Degree UnivariatePolynomial::degree() const {
    if (coeffs_.empty()) return Degree::neg_inf();
    return static_cast<std::int64_t>(coeffs_.size() - 1);
}

Elem UnivariatePolynomial::evaluate(Elem x) const {
    Elem acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
    return acc;
}

bool UnivariatePolynomial::operator==(const UnivariatePolynomial& rhs) const {
    return field_->same_as(*rhs.field_) && coeffs_ == rhs.coeffs_;
}

namespace {

// Truncated product of two T-polynomials with polynomial coefficients.
std::vector<MultivariatePolynomial> truncated_product(const std::vector<MultivariatePolynomial>& a,
                                                      const std::vector<MultivariatePolynomial>& b,
                                                      std::size_t n) {
    const auto& proto = a.front();
    std::vector<MultivariatePolynomial> out(n, MultivariatePolynomial(proto.field(), proto.arity()));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (b[j].is_zero()) continue;
            out[i + j] = out[i + j] + a[i] * b[j];
        }
    }
    return out;
}

}  // namespace

std::vector<MultivariatePolynomial> univariate_pow_expand(const FieldPtr& field, std::size_t m, std::uint64_t k,
                                                          std::size_t n) {
    if (k < 1 || m < 1 || n < 1) throw ContractError("univariate_pow_expand needs k, m, n >= 1");
    if ((m - 1) * k >= n) {
        throw ContractError("truncation loss: (m-1)k = " + std::to_string((m - 1) * k) + " >= n = " +
                            std::to_string(n));
    }
    const std::uint64_t q = field->q();
    std::vector<MultivariatePolynomial> result(n, MultivariatePolynomial(field, m));
    result[0] = MultivariatePolynomial::constant(field, m, 1);

    // k = sum_j b_j q^j, and p(T)^{q^j} = sum_i a_i T^{i q^j} on GF(q)-valued a_i.
    std::uint64_t rest = k;
    std::uint64_t stride = 1;
    while (rest > 0) {
        const std::uint64_t digit = rest % q;
        rest /= q;
        if (digit > 0) {
            std::vector<MultivariatePolynomial> factor(n, MultivariatePolynomial(field, m));
            for (std::size_t i = 0; i < m && i * stride < n; ++i) {
                factor[i * stride] = MultivariatePolynomial::variable(field, m, i);
            }
            for (std::uint64_t rep = 0; rep < digit; ++rep) result = truncated_product(result, factor, n);
        }
        if (rest > 0) {
            // Any further stride beyond n contributes only through the constant factor.
            stride = stride > n ? stride : stride * q;
        }
    }
    return result;
}

}  // namespace ffpm
