#include "ffpm/witness.hpp"

#include <algorithm>
#include <cmath>

#include "ffpm/points.hpp"

namespace ffpm {

PolynomialMap::PolynomialMap(FieldPtr field, std::size_t source_arity, std::vector<MultivariatePolynomial> components)
    : field_(std::move(field)), m_(source_arity), components_(std::move(components)) {
    for (const auto& c : components_) {
        if (c.arity() != m_) throw SpecError("map component arity differs from source arity");
        if (!c.field()->same_as(*field_)) throw SpecError("map component over a different field");
        degree_ = std::max(degree_, c.degree());
    }
}

PolynomialMap PolynomialMap::identity(FieldPtr field, std::size_t n) {
    std::vector<MultivariatePolynomial> comps;
    comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) comps.push_back(MultivariatePolynomial::variable(field, n, i));
    return PolynomialMap(std::move(field), n, std::move(comps));
}

std::vector<Elem> PolynomialMap::operator()(std::span<const Elem> a) const {
    if (a.size() != m_) throw SpecError("map input arity mismatch");
    std::vector<Elem> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.evaluate(a));
    return out;
}

std::vector<std::uint64_t> PolynomialMap::image_indices() const {
    const std::uint32_t q = field_->q();
    const auto sources = space_size(q, m_, kMaxSourcePoints);
    std::vector<std::uint64_t> out(sources, 0);
    for (const auto& c : components_) {
        const FunctionTable table = synthesize(c);
        for (std::uint64_t a = 0; a < sources; ++a) out[a] = out[a] * q + table[a];
    }
    return out;
}

FiberCounts fiber_counting_function(const PolynomialMap& phi) {
    const FieldPtr& field = phi.field();
    const std::size_t n = phi.target_arity();
    FiberCounts result{FunctionTable(field, n), {}, 0};
    result.counts.assign(result.table.size(), 0);
    for (const auto x : phi.image_indices()) ++result.counts[x];

    std::uint64_t total = 0;
    for (std::size_t x = 0; x < result.counts.size(); ++x) {
        total += result.counts[x];
        result.table[x] = field->from_integer(static_cast<std::int64_t>(result.counts[x] % field->p()));
    }
    if (total != space_size(field->q(), phi.source_arity(), kMaxSourcePoints)) {
        throw ConsistencyError("fiber counts do not sum to q^m");
    }
    result.at_zero = result.counts[0];
    return result;
}

WitnessReport build_witness(const PolynomialMap& phi) {
    const FieldPtr& field = phi.field();
    const std::uint32_t p = field->p();
    const std::uint32_t q = field->q();
    const std::size_t n = phi.target_arity();
    const std::size_t m = phi.source_arity();

    FiberCounts fibers = fiber_counting_function(phi);
    if (fibers.at_zero % p == 0) {
        throw HypothesisError("fiber count at 0 = " + std::to_string(fibers.at_zero) + " ≡ 0 mod " +
                              std::to_string(p));
    }
    // A map with a nonzero-mod-p zero fiber cannot be constant.
    if (phi.degree() <= Degree(0)) throw ContractError("map degree must be at least 1");

    WitnessReport report{analyze(fibers.table), fibers.at_zero, 0, {}, false, false, false, false, std::nullopt};
    report.map_degree = static_cast<std::uint64_t>(phi.degree().value());
    report.degree_bound_rhs = witness_degree_bound(q, n, m, report.map_degree);

    const Degree deg = report.polynomial.degree();
    report.degree_ok = deg.is_neg_inf() || Rational(BigInt(deg.value())) <= report.degree_bound_rhs;

    const std::vector<Elem> origin(n, 0);
    report.nonzero_at_zero = report.polynomial.evaluate(origin) != 0;

    if (fibers.counts.size() <= kMaxSupportCheckPoints) {
        report.support_checked = true;
        const FunctionTable values = synthesize(report.polynomial);
        bool ok = values == fibers.table;
        std::vector<std::uint64_t> image;
        for (std::size_t x = 0; x < fibers.counts.size(); ++x) {
            if (fibers.counts[x] > 0) {
                image.push_back(x);
            } else if (values[x] != 0) {
                ok = false;
            }
        }
        report.support_ok = ok;
        report.image = std::move(image);
    }
    return report;
}

std::size_t power_map_source_arity(std::size_t n, std::uint64_t k) {
    if (n < 1 || k < 1) throw ContractError("need n >= 1 and k >= 1");
    return static_cast<std::size_t>((n - 1) / k + 1);
}

PolynomialMap kth_power_map(const FieldPtr& field, std::size_t n, std::uint64_t k) {
    if (k < 2) throw ContractError("kth_power_map needs k >= 2");
    const std::size_t m = power_map_source_arity(n, k);
    PolynomialMap phi(field, m, univariate_pow_expand(field, m, k, n));
    if (phi.degree() > Degree(static_cast<std::int64_t>(digit_sum(k, field->q())))) {
        throw ConsistencyError("power map degree exceeds the digit sum of k");
    }
    return phi;
}

std::uint64_t composed_degree_bound(const UnivariatePolynomial& f) {
    const std::uint64_t q = f.field()->q();
    std::uint64_t best = 0;
    for (std::size_t j = 1; j < f.coefficients().size(); ++j) {
        if (f.coefficient(j) != 0) best = std::max(best, digit_sum(j, q));
    }
    return best;
}

PolynomialMap composed_map(const FieldPtr& field, std::size_t n, const UnivariatePolynomial& f) {
    if (!f.field()->same_as(*field)) throw SpecError("F is over a different field");
    if (f.degree() < Degree(1)) throw ContractError("composed_map needs deg F >= 1");
    if (f.coefficient(0) != 0) throw ContractError("composed_map needs F(0) = 0");
    const auto k = static_cast<std::uint64_t>(f.degree().value());
    const std::size_t m = power_map_source_arity(n, k);

    std::vector<MultivariatePolynomial> comps(n, MultivariatePolynomial(field, m));
    for (std::uint64_t j = 1; j <= k; ++j) {
        const Elem c = f.coefficient(j);
        if (c == 0) continue;
        const auto powers = univariate_pow_expand(field, m, j, n);
        for (std::size_t i = 0; i < n; ++i) comps[i] = comps[i] + powers[i].scaled(c);
    }
    PolynomialMap phi(field, m, std::move(comps));

    const std::uint64_t q = field->q();
    const auto sup_bound = max_digit_sum_upto(k, q);
    const Real log_bound = static_cast<Real>(q - 1) * (1.0L + std::log(static_cast<Real>(k)) /
                                                                 std::log(static_cast<Real>(q)));
    const Degree d = phi.degree();
    if (d > Degree(static_cast<std::int64_t>(composed_degree_bound(f))) ||
        d > Degree(static_cast<std::int64_t>(sup_bound)) ||
        (!d.is_neg_inf() && static_cast<Real>(d.value()) > log_bound * (1.0L + 1e-15L))) {
        throw ConsistencyError("composed map degree exceeds its digit-sum bound");
    }
    return phi;
}

CoprimalityCheck check_coprimality(const UnivariatePolynomial& f) {
    if (f.coefficient(0) != 0) throw ContractError("check_coprimality needs F(0) = 0");
    const Field& field = *f.field();
    CoprimalityCheck out;
    for (Elem c = 0; c < field.q(); ++c) {
        if (f.evaluate(c) == 0) ++out.root_count;
    }
    out.ok = out.root_count % field.p() != 0;
    return out;
}

}  // namespace ffpm
