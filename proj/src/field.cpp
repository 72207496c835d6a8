#include "ffpm/field.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "ffpm/text.hpp"

namespace ffpm {

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over GF(p).
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = std::uint64_t{lead} * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly digits_of(std::uint64_t value, std::uint32_t p, std::size_t len) {
    Poly d(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        d[i] = static_cast<std::uint32_t>(value % p);
        value /= p;
    }
    return d;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly) {
    Poly f(poly.begin(), poly.end());
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    // Make f monic so that divisibility by monic candidates is a remainder test.
    std::uint32_t lead = f.back();
    std::uint32_t lead_inv = 1;
    for (std::uint32_t c = 1; c < p; ++c) {
        if (std::uint64_t{lead} * c % p == 1) lead_inv = c;
    }
    for (auto& c : f) c = static_cast<std::uint32_t>(std::uint64_t{c} * lead_inv % p);

    for (std::size_t dg = 1; dg <= deg / 2; ++dg) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < dg; ++i) count *= p;
        for (std::uint64_t low = 0; low < count; ++low) {
            Poly g = digits_of(low, p, dg);
            g.push_back(1);
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> lowest_irreducible(std::uint32_t p, std::uint32_t r) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < r; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
        Poly g = digits_of(low, p, r);
        g.push_back(1);
        if (is_irreducible(p, g)) return g;
    }
    throw SpecError("no irreducible polynomial found");  // unreachable for prime p
}

std::uint32_t FieldSpec::q() const {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) return 0;
    }
    return static_cast<std::uint32_t>(q);
}

FieldSpec FieldSpec::prime(std::uint32_t p) { return FieldSpec{p, 1, {}}; }

FieldSpec FieldSpec::with_default_modulus(std::uint32_t p, std::uint32_t r) {
    if (!is_prime(p)) throw SpecError("p = " + std::to_string(p) + " is not prime");
    if (r == 0) throw SpecError("r must be positive");
    FieldSpec spec{p, r, {}};
    if (spec.q() == 0) throw SpecError("field order exceeds 2^20");
    if (r > 1) spec.modulus = lowest_irreducible(p, r);
    return spec;
}

FieldSpec FieldSpec::for_order(std::uint64_t q) {
    if (q < 2 || q > kMaxFieldOrder) {
        throw SpecError("field order " + std::to_string(q) + " outside [2, 2^20]");
    }
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t r = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++r;
    }
    if (rest != 1) throw SpecError(std::to_string(q) + " is not a prime power");
    return with_default_modulus(static_cast<std::uint32_t>(p), r);
}

FieldSpec FieldSpec::parse(std::string_view text) {
    FieldSpec spec{0, 1, {}};
    bool have_p = false;
    bool have_modulus = false;
    for (const auto& token : text::split_ws(text)) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ParseError("field spec: expected key=value, got '" + token + "'");
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "p") {
            spec.p = text::parse_uint<std::uint32_t>(value, "p");
            have_p = true;
        } else if (key == "r") {
            spec.r = text::parse_uint<std::uint32_t>(value, "r");
        } else if (key == "modulus") {
            spec.modulus.clear();
            for (const auto& c : text::split(value, ',')) {
                spec.modulus.push_back(text::parse_uint<std::uint32_t>(c, "modulus coefficient"));
            }
            have_modulus = true;
        } else {
            throw ParseError("field spec: unknown key '" + key + "'");
        }
    }
    if (!have_p) throw ParseError("field spec: missing p");
    if (!have_modulus && spec.r > 1) {
        return with_default_modulus(spec.p, spec.r);
    }
    return spec;
}

std::string FieldSpec::to_string() const {
    std::ostringstream out;
    out << "p=" << p << " r=" << r;
    if (r > 1) {
        out << " modulus=";
        for (std::size_t i = 0; i < modulus.size(); ++i) out << (i ? "," : "") << modulus[i];
    }
    return out.str();
}

FieldPtr Field::make(FieldSpec spec) {
    if (!is_prime(spec.p)) throw SpecError("p = " + std::to_string(spec.p) + " is not prime");
    if (spec.r == 0) throw SpecError("r must be positive");
    if (spec.q() == 0) throw SpecError("field order exceeds 2^20");
    if (spec.r == 1) {
        if (!spec.modulus.empty()) throw SpecError("prime field takes no modulus");
    } else {
        if (spec.modulus.size() != spec.r + 1) {
            throw SpecError("modulus must have degree r = " + std::to_string(spec.r));
        }
        for (auto c : spec.modulus) {
            if (c >= spec.p) throw SpecError("modulus coefficient out of range");
        }
        if (spec.modulus.back() != 1) throw SpecError("modulus must be monic");
        if (!is_irreducible(spec.p, spec.modulus)) {
            throw SpecError("modulus " + spec.to_string() + " is reducible over GF(" +
                            std::to_string(spec.p) + ")");
        }
    }
    return FieldPtr(new Field(std::move(spec)));
}

FieldPtr Field::of_order(std::uint64_t q) { return make(FieldSpec::for_order(q)); }

Field::Field(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.q()) {
    const std::uint32_t p = spec_.p;
    neg_table_.resize(q_);
    for (Elem a = 0; a < q_; ++a) {
        Elem out = 0;
        std::uint32_t scale = 1;
        Elem rest = a;
        for (std::uint32_t i = 0; i < spec_.r; ++i) {
            const std::uint32_t c = rest % p;
            rest /= p;
            out += ((p - c) % p) * scale;
            scale *= p;
        }
        neg_table_[a] = out;
    }
    if (spec_.r > 1 && p != 2 && q_ <= 512) {
        add_table_.resize(std::size_t{q_} * q_);
        for (Elem a = 0; a < q_; ++a) {
            for (Elem b = 0; b < q_; ++b) {
                Elem out = 0;
                std::uint32_t scale = 1;
                Elem x = a;
                Elem y = b;
                for (std::uint32_t i = 0; i < spec_.r; ++i) {
                    out += ((x % p + y % p) % p) * scale;
                    x /= p;
                    y /= p;
                    scale *= p;
                }
                add_table_[std::size_t{a} * q_ + b] = out;
            }
        }
    }

    // A generator is an element whose order is not a proper divisor of q - 1.
    const std::uint32_t order = q_ - 1;
    std::vector<std::uint32_t> prime_factors;
    {
        std::uint32_t rest = order;
        for (std::uint32_t d = 2; d * d <= rest; ++d) {
            if (rest % d == 0) prime_factors.push_back(d);
            while (rest % d == 0) rest /= d;
        }
        if (rest > 1) prime_factors.push_back(rest);
    }
    auto slow_pow = [this](Elem a, std::uint64_t e) {
        Elem result = 1;
        while (e) {
            if (e & 1) result = poly_mul(result, a);
            a = poly_mul(a, a);
            e >>= 1;
        }
        return result;
    };
    generator_ = 0;
    for (Elem g = 1; g < q_ && generator_ == 0; ++g) {
        bool ok = true;
        for (const auto l : prime_factors) {
            if (slow_pow(g, order / l) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) generator_ = g;
    }
    if (generator_ == 0) throw ConsistencyError("multiplicative group has no generator");
    std::vector<Elem> powers(order);
    powers[0] = 1;
    for (std::uint32_t i = 1; i < order; ++i) powers[i] = poly_mul(powers[i - 1], generator_);
    exp_.resize(2 * std::size_t{order});
    log_.assign(q_, 0);
    for (std::uint32_t i = 0; i < order; ++i) {
        exp_[i] = powers[i];
        exp_[i + order] = powers[i];
        log_[powers[i]] = i;
    }
}

Elem Field::poly_mul(Elem a, Elem b) const {
    const std::uint32_t p = spec_.p;
    if (spec_.r == 1) return static_cast<Elem>(std::uint64_t{a} * b % p);
    const auto x = digits_of(a, p, spec_.r);
    const auto y = digits_of(b, p, spec_.r);
    Poly prod(2 * spec_.r - 1, 0);
    for (std::uint32_t i = 0; i < spec_.r; ++i) {
        for (std::uint32_t j = 0; j < spec_.r; ++j) {
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p);
        }
    }
    const Poly rem = poly_rem(std::move(prod), spec_.modulus, p);
    Elem out = 0;
    for (std::size_t i = rem.size(); i-- > 0;) out = out * p + rem[i];
    return out;
}

Elem Field::add(Elem a, Elem b) const {
    if (spec_.r == 1) {
        const Elem s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    if (spec_.p == 2) return a ^ b;
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    const std::uint32_t p = spec_.p;
    Elem out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < spec_.r; ++i) {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

Elem Field::neg(Elem a) const { return neg_table_[a]; }

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (spec_.r == 1) return static_cast<Elem>(std::uint64_t{a} * b % q_);
    return exp_[log_[a] + log_[b]];
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw DivisionByZero();
    if (a == 1) return 1;
    return exp_[(q_ - 1) - log_[a]];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t order = q_ - 1;
    return exp_[static_cast<std::size_t>((std::uint64_t{log_[a]} * (e % order)) % order)];
}

Elem Field::from_integer(std::int64_t n) const {
    const std::int64_t p = spec_.p;
    return static_cast<Elem>(((n % p) + p) % p);
}

std::vector<std::uint32_t> Field::coefficients(Elem a) const { return digits_of(a, spec_.p, spec_.r); }

Elem Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() != spec_.r) {
        throw SpecError("expected " + std::to_string(spec_.r) + " coefficients");
    }
    Elem out = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] >= spec_.p) throw SpecError("coefficient out of range");
        out = out * spec_.p + coeffs[i];
    }
    return out;
}

std::vector<Elem> Field::elements() const {
    std::vector<Elem> out(q_);
    for (Elem a = 0; a < q_; ++a) out[a] = a;
    return out;
}

std::string Field::format(Elem a) const {
    if (spec_.r == 1) return std::to_string(a);
    std::string out;
    const auto c = coefficients(a);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c[i]);
    }
    return out;
}

Elem Field::parse(std::string_view text) const {
    const auto parts = text::split(text, ',');
    if (parts.size() != spec_.r) {
        throw ParseError("element '" + std::string(text) + "' needs " + std::to_string(spec_.r) +
                         " coefficients");
    }
    std::vector<std::uint32_t> coeffs;
    coeffs.reserve(parts.size());
    for (const auto& s : parts) {
        const auto c = text::parse_uint<std::uint32_t>(s, "coefficient");
        if (c >= spec_.p) throw ParseError("coefficient " + s + " not below p");
        coeffs.push_back(c);
    }
    return from_coefficients(coeffs);
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_) throw SpecError("field element without a field");
    if (value_ >= field_->q()) throw SpecError("element index out of range");
}

const Field& FieldElement::common(const FieldElement& rhs) const {
    if (!field_->same_as(*rhs.field_)) {
        throw SpecError("operands belong to different fields: " + field_->spec().to_string() + " vs " +
                        rhs.field_->spec().to_string());
    }
    return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    return {field_, common(rhs).add(value_, rhs.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    return {field_, common(rhs).sub(value_, rhs.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    return {field_, common(rhs).mul(value_, rhs.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& rhs) const {
    return {field_, common(rhs).div(value_, rhs.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }

bool FieldElement::operator==(const FieldElement& rhs) const {
    return field_->same_as(*rhs.field_) && value_ == rhs.value_;
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
FieldElement inv(const FieldElement& a) { return a.inv(); }
FieldElement pow(const FieldElement& a, std::uint64_t e) { return a.pow(e); }

std::vector<FieldElement> enumerate(const FieldPtr& field) {
    std::vector<FieldElement> out;
    out.reserve(field->q());
    for (Elem a = 0; a < field->q(); ++a) out.emplace_back(field, a);
    return out;
}

}  // namespace ffpm
