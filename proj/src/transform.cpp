#include "ffpm/transform.hpp"

#include "ffpm/parallel.hpp"
#include "ffpm/points.hpp"

namespace ffpm {

FunctionTable::FunctionTable(FieldPtr field, std::size_t arity) : field_(std::move(field)), arity_(arity) {
    values_.assign(space_size(field_->q(), arity_, kMaxTablePoints), 0);
}

FunctionTable::FunctionTable(FieldPtr field, std::size_t arity, std::vector<Elem> values)
    : field_(std::move(field)), arity_(arity), values_(std::move(values)) {
    const auto expected = space_size(field_->q(), arity_, kMaxTablePoints);
    if (values_.size() != expected) {
        throw SpecError("function table needs " + std::to_string(expected) + " values, got " +
                        std::to_string(values_.size()));
    }
    for (const auto v : values_) {
        if (v >= field_->q()) throw SpecError("table value out of range");
    }
}

Elem FunctionTable::at(std::span<const Elem> point) const {
    if (point.size() != arity_) throw SpecError("point arity mismatch");
    return values_[point_index(field_->q(), point)];
}

bool FunctionTable::operator==(const FunctionTable& rhs) const {
    return arity_ == rhs.arity_ && field_->same_as(*rhs.field_) && values_ == rhs.values_;
}

Elem sigma(const Field& field, std::uint32_t a, Elem x) {
    const std::uint32_t q = field.q();
    if (a > q - 1) throw ContractError("sigma index " + std::to_string(a) + " outside 0..q-1");
    if (a == 0) return x == 0 ? 1 : 0;
    return field.neg(field.pow(x, q - 1 - a));
}

std::vector<std::vector<Elem>> kernel_orthogonality(const Field& field) {
    const std::uint32_t q = field.q();
    std::vector<std::vector<Elem>> s(q, std::vector<Elem>(q, 0));
    for (std::uint32_t a = 0; a < q; ++a) {
        for (std::uint32_t b = 0; b < q; ++b) {
            Elem sum = 0;
            for (Elem x = 0; x < q; ++x) sum = field.add(sum, field.mul(field.pow(x, b), sigma(field, a, x)));
            s[a][b] = sum;
        }
    }
    return s;
}

namespace {

// In-place application of a q x q matrix along every axis:
// out[.., i, ..] = sum_j kernel[i][j] * in[.., j, ..].
void axis_passes(const Field& field, std::size_t arity, std::vector<Elem>& data,
                 const std::vector<Elem>& kernel) {
    const std::size_t q = field.q();
    const std::size_t total = data.size();
    std::size_t stride = total;
    for (std::size_t axis = 0; axis < arity; ++axis) {
        stride /= q;
        const std::size_t block = stride * q;
        const std::size_t fibers = total / q;
        const std::size_t s = stride;
        parallel_for(fibers, [&, s, block](std::size_t begin, std::size_t end) {
            std::vector<Elem> in(q);
            for (std::size_t fiber = begin; fiber < end; ++fiber) {
                const std::size_t base = (fiber / s) * block + fiber % s;
                for (std::size_t j = 0; j < q; ++j) in[j] = data[base + j * s];
                for (std::size_t i = 0; i < q; ++i) {
                    Elem acc = 0;
                    const Elem* row = kernel.data() + i * q;
                    for (std::size_t j = 0; j < q; ++j) {
                        if (row[j] != 0 && in[j] != 0) acc = field.add(acc, field.mul(row[j], in[j]));
                    }
                    data[base + i * s] = acc;
                }
            }
        });
    }
}

}  // namespace

std::vector<Elem> dense_coefficients(const MultivariatePolynomial& p) {
    const std::uint32_t q = p.field()->q();
    std::vector<Elem> out(space_size(q, p.arity(), kMaxTablePoints), 0);
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        out[point_index(q, p.exponents(t))] = p.coefficient(t);
    }
    return out;
}

MultivariatePolynomial from_dense_coefficients(const FieldPtr& field, std::size_t arity,
                                               std::span<const Elem> coeffs) {
    const std::uint32_t q = field->q();
    TermAccumulator acc(field, arity);
    std::vector<std::uint32_t> alpha(arity);
    for (std::uint64_t index = 0; index < coeffs.size(); ++index) {
        if (coeffs[index] == 0) continue;
        point_from_index(q, index, alpha);
        acc.add_reduced(alpha, coeffs[index]);
    }
    return std::move(acc).finish();
}

MultivariatePolynomial analyze(const FunctionTable& f, AnalyzeMethod method) {
    const Field& field = *f.field();
    const std::uint32_t q = field.q();
    const std::size_t n = f.arity();
    if (method == AnalyzeMethod::axis_factorized) {
        std::vector<Elem> kernel(std::size_t{q} * q);
        for (std::uint32_t a = 0; a < q; ++a) {
            for (Elem x = 0; x < q; ++x) kernel[std::size_t{a} * q + x] = sigma(field, a, x);
        }
        std::vector<Elem> data = f.values();
        axis_passes(field, n, data, kernel);
        return from_dense_coefficients(f.field(), n, data);
    }

    // f~(alpha) = sum_x f(x) prod_i sigma_{alpha_i}(x_i).
    const std::size_t total = f.size();
    std::vector<Elem> coeffs(total, 0);
    std::vector<Elem> alpha(n);
    std::vector<Elem> x(n);
    for (std::size_t a = 0; a < total; ++a) {
        point_from_index(q, a, alpha);
        Elem sum = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (f[i] == 0) continue;
            point_from_index(q, i, x);
            Elem prod = f[i];
            for (std::size_t j = 0; j < n && prod != 0; ++j) prod = field.mul(prod, sigma(field, alpha[j], x[j]));
            sum = field.add(sum, prod);
        }
        coeffs[a] = sum;
    }
    return from_dense_coefficients(f.field(), n, coeffs);
}

FunctionTable synthesize(const MultivariatePolynomial& p) {
    const Field& field = *p.field();
    const std::uint32_t q = field.q();
    // Vandermonde V[x][a] = x^a along each axis.
    std::vector<Elem> kernel(std::size_t{q} * q);
    for (Elem x = 0; x < q; ++x) {
        for (std::uint32_t a = 0; a < q; ++a) kernel[std::size_t{x} * q + a] = field.pow(x, a);
    }
    std::vector<Elem> data = dense_coefficients(p);
    axis_passes(field, p.arity(), data, kernel);
    return FunctionTable(p.field(), p.arity(), std::move(data));
}

}  // namespace ffpm
