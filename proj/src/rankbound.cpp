#include "ffpm/rankbound.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "ffpm/points.hpp"
#include "ffpm/transform.hpp"

namespace ffpm {

PointSet::PointSet(FieldPtr field, std::size_t arity, std::vector<std::uint64_t> indices)
    : field_(std::move(field)), arity_(arity), indices_(std::move(indices)) {
    const auto total = space_size(field_->q(), arity_);
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw SpecError("point set contains a repeated point");
    }
    if (!indices_.empty() && indices_.back() >= total) throw SpecError("point outside GF(q)^n");
}

PointSet PointSet::from_points(FieldPtr field, std::size_t arity, const std::vector<std::vector<Elem>>& points) {
    std::vector<std::uint64_t> idx;
    idx.reserve(points.size());
    for (const auto& pt : points) {
        if (pt.size() != arity) throw SpecError("point arity mismatch");
        for (auto c : pt) {
            if (c >= field->q()) throw SpecError("coordinate out of range");
        }
        idx.push_back(point_index(field->q(), pt));
    }
    return PointSet(std::move(field), arity, std::move(idx));
}

std::vector<Elem> PointSet::point(std::size_t i) const { return point_from_index(field_->q(), arity_, indices_[i]); }

GfMatrix::GfMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

GfMatrix GfMatrix::operator*(const GfMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw SpecError("matrix shape mismatch");
    const Field& f = *field_;
    GfMatrix out(field_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Elem a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Elem b = rhs(k, j);
                if (b != 0) out(i, j) = f.add(out(i, j), f.mul(a, b));
            }
        }
    }
    return out;
}

GfMatrix GfMatrix::operator+(const GfMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw SpecError("matrix shape mismatch");
    GfMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_->add(data_[i], rhs.data_[i]);
    return out;
}

GfMatrix GfMatrix::transposed() const {
    GfMatrix out(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

bool GfMatrix::operator==(const GfMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && field_->same_as(*rhs.field_) && data_ == rhs.data_;
}

GfMatrix difference_matrix(const MultivariatePolynomial& p, const PointSet& a) {
    if (p.arity() != a.arity()) throw SpecError("polynomial and point set differ in arity");
    if (!p.field()->same_as(*a.field())) throw SpecError("polynomial and point set over different fields");
    const Field& f = *p.field();
    const std::uint32_t q = f.q();
    const std::size_t n = a.arity();
    const std::size_t size = a.size();
    GfMatrix m(p.field(), size, size);

    std::vector<std::vector<Elem>> pts(size);
    for (std::size_t i = 0; i < size; ++i) pts[i] = a.point(i);

    // Tabulate P once when the space is small, otherwise evaluate per entry.
    std::optional<FunctionTable> table;
    if (space_size(q, n) <= kMaxTablePoints) table.emplace(synthesize(p));
    std::vector<Elem> diff(n);
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            for (std::size_t c = 0; c < n; ++c) diff[c] = f.sub(pts[i][c], pts[j][c]);
            m(i, j) = table ? (*table)[point_index(q, diff)] : p.evaluate(diff);
        }
    }
    return m;
}

namespace {

std::size_t rank_gf2(const GfMatrix& m) {
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j)) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
        }
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        const std::size_t w = col / 64;
        const std::uint64_t bit = std::uint64_t{1} << (col % 64);
        std::size_t pivot = rank;
        while (pivot < rows.size() && !(rows[pivot][w] & bit)) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            if (rows[i][w] & bit) {
                for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[rank][k];
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank_gf(const GfMatrix& m) {
    const Field& f = *m.field();
    if (f.q() == 2) return rank_gf2(m);
    GfMatrix a = m;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pivot = rank;
        while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != rank) {
            for (std::size_t j = col; j < a.cols(); ++j) std::swap(a(pivot, j), a(rank, j));
        }
        const Elem scale = f.inv(a(rank, col));
        for (std::size_t j = col; j < a.cols(); ++j) a(rank, j) = f.mul(a(rank, j), scale);
        for (std::size_t i = rank + 1; i < a.rows(); ++i) {
            const Elem factor = a(i, col);
            if (factor == 0) continue;
            for (std::size_t j = col; j < a.cols(); ++j) {
                a(i, j) = f.sub(a(i, j), f.mul(factor, a(rank, j)));
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<ExponentVector> half_degree_monomials(std::uint32_t q, std::size_t n, Degree deg) {
    std::vector<ExponentVector> out;
    if (deg.is_neg_inf()) return out;
    const std::int64_t limit2 = deg.value();
    std::vector<std::uint32_t> gamma(n, 0);
    // Depth-first enumeration with the running total pruned against the limit.
    auto recurse = [&](auto&& self, std::size_t i, std::int64_t total) -> void {
        if (i == n) {
            out.emplace_back(gamma);
            return;
        }
        for (std::uint32_t e = 0; e < q && 2 * (total + e) <= limit2; ++e) {
            gamma[i] = e;
            self(self, i + 1, total + e);
        }
        gamma[i] = 0;
    };
    recurse(recurse, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// C(a, j) mod p by Lucas' theorem.
std::uint64_t binomial_mod_p(std::uint64_t a, std::uint64_t j, std::uint64_t p) {
    std::uint64_t result = 1;
    while (a > 0 || j > 0) {
        const std::uint64_t ad = a % p;
        const std::uint64_t jd = j % p;
        if (jd > ad) return 0;
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < jd; ++i) c = c * (ad - i) / (i + 1);
        result = result * (c % p) % p;
        a /= p;
        j /= p;
    }
    return result;
}

}  // namespace

MultivariatePolynomial shifted_sum(const MultivariatePolynomial& p) {
    const Field& f = *p.field();
    const std::size_t n = p.arity();
    TermAccumulator acc(p.field(), 2 * n);
    std::vector<std::uint32_t> e(2 * n, 0);
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        const auto alpha = p.exponents(t);
        // (x_i + y_i)^{alpha_i} = sum_j C(alpha_i, j) x_i^j y_i^{alpha_i - j}; no reduction needed.
        auto recurse = [&](auto&& self, std::size_t i, Elem coeff) -> void {
            if (coeff == 0) return;
            if (i == n) {
                acc.add_reduced(e, coeff);
                return;
            }
            for (std::uint32_t j = 0; j <= alpha[i]; ++j) {
                e[i] = j;
                e[n + i] = alpha[i] - j;
                const Elem b = f.from_integer(static_cast<std::int64_t>(binomial_mod_p(alpha[i], j, f.p())));
                self(self, i + 1, f.mul(coeff, b));
            }
        };
        recurse(recurse, 0, p.coefficient(t));
    }
    return std::move(acc).finish();
}

ClpSplit clp_split(const MultivariatePolynomial& p) {
    const FieldPtr& field = p.field();
    const std::size_t n = p.arity();
    const Degree deg = p.degree();
    ClpSplit split{half_degree_monomials(field->q(), n, deg), {}, {}, shifted_sum(p)};
    const std::size_t s = split.monomials.size();
    std::vector<TermAccumulator> x_acc(s, TermAccumulator(field, n));
    std::vector<TermAccumulator> y_acc(s, TermAccumulator(field, n));
    auto locate = [&](std::span<const std::uint32_t> gamma) {
        const auto it = std::lower_bound(split.monomials.begin(), split.monomials.end(), gamma,
                                         [](const ExponentVector& a, std::span<const std::uint32_t> b) {
                                             return graded_lex(a.entries(), b) < 0;
                                         });
        if (it == split.monomials.end() || !std::equal(gamma.begin(), gamma.end(), it->entries().begin())) {
            throw ConsistencyError("split monomial outside S");
        }
        return static_cast<std::size_t>(it - split.monomials.begin());
    };
    const std::int64_t limit2 = deg.is_neg_inf() ? -1 : deg.value();
    for (std::size_t t = 0; t < split.shifted.term_count(); ++t) {
        const auto e = split.shifted.exponents(t);
        const auto beta = e.subspan(0, n);
        const auto delta = e.subspan(n, n);
        std::int64_t bx = 0;
        for (auto v : beta) bx += v;
        if (2 * bx <= limit2) {
            x_acc[locate(beta)].add_reduced(delta, split.shifted.coefficient(t));
        } else {
            y_acc[locate(delta)].add_reduced(beta, split.shifted.coefficient(t));
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        split.x_side.push_back(std::move(x_acc[i]).finish());
        split.y_side.push_back(std::move(y_acc[i]).finish());
    }
    return split;
}

Elem ClpSplit::evaluate(std::span<const Elem> x, std::span<const Elem> y) const {
    const Field& f = *shifted.field();
    Elem sum = 0;
    for (std::size_t i = 0; i < monomials.size(); ++i) {
        const auto gamma = monomials[i].entries();
        const auto mono = [&](std::span<const Elem> v) {
            Elem prod = 1;
            for (std::size_t c = 0; c < v.size(); ++c) prod = f.mul(prod, f.pow(v[c], gamma[c]));
            return prod;
        };
        if (!x_side[i].is_zero()) sum = f.add(sum, f.mul(mono(x), x_side[i].evaluate(y)));
        if (!y_side[i].is_zero()) sum = f.add(sum, f.mul(mono(y), y_side[i].evaluate(x)));
    }
    return sum;
}

RankCertificate certify(const MultivariatePolynomial& p, const PointSet& a) {
    const FieldPtr& field = p.field();
    const Field& f = *field;
    const std::size_t size = a.size();
    const std::size_t n = a.arity();
    GfMatrix m = difference_matrix(p, a);
    ClpSplit split = clp_split(p);
    const std::size_t s = split.monomials.size();

    RankCertificate cert{rank_gf(m), split.monomials, GfMatrix(field, size, s), GfMatrix(field, s, size),
                         GfMatrix(field, size, s), GfMatrix(field, s, size), m};
    // M[a][a'] = P(x + y) at x = a, y = -a'.
    std::vector<Elem> neg(n);
    for (std::size_t i = 0; i < size; ++i) {
        const auto pt = a.point(i);
        for (std::size_t c = 0; c < n; ++c) neg[c] = f.neg(pt[c]);
        for (std::size_t g = 0; g < s; ++g) {
            const auto gamma = split.monomials[g].entries();
            Elem at_pt = 1;
            Elem at_neg = 1;
            for (std::size_t c = 0; c < n; ++c) {
                at_pt = f.mul(at_pt, f.pow(pt[c], gamma[c]));
                at_neg = f.mul(at_neg, f.pow(neg[c], gamma[c]));
            }
            cert.x_left(i, g) = at_pt;
            cert.x_right(g, i) = split.x_side[g].evaluate(neg);
            cert.y_left(i, g) = split.y_side[g].evaluate(pt);
            cert.y_right(g, i) = at_neg;
        }
    }
    if (!(cert.x_left * cert.x_right + cert.y_left * cert.y_right == m)) {
        throw ConsistencyError("low-rank split does not reproduce the difference matrix");
    }
    if (cert.rank > cert.bound()) throw ConsistencyError("rank exceeds twice the half-degree monomial count");
    return cert;
}

}  // namespace ffpm
