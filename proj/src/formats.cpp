#include "ffpm/formats.hpp"

#include <fstream>
#include <sstream>

#include "ffpm/points.hpp"
#include "ffpm/text.hpp"

namespace ffpm {

namespace {

std::vector<std::string_view> content_lines(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = text::content(text.substr(start, end - start));
        if (!line.empty()) out.push_back(line);
        start = end + 1;
    }
    return out;
}

// Parses `q=<q> n=<n>`.
std::pair<std::uint64_t, std::size_t> parse_q_n_header(std::string_view line) {
    std::optional<std::uint64_t> q;
    std::optional<std::size_t> n;
    for (const auto& token : text::split_ws(line)) {
        if (token.rfind("q=", 0) == 0) {
            q = text::parse_uint<std::uint64_t>(token.substr(2), "q");
        } else if (token.rfind("n=", 0) == 0) {
            n = text::parse_uint<std::size_t>(token.substr(2), "n");
        } else {
            throw ParseError("unexpected header token '" + token + "'");
        }
    }
    if (!q || !n) throw ParseError("header must be `q=<q> n=<n>`");
    return {*q, *n};
}

FieldPtr resolve_field(std::uint64_t q, const FieldPtr& field) {
    if (!field) return Field::of_order(q);
    if (field->q() != q) {
        throw ParseError("header q=" + std::to_string(q) + " does not match field of order " +
                         std::to_string(field->q()));
    }
    return field;
}

}  // namespace

std::string format_polynomial(const MultivariatePolynomial& p) {
    std::ostringstream out;
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        out << p.field()->format(p.coefficient(t)) << " :";
        for (const auto e : p.exponents(t)) out << ' ' << e;
        out << '\n';
    }
    return out.str();
}

MultivariatePolynomial parse_polynomial(const FieldPtr& field, std::string_view text,
                                        std::optional<std::size_t> arity) {
    std::vector<Term> terms;
    for (const auto line : content_lines(text)) {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("term line needs ':' in '" + std::string(line) + "'");
        const Elem c = field->parse(text::strip(line.substr(0, colon)));
        std::vector<std::uint32_t> alpha;
        for (const auto& tok : text::split_ws(line.substr(colon + 1))) {
            const auto e = text::parse_uint<std::uint32_t>(tok, "exponent");
            if (e > field->q() - 1) throw ParseError("exponent " + tok + " exceeds q-1");
            alpha.push_back(e);
        }
        if (!arity) arity = alpha.size();
        if (alpha.size() != *arity) throw ParseError("term arity differs from " + std::to_string(*arity));
        terms.push_back({ExponentVector(std::move(alpha)), c});
    }
    if (!arity) throw ParseError("cannot infer the arity of an empty polynomial");
    return MultivariatePolynomial::from_terms(field, *arity, terms);
}

std::string format_univariate(const UnivariatePolynomial& f) {
    std::ostringstream out;
    const auto& c = f.coefficients();
    for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[j] != 0) out << f.field()->format(c[j]) << " : " << j << '\n';
    }
    return out.str();
}

UnivariatePolynomial parse_univariate(const FieldPtr& field, std::string_view text) {
    std::vector<Elem> coeffs;
    for (const auto line : content_lines(text)) {
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError("term line needs ':' in '" + std::string(line) + "'");
        const Elem c = field->parse(text::strip(line.substr(0, colon)));
        const auto tokens = text::split_ws(line.substr(colon + 1));
        if (tokens.size() != 1) throw ParseError("univariate term needs exactly one exponent");
        const auto j = text::parse_uint<std::size_t>(tokens[0], "exponent");
        if (j > 4096) throw ParseError("exponent " + tokens[0] + " too large");
        if (coeffs.size() <= j) coeffs.resize(j + 1, 0);
        coeffs[j] = field->add(coeffs[j], c);
    }
    return UnivariatePolynomial(field, std::move(coeffs));
}

std::string format_table(const FunctionTable& f) {
    std::ostringstream out;
    out << "q=" << f.field()->q() << " n=" << f.arity() << '\n';
    for (const auto v : f.values()) out << f.field()->format(v) << '\n';
    return out.str();
}

FunctionTable parse_table(std::string_view text, const FieldPtr& field) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("function table is empty");
    const auto [q, n] = parse_q_n_header(lines.front());
    const FieldPtr f = resolve_field(q, field);
    std::vector<Elem> values;
    values.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) values.push_back(f->parse(lines[i]));
    return FunctionTable(f, n, std::move(values));
}

std::string format_map(const PolynomialMap& phi) {
    std::ostringstream out;
    out << phi.field()->spec().to_string() << '\n';
    out << phi.field()->q() << ' ' << phi.target_arity() << ' ' << phi.source_arity() << '\n';
    for (std::size_t i = 0; i < phi.target_arity(); ++i) {
        out << "component " << (i + 1) << '\n' << format_polynomial(phi.components()[i]);
    }
    return out.str();
}

PolynomialMap parse_map(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.size() < 2) throw ParseError("map file needs a field-spec line and a `q n m` line");
    const FieldPtr field = Field::make(FieldSpec::parse(lines[0]));
    const auto header = text::split_ws(lines[1]);
    if (header.size() != 3) throw ParseError("expected `q n m`");
    const auto q = text::parse_uint<std::uint64_t>(header[0], "q");
    const auto n = text::parse_uint<std::size_t>(header[1], "n");
    const auto m = text::parse_uint<std::size_t>(header[2], "m");
    if (q != field->q()) throw ParseError("q does not match the field spec");

    std::vector<std::string> blocks;
    for (std::size_t i = 2; i < lines.size(); ++i) {
        const auto tokens = text::split_ws(lines[i]);
        if (!tokens.empty() && tokens[0] == "component") {
            if (tokens.size() != 2 || text::parse_uint<std::size_t>(tokens[1], "component") != blocks.size() + 1) {
                throw ParseError("components must be numbered 1..n in order");
            }
            blocks.emplace_back();
        } else {
            if (blocks.empty()) throw ParseError("term before the first component header");
            blocks.back().append(lines[i]).push_back('\n');
        }
    }
    if (blocks.size() != n) throw ParseError("expected " + std::to_string(n) + " components");
    std::vector<MultivariatePolynomial> comps;
    comps.reserve(n);
    for (const auto& b : blocks) comps.push_back(parse_polynomial(field, b, m));
    return PolynomialMap(field, m, std::move(comps));
}

std::string format_point_set(const PointSet& a) {
    std::ostringstream out;
    const Field& f = *a.field();
    out << "q=" << f.q() << " n=" << a.arity() << '\n';
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto pt = a.point(i);
        for (std::size_t c = 0; c < pt.size(); ++c) out << (c ? " " : "") << f.format(pt[c]);
        out << '\n';
    }
    return out.str();
}

PointSet parse_point_set(std::string_view text, const FieldPtr& field) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw ParseError("set file is empty");
    const auto [q, n] = parse_q_n_header(lines.front());
    const FieldPtr f = resolve_field(q, field);
    std::vector<std::vector<Elem>> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto tokens = text::split_ws(lines[i]);
        if (tokens.size() != n) throw ParseError("point needs " + std::to_string(n) + " coordinates");
        std::vector<Elem> pt;
        for (const auto& t : tokens) pt.push_back(f->parse(t));
        points.push_back(std::move(pt));
    }
    return PointSet::from_points(f, n, points);
}

std::string format_matrix(const GfMatrix& m) {
    std::ostringstream out;
    const Field& f = *m.field();
    out << m.rows() << ' ' << m.cols() << ' ' << f.q() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << f.format(m(i, j));
        out << '\n';
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << contents;
}

}  // namespace ffpm
