#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ffpm/bounds.hpp"
#include "ffpm/formats.hpp"
#include "ffpm/rankbound.hpp"
#include "ffpm/search.hpp"
#include "ffpm/transform.hpp"
#include "ffpm/witness.hpp"

namespace py = pybind11;
using namespace ffpm;

namespace {

// pybind11 holders cannot be const; fields are immutable either way.
using PyField = std::shared_ptr<Field>;

PyField wrap(FieldPtr f) { return std::const_pointer_cast<Field>(std::move(f)); }

py::object to_fraction(const Rational& x) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    const py::object num = py::int_(py::str(numerator(x).str()));
    const py::object den = py::int_(py::str(denominator(x).str()));
    return fraction(num, den);
}

Rational from_fraction(const py::object& x) {
    const py::object f = py::module_::import("fractions").attr("Fraction")(x);
    const std::string num = py::str(f.attr("numerator"));
    const std::string den = py::str(f.attr("denominator"));
    return Rational(BigInt(num), BigInt(den));
}

py::list term_list(const MultivariatePolynomial& p) {
    py::list out;
    for (std::size_t t = 0; t < p.term_count(); ++t) {
        const auto e = p.exponents(t);
        out.append(py::make_tuple(std::vector<std::uint32_t>(e.begin(), e.end()), p.coefficient(t)));
    }
    return out;
}

MultivariatePolynomial from_term_list(const PyField& field, std::size_t arity,
                                      const std::vector<std::pair<std::vector<std::uint32_t>, Elem>>& terms) {
    std::vector<Term> ts;
    for (const auto& [e, c] : terms) ts.push_back({ExponentVector(e), c});
    return MultivariatePolynomial::from_terms(field, arity, ts);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GF(q) transforms, witness polynomials, rank bounds and avoiding-set search";

    py::register_exception<Error>(m, "Error");
    py::register_exception<HypothesisError>(m, "HypothesisError");
    py::register_exception<GuardError>(m, "GuardError");

    py::class_<Field, PyField>(m, "Field")
        .def(py::init([](std::uint64_t q) { return wrap(Field::of_order(q)); }), py::arg("q"))
        .def_static("from_spec", [](const std::string& s) { return wrap(Field::make(FieldSpec::parse(s))); })
        .def_property_readonly("q", &Field::q)
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("r", &Field::r)
        .def_property_readonly("spec", [](const Field& f) { return f.spec().to_string(); })
        .def("add", &Field::add)
        .def("sub", &Field::sub)
        .def("neg", &Field::neg)
        .def("mul", &Field::mul)
        .def("inv", &Field::inv)
        .def("pow", &Field::pow)
        .def("format", &Field::format)
        .def("parse", [](const Field& f, const std::string& s) { return f.parse(s); })
        .def("elements", &Field::elements)
        .def("primitive_element", &Field::primitive_element)
        .def("__repr__", [](const Field& f) { return "Field(" + f.spec().to_string() + ")"; });

    m.def("digit_sum", &digit_sum, py::arg("k"), py::arg("q"));
    m.def("c_main", [](std::uint64_t k, std::uint64_t q) { return static_cast<double>(c_main(k, q)); },
          py::arg("k"), py::arg("q"));
    m.def("c_prime", [](std::uint64_t k, std::uint64_t q) { return static_cast<double>(c_prime(k, q)); },
          py::arg("k"), py::arg("q"));
    m.def(
        "hoeffding_bound",
        [](std::uint64_t q, std::uint64_t n, std::uint64_t mm, std::uint64_t d) {
            return static_cast<double>(hoeffding_bound(q, n, mm, d));
        },
        py::arg("q"), py::arg("n"), py::arg("m"), py::arg("d"));
    m.def(
        "exact_tail",
        [](std::uint64_t q, std::uint64_t n, const py::object& t) { return to_fraction(exact_tail(q, n, from_fraction(t))); },
        py::arg("q"), py::arg("n"), py::arg("t"));
    m.def(
        "count_at_most",
        [](std::uint64_t q, std::uint64_t n, const py::object& t) {
            return py::int_(py::str(count_at_most(q, n, from_fraction(t)).str()));
        },
        py::arg("q"), py::arg("n"), py::arg("t"));

    m.def("kernel_orthogonality", [](const PyField& f) { return kernel_orthogonality(*f); });
    m.def(
        "analyze",
        [](const PyField& f, std::size_t n, std::vector<Elem> values, bool direct) {
            const FunctionTable t(f, n, std::move(values));
            return term_list(analyze(t, direct ? AnalyzeMethod::direct : AnalyzeMethod::axis_factorized));
        },
        py::arg("field"), py::arg("n"), py::arg("values"), py::arg("direct") = false,
        "Reduced polynomial of a function table, as a list of (exponents, coefficient).");
    m.def(
        "synthesize",
        [](const PyField& f, std::size_t n, const std::vector<std::pair<std::vector<std::uint32_t>, Elem>>& terms) {
            return synthesize(from_term_list(f, n, terms)).values();
        },
        py::arg("field"), py::arg("n"), py::arg("terms"));

    py::class_<PolynomialMap>(m, "PolynomialMap")
        .def_static(
            "power", [](const PyField& f, std::size_t n, std::uint64_t k) { return kth_power_map(f, n, k); },
            py::arg("field"), py::arg("n"), py::arg("k"))
        .def_static(
            "composed",
            [](const PyField& f, std::size_t n, std::vector<Elem> coeffs) {
                return composed_map(f, n, UnivariatePolynomial(f, std::move(coeffs)));
            },
            py::arg("field"), py::arg("n"), py::arg("coefficients"))
        .def_static(
            "identity", [](const PyField& f, std::size_t n) { return PolynomialMap::identity(f, n); },
            py::arg("field"), py::arg("n"))
        .def_static("parse", [](const std::string& s) { return parse_map(s); })
        .def_property_readonly("source_arity", &PolynomialMap::source_arity)
        .def_property_readonly("target_arity", &PolynomialMap::target_arity)
        .def_property_readonly("degree", [](const PolynomialMap& p) { return p.degree().value(); })
        .def("__call__", [](const PolynomialMap& p, std::vector<Elem> a) { return p(a); })
        .def("image", &enumerate_image)
        .def("components", [](const PolynomialMap& p) {
            py::list out;
            for (const auto& c : p.components()) out.append(term_list(c));
            return out;
        })
        .def("format", &format_map);

    m.def(
        "build_witness",
        [](const PolynomialMap& phi) {
            const WitnessReport w = build_witness(phi);
            py::dict d;
            d["terms"] = term_list(w.polynomial);
            d["degree"] = w.polynomial.degree().is_neg_inf() ? py::object(py::none())
                                                              : py::object(py::int_(w.polynomial.degree().value()));
            d["fiber_count_at_zero"] = w.fiber_count_at_zero;
            d["map_degree"] = w.map_degree;
            d["degree_bound"] = to_fraction(w.degree_bound_rhs);
            d["degree_ok"] = w.degree_ok;
            d["support_checked"] = w.support_checked;
            d["support_ok"] = w.support_ok;
            d["nonzero_at_zero"] = w.nonzero_at_zero;
            d["all_hold"] = w.all_hold();
            return d;
        },
        py::arg("map"));

    m.def(
        "search",
        [](const PolynomialMap& phi, const std::string& mode, std::uint64_t budget, std::optional<std::uint64_t> seed) {
            const auto inst = AvoidanceInstance::from_map(phi);
            if (mode != "exhaustive" && mode != "greedy") throw SpecError("mode must be exhaustive or greedy");
            const SearchResult r =
                mode == "exhaustive" ? max_avoiding_exhaustive(inst, budget) : greedy_avoiding(inst, seed);
            py::dict d;
            d["best_set"] = r.best_set.indices();
            d["best_size"] = r.best_size;
            d["optimal"] = r.optimal;
            d["nodes_explored"] = r.nodes_explored;
            d["avoiding"] = verify_avoiding(r.best_set, inst);
            d["image_size"] = inst.image.size();
            d["forbidden_size"] = inst.forbidden.size();
            return d;
        },
        py::arg("map"), py::arg("mode") = "exhaustive", py::arg("budget") = 100'000'000,
        py::arg("seed") = py::none());

    m.def(
        "rank_certificate",
        [](const PolynomialMap& phi, std::vector<std::uint64_t> indices) {
            const WitnessReport w = build_witness(phi);
            const PointSet a(phi.field(), phi.target_arity(), std::move(indices));
            const RankCertificate cert = certify(w.polynomial, a);
            py::dict d;
            d["rank"] = cert.rank;
            d["half_degree_monomials"] = cert.monomials.size();
            d["bound"] = cert.bound();
            return d;
        },
        py::arg("map"), py::arg("indices"));
}
