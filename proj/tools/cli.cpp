#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "ffpm/bounds.hpp"
#include "ffpm/formats.hpp"
#include "ffpm/points.hpp"
#include "ffpm/rankbound.hpp"
#include "ffpm/search.hpp"
#include "ffpm/transform.hpp"
#include "ffpm/witness.hpp"

namespace ffpm::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ordered key/value rows printed either aligned or as key=value lines.
class Report {
public:
    void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
    void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    template <typename T>
        requires std::is_integral_v<T>
    void add(std::string key, T value) {
        add(std::move(key), std::to_string(value));
    }

    void print(std::ostream& out, bool machine) const {
        std::size_t width = 0;
        for (const auto& [k, v] : rows_) width = std::max(width, k.size());
        for (const auto& [k, v] : rows_) {
            if (machine) {
                out << k << '=' << v << '\n';
            } else {
                out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
            }
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> rows_;
};

std::string real_str(Real x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

std::string big_str(const BigInt& x) { return x.str(); }
std::string rational_str(const Rational& x) { return x.str(); }

struct FieldOpts {
    std::optional<std::uint64_t> q;
    std::string spec;
    std::string spec_file;
};

void add_field_opts(CLI::App* app, FieldOpts& o) {
    app->add_option("-q", o.q, "field order (default modulus)");
    app->add_option("--field", o.spec, "inline field spec, e.g. \"p=2 r=2 modulus=1,1,1\"");
    app->add_option("--field-file", o.spec_file, "file holding a field spec")->check(CLI::ExistingFile);
}

bool has_field(const FieldOpts& o) { return o.q || !o.spec.empty() || !o.spec_file.empty(); }

FieldPtr resolve_field(const FieldOpts& o) {
    if (!o.spec.empty() && !o.spec_file.empty()) throw UsageError("give only one of --field and --field-file");
    if (!o.spec.empty() || !o.spec_file.empty()) {
        const std::string text = o.spec.empty() ? read_file(o.spec_file) : o.spec;
        FieldPtr f = Field::make(FieldSpec::parse(text));
        if (o.q && *o.q != f->q()) throw UsageError("-q disagrees with the field spec");
        return f;
    }
    if (!o.q) throw UsageError("need -q or --field");
    if (*o.q < 2) throw UsageError("q must be at least 2");
    return Field::of_order(*o.q);
}

struct MapOpts {
    std::optional<std::size_t> n;
    std::optional<std::uint64_t> k;
    std::string thm2;
    std::string map;
    bool identity = false;
};

void add_map_opts(CLI::App* app, MapOpts& o) {
    app->add_option("-n", o.n, "target dimension");
    app->add_option("-k", o.k, "exponent of the power map b -> b^k");
    app->add_option("--thm2", o.thm2, "univariate F for the map b -> F(b)")->check(CLI::ExistingFile);
    app->add_option("--map", o.map, "map file")->check(CLI::ExistingFile);
    app->add_flag("--identity", o.identity, "identity map on GF(q)^n");
}

struct BuiltMap {
    PolynomialMap phi;
    std::string kind;
};

BuiltMap build_map(const FieldOpts& fo, const MapOpts& mo) {
    const int chosen = (mo.k ? 1 : 0) + (mo.thm2.empty() ? 0 : 1) + (mo.map.empty() ? 0 : 1) + (mo.identity ? 1 : 0);
    if (chosen != 1) throw UsageError("choose exactly one of -k, --thm2, --map, --identity");
    if (!mo.map.empty()) {
        PolynomialMap phi = parse_map(read_file(mo.map));
        if (has_field(fo) && !resolve_field(fo)->same_as(*phi.field())) {
            throw UsageError("field options disagree with the map file");
        }
        return {std::move(phi), "file"};
    }
    const FieldPtr field = resolve_field(fo);
    if (!mo.n) throw UsageError("need -n");
    if (*mo.n < 1) throw UsageError("n must be at least 1");
    if (mo.identity) return {PolynomialMap::identity(field, *mo.n), "identity"};
    if (mo.k) {
        if (*mo.k < 2) throw UsageError("k must be at least 2");
        return {kth_power_map(field, *mo.n, *mo.k), "power"};
    }
    const auto f = parse_univariate(field, read_file(mo.thm2));
    return {composed_map(field, *mo.n, f), "composed"};
}

void add_map_rows(Report& rep, const PolynomialMap& phi, const std::string& kind) {
    rep.add("map", kind);
    rep.add("field", phi.field()->spec().to_string());
    rep.add("q", phi.field()->q());
    rep.add("n", phi.target_arity());
    rep.add("m", phi.source_arity());
    rep.add("map_degree", phi.degree().to_string());
}

std::uint64_t map_degree(const PolynomialMap& phi) {
    const Degree d = phi.degree();
    if (d <= Degree(0)) throw UsageError("map must have degree at least 1");
    return static_cast<std::uint64_t>(d.value());
}

// ---- bound ----

struct BoundOpts {
    std::uint64_t q = 0;
    std::size_t n = 0;
    std::uint64_t k = 0;
    std::string thm2;
};

int cmd_bound(const BoundOpts& o, bool machine, std::ostream& out) {
    if (o.q < 2) throw UsageError("q must be at least 2");
    if (o.n < 1) throw UsageError("n must be at least 1");
    if (o.k < 2) throw UsageError("k must be at least 2");
    FieldSpec::for_order(o.q);  // rejects non prime powers
    std::optional<std::uint64_t> d;
    if (!o.thm2.empty()) {
        const auto f = parse_univariate(Field::of_order(o.q), read_file(o.thm2));
        if (f.degree() != Degree(static_cast<std::int64_t>(o.k))) throw UsageError("-k must equal deg F");
        d = composed_degree_bound(f);
    }
    const BoundReport r = bound_report(o.q, o.n, o.k, d);
    Report rep;
    rep.add("q", r.q);
    rep.add("n", r.n);
    rep.add("k", r.k);
    rep.add("m", r.m);
    rep.add("D", r.digit_sum);
    rep.add("d", r.d);
    rep.add("c", real_str(r.c));
    rep.add("c_prime", real_str(r.c_prime));
    rep.add("threshold", real_str(r.threshold));
    rep.add("threshold_prime", real_str(r.threshold_prime));
    rep.add("hoeffding", real_str(r.hoeffding));
    rep.add("hoeffding_vacuous", r.hoeffding_vacuous);
    rep.add("tail_point", rational_str(r.tail_point));
    rep.add("tail", rational_str(r.tail));
    rep.add("tail_decimal", to_decimal(r.tail));
    rep.add("exact_count", big_str(r.exact_count));
    rep.add("space", big_str(r.space));
    rep.add("exact_vacuous", r.exact_vacuous);
    rep.print(out, machine);
    return kOk;
}

// ---- transform ----

struct TransformOpts {
    FieldOpts field;
    std::string input;
    std::string output;
    std::optional<std::size_t> arity;
    bool synthesize = false;
    bool direct = false;
    bool verify = false;
};

int cmd_transform(const TransformOpts& o, bool machine, std::ostream& out, std::ostream& err) {
    const std::string text = read_file(o.input);
    std::string produced;
    Report rep;
    bool ok = true;
    if (o.synthesize) {
        const FieldPtr field = resolve_field(o.field);
        const auto p = parse_polynomial(field, text, o.arity);
        if (p.arity() == 0) throw UsageError("polynomial arity must be positive");
        const FunctionTable t = synthesize(p);
        produced = format_table(t);
        rep.add("direction", "synthesize");
        rep.add("q", field->q());
        rep.add("n", p.arity());
        rep.add("terms", p.term_count());
        rep.add("degree", p.degree().to_string());
        if (o.verify) {
            ok = analyze(t) == p;
            rep.add("round_trip", ok);
        }
    } else {
        const FieldPtr given = has_field(o.field) ? resolve_field(o.field) : nullptr;
        const FunctionTable t = parse_table(text, given);
        const auto method = o.direct ? AnalyzeMethod::direct : AnalyzeMethod::axis_factorized;
        const auto p = analyze(t, method);
        produced = format_polynomial(p);
        rep.add("direction", "analyze");
        rep.add("method", o.direct ? "direct" : "axis_factorized");
        rep.add("q", t.field()->q());
        rep.add("n", t.arity());
        rep.add("terms", p.term_count());
        rep.add("degree", p.degree().to_string());
        if (o.verify) {
            ok = synthesize(p) == t;
            rep.add("round_trip", ok);
        }
    }
    if (o.output.empty()) {
        out << produced;
    } else {
        write_file(o.output, produced);
        rep.add("output", o.output);
        rep.print(out, machine);
    }
    if (!ok) err << "transform: round trip failed\n";
    return ok ? kOk : kFalse;
}

// ---- witness ----

struct WitnessOpts {
    FieldOpts field;
    MapOpts map;
    std::string output;
};

int cmd_witness(const WitnessOpts& o, bool machine, std::ostream& out, std::ostream& err) {
    const BuiltMap built = build_map(o.field, o.map);
    Report rep;
    add_map_rows(rep, built.phi, built.kind);
    std::optional<WitnessReport> built_w;
    try {
        built_w = build_witness(built.phi);
    } catch (const HypothesisError& e) {
        rep.add("hypothesis", false);
        rep.print(out, machine);
        err << "witness: hypothesis fails: " << e.what() << '\n';
        return kFalse;
    }
    const WitnessReport& w = *built_w;
    rep.add("hypothesis", true);
    rep.add("fiber_count_at_zero", w.fiber_count_at_zero);
    rep.add("terms", w.polynomial.term_count());
    rep.add("degree", w.polynomial.degree().to_string());
    rep.add("degree_bound", rational_str(w.degree_bound_rhs));
    rep.add("degree_ok", w.degree_ok);
    rep.add("support_checked", w.support_checked);
    if (w.support_checked) rep.add("support_ok", w.support_ok);
    rep.add("nonzero_at_zero", w.nonzero_at_zero);
    rep.add("verified", w.all_hold());
    if (!o.output.empty()) {
        write_file(o.output, format_polynomial(w.polynomial));
        rep.add("output", o.output);
    }
    rep.print(out, machine);
    if (!w.degree_ok) err << "witness: failed property: degree_ok\n";
    if (w.support_checked && !w.support_ok) err << "witness: failed property: support_ok\n";
    if (!w.nonzero_at_zero) err << "witness: failed property: nonzero_at_zero\n";
    return w.all_hold() ? kOk : kFalse;
}

// ---- rank ----

struct RankOpts {
    FieldOpts field;
    MapOpts map;
    std::string poly;
    std::string set;
    std::string dump;
};

int cmd_rank(const RankOpts& o, bool machine, std::ostream& out, std::ostream& err) {
    Report rep;
    std::optional<MultivariatePolynomial> p;
    std::optional<AvoidanceInstance> inst;
    FieldPtr field;
    if (!o.poly.empty()) {
        field = resolve_field(o.field);
        p = parse_polynomial(field, read_file(o.poly), o.map.n);
        rep.add("q", field->q());
        rep.add("n", p->arity());
    } else {
        const BuiltMap built = build_map(o.field, o.map);
        add_map_rows(rep, built.phi, built.kind);
        field = built.phi.field();
        p = build_witness(built.phi).polynomial;
        inst = AvoidanceInstance::from_map(built.phi);
    }
    const PointSet a = parse_point_set(read_file(o.set), field);
    if (a.arity() != p->arity()) throw UsageError("set dimension differs from the polynomial arity");
    rep.add("set_size", a.size());
    rep.add("degree", p->degree().to_string());
    int code = kOk;
    try {
        const RankCertificate cert = certify(*p, a);
        rep.add("rank", cert.rank);
        rep.add("half_degree_monomials", cert.monomials.size());
        rep.add("rank_bound", cert.bound());
        rep.add("within_bound", cert.rank <= cert.bound());
        if (inst) {
            const bool avoiding = verify_avoiding(a, *inst);
            rep.add("avoiding", avoiding);
            if (avoiding) {
                rep.add("rank_equals_size", cert.rank == a.size());
                if (cert.rank != a.size()) {
                    err << "rank: avoiding set but rank " << cert.rank << " != |A| = " << a.size() << '\n';
                    code = kFalse;
                }
            }
        }
        if (!o.dump.empty()) write_file(o.dump, format_matrix(cert.matrix));
    } catch (const ConsistencyError& e) {
        rep.print(out, machine);
        err << "rank: " << e.what() << '\n';
        return kFalse;
    }
    rep.print(out, machine);
    return code;
}

// ---- search ----

struct SearchOpts {
    FieldOpts field;
    MapOpts map;
    std::string mode = "exhaustive";
    std::uint64_t budget = 100'000'000;
    std::optional<std::uint64_t> seed;
    std::string emit;
};

int cmd_search(const SearchOpts& o, bool machine, std::ostream& out, std::ostream& err) {
    const BuiltMap built = build_map(o.field, o.map);
    const PolynomialMap& phi = built.phi;
    Report rep;
    add_map_rows(rep, phi, built.kind);
    const AvoidanceInstance inst = AvoidanceInstance::from_map(phi);
    rep.add("image_size", inst.image.size());
    rep.add("image_symmetric", inst.image_symmetric);
    rep.add("forbidden_size", inst.forbidden.size());

    const SearchResult r = o.mode == "exhaustive" ? max_avoiding_exhaustive(inst, o.budget) : greedy_avoiding(inst, o.seed);
    rep.add("mode", o.mode);
    if (o.mode == "exhaustive") {
        rep.add("component_size", r.component_size);
        rep.add("component_count", r.component_count);
    }
    rep.add("best_size", r.best_size);
    rep.add("optimal", r.optimal);
    rep.add("nodes", r.nodes_explored);
    const bool avoiding = verify_avoiding(r.best_set, inst);
    rep.add("avoiding", avoiding);
    int code = avoiding ? kOk : kFalse;
    if (!avoiding) err << "search: returned set is not avoiding\n";

    std::optional<WitnessReport> w;
    try {
        w = build_witness(phi);
        rep.add("hypothesis", true);
    } catch (const HypothesisError& e) {
        rep.add("hypothesis", false);
    }
    if (w) {
        const std::uint64_t d = map_degree(phi);
        const std::uint64_t m = phi.source_arity();
        if (m <= phi.target_arity()) {
            const Real h = hoeffding_bound(phi.field()->q(), phi.target_arity(), m, d);
            const Real space = static_cast<Real>(space_size(phi.field()->q(), phi.target_arity()));
            const bool holds = static_cast<Real>(r.best_size) <= h;
            rep.add("hoeffding", real_str(h));
            rep.add("hoeffding_vacuous", h >= space);
            rep.add("bound_ok", holds);
            if (!holds) {
                err << "search: best_size exceeds the Hoeffding bound\n";
                code = kFalse;
            }
        }
        const RankCertificate cert = certify(w->polynomial, r.best_set);
        rep.add("rank", cert.rank);
        rep.add("rank_bound", cert.bound());
        const bool rank_ok = cert.rank == r.best_size && cert.rank <= cert.bound();
        rep.add("rank_ok", rank_ok);
        if (!rank_ok) {
            err << "search: rank identity fails\n";
            code = kFalse;
        }
    }
    if (!o.emit.empty()) {
        write_file(o.emit, format_point_set(r.best_set));
        rep.add("emitted", o.emit);
    }
    rep.print(out, machine);
    return code;
}

// ---- selftest ----

struct SelftestOpts {
    bool quick = false;
    std::string field;
};

bool check_kernel(const Field& f) {
    const auto s = kernel_orthogonality(f);
    for (std::size_t a = 0; a < s.size(); ++a) {
        for (std::size_t b = 0; b < s[a].size(); ++b) {
            if (s[a][b] != (a == b ? 1u : 0u)) return false;
        }
    }
    return true;
}

bool check_round_trips(const FieldPtr& f, std::uint64_t max_points, std::mt19937_64& rng) {
    const std::uint32_t q = f->q();
    for (std::size_t n = 1; space_size(q, n) <= max_points; ++n) {
        const std::uint64_t size = space_size(q, n);
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<Elem> v(size);
            for (auto& x : v) x = static_cast<Elem>(rng() % q);
            const FunctionTable t(f, n, std::move(v));
            const auto p = analyze(t);
            if (!(synthesize(p) == t)) return false;
            if (size <= 256 && !(analyze(t, AnalyzeMethod::direct) == p)) return false;
        }
    }
    return true;
}

bool check_dominance(std::uint64_t q, std::uint64_t max_n) {
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (std::uint64_t m = 1; m <= n; ++m) {
            for (std::uint64_t d = 1; d <= 4; ++d) {
                const Rational t = witness_degree_bound(q, n, m, d) / 2;
                const Real lhs = to_real(exact_tail(q, n, t));
                const Real rhs = std::exp(-static_cast<Real>(m * m) / static_cast<Real>(2 * n * d * d));
                if (lhs > rhs * (1 + 1e-12L)) return false;
            }
        }
    }
    return true;
}

int cmd_selftest(const SelftestOpts& o, bool machine, std::ostream& out, std::ostream& err) {
    std::vector<FieldPtr> fields;
    if (!o.field.empty()) {
        try {
            fields.push_back(Field::make(FieldSpec::parse(o.field)));
        } catch (const Error& e) {
            err << "selftest: field construction failed: " << e.what() << '\n';
            return kInternal;
        }
    } else {
        const std::vector<std::uint64_t> orders = o.quick ? std::vector<std::uint64_t>{2, 3, 4, 5}
                                                          : std::vector<std::uint64_t>{2, 3, 4, 5, 7, 8, 9};
        for (const auto q : orders) fields.push_back(Field::of_order(q));
    }
    Report rep;
    bool all = true;
    std::mt19937_64 rng(20240601);
    const std::uint64_t max_points = o.quick ? 256 : 4096;
    for (const auto& f : fields) {
        const std::string tag = "q" + std::to_string(f->q());
        const bool k = check_kernel(*f);
        const bool rt = check_round_trips(f, max_points, rng);
        rep.add("kernel_orthogonality_" + tag, k);
        rep.add("round_trip_" + tag, rt);
        all = all && k && rt;
    }
    for (const std::uint64_t q : {2, 3, 5}) {
        const bool dom = check_dominance(q, o.quick ? 12 : 40);
        rep.add("dominance_q" + std::to_string(q), dom);
        all = all && dom;
    }
    rep.add("passed", all);
    rep.print(out, machine);
    return all ? kOk : kFalse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Polynomial-method bounds for sets avoiding polynomial differences over GF(q)"};
    app.name("ffs");
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--machine", machine, "print key=value lines");

    BoundOpts bound;
    auto* s_bound = app.add_subcommand("bound", "closed-form constants, Hoeffding and exact tail");
    s_bound->add_option("-q", bound.q, "field order")->required();
    s_bound->add_option("-n", bound.n, "dimension")->required();
    s_bound->add_option("-k", bound.k, "exponent, or deg F with --thm2")->required();
    s_bound->add_option("--thm2", bound.thm2, "univariate F file; d becomes the sup digit sum over its support")
        ->check(CLI::ExistingFile);

    TransformOpts transform;
    auto* s_transform = app.add_subcommand("transform", "function table <-> reduced polynomial");
    add_field_opts(s_transform, transform.field);
    s_transform->add_option("--input", transform.input, "table file (or polynomial with --synthesize)")
        ->required()
        ->check(CLI::ExistingFile);
    s_transform->add_option("--output", transform.output, "output path; stdout when omitted");
    s_transform->add_option("--arity", transform.arity, "polynomial arity when synthesizing");
    s_transform->add_flag("--synthesize", transform.synthesize, "evaluate a polynomial on every point");
    s_transform->add_flag("--direct", transform.direct, "use the direct double sum");
    s_transform->add_flag("--verify", transform.verify, "check the round trip");

    WitnessOpts witness;
    auto* s_witness = app.add_subcommand("witness", "build and check the witness polynomial of a map");
    add_field_opts(s_witness, witness.field);
    add_map_opts(s_witness, witness.map);
    s_witness->add_option("--output", witness.output, "write P in term format");

    RankOpts rank;
    auto* s_rank = app.add_subcommand("rank", "rank of the difference matrix and its split bound");
    add_field_opts(s_rank, rank.field);
    add_map_opts(s_rank, rank.map);
    s_rank->add_option("--poly", rank.poly, "polynomial file instead of a map")->check(CLI::ExistingFile);
    s_rank->add_option("--set", rank.set, "point set file")->required()->check(CLI::ExistingFile);
    s_rank->add_option("--dump-matrix", rank.dump, "write M");

    SearchOpts search;
    auto* s_search = app.add_subcommand("search", "large sets avoiding the image of a map");
    add_field_opts(s_search, search.field);
    add_map_opts(s_search, search.map);
    s_search->add_option("--mode", search.mode, "exhaustive or greedy")
        ->check(CLI::IsMember({"exhaustive", "greedy"}));
    s_search->add_option("--budget", search.budget, "node budget for exhaustive mode");
    s_search->add_option("--seed", search.seed, "shuffle seed for greedy mode");
    s_search->add_option("--emit-set", search.emit, "write the best set");

    SelftestOpts selftest;
    auto* s_selftest = app.add_subcommand("selftest", "built-in consistency suites");
    s_selftest->add_flag("--quick", selftest.quick, "smaller fields and sizes");
    s_selftest->add_option("--field", selftest.field, "run only on this field spec");

    // CLI11 consumes arguments from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (s_bound->parsed()) return cmd_bound(bound, machine, out);
        if (s_transform->parsed()) return cmd_transform(transform, machine, out, err);
        if (s_witness->parsed()) return cmd_witness(witness, machine, out, err);
        if (s_rank->parsed()) return cmd_rank(rank, machine, out, err);
        if (s_search->parsed()) return cmd_search(search, machine, out, err);
        if (s_selftest->parsed()) return cmd_selftest(selftest, machine, out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const HypothesisError& e) {
        err << "hypothesis fails: " << e.what() << '\n';
        return kFalse;
    } catch (const ConsistencyError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const SpecError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kUsage;
    } catch (const ContractError& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kUsage;
    } catch (const GuardError& e) {
        err << "too large: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace ffpm::cli
