// Acceptance checks, one PASS/FAIL line per criterion.
//
// Exit status is 0 when every criterion passes, or when the only failures are
// criteria listed with --allow-fail (the open ones are documented in the
// README). Usage: acceptance [--only N] [--allow-fail N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ffpm/bounds.hpp"
#include "ffpm/points.hpp"
#include "ffpm/rankbound.hpp"
#include "ffpm/search.hpp"
#include "ffpm/transform.hpp"
#include "ffpm/witness.hpp"

using namespace ffpm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// Avoiding sets found by criterion 6, reused by criterion 5.
struct FoundSet {
    std::uint64_t q;
    std::size_t n;
    std::uint64_t k;
    PointSet set;
};
std::vector<FoundSet> g_found;

std::string shape(std::uint64_t q, std::size_t n, std::uint64_t k) {
    return "(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
}

Outcome criterion1() {
    Outcome o;
    for (const std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        const auto s = kernel_orthogonality(*Field::of_order(q));
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = 0; b < q; ++b) {
                if (s[a][b] != (a == b ? 1u : 0u)) o.fail("q=" + std::to_string(q));
            }
        }
    }
    return o;
}

Outcome criterion2() {
    Outcome o;
    std::mt19937_64 rng(2);
    const std::vector<std::pair<std::uint64_t, std::size_t>> shapes{{2, 8}, {3, 5}, {4, 4}, {5, 4}};
    std::size_t tables = 0;
    for (const auto [q, top] : shapes) {
        const auto f = Field::of_order(q);
        for (std::size_t n = 1; n <= top; ++n) {
            const std::uint64_t size = space_size(q, n);
            auto check = [&](const FunctionTable& t) {
                const auto p = analyze(t);
                if (!(synthesize(p) == t)) o.fail("round trip q=" + std::to_string(q) + " n=" + std::to_string(n));
                if (!(analyze(t, AnalyzeMethod::direct) == p)) {
                    o.fail("direct sum differs q=" + std::to_string(q) + " n=" + std::to_string(n));
                }
                ++tables;
            };
            for (int trial = 0; trial < 100; ++trial) {
                FunctionTable t(f, n);
                for (std::uint64_t i = 0; i < size; ++i) t[i] = static_cast<Elem>(rng() % q);
                check(t);
            }
            // Exhaustive over all q^{q^n} tables when that is at most 256.
            const double count = std::pow(double(q), double(size));
            if (count <= 256) {
                for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(count); ++code) {
                    FunctionTable t(f, n);
                    std::uint64_t c = code;
                    for (std::uint64_t i = 0; i < size; ++i, c /= q) t[i] = static_cast<Elem>(c % q);
                    check(t);
                }
            }
        }
    }
    o.detail = o.pass ? std::to_string(tables) + " tables" : o.detail;
    return o;
}

Outcome criterion3() {
    Outcome o;
    std::size_t cases = 0;
    for (const std::uint64_t q : {2, 3, 4, 5}) {
        const auto f = Field::of_order(q);
        const auto top = std::min<std::size_t>(10, static_cast<std::size_t>(std::floor(20.0 / std::log2(double(q)) + 1e-9)));
        for (std::uint64_t k = 2; k <= 6; ++k) {
            for (std::size_t n = k + 1; n <= top; ++n) {
                const auto phi = kth_power_map(f, n, k);
                const auto w = build_witness(phi);
                const auto d = static_cast<std::uint64_t>(phi.degree().value());
                const Rational rhs = witness_degree_bound(q, n, phi.source_arity(), d);
                const auto deg = w.polynomial.degree();
                const bool degree_ok = deg.is_neg_inf() || Rational(deg.value()) <= rhs;
                if (!degree_ok || w.degree_bound_rhs != rhs) o.fail("degree " + shape(q, n, k));
                if (!w.support_checked || !w.support_ok) o.fail("support " + shape(q, n, k));
                if (!w.nonzero_at_zero) o.fail("P(0) " + shape(q, n, k));
                ++cases;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " maps";
    return o;
}

Outcome criterion4() {
    Outcome o;
    std::size_t polys = 0;
    for (const std::uint64_t q : {2, 3, 5}) {
        const auto f = Field::of_order(q);
        const std::size_t n = q == 2 ? 8 : (q == 3 ? 6 : 4);
        for (std::uint64_t deg = 1; deg <= 4; ++deg) {
            std::uint64_t combos = 1;
            for (std::uint64_t j = 1; j < deg; ++j) combos *= q;
            for (std::uint64_t code = 0; code < combos; ++code) {
                std::vector<Elem> c(deg + 1, 0);
                c[deg] = 1;
                std::uint64_t x = code;
                for (std::uint64_t j = 1; j < deg; ++j, x /= q) c[j] = static_cast<Elem>(x % q);
                const UnivariatePolynomial poly(f, c);
                std::uint64_t roots = 0;
                for (Elem a = 0; a < q; ++a) {
                    Elem v = 0;
                    for (std::size_t j = c.size(); j-- > 0;) v = f->add(f->mul(v, a), c[j]);
                    if (v == 0) ++roots;
                }
                const auto check = check_coprimality(poly);
                const bool expect_ok = roots % f->p() != 0;
                if (check.root_count != roots || check.ok != expect_ok) o.fail("root count q=" + std::to_string(q));
                bool built = true;
                try {
                    const auto w = build_witness(composed_map(f, n, poly));
                    if (!w.all_hold()) o.fail("witness properties q=" + std::to_string(q));
                } catch (const HypothesisError&) {
                    built = false;
                }
                if (built != expect_ok) o.fail("build_witness q=" + std::to_string(q) + " code=" + std::to_string(code));
                ++polys;
            }
        }
    }
    if (o.pass) o.detail = std::to_string(polys) + " polynomials";
    return o;
}

Outcome criterion6(std::uint64_t budget) {
    Outcome o;
    g_found.clear();
    const std::vector<std::tuple<std::uint64_t, std::size_t, std::uint64_t>> families{
        {2, 10, 3}, {2, 10, 5}, {3, 6, 2}, {3, 6, 4}, {5, 4, 2}};
    std::ostringstream open;
    std::size_t solved = 0;
    std::size_t total = 0;
    for (const auto [q, top, k] : families) {
        const auto f = Field::of_order(q);
        for (std::size_t n = 1; n <= top; ++n) {
            ++total;
            const auto phi = kth_power_map(f, n, k);
            const auto inst = AvoidanceInstance::from_map(phi);
            const auto t0 = std::chrono::steady_clock::now();
            const auto r = max_avoiding_exhaustive(inst, budget);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (!verify_avoiding(r.best_set, inst)) o.fail("not avoiding " + shape(q, n, k));
            const auto d = static_cast<std::uint64_t>(phi.degree().value());
            const Real h = hoeffding_bound(q, n, phi.source_arity(), d);
            const bool vacuous = h >= static_cast<Real>(space_size(q, n));
            if (!vacuous && static_cast<Real>(r.best_size) > h) o.fail("bound exceeded " + shape(q, n, k));
            g_found.push_back({q, n, k, r.best_set});
            std::cout << "  " << shape(q, n, k) << " best=" << r.best_size << (r.optimal ? " optimal" : " open")
                      << " nodes=" << r.nodes_explored << " hoeffding=" << double(h) << (vacuous ? " (vacuous)" : "")
                      << " " << secs << "s" << std::endl;
            if (r.optimal) {
                ++solved;
            } else {
                open << " " << shape(q, n, k) << ">=" << r.best_size;
            }
        }
    }
    if (solved != total) o.fail("budget exhausted on" + open.str());
    if (o.pass) o.detail = std::to_string(total) + " instances solved";
    return o;
}

Outcome criterion5() {
    Outcome o;
    if (g_found.empty()) criterion6(100'000'000);
    for (const auto& s : g_found) {
        const auto phi = kth_power_map(Field::of_order(s.q), s.n, s.k);
        const auto w = build_witness(phi);
        const auto cert = certify(w.polynomial, s.set);
        if (cert.rank != s.set.size()) o.fail("rank != |A| " + shape(s.q, s.n, s.k));
        if (cert.rank > cert.bound()) o.fail("rank > 2|S| " + shape(s.q, s.n, s.k));
        const auto deg = w.polynomial.degree();
        const Rational half = Rational(deg.value()) / 2;
        const Rational via_tail = exact_tail(s.q, s.n, half) * Rational(BigInt(space_size(s.q, s.n)));
        if (via_tail != Rational(cert.monomials.size())) o.fail("|S| mismatch " + shape(s.q, s.n, s.k));
    }
    if (o.pass) o.detail = std::to_string(g_found.size()) + " sets";
    return o;
}

Outcome criterion7() {
    Outcome o;
    std::size_t cases = 0;
    for (const auto [q, top] : std::vector<std::pair<std::uint64_t, std::size_t>>{{2, 10}, {3, 6}, {4, 4}, {5, 4}}) {
        const auto f = Field::of_order(q);
        for (std::size_t n = 2; n <= top; ++n) {
            const auto phi = kth_power_map(f, n, q);
            if (phi.degree() != Degree(1)) o.fail("d != 1 q=" + std::to_string(q));
            const std::size_t m = phi.source_arity();
            // Frobenius images b^q mod T^n, computed coordinatewise.
            std::vector<std::uint64_t> frob;
            for (std::uint64_t a = 0; a < space_size(q, m); ++a) {
                const auto coeffs = point_from_index(f->q(), m, a);
                std::vector<Elem> y(n, 0);
                for (std::size_t i = 0; i < m; ++i) {
                    if (i * q < n) y[i * q] = f->pow(coeffs[i], q);
                }
                frob.push_back(point_index(f->q(), y));
            }
            std::sort(frob.begin(), frob.end());
            frob.erase(std::unique(frob.begin(), frob.end()), frob.end());
            if (enumerate_image(phi) != frob) o.fail("image q=" + std::to_string(q) + " n=" + std::to_string(n));
            const auto inst = AvoidanceInstance::from_map(phi);
            const auto r = max_avoiding_exhaustive(inst, 100'000'000);
            // One point per coset of the image subspace.
            if (!r.optimal || r.best_size != space_size(q, n - m)) {
                o.fail("optimum q=" + std::to_string(q) + " n=" + std::to_string(n));
            }
            const double cap = double(q) * std::pow(double(q), (1.0 - 1.0 / double(q)) * double(n));
            if (double(r.best_size) > cap) o.fail("pigeonhole cap q=" + std::to_string(q));
            ++cases;
        }
    }
    if (o.pass) o.detail = std::to_string(cases) + " instances";
    return o;
}

Outcome criterion8() {
    Outcome o;
    std::size_t checks = 0;
    for (const std::uint64_t q : {2, 3, 5}) {
        for (std::uint64_t n = 1; n <= 40; ++n) {
            for (std::uint64_t m = 1; m <= n; ++m) {
                for (std::uint64_t d = 1; d <= 4; ++d) {
                    const Rational t = witness_degree_bound(q, n, m, d) / 2;
                    const Real lhs = to_real(exact_tail(q, n, t));
                    const Real rhs = std::exp(-Real(m * m) / Real(2 * n * d * d));
                    if (lhs > rhs * (1 + 1e-12L)) {
                        o.fail("q=" + std::to_string(q) + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
                               " d=" + std::to_string(d));
                    }
                    ++checks;
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " inequalities";
    return o;
}

Outcome criterion9() {
    Outcome o;
    const long double expected = 1.0L / (2.0L * 9.0L * 4.0L * std::log(2.0L));
    if (std::fabs(c_main(3, 2) - expected) > 1e-12L * expected) o.fail("c(3,2)");
    std::size_t points = 0;
    for (const std::uint64_t q : {2, 3, 4, 5}) {
        for (std::uint64_t k = 2; k <= 6; ++k) {
            const long double lq = std::log(static_cast<long double>(q));
            const long double l = 1.0L + std::log(static_cast<long double>(k)) / lq;
            const long double kk = k;
            const long double qm1 = q - 1;
            const long double ref = 1.0L / (2.0L * kk * kk * qm1 * qm1 * l * l * lq);
            if (std::fabs(c_prime(k, q) - ref) > 1e-12L * ref) o.fail("c'(" + std::to_string(k) + "," + std::to_string(q) + ")");
            ++points;
        }
    }
    if (o.pass) o.detail = std::to_string(points) + " grid points";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    std::set<int> allowed;
    std::uint64_t budget = 100'000'000;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--only" && i + 1 < argc) {
            only.insert(std::atoi(argv[++i]));
        } else if (a == "--allow-fail" && i + 1 < argc) {
            allowed.insert(std::atoi(argv[++i]));
        } else if (a == "--budget" && i + 1 < argc) {
            budget = std::strtoull(argv[++i], nullptr, 10);
        } else {
            std::cerr << "usage: acceptance [--only N] [--allow-fail N] [--budget B]\n";
            return 2;
        }
    }

    struct Criterion {
        int id;
        double limit;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, 1, criterion1},
        {2, 30, criterion2},
        {3, 300, criterion3},
        {4, 10, criterion4},
        {6, 600, [budget] { return criterion6(budget); }},
        {5, 60, criterion5},
        {7, 30, criterion7},
        {8, 60, criterion8},
        {9, 1, criterion9},
    };
    std::vector<std::string> lines(10);
    bool ok = true;
    for (const auto& c : criteria) {
        if (!only.empty() && !only.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit) out.fail("took " + std::to_string(secs) + "s, limit " + std::to_string(int(c.limit)) + "s");
        std::ostringstream line;
        line << (out.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << out.detail << " ("
             << std::fixed << std::setprecision(2) << secs << "s)";
        lines[c.id] = line.str();
        std::cout << lines[c.id] << std::endl;
        if (!out.pass && !allowed.count(c.id)) ok = false;
    }
    std::cout << "summary:\n";
    for (int id = 1; id <= 9; ++id) {
        if (!lines[id].empty()) std::cout << lines[id] << '\n';
    }
    return ok ? 0 : 1;
}
