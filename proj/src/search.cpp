#include "ffpm/search.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <unordered_map>

#include "ffpm/points.hpp"

namespace ffpm {

namespace {

// Coordinate-wise arithmetic on point indices.
class PointArith {
public:
    PointArith(const Field& field, std::size_t n) : field_(field), n_(n), a_(n), b_(n) {}

    std::uint64_t add(std::uint64_t x, std::uint64_t y) {
        decode(x, a_);
        decode(y, b_);
        for (std::size_t i = 0; i < n_; ++i) a_[i] = field_.add(a_[i], b_[i]);
        return point_index(field_.q(), a_);
    }
    std::uint64_t sub(std::uint64_t x, std::uint64_t y) {
        decode(x, a_);
        decode(y, b_);
        for (std::size_t i = 0; i < n_; ++i) a_[i] = field_.sub(a_[i], b_[i]);
        return point_index(field_.q(), a_);
    }
    std::uint64_t neg(std::uint64_t x) {
        decode(x, a_);
        for (std::size_t i = 0; i < n_; ++i) a_[i] = field_.neg(a_[i]);
        return point_index(field_.q(), a_);
    }

private:
    void decode(std::uint64_t x, std::vector<Elem>& out) const { point_from_index(field_.q(), x, out); }

    const Field& field_;
    std::size_t n_;
    std::vector<Elem> a_;
    std::vector<Elem> b_;
};

// Elements of the additive subgroup generated by `gens`, i.e. their GF(p)-span,
// in ascending index order.
std::vector<std::uint64_t> generated_subgroup(const Field& field, std::size_t n,
                                              const std::vector<std::uint64_t>& gens) {
    const std::uint32_t p = field.p();
    const std::uint32_t r = field.r();
    const std::size_t dim = n * r;
    auto to_vector = [&](std::uint64_t x) {
        std::vector<std::uint32_t> v(dim);
        const auto pt = point_from_index(field.q(), n, x);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = field.coefficients(pt[i]);
            for (std::uint32_t j = 0; j < r; ++j) v[i * r + j] = c[j];
        }
        return v;
    };
    std::vector<std::uint32_t> inverse(p, 0);
    for (std::uint32_t a = 1; a < p; ++a) {
        for (std::uint32_t b = 1; b < p; ++b) {
            if (std::uint64_t{a} * b % p == 1) inverse[a] = b;
        }
    }
    // Row echelon basis over GF(p).
    std::vector<std::vector<std::uint32_t>> basis;
    std::vector<std::size_t> pivots;
    for (const auto g : gens) {
        auto v = to_vector(g);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const std::uint32_t c = v[pivots[b]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) v[j] = (v[j] + (p - c) * basis[b][j]) % p;
        }
        const auto lead = std::find_if(v.begin(), v.end(), [](auto c) { return c != 0; });
        if (lead == v.end()) continue;
        const std::size_t pc = static_cast<std::size_t>(lead - v.begin());
        const std::uint32_t s = inverse[v[pc]];
        for (auto& c : v) c = static_cast<std::uint32_t>(std::uint64_t{c} * s % p);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const std::uint32_t c = basis[b][pc];
            if (c == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) basis[b][j] = (basis[b][j] + (p - c) * v[j]) % p;
        }
        basis.push_back(std::move(v));
        pivots.push_back(pc);
    }
    auto from_vector = [&](const std::vector<std::uint32_t>& v) {
        std::vector<Elem> pt(n);
        for (std::size_t i = 0; i < n; ++i) {
            pt[i] = field.from_coefficients(std::span<const std::uint32_t>(v.data() + i * r, r));
        }
        return point_index(field.q(), pt);
    };
    std::vector<std::uint64_t> out;
    std::vector<std::uint32_t> coeffs(basis.size(), 0);
    std::vector<std::uint32_t> v(dim, 0);
    while (true) {
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            for (std::size_t j = 0; j < dim; ++j) v[j] = (v[j] + coeffs[b] * basis[b][j]) % p;
        }
        out.push_back(from_vector(v));
        std::size_t b = 0;
        while (b < coeffs.size() && ++coeffs[b] == p) coeffs[b++] = 0;
        if (b == coeffs.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

using Bits = std::vector<std::uint64_t>;

constexpr std::uint64_t kProbeNodes = 100'000;
constexpr std::uint64_t kLocalSearchRounds = 20'000;

// Maximum independent set via maximum clique in the complement, with a
// greedy clique-cover (complement colouring) bound. Buffers are kept per depth
// so the recursion does not allocate.
class IndependentSetSolver {
public:
    IndependentSetSolver(std::size_t size, std::vector<Bits> adjacency, std::uint64_t budget)
        : size_(size), words_((size + 63) / 64), adj_(std::move(adjacency)), budget_(budget) {}

    void seed(std::vector<std::size_t> initial) { best_ = std::move(initial); }

    // Searches sets containing `pinned`.
    void run(std::size_t pinned) {
        levels_.clear();
        // Depth never exceeds the vertex count; references into levels_ stay valid.
        levels_.reserve(size_ + 2);
        Bits candidates(words_, 0);
        for (std::size_t v = 0; v < size_; ++v) {
            if (v != pinned && !test(adj_[pinned], v)) set(candidates, v);
        }
        current_.push_back(pinned);
        level(0).candidates = std::move(candidates);
        complete_ = expand(0);
        current_.pop_back();
    }

    const std::vector<std::size_t>& best() const { return best_; }
    bool complete() const { return complete_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    struct Level {
        Bits candidates;
        Bits uncovered;
        Bits pool;
        std::vector<std::uint32_t> order;
        std::vector<std::uint32_t> bound;
    };

    static bool test(const Bits& b, std::size_t v) { return (b[v / 64] >> (v % 64)) & 1; }
    static void set(Bits& b, std::size_t v) { b[v / 64] |= std::uint64_t{1} << (v % 64); }
    static void reset(Bits& b, std::size_t v) { b[v / 64] &= ~(std::uint64_t{1} << (v % 64)); }

    Level& level(std::size_t depth) {
        while (levels_.size() <= depth) {
            Level l;
            l.candidates.assign(words_, 0);
            l.uncovered.assign(words_, 0);
            l.pool.assign(words_, 0);
            l.order.reserve(size_);
            l.bound.reserve(size_);
            levels_.push_back(std::move(l));
        }
        return levels_[depth];
    }

    // Partitions the candidates into cliques of the graph; vertices come out
    // in nondecreasing class number.
    void cover(Level& l) const {
        l.order.clear();
        l.bound.clear();
        l.uncovered = l.candidates;
        std::uint32_t k = 0;
        std::size_t first = 0;
        while (true) {
            while (first < words_ && l.uncovered[first] == 0) ++first;
            if (first == words_) break;
            ++k;
            for (std::size_t w = first; w < words_; ++w) l.pool[w] = l.uncovered[w];
            for (std::size_t w = first; w < words_; ++w) {
                while (l.pool[w]) {
                    const std::size_t v = w * 64 + static_cast<std::size_t>(std::countr_zero(l.pool[w]));
                    l.order.push_back(static_cast<std::uint32_t>(v));
                    l.bound.push_back(k);
                    reset(l.uncovered, v);
                    // Remaining members of this clique must be adjacent to v.
                    const Bits& a = adj_[v];
                    for (std::size_t u = w; u < words_; ++u) l.pool[u] &= a[u];
                }
            }
        }
    }

    bool expand(std::size_t depth) {
        if (++nodes_ > budget_) return false;
        level(depth + 1);
        Level& l = levels_[depth];
        cover(l);
        for (std::size_t i = l.order.size(); i-- > 0;) {
            if (current_.size() + l.bound[i] <= best_.size()) return true;
            const std::size_t v = l.order[i];
            Bits& next = levels_[depth + 1].candidates;
            const Bits& a = adj_[v];
            std::uint64_t any = 0;
            for (std::size_t w = 0; w < words_; ++w) {
                next[w] = l.candidates[w] & ~a[w];
                any |= next[w];
            }
            if (test(next, v)) {
                reset(next, v);
                any = 0;
                for (std::size_t w = 0; w < words_; ++w) any |= next[w];
            }
            current_.push_back(v);
            if (any == 0) {
                if (current_.size() > best_.size()) best_ = current_;
            } else if (!expand(depth + 1)) {
                current_.pop_back();
                return false;
            }
            current_.pop_back();
            reset(l.candidates, v);
        }
        return true;
    }

    std::size_t size_;
    std::size_t words_;
    std::vector<Bits> adj_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool complete_ = false;
    std::vector<std::size_t> current_;
    std::vector<std::size_t> best_;
    std::vector<Level> levels_;
};

// Iterated local search with (1,2)-swaps and random forced insertions.
// Improves `solution` in place; deterministic for a fixed rng seed.
void improve_independent_set(const std::vector<std::vector<std::uint32_t>>& nbrs, std::vector<std::size_t>& solution,
                             std::uint64_t rounds) {
    const std::size_t size = nbrs.size();
    std::vector<std::uint32_t> tight(size, 0);
    std::vector<char> in(size, 0);
    std::size_t count = 0;
    auto add = [&](std::size_t v) {
        in[v] = 1;
        ++count;
        for (const auto u : nbrs[v]) ++tight[u];
    };
    auto remove = [&](std::size_t v) {
        in[v] = 0;
        --count;
        for (const auto u : nbrs[v]) --tight[u];
    };
    auto fill = [&] {
        for (std::size_t v = 0; v < size; ++v) {
            if (!in[v] && tight[v] == 0) add(v);
        }
    };
    auto adjacent = [&](std::size_t a, std::size_t b) {
        return std::find(nbrs[a].begin(), nbrs[a].end(), b) != nbrs[a].end();
    };
    for (const auto v : solution) add(v);
    fill();
    std::vector<char> best_in = in;
    std::size_t best = count;
    std::mt19937_64 rng(0x5eed);
    std::vector<std::uint32_t> cand;
    for (std::uint64_t round = 0; round < rounds; ++round) {
        // One (1,2)-swap if any exists.
        bool improved = false;
        const std::size_t offset = rng() % size;
        for (std::size_t s = 0; s < size && !improved; ++s) {
            const std::size_t x = (s + offset) % size;
            if (!in[x]) continue;
            cand.clear();
            for (const auto u : nbrs[x]) {
                if (!in[u] && tight[u] == 1) cand.push_back(u);
            }
            for (std::size_t i = 0; i < cand.size() && !improved; ++i) {
                for (std::size_t j = i + 1; j < cand.size() && !improved; ++j) {
                    if (adjacent(cand[i], cand[j])) continue;
                    remove(x);
                    add(cand[i]);
                    add(cand[j]);
                    fill();
                    improved = true;
                }
            }
        }
        if (!improved) {
            std::size_t v = rng() % size;
            while (in[v]) v = (v + 1) % size;
            for (const auto u : nbrs[v]) {
                if (in[u]) remove(u);
            }
            add(v);
            fill();
        }
        if (count > best) {
            best = count;
            best_in = in;
        } else if (count + 3 < best) {
            for (std::size_t v = 0; v < size; ++v) {
                if (in[v]) remove(v);
            }
            for (std::size_t v = 0; v < size; ++v) {
                if (best_in[v]) add(v);
            }
        }
    }
    if (best > solution.size()) {
        solution.clear();
        for (std::size_t v = 0; v < size; ++v) {
            if (best_in[v]) solution.push_back(v);
        }
    }
}

}  // namespace

AvoidanceInstance AvoidanceInstance::from_image(FieldPtr field, std::size_t n, std::vector<std::uint64_t> image) {
    space_size(field->q(), n, kMaxGreedyPoints);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    AvoidanceInstance inst;
    inst.field = std::move(field);
    inst.n = n;
    PointArith arith(*inst.field, n);
    std::vector<std::uint64_t> negated;
    negated.reserve(image.size());
    for (const auto x : image) negated.push_back(arith.neg(x));
    std::sort(negated.begin(), negated.end());
    inst.image_symmetric = negated == image;
    std::vector<std::uint64_t> all;
    std::set_union(image.begin(), image.end(), negated.begin(), negated.end(), std::back_inserter(all));
    for (const auto x : all) {
        if (x != 0) inst.forbidden.push_back(x);
    }
    inst.image = std::move(image);
    return inst;
}

AvoidanceInstance AvoidanceInstance::from_map(const PolynomialMap& phi) {
    return from_image(phi.field(), phi.target_arity(), enumerate_image(phi));
}

std::vector<std::uint64_t> enumerate_image(const PolynomialMap& phi) {
    auto out = phi.image_indices();
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool verify_avoiding(const PointSet& a, const AvoidanceInstance& inst) {
    if (a.arity() != inst.n || !a.field()->same_as(*inst.field)) {
        throw SpecError("point set does not match the instance");
    }
    PointArith arith(*inst.field, inst.n);
    const auto& pts = a.indices();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            if (std::binary_search(inst.image.begin(), inst.image.end(), arith.sub(pts[i], pts[j]))) return false;
        }
    }
    return true;
}

SearchResult greedy_avoiding(const AvoidanceInstance& inst, std::optional<std::uint64_t> seed) {
    const std::uint64_t total = space_size(inst.field->q(), inst.n, kMaxGreedyPoints);
    std::vector<std::uint64_t> order(total);
    std::iota(order.begin(), order.end(), std::uint64_t{0});
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    PointArith arith(*inst.field, inst.n);
    std::vector<bool> blocked(total, false);
    std::vector<std::uint64_t> chosen;
    for (const auto x : order) {
        if (blocked[x]) continue;
        chosen.push_back(x);
        blocked[x] = true;
        for (const auto f : inst.forbidden) blocked[arith.add(x, f)] = true;
    }
    SearchResult result{PointSet(inst.field, inst.n, chosen), chosen.size(), false, total, 0, 0};
    return result;
}

SearchResult max_avoiding_exhaustive(const AvoidanceInstance& inst, std::uint64_t budget) {
    const Field& field = *inst.field;
    const std::uint64_t total = space_size(field.q(), inst.n, kMaxExhaustivePoints);
    PointArith arith(field, inst.n);

    // Vertices are the subgroup H generated by the forbidden set; every coset
    // of H is an isomorphic, disconnected copy.
    const auto group = generated_subgroup(field, inst.n, inst.forbidden);
    const std::size_t size = group.size();
    std::unordered_map<std::uint64_t, std::size_t> vertex_of;
    for (std::size_t v = 0; v < size; ++v) vertex_of.emplace(group[v], v);

    const std::size_t words = (size + 63) / 64;
    std::vector<Bits> adjacency(size, Bits(words, 0));
    for (std::size_t v = 0; v < size; ++v) {
        for (const auto f : inst.forbidden) {
            const std::size_t u = vertex_of.at(arith.add(group[v], f));
            adjacency[v][u / 64] |= std::uint64_t{1} << (u % 64);
        }
    }

    // Initial bound: greedy pass over H in index order with 0 first.
    std::vector<std::size_t> greedy;
    {
        std::vector<bool> blocked(size, false);
        for (std::size_t v = 0; v < size; ++v) {
            if (blocked[v]) continue;
            greedy.push_back(v);
            for (std::size_t u = 0; u < size; ++u) {
                if ((adjacency[v][u / 64] >> (u % 64)) & 1) blocked[u] = true;
            }
        }
    }

    // A short probe settles easy instances. Otherwise the seed is improved by
    // local search and the search restarts with the rest of the budget.
    const std::uint64_t probe_budget = std::min<std::uint64_t>(budget, kProbeNodes);
    IndependentSetSolver probe(size, adjacency, probe_budget);
    probe.seed(greedy);
    probe.run(0);
    std::vector<std::size_t> best = probe.best();
    bool complete = probe.complete();
    std::uint64_t nodes = probe.nodes();
    if (!complete && budget > probe_budget) {
        std::vector<std::vector<std::uint32_t>> nbrs(size);
        for (std::size_t v = 0; v < size; ++v) {
            for (std::size_t u = 0; u < size; ++u) {
                if ((adjacency[v][u / 64] >> (u % 64)) & 1) nbrs[v].push_back(static_cast<std::uint32_t>(u));
            }
        }
        improve_independent_set(nbrs, best, kLocalSearchRounds);
        IndependentSetSolver solver(size, adjacency, budget - nodes);
        solver.seed(best);
        solver.run(0);
        best = solver.best();
        complete = solver.complete();
        nodes += solver.nodes();
    }

    std::vector<std::uint64_t> local;
    for (const auto v : best) local.push_back(group[v]);

    // Translate the coset solution by a transversal of H.
    std::vector<bool> covered(total, false);
    std::vector<std::uint64_t> chosen;
    std::size_t cosets = 0;
    for (std::uint64_t x = 0; x < total; ++x) {
        if (covered[x]) continue;
        ++cosets;
        for (const auto h : group) covered[arith.add(x, h)] = true;
        for (const auto a : local) chosen.push_back(arith.add(x, a));
    }
    SearchResult result{PointSet(inst.field, inst.n, chosen), chosen.size(), complete, nodes,
                        size, cosets};
    return result;
}

}  // namespace ffpm
