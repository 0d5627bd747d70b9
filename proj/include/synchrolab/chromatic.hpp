#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "synchrolab/errors.hpp"
#include "synchrolab/numeric.hpp"
#include "synchrolab/polynomial.hpp"

namespace synchrolab {

// Loop-free unless has_loop is set; parallel edges collapse on construction.
struct SimpleGraph {
    int v = 0;
    std::vector<std::pair<int, int>> edges;  // sorted, unique, first < second
    bool has_loop = false;

    static SimpleGraph from_edges(int v, std::vector<std::pair<int, int>> raw) {
        SimpleGraph g;
        g.v = v;
        for (auto [a, b] : raw) {
            if (a < 0 || a >= v || b < 0 || b >= v)
                throw std::invalid_argument("SimpleGraph: endpoint out of range");
            if (a == b) {
                g.has_loop = true;
                continue;
            }
            g.edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(g.edges.begin(), g.edges.end());
        g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
        return g;
    }
};

// Circulant graph C_n(offsets): edge {r, s} iff |r - s|_n is an offset.
inline SimpleGraph circulant_graph(int n, const std::set<int>& offsets) {
    if (n < 1) throw std::invalid_argument("circulant_graph: n must be positive");
    if (offsets.empty()) throw std::invalid_argument("circulant_graph: offsets must be nonempty");
    for (int i : offsets)
        if (i < 1 || i > n / 2)
            throw std::invalid_argument("circulant_graph: offset out of range");
    std::vector<std::pair<int, int>> raw;
    for (int i : offsets)
        for (int r = 0; r < n; ++r) raw.emplace_back(r, (r + i) % n);
    return SimpleGraph::from_edges(n, std::move(raw));
}

namespace detail {

inline IntPolynomial tree_poly(int vertices) {
    // x (x-1)^{v-1}
    return IntPolynomial({0, 1}) * IntPolynomial::linear(-1).pow(static_cast<unsigned>(vertices - 1));
}

inline IntPolynomial cycle_poly(int length) {
    // (x-1)^l + (-1)^l (x-1)
    IntPolynomial p = IntPolynomial::linear(-1).pow(static_cast<unsigned>(length));
    IntPolynomial corr = IntPolynomial::linear(-1);
    return length % 2 == 0 ? p + corr : p - corr;
}

using EdgeList = std::vector<std::pair<int, int>>;
using ChromaticMemo = std::map<std::string, IntPolynomial>;

inline std::string edge_key(int v, const EdgeList& edges) {
    std::string key = std::to_string(v);
    for (auto [a, b] : edges) {
        key += ';';
        key += std::to_string(a);
        key += ',';
        key += std::to_string(b);
    }
    return key;
}

inline IntPolynomial chromatic_rec(int v, EdgeList edges, ChromaticMemo& memo);

// Chromatic polynomial of a connected component with vertices relabeled
// to 0..v-1; tree and cycle components short-circuit to closed forms.
inline IntPolynomial chromatic_component(int v, EdgeList edges, ChromaticMemo& memo) {
    const int e = static_cast<int>(edges.size());
    if (e == v - 1) return tree_poly(v);
    if (e == v) {
        std::vector<int> deg(static_cast<size_t>(v), 0);
        for (auto [a, b] : edges) {
            ++deg[static_cast<size_t>(a)];
            ++deg[static_cast<size_t>(b)];
        }
        if (std::all_of(deg.begin(), deg.end(), [](int d) { return d == 2; }))
            return cycle_poly(v);
    }

    std::string key = edge_key(v, edges);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    // pick a non-bridge edge: its removal must keep the endpoints connected
    size_t pick = edges.size();
    for (size_t cand = 0; cand < edges.size(); ++cand) {
        auto [s, t] = edges[cand];
        std::vector<std::vector<int>> adj(static_cast<size_t>(v));
        for (size_t k = 0; k < edges.size(); ++k) {
            if (k == cand) continue;
            adj[static_cast<size_t>(edges[k].first)].push_back(edges[k].second);
            adj[static_cast<size_t>(edges[k].second)].push_back(edges[k].first);
        }
        std::vector<bool> seen(static_cast<size_t>(v), false);
        std::vector<int> stack{s};
        seen[static_cast<size_t>(s)] = true;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int nb : adj[static_cast<size_t>(cur)])
                if (!seen[static_cast<size_t>(nb)]) {
                    seen[static_cast<size_t>(nb)] = true;
                    stack.push_back(nb);
                }
        }
        if (seen[static_cast<size_t>(t)]) {
            pick = cand;
            break;
        }
    }
    // e > v-1 on a connected component guarantees a cycle, hence a non-bridge
    auto [s, t] = edges[pick];

    EdgeList deleted = edges;
    deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(pick));

    // contract t into s, relabel vertices above t down by one
    EdgeList contracted;
    contracted.reserve(edges.size() - 1);
    for (size_t k = 0; k < edges.size(); ++k) {
        if (k == pick) continue;
        auto remap = [&](int x) {
            if (x == t) x = s;
            return x > t ? x - 1 : x;
        };
        int a = remap(edges[k].first), b = remap(edges[k].second);
        contracted.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(contracted.begin(), contracted.end());
    contracted.erase(std::unique(contracted.begin(), contracted.end()), contracted.end());

    IntPolynomial result =
        chromatic_rec(v, std::move(deleted), memo) - chromatic_rec(v - 1, std::move(contracted), memo);
    memo.emplace(std::move(key), result);
    return result;
}

// Splits into connected components and multiplies their polynomials.
inline IntPolynomial chromatic_rec(int v, EdgeList edges, ChromaticMemo& memo) {
    std::vector<int> comp(static_cast<size_t>(v), -1);
    int comp_count = 0;
    {
        std::vector<std::vector<int>> adj(static_cast<size_t>(v));
        for (auto [a, b] : edges) {
            adj[static_cast<size_t>(a)].push_back(b);
            adj[static_cast<size_t>(b)].push_back(a);
        }
        for (int root = 0; root < v; ++root) {
            if (comp[static_cast<size_t>(root)] != -1) continue;
            comp[static_cast<size_t>(root)] = comp_count;
            std::vector<int> stack{root};
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                for (int nb : adj[static_cast<size_t>(cur)])
                    if (comp[static_cast<size_t>(nb)] == -1) {
                        comp[static_cast<size_t>(nb)] = comp_count;
                        stack.push_back(nb);
                    }
            }
            ++comp_count;
        }
    }

    IntPolynomial result = IntPolynomial::constant(1);
    for (int c = 0; c < comp_count; ++c) {
        std::vector<int> local(static_cast<size_t>(v), -1);
        int size = 0;
        for (int q = 0; q < v; ++q)
            if (comp[static_cast<size_t>(q)] == c) local[static_cast<size_t>(q)] = size++;
        if (size == 1) {
            result = result * IntPolynomial({0, 1});
            continue;
        }
        EdgeList sub;
        for (auto [a, b] : edges)
            if (comp[static_cast<size_t>(a)] == c)
                sub.emplace_back(local[static_cast<size_t>(a)], local[static_cast<size_t>(b)]);
        std::sort(sub.begin(), sub.end());
        result = result * chromatic_component(size, std::move(sub), memo);
    }
    return result;
}

} // namespace detail

// Deletion-contraction with component splitting, tree/cycle closed forms,
// and memoization keyed on the relabeled edge list.
inline IntPolynomial chromatic_poly(const SimpleGraph& g, int max_vertices = 14) {
    if (g.has_loop) return IntPolynomial::zero();
    if (g.v > max_vertices)
        throw capacity_error("chromatic_poly: vertex count exceeds configured limit");
    if (g.v == 0) return IntPolynomial::constant(1);
    detail::ChromaticMemo memo;
    return detail::chromatic_rec(g.v, g.edges, memo);
}

// P_i(x) = ((x-1)^{l_i} + (-1)^{l_i} (x-1))^{n/l_i} with l_i = n/gcd(n,i).
inline IntPolynomial closed_form_Pi(int n, int i) {
    if (n < 2) throw std::invalid_argument("closed_form_Pi: n must be >= 2");
    if (i < 1 || i > n / 2) throw std::invalid_argument("closed_form_Pi: i out of range");
    const int l = n / std::gcd(n, i);
    return detail::cycle_poly(l).pow(static_cast<unsigned>(n / l));
}

// E[D] = n/2 - sum_i P_i(n)/n^n, exactly.
inline BigRational expected_D(int n) {
    if (n < 2) throw std::invalid_argument("expected_D: n must be >= 2");
    const int half = n / 2;
    const BigInt nn = big_pow(n, static_cast<unsigned>(n));
    BigRational sum = 0;
    for (int i = 1; i <= half; ++i)
        sum += BigRational(closed_form_Pi(n, i).eval(n), nn);
    return BigRational(half) - sum;
}

// Var[D] = sum_i (P_i(n)/n^n - P_i(n)^2/n^{2n})
//        + 2 sum_{i<j} (P_{i,j}(n)/n^n - P_i(n) P_j(n)/n^{2n}), exactly.
// P_{i,j} comes from deletion-contraction, so n is capacity-limited.
inline BigRational variance_D(int n, int max_chromatic_n = 14) {
    if (n < 2) throw std::invalid_argument("variance_D: n must be >= 2");
    if (n > max_chromatic_n)
        throw capacity_error("variance_D: n exceeds the chromatic capacity limit");
    const int half = n / 2;
    const BigInt nn = big_pow(n, static_cast<unsigned>(n));
    const BigInt nn2 = nn * nn;

    std::vector<BigInt> pi(static_cast<size_t>(half) + 1);
    for (int i = 1; i <= half; ++i) pi[static_cast<size_t>(i)] = closed_form_Pi(n, i).eval(n);

    BigRational var = 0;
    for (int i = 1; i <= half; ++i) {
        const BigInt& p = pi[static_cast<size_t>(i)];
        var += BigRational(p, nn) - BigRational(p * p, nn2);
    }
    for (int i = 1; i <= half; ++i)
        for (int j = i + 1; j <= half; ++j) {
            BigInt pij = chromatic_poly(circulant_graph(n, {i, j}), max_chromatic_n).eval(n);
            BigRational cov = BigRational(pij, nn) -
                              BigRational(pi[static_cast<size_t>(i)] * pi[static_cast<size_t>(j)], nn2);
            var += 2 * cov;
        }
    return var;
}

struct RatioBound {
    BigRational ratio;  // P_i(n) / n^n
    double bound = 0;
    bool holds = false;
};

// Exponential upper bound on P_i(n)/n^n, split by cycle length l_i.
inline RatioBound ratio_bound_check(int n, int i) {
    if (n < 2) throw std::invalid_argument("ratio_bound_check: n must be >= 2");
    if (i < 1 || i > n / 2) throw std::invalid_argument("ratio_bound_check: i out of range");
    RatioBound out;
    out.ratio = BigRational(closed_form_Pi(n, i).eval(n), big_pow(n, static_cast<unsigned>(n)));
    const int l = n / std::gcd(n, i);
    const double nd = n;
    out.bound = l == 2 ? std::exp(-1.0 + 0.5 * nd / (nd - 1.0))
                       : std::exp(-1.0 + nd / (3.0 * (nd - 1.0) * (nd - 1.0)));
    out.holds = rational_to_double(out.ratio) <= out.bound;
    return out;
}

struct Theorem22Bound {
    double eta_star = 0;
    double bound = 0;
};

// Lower bound on the synchronization probability in terms of Var[D];
// vacuous (<= 0) values are reported verbatim.
inline Theorem22Bound theorem22_bound(int n, double epsilon, int max_chromatic_n = 14) {
    const double eps_max = 0.5 - std::exp(-1.0);
    if (!(epsilon > 0.0 && epsilon < eps_max))
        throw std::invalid_argument("theorem22_bound: epsilon must lie in (0, 1/2 - 1/e)");
    const double half = n / 2;
    const double nd = n;
    Theorem22Bound out;
    out.eta_star = half * (1.0 - std::exp(nd / (3.0 * (nd - 1.0) * (nd - 1.0)) - 1.0)) - 1.0;
    const double dev = epsilon * half - 1.0;
    const double var = rational_to_double(variance_D(n, max_chromatic_n));
    out.bound = 1.0 - half * std::exp(-dev * dev / (2.0 * nd)) - var / (dev * dev);
    return out;
}

} // namespace synchrolab
