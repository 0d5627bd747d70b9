#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "synchrolab/distance_matrix.hpp"
#include "synchrolab/errors.hpp"
#include "synchrolab/numeric.hpp"

namespace synchrolab {

// Multiset S of index pairs (i, j), 1 <= i <= n/2, 0 <= j <= n-1.
struct IndexMultiset {
    int n = 0;
    std::vector<std::pair<int, int>> items;

    IndexMultiset() = default;
    IndexMultiset(int n_, std::vector<std::pair<int, int>> items_)
        : n(n_), items(std::move(items_)) {
        if (n < 2) throw std::invalid_argument("IndexMultiset: n must be >= 2");
        for (auto [i, j] : items) {
            if (i < 1 || i > n / 2) throw std::invalid_argument("IndexMultiset: row index out of range");
            if (j < 0 || j >= n) throw std::invalid_argument("IndexMultiset: column index out of range");
        }
    }
};

// Multigraph on Z_n with one edge {j, (j+i)_n} per multiset element.
struct Multigraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // stored with first <= second
};

inline Multigraph associated_multigraph(const IndexMultiset& s) {
    Multigraph g;
    g.n = s.n;
    g.edges.reserve(s.items.size());
    for (auto [i, j] : s.items) {
        int u = j, v = (j + i) % s.n;
        g.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    return g;
}

namespace detail {

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(static_cast<size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[static_cast<size_t>(x)] != x) {
            parent_[static_cast<size_t>(x)] = parent_[static_cast<size_t>(parent_[static_cast<size_t>(x)])];
            x = parent_[static_cast<size_t>(x)];
        }
        return x;
    }
    // false if x and y were already connected (the edge closes a cycle)
    bool unite(int x, int y) {
        int rx = find(x), ry = find(y);
        if (rx == ry) return false;
        parent_[static_cast<size_t>(rx)] = ry;
        return true;
    }

private:
    std::vector<int> parent_;
};

} // namespace detail

// A duplicate edge counts as a 2-cycle (multiset semantics).
inline bool is_acyclic(const IndexMultiset& s) {
    auto g = associated_multigraph(s);
    detail::UnionFind uf(g.n);
    for (auto [u, v] : g.edges)
        if (!uf.unite(u, v)) return false;
    return true;
}

// m_s = #{d in Z_n : |d|_n = s}.
inline int multiplicity(int s, int n) {
    if (n < 1) throw std::invalid_argument("multiplicity: n must be positive");
    if (s == 0) return 1;
    if (n % 2 == 0 && s == n / 2) return 1;
    if (s > 0 && 2 * s < n) return 2;
    return 0;
}

// Exact joint law of the T_b entries indexed by S, as a map from value
// tuples to rational probabilities with denominator n^t.
using JointPmf = std::map<std::vector<int>, BigRational>;

inline std::vector<int> touched_coordinates(const IndexMultiset& s) {
    std::vector<int> coords;
    for (auto [i, j] : s.items) {
        coords.push_back(j);
        coords.push_back((j + i) % s.n);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    return coords;
}

// Enumerates all n^t assignments of the touched coordinates; the
// untouched coordinates integrate out.
inline JointPmf joint_pmf_bruteforce(const IndexMultiset& s, int max_touched = 8) {
    const int n = s.n;
    auto coords = touched_coordinates(s);
    const int t = static_cast<int>(coords.size());
    if (t > max_touched)
        throw capacity_error("joint_pmf_bruteforce: too many touched coordinates");

    std::vector<int> pos(static_cast<size_t>(n), -1);
    for (int idx = 0; idx < t; ++idx) pos[static_cast<size_t>(coords[static_cast<size_t>(idx)])] = idx;

    std::map<std::vector<int>, unsigned long long> counts;
    std::vector<int> assign(static_cast<size_t>(t), 0);
    std::vector<int> tuple(s.items.size(), 0);
    unsigned long long total = 1;
    for (int k = 0; k < t; ++k) total *= static_cast<unsigned long long>(n);

    for (unsigned long long it = 0; it < total; ++it) {
        for (size_t w = 0; w < s.items.size(); ++w) {
            auto [i, j] = s.items[w];
            int bj = assign[static_cast<size_t>(pos[static_cast<size_t>(j)])];
            int bji = assign[static_cast<size_t>(pos[static_cast<size_t>((j + i) % n)])];
            tuple[w] = cyclic_abs(bj - bji, n);
        }
        ++counts[tuple];
        for (int k = t - 1; k >= 0; --k) {  // odometer
            if (++assign[static_cast<size_t>(k)] < n) break;
            assign[static_cast<size_t>(k)] = 0;
        }
    }

    JointPmf pmf;
    const BigInt denom = big_pow(n, static_cast<unsigned>(t));
    for (const auto& [key, cnt] : counts)
        pmf.emplace(key, BigRational(BigInt(cnt), denom));
    return pmf;
}

// Checks the product-form factorization of the joint law over every value
// tuple in [0, n/2]^k, exactly.
inline bool verify_factorization(const IndexMultiset& s, int max_touched = 8) {
    const int n = s.n;
    const size_t k = s.items.size();
    JointPmf pmf = joint_pmf_bruteforce(s, max_touched);
    const BigInt nk = big_pow(n, static_cast<unsigned>(k));

    std::vector<int> tuple(k, 0);
    while (true) {
        BigInt prod = 1;
        for (int v : tuple) prod *= multiplicity(v, n);
        BigRational expected(prod, nk);
        auto it = pmf.find(tuple);
        BigRational actual = it == pmf.end() ? BigRational(0) : it->second;
        if (actual != expected) return false;
        size_t w = k;
        while (w > 0) {
            if (++tuple[w - 1] <= n / 2) break;
            tuple[w - 1] = 0;
            --w;
        }
        if (w == 0) break;
    }
    return true;
}

// C_n(i) decomposes into gcd(n,i) cycles of length n/gcd(n,i); for
// i = n/2 the components are single edges.
inline std::pair<int, int> circulant_structure(int n, int i) {
    if (n < 1) throw std::invalid_argument("circulant_structure: n must be positive");
    if (i < 1 || i > n / 2) throw std::invalid_argument("circulant_structure: i out of range");
    int g = std::gcd(n, i);
    return {g, n / g};
}

} // namespace synchrolab
