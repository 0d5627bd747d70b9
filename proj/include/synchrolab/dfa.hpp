#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "synchrolab/errors.hpp"

namespace synchrolab {

// A word is a sequence of letter indices, applied left to right.
using Word = std::vector<int>;

// Complete deterministic finite automaton: n states, k total maps.
struct Dfa {
    int n = 0;
    std::vector<std::vector<int>> letters;

    Dfa() = default;
    Dfa(int n_, std::vector<std::vector<int>> letters_)
        : n(n_), letters(std::move(letters_)) {
        if (n < 1) throw std::invalid_argument("Dfa: n must be >= 1");
        if (letters.empty()) throw std::invalid_argument("Dfa: need at least one letter");
        for (const auto& m : letters) {
            if (static_cast<int>(m.size()) != n)
                throw std::invalid_argument("Dfa: letter map has wrong length");
            for (int v : m)
                if (v < 0 || v >= n)
                    throw std::invalid_argument("Dfa: letter image out of range");
        }
    }

    int letter_count() const { return static_cast<int>(letters.size()); }
};

// Subset of [0, n-1] with set semantics.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(int n) : n_(n), member_(static_cast<size_t>(n), false) {}

    static StateSet full(int n) {
        StateSet s(n);
        std::fill(s.member_.begin(), s.member_.end(), true);
        s.count_ = n;
        return s;
    }
    static StateSet singleton(int n, int q) {
        StateSet s(n);
        s.insert(q);
        return s;
    }

    int universe() const { return n_; }
    int count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool contains(int q) const { return member_[static_cast<size_t>(q)]; }

    void insert(int q) {
        if (!member_[static_cast<size_t>(q)]) {
            member_[static_cast<size_t>(q)] = true;
            ++count_;
        }
    }

    std::vector<int> states() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count_));
        for (int q = 0; q < n_; ++q)
            if (member_[static_cast<size_t>(q)]) out.push_back(q);
        return out;
    }

    bool operator==(const StateSet& o) const {
        return n_ == o.n_ && member_ == o.member_;
    }

private:
    int n_ = 0;
    int count_ = 0;
    std::vector<bool> member_;
};

// The mapping b = (b_0, ..., b_{n-1}), an element of M_n.
struct CircularMapping {
    int n = 0;
    std::vector<int> b;

    CircularMapping() = default;
    CircularMapping(int n_, std::vector<int> b_) : n(n_), b(std::move(b_)) {
        if (n < 1) throw std::invalid_argument("CircularMapping: n must be >= 1");
        if (static_cast<int>(b.size()) != n)
            throw std::invalid_argument("CircularMapping: vector length must equal n");
        for (int v : b)
            if (v < 0 || v >= n)
                throw std::invalid_argument("CircularMapping: value out of range");
    }

    bool is_permutation() const {
        std::vector<bool> seen(static_cast<size_t>(n), false);
        for (int v : b) {
            if (seen[static_cast<size_t>(v)]) return false;
            seen[static_cast<size_t>(v)] = true;
        }
        return true;
    }
};

// Cerny automaton C_n: letter a is the cyclic shift, letter b is the
// identity except for the edge n-1 -> 0.
inline Dfa make_cerny(int n) {
    if (n < 2) throw std::invalid_argument("make_cerny: n must be >= 2");
    std::vector<int> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        a[static_cast<size_t>(i)] = (i + 1) % n;
        b[static_cast<size_t>(i)] = i;
    }
    b[static_cast<size_t>(n - 1)] = 0;
    return Dfa(n, {std::move(a), std::move(b)});
}

// Circular automaton A_n(b): letter 0 is the cyclic right shift, letter 1 is b.
inline Dfa make_circular(const CircularMapping& m) {
    std::vector<int> a(static_cast<size_t>(m.n));
    for (int i = 0; i < m.n; ++i) a[static_cast<size_t>(i)] = (i + 1) % m.n;
    return Dfa(m.n, {std::move(a), m.b});
}

inline StateSet apply_word(const Dfa& dfa, const StateSet& s, const Word& w) {
    if (s.empty()) throw std::invalid_argument("apply_word: empty state set");
    std::vector<int> cur = s.states();
    for (int letter : w) {
        if (letter < 0 || letter >= dfa.letter_count())
            throw std::invalid_argument("apply_word: letter index out of range");
        const auto& map = dfa.letters[static_cast<size_t>(letter)];
        for (int& q : cur) q = map[static_cast<size_t>(q)];
    }
    StateSet out(dfa.n);
    for (int q : cur) out.insert(q);
    return out;
}

namespace detail {

// Canonical index of the unordered pair {p, q} with p <= q.
inline int pair_index(int n, int p, int q) {
    if (p > q) std::swap(p, q);
    return p * n + q;
}

inline std::vector<std::vector<std::vector<int>>> preimages(const Dfa& dfa) {
    std::vector<std::vector<std::vector<int>>> inv(
        static_cast<size_t>(dfa.letter_count()),
        std::vector<std::vector<int>>(static_cast<size_t>(dfa.n)));
    for (int l = 0; l < dfa.letter_count(); ++l)
        for (int q = 0; q < dfa.n; ++q)
            inv[static_cast<size_t>(l)][static_cast<size_t>(dfa.letters[static_cast<size_t>(l)][static_cast<size_t>(q)])]
                .push_back(q);
    return inv;
}

// Backward BFS in the pair automaton from the singleton nodes.
// reachable[pair_index(p,q)] is true iff {p,q} can be merged.
inline std::vector<bool> mergeable_pairs(const Dfa& dfa) {
    const int n = dfa.n;
    auto inv = preimages(dfa);
    std::vector<bool> reach(static_cast<size_t>(n) * static_cast<size_t>(n), false);
    std::queue<std::pair<int, int>> queue;
    for (int q = 0; q < n; ++q) {
        reach[static_cast<size_t>(pair_index(n, q, q))] = true;
        queue.emplace(q, q);
    }
    while (!queue.empty()) {
        auto [p, q] = queue.front();
        queue.pop();
        for (int l = 0; l < dfa.letter_count(); ++l) {
            const auto& ip = inv[static_cast<size_t>(l)][static_cast<size_t>(p)];
            const auto& iq = inv[static_cast<size_t>(l)][static_cast<size_t>(q)];
            for (int a : ip)
                for (int b : iq) {
                    int idx = pair_index(n, a, b);
                    if (!reach[static_cast<size_t>(idx)]) {
                        reach[static_cast<size_t>(idx)] = true;
                        queue.emplace(std::min(a, b), std::max(a, b));
                    }
                }
        }
    }
    return reach;
}

// Shortest word merging the pair {p, q}, by forward BFS in the pair
// automaton; letters tried in index order. Empty optional if no such word.
inline std::optional<Word> pair_merge_word(const Dfa& dfa, int p, int q) {
    const int n = dfa.n;
    if (p == q) return Word{};
    std::vector<int> prev(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
    std::vector<int8_t> via(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
    const int start = pair_index(n, p, q);
    prev[static_cast<size_t>(start)] = start;
    std::queue<int> queue;
    queue.push(start);
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop();
        int cp = cur / n, cq = cur % n;
        for (int l = 0; l < dfa.letter_count(); ++l) {
            int np = dfa.letters[static_cast<size_t>(l)][static_cast<size_t>(cp)];
            int nq = dfa.letters[static_cast<size_t>(l)][static_cast<size_t>(cq)];
            int nxt = pair_index(n, np, nq);
            if (prev[static_cast<size_t>(nxt)] != -1) continue;
            prev[static_cast<size_t>(nxt)] = cur;
            via[static_cast<size_t>(nxt)] = static_cast<int8_t>(l);
            if (np == nq) {
                Word w;
                for (int at = nxt; at != start; at = prev[static_cast<size_t>(at)])
                    w.push_back(via[static_cast<size_t>(at)]);
                std::reverse(w.begin(), w.end());
                return w;
            }
            queue.push(nxt);
        }
    }
    return std::nullopt;
}

} // namespace detail

// Pair-automaton test: the automaton synchronizes iff every unordered pair of
// states can reach a singleton in the pair automaton.
inline bool is_synchronizing(const Dfa& dfa) {
    if (dfa.n == 1) return true;
    auto reach = detail::mergeable_pairs(dfa);
    for (int p = 0; p < dfa.n; ++p)
        for (int q = p + 1; q < dfa.n; ++q)
            if (!reach[static_cast<size_t>(detail::pair_index(dfa.n, p, q))]) return false;
    return true;
}

// Exact shortest reset word by BFS on the subset lattice starting from Q.
// Letters are explored in index order, so among equal-length reset words
// the first one discovered is returned (deterministic).
inline std::optional<Word> shortest_reset_word(const Dfa& dfa, int max_exact_n = 20) {
    const int n = dfa.n;
    if (n > max_exact_n)
        throw capacity_error("shortest_reset_word: n exceeds exact-search limit");
    if (n == 1) return Word{};

    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    const size_t space = static_cast<size_t>(full) + 1;
    std::vector<uint32_t> prev(space, 0);
    std::vector<int8_t> via(space, -1);
    std::vector<bool> seen(space, false);

    auto image = [&](uint32_t mask, int l) {
        uint32_t out = 0;
        const auto& map = dfa.letters[static_cast<size_t>(l)];
        for (uint32_t m = mask; m;) {
            int q = std::countr_zero(m);
            m &= m - 1;
            out |= 1u << map[static_cast<size_t>(q)];
        }
        return out;
    };

    std::queue<uint32_t> queue;
    seen[full] = true;
    queue.push(full);
    while (!queue.empty()) {
        uint32_t cur = queue.front();
        queue.pop();
        for (int l = 0; l < dfa.letter_count(); ++l) {
            uint32_t nxt = image(cur, l);
            if (seen[nxt]) continue;
            seen[nxt] = true;
            prev[nxt] = cur;
            via[nxt] = static_cast<int8_t>(l);
            if (std::popcount(nxt) == 1) {
                Word w;
                for (uint32_t at = nxt; at != full; at = prev[at]) w.push_back(via[at]);
                std::reverse(w.begin(), w.end());
                return w;
            }
            queue.push(nxt);
        }
    }
    return std::nullopt;
}

// Reset word by pairwise concatenation: repeatedly merge the
// lexicographically smallest pair of the current set with a shortest
// pair-BFS word. Not necessarily minimal; verified before return.
inline std::optional<Word> greedy_reset_word(const Dfa& dfa) {
    if (dfa.n == 1) return Word{};
    StateSet set = StateSet::full(dfa.n);
    Word word;
    while (set.count() > 1) {
        auto states = set.states();
        auto merge = detail::pair_merge_word(dfa, states[0], states[1]);
        if (!merge) return std::nullopt;
        word.insert(word.end(), merge->begin(), merge->end());
        set = apply_word(dfa, set, *merge);
    }
    if (apply_word(dfa, StateSet::full(dfa.n), word).count() != 1)
        throw std::logic_error("greedy_reset_word: constructed word does not reset");
    return word;
}

} // namespace synchrolab
