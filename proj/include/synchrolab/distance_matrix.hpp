#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "synchrolab/dfa.hpp"

namespace synchrolab {

// n-cyclic absolute value: min((r)_n, (-r)_n), in [0, n/2].
inline int cyclic_abs(long long r, int n) {
    if (n < 1) throw std::invalid_argument("cyclic_abs: n must be positive");
    long long m = r % n;
    if (m < 0) m += n;
    long long neg = (n - m) % n;
    return static_cast<int>(std::min(m, neg));
}

// T_b(i,j) = |b_j - b_{(j+i)_n}|_n for 1 <= i <= n/2, 0 <= j <= n-1.
// Rows are indexed 1..n/2; storage is 0-based with rows[i-1][j].
struct DistanceMatrix {
    int n = 0;
    std::vector<std::vector<int>> rows;

    int row_count() const { return n / 2; }
    int entry(int i, int j) const { return rows[static_cast<size_t>(i - 1)][static_cast<size_t>(j)]; }
    bool row_has_zero(int i) const {
        const auto& r = rows[static_cast<size_t>(i - 1)];
        return std::find(r.begin(), r.end(), 0) != r.end();
    }
};

inline DistanceMatrix build_matrix(const CircularMapping& m) {
    if (m.n < 2) throw std::invalid_argument("build_matrix: n must be >= 2");
    DistanceMatrix t;
    t.n = m.n;
    const int half = m.n / 2;
    t.rows.resize(static_cast<size_t>(half));
    for (int i = 1; i <= half; ++i) {
        auto& row = t.rows[static_cast<size_t>(i - 1)];
        row.resize(static_cast<size_t>(m.n));
        for (int j = 0; j < m.n; ++j)
            row[static_cast<size_t>(j)] =
                cyclic_abs(m.b[static_cast<size_t>(j)] - m.b[static_cast<size_t>((j + i) % m.n)], m.n);
    }
    return t;
}

// Row/zero statistics of T_b: R_i, z_i, D_i, D, Z0, Z1.
struct MatrixStats {
    int n = 0;
    std::vector<int> R;      // distinct entries per row
    std::vector<int> z;      // zero count per row
    std::vector<int> Dflag;  // 1 iff row contains a zero
    int D = 0;
    int Z0 = 0;
    long long Z1 = 0;        // sum over rows of z_i choose 2
    int min_R() const { return R.empty() ? 0 : *std::min_element(R.begin(), R.end()); }
};

inline MatrixStats analyze_matrix(const DistanceMatrix& t) {
    MatrixStats s;
    s.n = t.n;
    const int half = t.row_count();
    s.R.reserve(static_cast<size_t>(half));
    s.z.reserve(static_cast<size_t>(half));
    s.Dflag.reserve(static_cast<size_t>(half));
    std::vector<bool> seen;
    for (int i = 1; i <= half; ++i) {
        const auto& row = t.rows[static_cast<size_t>(i - 1)];
        seen.assign(static_cast<size_t>(half) + 1, false);
        int distinct = 0, zeros = 0;
        for (int v : row) {
            if (!seen[static_cast<size_t>(v)]) {
                seen[static_cast<size_t>(v)] = true;
                ++distinct;
            }
            if (v == 0) ++zeros;
        }
        s.R.push_back(distinct);
        s.z.push_back(zeros);
        s.Dflag.push_back(zeros > 0 ? 1 : 0);
        s.D += zeros > 0 ? 1 : 0;
        s.Z0 += zeros;
        s.Z1 += static_cast<long long>(zeros) * (zeros - 1) / 2;
    }
    return s;
}

// Membership in E_row(alpha) and E_zero(beta).
inline std::pair<bool, bool> in_events(const MatrixStats& s, double alpha, double beta) {
    if (alpha <= 0 || alpha > 1 || beta <= 0 || beta > 1)
        throw std::invalid_argument("in_events: alpha, beta must lie in (0, 1]");
    const double half = s.n / 2;
    bool in_row = static_cast<double>(s.min_R()) >= alpha * half;
    bool in_zero = static_cast<double>(s.D) >= beta * half;
    return {in_row, in_zero};
}

// Per-distance merge plans, a sufficient condition for synchronization:
// a pair at distance i merges after one application of b (row i has a
// zero) or after two (row i holds a value j whose row has a zero).
struct SyncCertificate {
    struct Plan {
        enum class Kind { Depth1, Depth2 };
        Kind kind = Kind::Depth1;
        int column = 0;   // Depth1: zero column of row i; Depth2: column of value j
        int value = 0;    // Depth2 only: the intermediate distance j
        int column2 = 0;  // Depth2 only: zero column of row j
    };
    int n = 0;
    std::vector<Plan> plans;  // plans[i-1] covers distance i
};

// Depth1 preferred over Depth2; smallest column index wins within each.
inline std::optional<SyncCertificate> matrix_sync_certificate(const DistanceMatrix& t) {
    const int half = t.row_count();
    std::vector<int> first_zero(static_cast<size_t>(half) + 1, -1);
    for (int i = 1; i <= half; ++i) {
        const auto& row = t.rows[static_cast<size_t>(i - 1)];
        for (int j = 0; j < t.n; ++j)
            if (row[static_cast<size_t>(j)] == 0) {
                first_zero[static_cast<size_t>(i)] = j;
                break;
            }
    }
    SyncCertificate cert;
    cert.n = t.n;
    cert.plans.resize(static_cast<size_t>(half));
    for (int i = 1; i <= half; ++i) {
        auto& plan = cert.plans[static_cast<size_t>(i - 1)];
        if (first_zero[static_cast<size_t>(i)] >= 0) {
            plan.kind = SyncCertificate::Plan::Kind::Depth1;
            plan.column = first_zero[static_cast<size_t>(i)];
            continue;
        }
        const auto& row = t.rows[static_cast<size_t>(i - 1)];
        bool found = false;
        for (int k = 0; k < t.n && !found; ++k) {
            int j = row[static_cast<size_t>(k)];
            if (j >= 1 && first_zero[static_cast<size_t>(j)] >= 0) {
                plan.kind = SyncCertificate::Plan::Kind::Depth2;
                plan.column = k;
                plan.value = j;
                plan.column2 = first_zero[static_cast<size_t>(j)];
                found = true;
            }
        }
        if (!found) return std::nullopt;
    }
    return cert;
}

namespace detail {
inline int t_entry(const CircularMapping& m, int i, int j) {
    return cyclic_abs(m.b[static_cast<size_t>(j)] - m.b[static_cast<size_t>((j + i) % m.n)], m.n);
}
} // namespace detail

// Builds a verified reset word for make_circular(b) out of a certificate,
// merging the smallest pair of the current set with a^l b or a^l1 b a^l2 b.
inline Word certificate_to_reset_word(const CircularMapping& m, const SyncCertificate& cert) {
    const int n = m.n;
    const Dfa dfa = make_circular(m);
    StateSet set = StateSet::full(n);
    Word word;

    auto emit_shift_b = [&](Word& w, int shift) {
        for (int s = 0; s < shift; ++s) w.push_back(0);
        w.push_back(1);
    };

    while (set.count() > 1) {
        auto states = set.states();
        const int p = states[0], q = states[1];
        const int i = cyclic_abs(q - p, n);
        // representative column r with {r, (r+i)_n} == {p, q}
        const int r = ((q - p) % n + n) % n == i ? p : q;
        const auto& plan = cert.plans[static_cast<size_t>(i - 1)];
        Word segment;
        if (plan.kind == SyncCertificate::Plan::Kind::Depth1) {
            if (detail::t_entry(m, i, plan.column) != 0)
                throw std::logic_error("certificate_to_reset_word: stale Depth1 plan");
            emit_shift_b(segment, ((plan.column - r) % n + n) % n);
        } else {
            const int j = plan.value;
            if (detail::t_entry(m, i, plan.column) != j || detail::t_entry(m, j, plan.column2) != 0)
                throw std::logic_error("certificate_to_reset_word: stale Depth2 plan");
            emit_shift_b(segment, ((plan.column - r) % n + n) % n);
            const int u = m.b[static_cast<size_t>(plan.column)];
            const int v = m.b[static_cast<size_t>((plan.column + i) % n)];
            const int mm = ((v - u) % n + n) % n == j ? u : v;
            emit_shift_b(segment, ((plan.column2 - mm) % n + n) % n);
        }
        const int before = set.count();
        set = apply_word(dfa, set, segment);
        if (set.count() >= before)
            throw std::logic_error("certificate_to_reset_word: merge step did not reduce the set");
        word.insert(word.end(), segment.begin(), segment.end());
    }
    if (apply_word(dfa, StateSet::full(n), word).count() != 1)
        throw std::logic_error("certificate_to_reset_word: word does not reset");
    return word;
}

} // namespace synchrolab
