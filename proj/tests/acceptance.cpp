// Acceptance suite: twelve end-to-end checks of the library against exact
// small-scale oracles and property/trend checks. Prints one PASS/FAIL line
// per criterion and exits nonzero if any fail.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "synchrolab/report.hpp"
#include "synchrolab/synchrolab.hpp"

using namespace synchrolab;

namespace {

int failures = 0;

void report_line(int id, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << what;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

int workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 4 : static_cast<int>(hw);
}

// 1. exhaustive synchronizing counts at prime order equal p^p - p!
void criterion_1() {
    bool ok = true;
    std::string detail;
    for (int p : {2, 3, 5, 7}) {
        auto res = prime_criterion_check(p, workers());
        BigInt expected = big_pow(p, static_cast<unsigned>(p)) - factorial(static_cast<unsigned>(p));
        if (BigInt(res.sync_count) != expected) ok = false;
        detail += (detail.empty() ? "" : ", ") + std::to_string(p) + ":" + std::to_string(res.sync_count);
    }
    report_line(1, "exhaustive prime-order synchronizing counts equal p^p - p!", ok, detail);
}

// 2. prime criterion holds exhaustively; composite counterexample exists
void criterion_2() {
    bool ok = true;
    for (int p : {2, 3, 5, 7})
        if (!prime_criterion_check(p, workers()).criterion_holds) ok = false;
    CircularMapping w(4, {0, 0, 2, 2});
    if (w.is_permutation() || is_synchronizing(make_circular(w))) ok = false;
    report_line(2, "sync <=> non-permutation at prime order; composite counterexample at n=4", ok);
}

// 3. extremal automaton reset lengths are exactly (n-1)^2
void criterion_3() {
    bool ok = true;
    std::string detail;
    for (int n = 3; n <= 8; ++n) {
        auto word = shortest_reset_word(make_cerny(n));
        size_t len = word ? word->size() : 0;
        if (!word || len != static_cast<size_t>((n - 1) * (n - 1))) ok = false;
        detail += (detail.empty() ? "" : ", ") + std::to_string(n) + ":" + std::to_string(len);
    }
    report_line(3, "shortest reset word of C_n has length (n-1)^2 for n in 3..8", ok, detail);
}

// 4. closed-form moment formulas equal enumeration, exactly
void criterion_4() {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
        auto exact = enumerate_exact(n);
        if (exact.mean_D != expected_D(n) || exact.var_D != variance_D(n)) ok = false;
    }
    if (expected_D(4) != BigRational(71, 64)) ok = false;
    for (int n = 2; n <= 10; ++n)
        for (int i = 1; i <= n / 2; ++i)
            if (!(closed_form_Pi(n, i) == chromatic_poly(circulant_graph(n, {i})))) ok = false;
    report_line(4, "E[D], Var[D] formulas equal enumeration for n in 2..6; closed form P_i equals deletion-contraction for n <= 10", ok);
}

// 5. E[Z0] = floor(n/2) exactly; E[Z0 - Z1] >= n/4 - 1
void criterion_5() {
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
        auto exact = enumerate_exact(n);
        if (exact.mean_Z0 != BigRational(n / 2)) ok = false;
        if (exact.mean_Z0 - exact.mean_Z1 < BigRational(n / 2, 2) - 1) ok = false;
    }
    report_line(5, "enumeration mean of Z0 equals floor(n/2); mean of Z0 - Z1 >= floor(n/2)/2 - 1", ok);
}

// 6. factorization <=> acyclicity over all multisets of size <= 3 at n=5
void criterion_6() {
    bool ok = true;
    const int n = 5;
    std::vector<std::pair<int, int>> all;
    for (int i = 1; i <= n / 2; ++i)
        for (int j = 0; j < n; ++j) all.emplace_back(i, j);
    auto agree = [&](const std::vector<std::pair<int, int>>& items) {
        IndexMultiset s(n, items);
        return verify_factorization(s) == is_acyclic(s);
    };
    for (size_t a = 0; a < all.size() && ok; ++a) {
        if (!agree({all[a]})) ok = false;
        for (size_t b = a; b < all.size() && ok; ++b) {
            if (!agree({all[a], all[b]})) ok = false;
            for (size_t c = b; c < all.size() && ok; ++c)
                if (!agree({all[a], all[b], all[c]})) ok = false;
        }
    }
    if (verify_factorization(IndexMultiset(5, {{1, 0}, {1, 1}, {2, 0}}))) ok = false;
    report_line(6, "joint law factorizes iff the index multiset is acyclic (n=5, size <= 3)", ok);
}

// 7. non-synchronization frequency <= 10/n and non-increasing across the grid
void criterion_7() {
    bool ok = true;
    std::string detail;
    double prev_lower = 1.0;
    for (int n : {32, 64, 128, 256}) {
        auto est = estimate_sync_prob(n, 10000, 20260826, workers());
        const double f = 1.0 - est.sync.estimate;
        const double f_lower = 1.0 - est.sync.upper;
        if (f > 10.0 / n) ok = false;
        // non-increasing within Wilson intervals: the new interval's lower
        // end must not exceed the previous interval's upper end
        if (f_lower > prev_lower) ok = false;
        prev_lower = 1.0 - est.sync.lower;
        std::ostringstream d;
        d << n << ":" << f;
        detail += (detail.empty() ? "" : ", ") + d.str();
    }
    report_line(7, "non-sync frequency f(n) <= 10/n and non-increasing over {32,64,128,256}", ok, detail);
}

// 8. row/zero event complements are rare and trend downward
void criterion_8() {
    bool ok = true;
    std::string detail;
    double prev_row = 1.0, prev_zero = 1.0;
    double last_row = 1.0, last_zero = 1.0;
    for (int n : {64, 128, 256}) {
        auto row = lemma_row_experiment(n, 10000, 0.05, 20260826, workers());
        auto zero = lemma_zero_experiment(n, 10000, 0.05, 20260826, workers());
        if (row.complement_freq.lower > prev_row) ok = false;
        if (zero.complement_freq.lower > prev_zero) ok = false;
        prev_row = row.complement_freq.upper;
        prev_zero = zero.complement_freq.upper;
        last_row = row.complement_freq.estimate;
        last_zero = zero.complement_freq.estimate;
        std::ostringstream d;
        d << n << ":" << last_row << "/" << last_zero;
        detail += (detail.empty() ? "" : ", ") + d.str();
    }
    if (last_row > 0.1 || last_zero > 0.1) ok = false;
    report_line(8, "P[row event fails] and P[zero event fails] <= 0.1 at n=256, non-increasing", ok, detail);
}

// 9. every certificate is sound: pair BFS confirms, word verifiably resets
void criterion_9() {
    bool ok = true;
    uint64_t with_cert = 0;
    const int n = 101;
    for (uint64_t t = 0; t < 1000; ++t) {
        RngStream stream(20260826, t);
        auto m = sample_mapping(stream, n);
        auto cert = matrix_sync_certificate(build_matrix(m));
        if (!cert) continue;
        ++with_cert;
        Dfa dfa = make_circular(m);
        if (!is_synchronizing(dfa)) {
            ok = false;
            break;
        }
        Word w = certificate_to_reset_word(m, *cert);  // throws on any breach
        if (apply_word(dfa, StateSet::full(n), w).count() != 1) {
            ok = false;
            break;
        }
    }
    report_line(9, "certificates at n=101 are all confirmed and their words reset", ok,
                std::to_string(with_cert) + "/1000 had certificates");
}

// 10. structural identities on every sample; ratio bound for all n <= 30
void criterion_10() {
    bool ok = true;
    // identities on enumerated mappings (checked internally; recheck here)
    for (int n = 2; n <= 5; ++n) {
        std::vector<int> b(static_cast<size_t>(n), 0);
        uint64_t total = 1;
        for (int i = 0; i < n; ++i) total *= static_cast<uint64_t>(n);
        for (uint64_t it = 0; it < total && ok; ++it) {
            auto s = analyze_matrix(build_matrix(CircularMapping(n, b)));
            long long excess = 0;
            for (int zi : s.z) excess += std::max(zi - 1, 0);
            if (s.D != s.Z0 - excess || s.D < s.Z0 - s.Z1) ok = false;
            for (int k = n - 1; k >= 0; --k) {
                if (++b[static_cast<size_t>(k)] < n) break;
                b[static_cast<size_t>(k)] = 0;
            }
        }
    }
    // and on random samples at larger n
    for (uint64_t t = 0; t < 2000 && ok; ++t) {
        RngStream stream(99, t);
        const int n = 2 + static_cast<int>(stream.below(60));
        auto s = analyze_matrix(build_matrix(sample_mapping(stream, n)));
        long long excess = 0;
        for (int zi : s.z) excess += std::max(zi - 1, 0);
        if (s.D != s.Z0 - excess || s.D < s.Z0 - s.Z1) ok = false;
    }
    for (int n = 2; n <= 30 && ok; ++n)
        for (int i = 1; i <= n / 2; ++i)
            if (!ratio_bound_check(n, i).holds) ok = false;
    report_line(10, "zero-count identities on every mapping; chromatic ratio bound for all n <= 30", ok);
}

// 11. sampled Var[Z0]/n, Var[Z1]/n <= 2; exact Var[D]/n finite for n <= 10
void criterion_11() {
    bool ok = true;
    std::string detail;
    for (int n : {64, 128, 256}) {
        auto r = lemma_zero_experiment(n, 10000, 0.05, 20260826, workers());
        const double v0 = r.Z0.variance() / n;
        const double v1 = r.Z1.variance() / n;
        if (v0 > 2.0 || v1 > 2.0) ok = false;
        std::ostringstream d;
        d << n << ":" << v0 << "/" << v1;
        detail += (detail.empty() ? "" : ", ") + d.str();
    }
    for (int n = 2; n <= 10; ++n) {
        BigRational v = variance_D(n);
        const double ratio = rational_to_double(v) / n;
        if (!(std::isfinite(ratio)) || ratio < 0.0) ok = false;
    }
    report_line(11, "Var[Z0]/n and Var[Z1]/n <= 2 on the grid; exact Var[D]/n finite for n <= 10", ok, detail);
}

// 12. identical seeds and configs give byte-identical outputs at 1/4/8 workers
void criterion_12() {
    auto render = [](int threads) {
        std::string out;
        out += report::to_json(mc_experiment(32, 4000, 5, 0.58, 0.45, threads)).dump();
        out += report::to_json(lemma_row_experiment(64, 2000, 0.05, 5, threads)).dump();
        out += report::to_json(lemma_zero_experiment(64, 2000, 0.05, 5, threads)).dump();
        out += report::to_json(claim9_experiment(32, 2000, 5, threads)).dump();
        out += report::to_json(estimate_sync_prob(32, 2000, 5, threads)).dump();
        return out;
    };
    const std::string one = render(1);
    const bool ok = one == render(4) && one == render(8);
    report_line(12, "experiment outputs are byte-identical with 1, 4, and 8 workers", ok);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures) {
        std::cout << failures << " criteria failed" << std::endl;
        return 1;
    }
    std::cout << "all 12 criteria passed" << std::endl;
    return 0;
}
