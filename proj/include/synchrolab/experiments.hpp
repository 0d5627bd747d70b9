#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "synchrolab/dfa.hpp"
#include "synchrolab/distance_matrix.hpp"
#include "synchrolab/errors.hpp"
#include "synchrolab/numeric.hpp"
#include "synchrolab/rng.hpp"
#include "synchrolab/stats.hpp"

namespace synchrolab {

// One sampled automaton's measured statistics.
struct TrialRecord {
    int n = 0;
    uint64_t trial = 0;
    bool synchronizing = false;
    bool certificate_present = false;
    int D = 0;
    int Z0 = 0;
    long long Z1 = 0;
    int min_R = 0;
    bool in_E_row = false;
    bool in_E_zero = false;
};

inline CircularMapping sample_mapping(RngStream& stream, int n) {
    if (n < 1) throw std::invalid_argument("sample_mapping: n must be >= 1");
    std::vector<int> b(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) b[static_cast<size_t>(i)] = static_cast<int>(stream.below(static_cast<uint64_t>(n)));
    return CircularMapping(n, std::move(b));
}

namespace detail {

// Structural identities every record must satisfy.
inline void enforce_record_invariants(const MatrixStats& s, bool cert, bool sync) {
    long long excess = 0;
    for (int zi : s.z) excess += std::max(zi - 1, 0);
    if (s.D != s.Z0 - excess)
        throw std::logic_error("record invariant breach: D != Z0 - sum max(z_i - 1, 0)");
    if (s.D < s.Z0 - s.Z1)
        throw std::logic_error("record invariant breach: D < Z0 - Z1");
    if (cert && !sync)
        throw std::logic_error("record invariant breach: certificate without synchronization");
}

// Partitions [0, trials) into contiguous chunks, one worker each; partials
// are merged in worker order, so the result is independent of scheduling.
template <typename Partial, typename PerTrial>
Partial run_partitioned(uint64_t trials, int threads, PerTrial per_trial) {
    if (threads < 1) threads = 1;
    if (static_cast<uint64_t>(threads) > trials && trials > 0) threads = static_cast<int>(trials);
    std::vector<Partial> parts(static_cast<size_t>(threads));
    if (threads == 1) {
        for (uint64_t t = 0; t < trials; ++t) per_trial(parts[0], t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        const uint64_t chunk = trials / static_cast<uint64_t>(threads);
        const uint64_t rem = trials % static_cast<uint64_t>(threads);
        uint64_t begin = 0;
        for (int w = 0; w < threads; ++w) {
            const uint64_t end = begin + chunk + (static_cast<uint64_t>(w) < rem ? 1 : 0);
            pool.emplace_back([&, w, begin, end] {
                for (uint64_t t = begin; t < end; ++t) per_trial(parts[static_cast<size_t>(w)], t);
            });
            begin = end;
        }
        for (auto& th : pool) th.join();
    }
    Partial total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Exhaustive enumeration (n <= 6)

struct ExactStats {
    int n = 0;
    uint64_t total = 0;
    uint64_t sync_count = 0;
    uint64_t cert_count = 0;
    BigRational mean_D, var_D, mean_Z0, mean_Z1;
    std::vector<BigRational> mean_R;  // index 0 holds row 1
    std::map<int, uint64_t> dist_D;
};

inline ExactStats enumerate_exact(int n) {
    if (n < 2 || n > 6) throw capacity_error("enumerate_exact: n must lie in [2, 6]");
    ExactStats out;
    out.n = n;
    const int half = n / 2;

    uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<uint64_t>(n);
    out.total = total;

    unsigned long long sum_D = 0, sum_D2 = 0, sum_Z0 = 0, sum_Z1 = 0;
    std::vector<unsigned long long> sum_R(static_cast<size_t>(half), 0);

    std::vector<int> b(static_cast<size_t>(n), 0);
    for (uint64_t it = 0; it < total; ++it) {
        CircularMapping m(n, b);
        const auto stats = analyze_matrix(build_matrix(m));
        const auto cert = matrix_sync_certificate(build_matrix(m));
        const bool sync = is_synchronizing(make_circular(m));
        detail::enforce_record_invariants(stats, cert.has_value(), sync);

        if (sync) ++out.sync_count;
        if (cert) ++out.cert_count;
        sum_D += static_cast<unsigned long long>(stats.D);
        sum_D2 += static_cast<unsigned long long>(stats.D) * static_cast<unsigned long long>(stats.D);
        sum_Z0 += static_cast<unsigned long long>(stats.Z0);
        sum_Z1 += static_cast<unsigned long long>(stats.Z1);
        for (int i = 0; i < half; ++i) sum_R[static_cast<size_t>(i)] += static_cast<unsigned long long>(stats.R[static_cast<size_t>(i)]);
        ++out.dist_D[stats.D];

        for (int k = n - 1; k >= 0; --k) {
            if (++b[static_cast<size_t>(k)] < n) break;
            b[static_cast<size_t>(k)] = 0;
        }
    }

    const BigInt tot(total);
    out.mean_D = BigRational(BigInt(sum_D), tot);
    // population variance: E[D^2] - E[D]^2
    out.var_D = BigRational(BigInt(sum_D2), tot) - out.mean_D * out.mean_D;
    out.mean_Z0 = BigRational(BigInt(sum_Z0), tot);
    out.mean_Z1 = BigRational(BigInt(sum_Z1), tot);
    for (int i = 0; i < half; ++i) out.mean_R.emplace_back(BigInt(sum_R[static_cast<size_t>(i)]), tot);
    return out;
}

// ---------------------------------------------------------------------------
// Prime-order exact results

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// 1 - p!/p^p, exactly.
inline BigRational prime_formula(int p) {
    if (!is_prime(p)) throw std::invalid_argument("prime_formula: p must be prime");
    return BigRational(1) - BigRational(factorial(static_cast<unsigned>(p)), big_pow(p, static_cast<unsigned>(p)));
}

struct PrimeExhaustive {
    int p = 0;
    uint64_t total = 0;
    uint64_t sync_count = 0;
    uint64_t non_permutation_count = 0;
    bool criterion_holds = false;  // synchronizing <=> non-permutation, for every b
};

// Exhausts M_p and checks the prime-order criterion on every mapping.
inline PrimeExhaustive prime_criterion_check(int p, int threads = 1) {
    if (!is_prime(p) || p > 7)
        throw capacity_error("prime_criterion_check: p must be a prime <= 7");
    PrimeExhaustive out;
    out.p = p;
    uint64_t total = 1;
    for (int i = 0; i < p; ++i) total *= static_cast<uint64_t>(p);
    out.total = total;

    struct Partial {
        uint64_t sync = 0, nonperm = 0;
        bool holds = true;
        void merge(const Partial& o) {
            sync += o.sync;
            nonperm += o.nonperm;
            holds = holds && o.holds;
        }
    };
    auto partial = detail::run_partitioned<Partial>(total, threads, [&](Partial& acc, uint64_t code) {
        std::vector<int> b(static_cast<size_t>(p));
        uint64_t c = code;
        for (int k = p - 1; k >= 0; --k) {
            b[static_cast<size_t>(k)] = static_cast<int>(c % static_cast<uint64_t>(p));
            c /= static_cast<uint64_t>(p);
        }
        CircularMapping m(p, std::move(b));
        const bool nonperm = !m.is_permutation();
        const bool sync = is_synchronizing(make_circular(m));
        if (sync) ++acc.sync;
        if (nonperm) ++acc.nonperm;
        if (sync != nonperm) acc.holds = false;
    });
    out.sync_count = partial.sync;
    out.non_permutation_count = partial.nonperm;
    out.criterion_holds = partial.holds;
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo experiments

struct SyncEstimate {
    int n = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;
    Proportion sync;
};

inline SyncEstimate estimate_sync_prob(int n, uint64_t trials, uint64_t seed, int threads = 1) {
    if (trials < 1) throw std::invalid_argument("estimate_sync_prob: trials must be >= 1");
    SyncEstimate out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    if (n == 1) {
        out.sync = wilson_interval(trials, trials);
        return out;
    }
    struct Partial {
        uint64_t sync = 0;
        void merge(const Partial& o) { sync += o.sync; }
    };
    auto partial = detail::run_partitioned<Partial>(trials, threads, [&](Partial& acc, uint64_t t) {
        RngStream stream(seed, t);
        if (is_synchronizing(make_circular(sample_mapping(stream, n)))) ++acc.sync;
    });
    out.sync = wilson_interval(partial.sync, trials);
    return out;
}

// Full per-sample record stream plus aggregated summary.
struct McSummary {
    int n = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;
    double alpha = 0, beta = 0;
    Proportion sync, certificate, in_row, in_zero;
    IntMoments D, Z0, Z1, min_R;
    std::vector<TrialRecord> records;  // filled only when requested
};

inline McSummary mc_experiment(int n, uint64_t trials, uint64_t seed, double alpha, double beta,
                               int threads = 1, bool keep_records = false) {
    if (n < 2) throw std::invalid_argument("mc_experiment: n must be >= 2");
    if (trials < 1) throw std::invalid_argument("mc_experiment: trials must be >= 1");
    McSummary out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    out.alpha = alpha;
    out.beta = beta;

    struct Partial {
        uint64_t sync = 0, cert = 0, row = 0, zero = 0;
        IntMoments D, Z0, Z1, min_R;
        std::vector<TrialRecord> records;
        void merge(const Partial& o) {
            sync += o.sync;
            cert += o.cert;
            row += o.row;
            zero += o.zero;
            D.merge(o.D);
            Z0.merge(o.Z0);
            Z1.merge(o.Z1);
            min_R.merge(o.min_R);
            records.insert(records.end(), o.records.begin(), o.records.end());
        }
    };
    auto partial = detail::run_partitioned<Partial>(trials, threads, [&](Partial& acc, uint64_t t) {
        RngStream stream(seed, t);
        CircularMapping m = sample_mapping(stream, n);
        const auto stats = analyze_matrix(build_matrix(m));
        const bool cert = matrix_sync_certificate(build_matrix(m)).has_value();
        const bool sync = is_synchronizing(make_circular(m));
        detail::enforce_record_invariants(stats, cert, sync);
        const auto [in_row, in_zero] = in_events(stats, alpha, beta);

        if (sync) ++acc.sync;
        if (cert) ++acc.cert;
        if (in_row) ++acc.row;
        if (in_zero) ++acc.zero;
        acc.D.add(stats.D);
        acc.Z0.add(stats.Z0);
        acc.Z1.add(stats.Z1);
        acc.min_R.add(stats.min_R());
        if (keep_records)
            acc.records.push_back(TrialRecord{n, t, sync, cert, stats.D, stats.Z0, stats.Z1,
                                              stats.min_R(), in_row, in_zero});
    });
    out.sync = wilson_interval(partial.sync, trials);
    out.certificate = wilson_interval(partial.cert, trials);
    out.in_row = wilson_interval(partial.row, trials);
    out.in_zero = wilson_interval(partial.zero, trials);
    out.D = partial.D;
    out.Z0 = partial.Z0;
    out.Z1 = partial.Z1;
    out.min_R = partial.min_R;
    out.records = std::move(partial.records);
    return out;
}

struct RowExperimentResult {
    int n = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;
    double epsilon = 0;
    double alpha = 0;            // 1 - 1/e - epsilon
    Proportion complement_freq;  // empirical P[E_row^c(alpha)]
    double lambda_eps = 0;       // (1/4n)(eps * n/2 - 1)^2
    double mcdiarmid_value = 0;  // n/2 * exp(-2 lambda), possibly vacuous
};

inline RowExperimentResult lemma_row_experiment(int n, uint64_t trials, double epsilon,
                                                uint64_t seed, int threads = 1) {
    if (epsilon <= 0) throw std::invalid_argument("lemma_row_experiment: epsilon must be > 0");
    if (static_cast<double>(n) <= 2.0 / epsilon)
        throw std::invalid_argument("lemma_row_experiment: requires n > 2/epsilon");
    RowExperimentResult out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    out.epsilon = epsilon;
    out.alpha = 1.0 - std::exp(-1.0) - epsilon;
    const double half = n / 2;
    out.lambda_eps = (epsilon * half - 1.0) * (epsilon * half - 1.0) / (4.0 * static_cast<double>(n));
    out.mcdiarmid_value = half * std::exp(-2.0 * out.lambda_eps);

    const double threshold = out.alpha * half;
    struct Partial {
        uint64_t bad = 0;
        void merge(const Partial& o) { bad += o.bad; }
    };
    auto partial = detail::run_partitioned<Partial>(trials, threads, [&](Partial& acc, uint64_t t) {
        RngStream stream(seed, t);
        const auto stats = analyze_matrix(build_matrix(sample_mapping(stream, n)));
        if (static_cast<double>(stats.min_R()) < threshold) ++acc.bad;
    });
    out.complement_freq = wilson_interval(partial.bad, trials);
    return out;
}

struct ZeroExperimentResult {
    int n = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;
    double epsilon = 0;
    double beta = 0;             // 1/2 - epsilon
    Proportion complement_freq;  // empirical P[D < beta * n/2]
    IntMoments D, Z0, Z1;
};

inline ZeroExperimentResult lemma_zero_experiment(int n, uint64_t trials, double epsilon,
                                                  uint64_t seed, int threads = 1) {
    if (epsilon <= 0 || epsilon >= 1)
        throw std::invalid_argument("lemma_zero_experiment: epsilon must lie in (0, 1)");
    ZeroExperimentResult out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    out.epsilon = epsilon;
    out.beta = 0.5 - epsilon;
    const double threshold = out.beta * (n / 2);

    struct Partial {
        uint64_t bad = 0;
        IntMoments D, Z0, Z1;
        void merge(const Partial& o) {
            bad += o.bad;
            D.merge(o.D);
            Z0.merge(o.Z0);
            Z1.merge(o.Z1);
        }
    };
    auto partial = detail::run_partitioned<Partial>(trials, threads, [&](Partial& acc, uint64_t t) {
        RngStream stream(seed, t);
        const auto stats = analyze_matrix(build_matrix(sample_mapping(stream, n)));
        if (static_cast<double>(stats.D) < threshold) ++acc.bad;
        acc.D.add(stats.D);
        acc.Z0.add(stats.Z0);
        acc.Z1.add(stats.Z1);
    });
    out.complement_freq = wilson_interval(partial.bad, trials);
    out.D = partial.D;
    out.Z0 = partial.Z0;
    out.Z1 = partial.Z1;
    return out;
}

struct Claim9Result {
    int n = 0;
    uint64_t trials = 0;
    uint64_t seed = 0;
    double bound = 0;               // n/2 (1 - 1/e) - 1
    std::vector<IntMoments> row_R;  // index 0 holds row 1
    std::vector<bool> flagged;      // mean - 4 se fell below the bound
    bool any_flagged = false;
};

using MappingSampler = std::function<CircularMapping(uint64_t trial)>;

// Sampler-injectable variant; the default uniform sampler is below.
inline Claim9Result claim9_experiment_with(int n, uint64_t trials, uint64_t seed,
                                           const MappingSampler& sampler, int threads = 1) {
    if (n < 2) throw std::invalid_argument("claim9_experiment: n must be >= 2");
    if (trials < 1) throw std::invalid_argument("claim9_experiment: trials must be >= 1");
    Claim9Result out;
    out.n = n;
    out.trials = trials;
    out.seed = seed;
    const int half = n / 2;
    out.bound = static_cast<double>(half) * (1.0 - std::exp(-1.0)) - 1.0;

    struct Partial {
        std::vector<IntMoments> rows;
        void merge(const Partial& o) {
            if (rows.size() < o.rows.size()) rows.resize(o.rows.size());
            for (size_t i = 0; i < o.rows.size(); ++i) rows[i].merge(o.rows[i]);
        }
    };
    auto partial = detail::run_partitioned<Partial>(trials, threads, [&](Partial& acc, uint64_t t) {
        if (acc.rows.empty()) acc.rows.resize(static_cast<size_t>(half));
        const auto stats = analyze_matrix(build_matrix(sampler(t)));
        for (int i = 0; i < half; ++i) acc.rows[static_cast<size_t>(i)].add(stats.R[static_cast<size_t>(i)]);
    });
    out.row_R = std::move(partial.rows);
    out.flagged.resize(static_cast<size_t>(half), false);
    for (int i = 0; i < half; ++i) {
        const auto& m = out.row_R[static_cast<size_t>(i)];
        if (m.mean() - 4.0 * m.stderr_of_mean() < out.bound) {
            out.flagged[static_cast<size_t>(i)] = true;
            out.any_flagged = true;
        }
    }
    return out;
}

inline Claim9Result claim9_experiment(int n, uint64_t trials, uint64_t seed, int threads = 1) {
    return claim9_experiment_with(
        n, trials, seed,
        [n, seed](uint64_t t) {
            RngStream stream(seed, t);
            return sample_mapping(stream, n);
        },
        threads);
}

} // namespace synchrolab
