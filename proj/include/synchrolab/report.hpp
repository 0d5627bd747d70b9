#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "synchrolab/chromatic.hpp"
#include "synchrolab/distance_matrix.hpp"
#include "synchrolab/experiments.hpp"
#include "synchrolab/numeric.hpp"

// JSON views of the result types. Exact rationals are serialized as
// "numerator/denominator" strings, never floats.
namespace synchrolab::report {

using nlohmann::json;

inline json to_json(const Proportion& p) {
    return json{{"count", p.count},
                {"trials", p.trials},
                {"estimate", p.estimate},
                {"wilson_lower", p.lower},
                {"wilson_upper", p.upper}};
}

inline json to_json(const IntMoments& m) {
    return json{{"count", m.count}, {"mean", m.mean()}, {"variance", m.variance()}};
}

inline json to_json(const SyncEstimate& s) {
    return json{{"n", s.n}, {"trials", s.trials}, {"seed", s.seed}, {"sync", to_json(s.sync)}};
}

inline json to_json(const TrialRecord& r) {
    return json{{"n", r.n},
                {"trial", r.trial},
                {"synchronizing", r.synchronizing},
                {"certificate_present", r.certificate_present},
                {"D", r.D},
                {"Z0", r.Z0},
                {"Z1", r.Z1},
                {"min_R", r.min_R},
                {"in_E_row", r.in_E_row},
                {"in_E_zero", r.in_E_zero}};
}

inline json to_json(const McSummary& s) {
    return json{{"n", s.n},
                {"trials", s.trials},
                {"seed", s.seed},
                {"alpha", s.alpha},
                {"beta", s.beta},
                {"sync", to_json(s.sync)},
                {"certificate", to_json(s.certificate)},
                {"in_E_row", to_json(s.in_row)},
                {"in_E_zero", to_json(s.in_zero)},
                {"D", to_json(s.D)},
                {"Z0", to_json(s.Z0)},
                {"Z1", to_json(s.Z1)},
                {"min_R", to_json(s.min_R)}};
}

inline json to_json(const RowExperimentResult& r) {
    return json{{"n", r.n},
                {"trials", r.trials},
                {"seed", r.seed},
                {"epsilon", r.epsilon},
                {"alpha", r.alpha},
                {"complement_freq", to_json(r.complement_freq)},
                {"lambda_eps", r.lambda_eps},
                {"mcdiarmid_value", r.mcdiarmid_value}};
}

inline json to_json(const ZeroExperimentResult& r) {
    return json{{"n", r.n},
                {"trials", r.trials},
                {"seed", r.seed},
                {"epsilon", r.epsilon},
                {"beta", r.beta},
                {"complement_freq", to_json(r.complement_freq)},
                {"D", to_json(r.D)},
                {"Z0", to_json(r.Z0)},
                {"Z1", to_json(r.Z1)}};
}

inline json to_json(const Claim9Result& r) {
    json rows = json::array();
    for (size_t i = 0; i < r.row_R.size(); ++i) {
        json row = to_json(r.row_R[i]);
        row["i"] = i + 1;
        row["stderr_of_mean"] = r.row_R[i].stderr_of_mean();
        row["flagged"] = static_cast<bool>(r.flagged[i]);
        rows.push_back(std::move(row));
    }
    return json{{"n", r.n},
                {"trials", r.trials},
                {"seed", r.seed},
                {"bound", r.bound},
                {"rows", std::move(rows)},
                {"any_flagged", r.any_flagged}};
}

inline json to_json(const ExactStats& s) {
    json mean_R = json::array();
    for (const auto& q : s.mean_R) mean_R.push_back(rational_to_string(q));
    json dist = json::object();
    for (const auto& [d, c] : s.dist_D) dist[std::to_string(d)] = c;
    return json{{"n", s.n},
                {"total", s.total},
                {"sync_count", s.sync_count},
                {"certificate_count", s.cert_count},
                {"mean_D", rational_to_string(s.mean_D)},
                {"var_D", rational_to_string(s.var_D)},
                {"mean_Z0", rational_to_string(s.mean_Z0)},
                {"mean_Z1", rational_to_string(s.mean_Z1)},
                {"mean_R", std::move(mean_R)},
                {"dist_D", std::move(dist)}};
}

inline json to_json(const PrimeExhaustive& p) {
    return json{{"p", p.p},
                {"total", p.total},
                {"sync_count", p.sync_count},
                {"non_permutation_count", p.non_permutation_count},
                {"criterion_holds", p.criterion_holds}};
}

inline json to_json(const RatioBound& r) {
    return json{{"ratio", rational_to_string(r.ratio)},
                {"ratio_double", rational_to_double(r.ratio)},
                {"bound", r.bound},
                {"holds", r.holds}};
}

inline json to_json(const Theorem22Bound& t) {
    return json{{"eta_star", t.eta_star}, {"bound", t.bound}};
}

inline json to_json(const MatrixStats& s) {
    return json{{"n", s.n}, {"R", s.R},  {"z", s.z},   {"D_flags", s.Dflag},
                {"D", s.D}, {"Z0", s.Z0}, {"Z1", s.Z1}, {"min_R", s.min_R()}};
}

inline json to_json(const DistanceMatrix& t) {
    return json{{"n", t.n}, {"rows", t.rows}};
}

inline std::string word_to_string(const Word& w) {
    std::string out;
    out.reserve(w.size());
    for (int l : w) out += l == 0 ? 'a' : (l == 1 ? 'b' : static_cast<char>('a' + l));
    return out;
}

// RFC 4180 rows; every emitted CSV starts with a header row.
inline std::string trial_records_csv(const std::vector<TrialRecord>& records) {
    std::string out = "n,trial,synchronizing,certificate_present,D,Z0,Z1,min_R,in_E_row,in_E_zero\r\n";
    for (const auto& r : records) {
        out += std::to_string(r.n) + "," + std::to_string(r.trial) + "," +
               (r.synchronizing ? "1" : "0") + "," + (r.certificate_present ? "1" : "0") + "," +
               std::to_string(r.D) + "," + std::to_string(r.Z0) + "," + std::to_string(r.Z1) + "," +
               std::to_string(r.min_R) + "," + (r.in_E_row ? "1" : "0") + "," +
               (r.in_E_zero ? "1" : "0") + "\r\n";
    }
    return out;
}

} // namespace synchrolab::report
