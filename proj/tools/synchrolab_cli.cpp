// synchrolab: reproducible command-line driver for synchronization
// experiments on random circular automata.

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "synchrolab/report.hpp"
#include "synchrolab/synchrolab.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace synchrolab;

namespace {

constexpr const char* kArtifactVersion = "1.0.0";

struct RunConfig {
    std::string subcommand;
    std::vector<int> n_grid;
    uint64_t trials = 10000;
    uint64_t seed = 0;
    double alpha = 1.0 - std::exp(-1.0) - 0.05;
    double beta = 0.45;
    double epsilon = 0.05;
    int max_exact_n = 20;
    int max_chromatic_n = 14;
    int threads = 1;
    std::string format = "json";
    std::string outdir = "runs";
    bool emit_trials = false;

    std::vector<int> b;                     // mapping vector, for b-based commands
    std::vector<std::pair<int, int>> pairs; // index multiset, for independence
    std::optional<int> i_offset, j_offset;
    std::optional<long long> eval_at;

    json to_json() const {
        json c{{"subcommand", subcommand}, {"trials", trials},       {"seed", seed},
               {"alpha", alpha},           {"beta", beta},           {"epsilon", epsilon},
               {"max_exact_n", max_exact_n}, {"max_chromatic_n", max_chromatic_n},
               {"threads", threads},       {"format", format},       {"outdir", outdir},
               {"emit_trials", emit_trials}};
        if (!n_grid.empty()) c["n_grid"] = n_grid;
        if (!b.empty()) c["b"] = b;
        if (i_offset) c["i"] = *i_offset;
        if (j_offset) c["j"] = *j_offset;
        if (eval_at) c["eval"] = *eval_at;
        if (!pairs.empty()) {
            json p = json::array();
            for (auto [i, j] : pairs) p.push_back(json::array({i, j}));
            c["pairs"] = p;
        }
        return c;
    }
};

uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string hex64(uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// run-id: zero-padded counter plus UTC timestamp
std::string make_run_id(const fs::path& outdir) {
    int counter = 0;
    if (fs::exists(outdir))
        for (const auto& entry : fs::directory_iterator(outdir)) ++counter;
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%dT%H%M%SZ", &tm);
    char id[64];
    std::snprintf(id, sizeof id, "%04d-%s", counter, stamp);
    return id;
}

// Writes the data files and a manifest listing them with checksums.
class RunWriter {
public:
    explicit RunWriter(const RunConfig& config) : config_(config) {
        dir_ = fs::path(config.outdir) / make_run_id(config.outdir);
        fs::create_directories(dir_);
    }

    void write_file(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        out << content;
        files_[name] = hex64(fnv1a64(content));
    }

    void write_json(const std::string& name, const json& doc) { write_file(name, doc.dump(2) + "\n"); }

    void finalize() {
        std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        char stamp[40];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
        json manifest{{"run_id", dir_.filename().string()},
                      {"timestamp", stamp},
                      {"artifact_version", kArtifactVersion},
                      {"config", config_.to_json()},
                      {"files", files_}};
        std::ofstream out(dir_ / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << "\n";
        std::cerr << "wrote " << dir_.string() << "\n";
    }

private:
    RunConfig config_;
    fs::path dir_;
    json files_ = json::object();
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stoi(tok));
    }
    return out;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("pairs must look like i:j,i:j");
        out.emplace_back(std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1)));
    }
    return out;
}

json word_json(const Word& w) {
    return json{{"length", w.size()}, {"word", report::word_to_string(w)}};
}

// --------------------------------------------------------------------------
// subcommand bodies

int cmd_sync_check(const RunConfig& cfg) {
    CircularMapping m(static_cast<int>(cfg.b.size()), cfg.b);
    const bool sync = is_synchronizing(make_circular(m));
    RunWriter writer(cfg);
    writer.write_json("results.json", json{{"n", m.n}, {"b", m.b}, {"synchronizing", sync}});
    writer.finalize();
    std::cout << "n=" << m.n << " synchronizing=" << (sync ? "true" : "false") << "\n";
    return 0;
}

int cmd_reset_word(const RunConfig& cfg) {
    CircularMapping m(static_cast<int>(cfg.b.size()), cfg.b);
    Dfa dfa = make_circular(m);
    json result{{"n", m.n}, {"b", m.b}};
    std::optional<Word> word;
    if (m.n <= cfg.max_exact_n) {
        word = shortest_reset_word(dfa, cfg.max_exact_n);
        result["method"] = "exact";
    } else {
        word = greedy_reset_word(dfa);
        result["method"] = "greedy";
    }
    result["synchronizing"] = word.has_value();
    if (word) result["reset_word"] = word_json(*word);
    RunWriter writer(cfg);
    writer.write_json("results.json", result);
    writer.finalize();
    if (word)
        std::cout << "reset word of length " << word->size() << " (" << result["method"].get<std::string>() << ")\n";
    else
        std::cout << "not synchronizing\n";
    return 0;
}

int cmd_cerny(const RunConfig& cfg) {
    if (cfg.n_grid.size() != 1) throw std::invalid_argument("cerny: requires --n");
    const int n = cfg.n_grid[0];
    Dfa dfa = make_cerny(n);
    auto word = shortest_reset_word(dfa, cfg.max_exact_n);
    json result{{"n", n},
                {"expected_length", (n - 1) * (n - 1)},
                {"shortest_length", word ? json(word->size()) : json(nullptr)}};
    if (word) result["reset_word"] = word_json(*word);
    RunWriter writer(cfg);
    writer.write_json("results.json", result);
    writer.finalize();
    std::cout << "C_" << n << " shortest reset length: " << (word ? std::to_string(word->size()) : "none")
              << " (expected " << (n - 1) * (n - 1) << ")\n";
    return 0;
}

int cmd_matrix(const RunConfig& cfg) {
    CircularMapping m(static_cast<int>(cfg.b.size()), cfg.b);
    auto t = build_matrix(m);
    auto stats = analyze_matrix(t);
    auto [in_row, in_zero] = in_events(stats, cfg.alpha, cfg.beta);
    auto cert = matrix_sync_certificate(t);
    json result{{"n", m.n},
                {"b", m.b},
                {"matrix", report::to_json(t)},
                {"stats", report::to_json(stats)},
                {"alpha", cfg.alpha},
                {"beta", cfg.beta},
                {"in_E_row", in_row},
                {"in_E_zero", in_zero},
                {"certificate_present", cert.has_value()}};
    if (cert) result["certificate_reset_word"] = word_json(certificate_to_reset_word(m, *cert));
    RunWriter writer(cfg);
    writer.write_json("results.json", result);
    writer.finalize();
    std::cout << "D=" << stats.D << " Z0=" << stats.Z0 << " Z1=" << stats.Z1
              << " certificate=" << (cert ? "present" : "absent") << "\n";
    return 0;
}

int cmd_independence(const RunConfig& cfg) {
    if (cfg.n_grid.size() != 1) throw std::invalid_argument("independence: requires --n");
    IndexMultiset s(cfg.n_grid[0], cfg.pairs);
    auto g = associated_multigraph(s);
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back(json::array({u, v}));
    const bool acyclic = is_acyclic(s);
    const bool factorizes = verify_factorization(s);
    RunWriter writer(cfg);
    writer.write_json("results.json", json{{"n", s.n},
                                           {"edges", edges},
                                           {"acyclic", acyclic},
                                           {"factorizes", factorizes},
                                           {"agree", acyclic == factorizes}});
    writer.finalize();
    std::cout << "acyclic=" << acyclic << " factorizes=" << factorizes << "\n";
    return 0;
}

int cmd_chromatic(const RunConfig& cfg) {
    if (cfg.n_grid.size() != 1 || !cfg.i_offset)
        throw std::invalid_argument("chromatic: requires --n and --i");
    const int n = cfg.n_grid[0];
    const int i = *cfg.i_offset;
    json result{{"n", n}, {"i", i}};
    IntPolynomial poly;
    if (cfg.j_offset) {
        result["j"] = *cfg.j_offset;
        poly = chromatic_poly(circulant_graph(n, {i, *cfg.j_offset}), cfg.max_chromatic_n);
        result["method"] = "deletion-contraction";
    } else {
        poly = closed_form_Pi(n, i);
        result["method"] = "closed-form";
        if (n <= cfg.max_chromatic_n)
            result["matches_deletion_contraction"] =
                (poly == chromatic_poly(circulant_graph(n, {i}), cfg.max_chromatic_n));
    }
    json coeffs = json::array();
    for (const auto& c : poly.coefficients()) coeffs.push_back(c.str());
    result["coefficients"] = std::move(coeffs);
    if (cfg.eval_at) {
        BigInt value = poly.eval(BigInt(*cfg.eval_at));
        result["eval_at"] = *cfg.eval_at;
        result["value"] = value.str();
        std::cout << "P(" << *cfg.eval_at << ") = " << value.str() << "\n";
    } else {
        std::cout << "degree " << poly.degree() << " polynomial computed\n";
    }
    RunWriter writer(cfg);
    writer.write_json("results.json", result);
    writer.finalize();
    return 0;
}

int cmd_exact(const RunConfig& cfg) {
    if (cfg.n_grid.size() != 1) throw std::invalid_argument("exact: requires --n");
    const int n = cfg.n_grid[0];
    auto stats = enumerate_exact(n);
    json result = report::to_json(stats);
    result["formula_mean_D"] = rational_to_string(expected_D(n));
    result["formula_var_D"] = rational_to_string(variance_D(n, cfg.max_chromatic_n));
    result["mean_D_matches_formula"] = (stats.mean_D == expected_D(n));
    result["var_D_matches_formula"] = (stats.var_D == variance_D(n, cfg.max_chromatic_n));
    RunWriter writer(cfg);
    writer.write_json("results.json", result);
    writer.finalize();
    std::cout << "sync " << stats.sync_count << "/" << stats.total
              << " mean_D=" << rational_to_string(stats.mean_D) << "\n";
    return 0;
}

int cmd_mc(const RunConfig& cfg) {
    json grid = json::array();
    std::string csv =
        "n,trials,seed,sync,sync_lo,sync_hi,cert,row,zero,mean_D,var_D,mean_Z0,var_Z0,mean_Z1,var_Z1\r\n";
    std::vector<TrialRecord> all_records;
    for (int n : cfg.n_grid) {
        auto s = mc_experiment(n, cfg.trials, cfg.seed, cfg.alpha, cfg.beta, cfg.threads, cfg.emit_trials);
        grid.push_back(report::to_json(s));
        std::ostringstream row;
        row << n << "," << s.trials << "," << s.seed << "," << s.sync.estimate << "," << s.sync.lower
            << "," << s.sync.upper << "," << s.certificate.estimate << "," << s.in_row.estimate << ","
            << s.in_zero.estimate << "," << s.D.mean() << "," << s.D.variance() << "," << s.Z0.mean()
            << "," << s.Z0.variance() << "," << s.Z1.mean() << "," << s.Z1.variance() << "\r\n";
        csv += row.str();
        all_records.insert(all_records.end(), s.records.begin(), s.records.end());
        std::cout << "n=" << n << " sync=" << s.sync.estimate << " [" << s.sync.lower << ", "
                  << s.sync.upper << "] cert=" << s.certificate.estimate << "\n";
    }
    RunWriter writer(cfg);
    writer.write_json("results.json", grid);
    if (cfg.format == "csv") writer.write_file("results.csv", csv);
    if (cfg.emit_trials) writer.write_file("trials.csv", report::trial_records_csv(all_records));
    writer.finalize();
    return 0;
}

int cmd_lemma_row(const RunConfig& cfg) {
    json grid = json::array();
    std::string csv = "n,trials,seed,epsilon,alpha,freq,freq_lo,freq_hi,lambda_eps,mcdiarmid_value\r\n";
    for (int n : cfg.n_grid) {
        auto r = lemma_row_experiment(n, cfg.trials, cfg.epsilon, cfg.seed, cfg.threads);
        grid.push_back(report::to_json(r));
        std::ostringstream row;
        row << n << "," << r.trials << "," << r.seed << "," << r.epsilon << "," << r.alpha << ","
            << r.complement_freq.estimate << "," << r.complement_freq.lower << ","
            << r.complement_freq.upper << "," << r.lambda_eps << "," << r.mcdiarmid_value << "\r\n";
        csv += row.str();
        std::cout << "n=" << n << " P[E_row^c]=" << r.complement_freq.estimate
                  << " union-bound=" << r.mcdiarmid_value << "\n";
    }
    RunWriter writer(cfg);
    writer.write_json("results.json", grid);
    if (cfg.format == "csv") writer.write_file("results.csv", csv);
    writer.finalize();
    return 0;
}

int cmd_lemma_zero(const RunConfig& cfg) {
    json grid = json::array();
    std::string csv = "n,trials,seed,epsilon,beta,freq,freq_lo,freq_hi,mean_D,var_D,mean_Z0,var_Z0,mean_Z1,var_Z1\r\n";
    for (int n : cfg.n_grid) {
        auto r = lemma_zero_experiment(n, cfg.trials, cfg.epsilon, cfg.seed, cfg.threads);
        grid.push_back(report::to_json(r));
        std::ostringstream row;
        row << n << "," << r.trials << "," << r.seed << "," << r.epsilon << "," << r.beta << ","
            << r.complement_freq.estimate << "," << r.complement_freq.lower << ","
            << r.complement_freq.upper << "," << r.D.mean() << "," << r.D.variance() << ","
            << r.Z0.mean() << "," << r.Z0.variance() << "," << r.Z1.mean() << "," << r.Z1.variance()
            << "\r\n";
        csv += row.str();
        std::cout << "n=" << n << " P[E_zero^c]=" << r.complement_freq.estimate
                  << " mean_Z0=" << r.Z0.mean() << "\n";
    }
    RunWriter writer(cfg);
    writer.write_json("results.json", grid);
    if (cfg.format == "csv") writer.write_file("results.csv", csv);
    writer.finalize();
    return 0;
}

int cmd_moments(const RunConfig& cfg) {
    json grid = json::array();
    for (int n : cfg.n_grid) {
        auto c9 = claim9_experiment(n, cfg.trials, cfg.seed, cfg.threads);
        auto zm = lemma_zero_experiment(n, cfg.trials, cfg.epsilon, cfg.seed, cfg.threads);
        json entry{{"claim9", report::to_json(c9)}, {"moments", report::to_json(zm)}};
        grid.push_back(std::move(entry));
        std::cout << "n=" << n << " claim9 flags=" << (c9.any_flagged ? "raised" : "none")
                  << " mean_D=" << zm.D.mean() << " var_Z0/n=" << zm.Z0.variance() / n << "\n";
    }
    RunWriter writer(cfg);
    writer.write_json("results.json", grid);
    writer.finalize();
    return 0;
}

int cmd_bound_thm22(const RunConfig& cfg) {
    if (cfg.n_grid.size() != 1) throw std::invalid_argument("bound-thm22: requires --n");
    const int n = cfg.n_grid[0];
    auto bound = theorem22_bound(n, cfg.epsilon, cfg.max_chromatic_n);
    json result = report::to_json(bound);
    result["n"] = n;
    result["epsilon"] = cfg.epsilon;
    result["var_D"] = rational_to_string(variance_D(n, cfg.max_chromatic_n));
    RunWriter writer(cfg);
    writer.write_json("results.json", result);
    writer.finalize();
    std::cout << "n=" << n << " eta_star=" << bound.eta_star << " bound=" << bound.bound << "\n";
    return 0;
}

int cmd_probe_var_d(const RunConfig& cfg) {
    json grid = json::array();
    std::string csv = "n,var_D,var_D_over_n\r\n";
    for (int n : cfg.n_grid) {
        auto var = variance_D(n, cfg.max_chromatic_n);
        const double ratio = rational_to_double(var) / n;
        grid.push_back(json{{"n", n}, {"var_D", rational_to_string(var)}, {"var_D_over_n", ratio}});
        csv += std::to_string(n) + "," + rational_to_string(var) + "," + std::to_string(ratio) + "\r\n";
        std::cout << "n=" << n << " Var[D]=" << rational_to_string(var) << " Var[D]/n=" << ratio << "\n";
    }
    RunWriter writer(cfg);
    writer.write_json("results.json", grid);
    if (cfg.format == "csv") writer.write_file("results.csv", csv);
    writer.finalize();
    return 0;
}

// --------------------------------------------------------------------------

uint64_t env_seed() {
    if (const char* s = std::getenv("SYNCHROLAB_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

std::string env_outdir() {
    if (const char* s = std::getenv("SYNCHROLAB_OUTDIR")) return s;
    return "runs";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"synchronization experiments on random circular automata"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.seed = env_seed();
    cfg.outdir = env_outdir();

    std::string n_text, n_grid_text, b_text, pairs_text, config_path;
    int i_opt = -1, j_opt = -1;
    long long eval_opt = 0;
    bool have_eval = false;

    auto add_common = [&](CLI::App* sub, bool needs_n, bool needs_b = false, bool needs_pairs = false) {
        if (needs_n) {
            sub->add_option("--n", n_text, "state count");
            sub->add_option("--n-grid", n_grid_text, "comma-separated state counts");
        }
        if (needs_b) sub->add_option("--b", b_text, "mapping vector, comma-separated")->required();
        if (needs_pairs) sub->add_option("--pairs", pairs_text, "index multiset i:j,i:j,...")->required();
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials");
        sub->add_option("--seed", cfg.seed, "master seed (default: SYNCHROLAB_SEED)");
        sub->add_option("--alpha", cfg.alpha, "row-event threshold");
        sub->add_option("--beta", cfg.beta, "zero-event threshold");
        sub->add_option("--epsilon", cfg.epsilon, "slack parameter");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--outdir", cfg.outdir, "output directory (default: SYNCHROLAB_OUTDIR)");
        sub->add_option("--max-exact-n", cfg.max_exact_n, "subset-BFS capacity");
        sub->add_option("--max-chromatic-n", cfg.max_chromatic_n, "deletion-contraction capacity");
        sub->add_option("--threads", cfg.threads, "worker count");
        sub->add_option("--config", config_path, "JSON config file (flags take precedence)");
    };

    auto* sync_check = app.add_subcommand("sync-check", "test synchronization of A_n(b)");
    add_common(sync_check, false, true);
    auto* reset_word = app.add_subcommand("reset-word", "compute a reset word for A_n(b)");
    add_common(reset_word, false, true);
    auto* cerny = app.add_subcommand("cerny", "shortest reset word of the Cerny automaton C_n");
    add_common(cerny, true);
    auto* matrix = app.add_subcommand("matrix", "distance matrix T_b with statistics and certificate");
    add_common(matrix, false, true);
    auto* independence = app.add_subcommand("independence", "acyclicity and factorization of an index multiset");
    add_common(independence, true, false, true);
    auto* chromatic = app.add_subcommand("chromatic", "chromatic polynomial of a circulant graph");
    add_common(chromatic, true);
    chromatic->add_option("--i", i_opt, "first offset")->required();
    chromatic->add_option("--j", j_opt, "second offset");
    chromatic->add_option("--eval", eval_opt, "evaluate at this point")->each([&](const std::string&) { have_eval = true; });
    auto* exact = app.add_subcommand("exact", "exhaustive enumeration of M_n (n <= 6)");
    add_common(exact, true);
    auto* mc = app.add_subcommand("mc", "Monte Carlo sweep of all per-sample statistics");
    add_common(mc, true);
    mc->add_flag("--emit-trials", cfg.emit_trials, "also write per-trial records");
    auto* lemma_row = app.add_subcommand("lemma-row", "empirical frequency of the row event complement");
    add_common(lemma_row, true);
    auto* lemma_zero = app.add_subcommand("lemma-zero", "empirical frequency of the zero event complement");
    add_common(lemma_zero, true);
    auto* moments = app.add_subcommand("moments", "per-row mean R_i table plus D/Z0/Z1 moments");
    add_common(moments, true);
    auto* bound_thm22 = app.add_subcommand("bound-thm22", "chromatic lower bound on sync probability");
    add_common(bound_thm22, true);
    auto* probe = app.add_subcommand("probe-var-d", "exact Var[D]/n probe over an n grid");
    add_common(probe, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        // precedence: flags > config file > environment > defaults.
        // CLI11 has already applied flags; fill unset options from the file.
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::invalid_argument("cannot open config file: " + config_path);
            json file = json::parse(in);
            CLI::App* sub = app.get_subcommands().front();
            auto unset = [&](const std::string& flag) {
                auto* opt = sub->get_option_no_throw(flag);
                return opt != nullptr && opt->count() == 0;
            };
            if (file.contains("trials") && unset("--trials")) cfg.trials = file["trials"].get<uint64_t>();
            if (file.contains("seed") && unset("--seed")) cfg.seed = file["seed"].get<uint64_t>();
            if (file.contains("alpha") && unset("--alpha")) cfg.alpha = file["alpha"].get<double>();
            if (file.contains("beta") && unset("--beta")) cfg.beta = file["beta"].get<double>();
            if (file.contains("epsilon") && unset("--epsilon")) cfg.epsilon = file["epsilon"].get<double>();
            if (file.contains("threads") && unset("--threads")) cfg.threads = file["threads"].get<int>();
            if (file.contains("format") && unset("--format")) cfg.format = file["format"].get<std::string>();
            if (file.contains("outdir") && unset("--outdir")) cfg.outdir = file["outdir"].get<std::string>();
            if (file.contains("max_exact_n") && unset("--max-exact-n")) cfg.max_exact_n = file["max_exact_n"].get<int>();
            if (file.contains("max_chromatic_n") && unset("--max-chromatic-n"))
                cfg.max_chromatic_n = file["max_chromatic_n"].get<int>();
            if (file.contains("n") && unset("--n") && n_grid_text.empty()) n_text = std::to_string(file["n"].get<int>());
        }

        if (!n_text.empty() && !n_grid_text.empty())
            throw std::invalid_argument("--n and --n-grid are mutually exclusive");
        if (!n_text.empty()) cfg.n_grid = parse_int_list(n_text);
        if (!n_grid_text.empty()) cfg.n_grid = parse_int_list(n_grid_text);
        if (!b_text.empty()) cfg.b = parse_int_list(b_text);
        if (!pairs_text.empty()) cfg.pairs = parse_pairs(pairs_text);
        if (i_opt > 0) cfg.i_offset = i_opt;
        if (j_opt > 0) cfg.j_offset = j_opt;
        if (have_eval) cfg.eval_at = eval_opt;
        if (cfg.threads < 1) throw std::invalid_argument("--threads must be >= 1");
        if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");

        CLI::App* sub = app.get_subcommands().front();
        cfg.subcommand = sub->get_name();
        const bool needs_n = sub != sync_check && sub != reset_word && sub != matrix;
        if (needs_n) {
            if (cfg.n_grid.empty() && (sub == probe)) {
                for (int n = 2; n <= std::min(10, cfg.max_chromatic_n); ++n) cfg.n_grid.push_back(n);
            }
            if (cfg.n_grid.empty()) throw std::invalid_argument(cfg.subcommand + ": requires --n or --n-grid");
        }

        if (sub == sync_check) return cmd_sync_check(cfg);
        if (sub == reset_word) return cmd_reset_word(cfg);
        if (sub == cerny) return cmd_cerny(cfg);
        if (sub == matrix) return cmd_matrix(cfg);
        if (sub == independence) return cmd_independence(cfg);
        if (sub == chromatic) return cmd_chromatic(cfg);
        if (sub == exact) return cmd_exact(cfg);
        if (sub == mc) return cmd_mc(cfg);
        if (sub == lemma_row) return cmd_lemma_row(cfg);
        if (sub == lemma_zero) return cmd_lemma_zero(cfg);
        if (sub == moments) return cmd_moments(cfg);
        if (sub == bound_thm22) return cmd_bound_thm22(cfg);
        if (sub == probe) return cmd_probe_var_d(cfg);
        throw std::logic_error("unhandled subcommand");
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
