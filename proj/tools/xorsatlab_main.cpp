// xorsatlab: experiment harness for D-regular max-k-XORSAT.
//
// Verbs: predict | sample | solve | fgum-sim | bp-threshold | bp-decode |
//        qaoa | regev-verify | table1 | cycle-audit
//
// Config: optional JSON file via --config with one object per verb, e.g.
//   {"solve": {"k": 3, "D": 6, "b": 840, "solver": "sa"}}
// Command-line flags override config values. XORSAT_LAB_THREADS caps the
// worker pool.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "xorsatlab/bp.hpp"
#include "xorsatlab/fgum.hpp"
#include "xorsatlab/gallager.hpp"
#include "xorsatlab/qaoa.hpp"
#include "xorsatlab/regev.hpp"
#include "xorsatlab/rng.hpp"
#include "xorsatlab/solvers.hpp"
#include "xorsatlab/table1.hpp"
#include "xorsatlab/theory.hpp"

using nlohmann::json;
using nlohmann::ordered_json;
using namespace xorsat;

namespace {

constexpr const char* kVersion = "xorsatlab 0.1.0";

std::string iso_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

// One JSON-lines result record; carries the full config for reproducibility.
ordered_json record(const std::string& verb, const ordered_json& cfg,
                    const std::string& metric, double value, double ci,
                    const std::string& provenance) {
    ordered_json r;
    r["ts"] = iso_timestamp();
    r["version"] = kVersion;
    r["verb"] = verb;
    r["config"] = cfg;
    r["metric"] = metric;
    r["value"] = value;
    if (ci >= 0) r["ci_halfwidth"] = ci;
    r["provenance"] = provenance;
    return r;
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream& stream() { return file ? *file : std::cout; }
    void open(const std::string& path) {
        if (path.empty()) return;
        file = std::make_unique<std::ofstream>(path);
        if (!*file) throw std::runtime_error("cannot open output file: " + path);
    }
};

int thread_budget(int flag_value) {
    int cap = 0;
    if (const char* env = std::getenv("XORSAT_LAB_THREADS")) cap = std::atoi(env);
    int n = flag_value > 0 ? flag_value
                           : int(std::max(1u, std::thread::hardware_concurrency()));
    if (cap > 0) n = std::min(n, cap);
    return std::max(1, n);
}

// Order-independent parallel map: results land in a pre-sized vector by index.
template <typename Fn>
void parallel_for(std::size_t jobs, int threads, Fn fn) {
    if (threads <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<std::size_t>(threads, jobs); ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < jobs; i = next++) fn(i);
        });
    for (auto& th : pool) th.join();
}

// Applies config-file defaults for one verb: flags given on the command line
// win because CLI11 only writes parsed options.
class VerbConfig {
public:
    VerbConfig(const json& root, const std::string& verb) {
        if (root.contains(verb)) section_ = root.at(verb);
    }
    template <typename T>
    void apply(const std::string& key, T& var) const {
        if (section_.contains(key)) var = section_.at(key).get<T>();
    }
    const json& section() const { return section_; }

private:
    json section_;
};

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return json::parse(in);
}

// Pre-scan for --config so its values can seed option defaults before parse.
std::string find_config_flag(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") return argv[i + 1];
    return "";
}

Instance resolve_instance(const std::string& path, int k, int D, std::size_t b,
                          std::uint64_t seed) {
    if (!path.empty()) return load_instance(path);
    return sample_instance(k, D, b, seed);
}

struct Budget {
    std::size_t n;
    int seeds;
    std::uint64_t sa_sweeps;
    int sa_chains;
    std::size_t de_pop;
    std::size_t de_iters;
    double de_tol;
    int qaoa_p;
    int qaoa_restarts;
};

Budget budget_for(const std::string& tag) {
    if (tag == "smoke") return {840, 5, 2000, 2, 5000, 300, 5e-3, 2, 4};
    if (tag == "desk") return {2520, 20, 10000, 4, 100000, 2000, 1e-3, 6, 6};
    if (tag == "full") return {2520, 20, 1000000, 4, 100000, 2000, 1e-3, 8, 8};
    throw CLI::ValidationError("budget must be smoke, desk, or full");
}

std::vector<std::pair<int, int>> parse_rows(const std::string& spec) {
    std::vector<std::pair<int, int>> rows;
    if (spec.empty()) {
        for (const Table1Row& r : table1_rows()) rows.emplace_back(r.k, r.D);
        return rows;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ';')) {
        int k, D;
        if (std::sscanf(item.c_str(), "%d,%d", &k, &D) != 2)
            throw CLI::ValidationError("rows must look like \"3,4;3,6\"");
        rows.emplace_back(k, D);
    }
    return rows;
}

DecoderSpec make_decoder(const std::string& spec, const GF2Matrix& B) {
    if (spec == "perfect") return perfect_decoder(B);
    if (spec == "zero") return zero_decoder(B);
    if (spec.rfind("interpolated:", 0) == 0)
        return interpolated_decoder(B, std::stod(spec.substr(13)));
    throw CLI::ValidationError("decoder must be perfect, zero, or interpolated:<theta>");
}

BiasFunction make_bias(const std::string& spec, int m, Rng& rng) {
    if (spec == "uniform") return uniform_bias(m);
    if (spec == "random") return random_bias(m, rng);
    if (spec.rfind("alpha:", 0) == 0) return alpha_bias(m, std::stod(spec.substr(6)));
    throw CLI::ValidationError("bias must be uniform, random, or alpha:<a>");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"xorsatlab: solvers, theory scores and verifiers for D-regular "
                 "max-k-XORSAT"};
    app.require_subcommand(1);

    std::string config_path = find_config_flag(argc, argv);
    json cfg_root;
    try {
        cfg_root = load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string config_dummy;
    app.add_option("--config", config_dummy, "JSON config file; flags override");
    int threads_flag = 0;
    app.add_option("--threads", threads_flag, "worker pool size (0 = auto)");
    std::string output_path;
    app.add_option("--output", output_path, "write results here instead of stdout");

    // ---- predict ----------------------------------------------------------
    auto* predict = app.add_subcommand("predict", "closed-form theory columns as CSV");
    std::string predict_rows;
    predict->add_option("--rows", predict_rows, "subset like \"3,4;3,6\" (default: all 15)");
    VerbConfig(cfg_root, "predict").apply("rows", predict_rows);

    // ---- sample -----------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "draw an instance from Gallager's ensemble");
    int s_k = 3, s_D = 6;
    std::size_t s_b = 840;
    std::uint64_t s_seed = 1;
    std::string s_out = "instance.json";
    {
        VerbConfig vc(cfg_root, "sample");
        vc.apply("k", s_k);
        vc.apply("D", s_D);
        vc.apply("b", s_b);
        vc.apply("seed", s_seed);
        vc.apply("out", s_out);
    }
    sample->add_option("--k", s_k);
    sample->add_option("--D", s_D);
    sample->add_option("--b", s_b);
    sample->add_option("--seed", s_seed);
    sample->add_option("--out", s_out, "instance file to write");

    // ---- solve ------------------------------------------------------------
    auto* solve_cmd = app.add_subcommand("solve", "run one solver on one instance");
    std::string so_instance, so_solver = "turbo-prange", so_schedule = "linear";
    int so_k = 3, so_D = 6, so_chains = 4;
    std::size_t so_b = 840;
    std::uint64_t so_seed = 1, so_solver_seed = 1, so_sweeps = 10000;
    double so_beta_start = 0.2, so_beta_end = 4.0;
    bool so_extra_greedy = false;
    {
        VerbConfig vc(cfg_root, "solve");
        vc.apply("instance", so_instance);
        vc.apply("solver", so_solver);
        vc.apply("k", so_k);
        vc.apply("D", so_D);
        vc.apply("b", so_b);
        vc.apply("seed", so_seed);
        vc.apply("solver-seed", so_solver_seed);
        vc.apply("sweeps", so_sweeps);
        vc.apply("chains", so_chains);
        vc.apply("beta-start", so_beta_start);
        vc.apply("beta-end", so_beta_end);
        vc.apply("schedule", so_schedule);
        vc.apply("extra-greedy", so_extra_greedy);
    }
    solve_cmd->add_option("--instance", so_instance, "instance JSON (else sampled)");
    solve_cmd->add_option("--solver", so_solver, "prange | turbo-prange | greedy | sa");
    solve_cmd->add_option("--k", so_k);
    solve_cmd->add_option("--D", so_D);
    solve_cmd->add_option("--b", so_b);
    solve_cmd->add_option("--seed", so_seed, "instance seed");
    solve_cmd->add_option("--solver-seed", so_solver_seed);
    solve_cmd->add_option("--sweeps", so_sweeps, "SA sweeps");
    solve_cmd->add_option("--chains", so_chains, "SA independent chains");
    solve_cmd->add_option("--beta-start", so_beta_start);
    solve_cmd->add_option("--beta-end", so_beta_end);
    solve_cmd->add_option("--schedule", so_schedule);
    solve_cmd->add_flag("--extra-greedy", so_extra_greedy, "turbo-prange: run greedy to a local optimum");

    // ---- fgum-sim ---------------------------------------------------------
    auto* fgum = app.add_subcommand("fgum-sim", "block-erasure recovery threshold scan");
    int f_k = 3, f_D = 6;
    std::size_t f_b = 300, f_trials = 200;
    std::uint64_t f_seed = 7;
    std::string f_rates;
    {
        VerbConfig vc(cfg_root, "fgum-sim");
        vc.apply("k", f_k);
        vc.apply("D", f_D);
        vc.apply("b", f_b);
        vc.apply("trials", f_trials);
        vc.apply("seed", f_seed);
        vc.apply("rates", f_rates);
    }
    fgum->add_option("--k", f_k);
    fgum->add_option("--D", f_D);
    fgum->add_option("--b", f_b);
    fgum->add_option("--trials", f_trials, "trials per rate");
    fgum->add_option("--seed", f_seed);
    fgum->add_option("--rates", f_rates,
                     "comma list of erasure rates (default: a window around e_max)");

    // ---- bp-threshold -----------------------------------------------------
    auto* bpth = app.add_subcommand("bp-threshold", "density-evolution threshold and score");
    int bt_k = 3, bt_D = 6;
    DEConfig bt_cfg;
    {
        VerbConfig vc(cfg_root, "bp-threshold");
        vc.apply("k", bt_k);
        vc.apply("D", bt_D);
        vc.apply("population", bt_cfg.population_size);
        vc.apply("max-iters", bt_cfg.max_iters);
        vc.apply("tol", bt_cfg.bisection_tol);
        vc.apply("seed", bt_cfg.seed);
    }
    bpth->add_option("--k", bt_k);
    bpth->add_option("--D", bt_D);
    bpth->add_option("--population", bt_cfg.population_size);
    bpth->add_option("--max-iters", bt_cfg.max_iters);
    bpth->add_option("--tol", bt_cfg.bisection_tol);
    bpth->add_option("--seed", bt_cfg.seed);

    // ---- bp-decode --------------------------------------------------------
    auto* bpd = app.add_subcommand("bp-decode", "BP block decoding over the BSC");
    int bd_k = 3, bd_D = 6;
    std::size_t bd_b = 300, bd_trials = 50, bd_iters = 200;
    std::uint64_t bd_seed = 11;
    double bd_crossover = 0.05;
    {
        VerbConfig vc(cfg_root, "bp-decode");
        vc.apply("k", bd_k);
        vc.apply("D", bd_D);
        vc.apply("b", bd_b);
        vc.apply("trials", bd_trials);
        vc.apply("max-iters", bd_iters);
        vc.apply("seed", bd_seed);
        vc.apply("crossover", bd_crossover);
    }
    bpd->add_option("--k", bd_k);
    bpd->add_option("--D", bd_D);
    bpd->add_option("--b", bd_b);
    bpd->add_option("--trials", bd_trials);
    bpd->add_option("--max-iters", bd_iters);
    bpd->add_option("--seed", bd_seed);
    bpd->add_option("--crossover", bd_crossover);

    // ---- qaoa -------------------------------------------------------------
    auto* qaoa = app.add_subcommand("qaoa", "optimize depth-p QAOA on the hypertree");
    int q_k = 3, q_D = 6, q_p = 1, q_restarts = 8;
    std::uint64_t q_seed = 3;
    bool q_oracle = false;
    {
        VerbConfig vc(cfg_root, "qaoa");
        vc.apply("k", q_k);
        vc.apply("D", q_D);
        vc.apply("p", q_p);
        vc.apply("restarts", q_restarts);
        vc.apply("seed", q_seed);
        vc.apply("oracle-check", q_oracle);
    }
    qaoa->add_option("--k", q_k);
    qaoa->add_option("--D", q_D);
    qaoa->add_option("--p", q_p);
    qaoa->add_option("--restarts", q_restarts);
    qaoa->add_option("--seed", q_seed);
    qaoa->add_flag("--oracle-check", q_oracle,
                   "cross-check the optimum against the light-cone brute force (p=1)");

    // ---- regev-verify -----------------------------------------------------
    auto* regev = app.add_subcommand("regev-verify", "numerical checks of Regev's reduction");
    int r_m = 4, r_ncols = 2;
    std::uint64_t r_seed = 5;
    std::string r_decoder = "perfect", r_bias = "alpha:0.125";
    {
        VerbConfig vc(cfg_root, "regev-verify");
        vc.apply("m", r_m);
        vc.apply("ncols", r_ncols);
        vc.apply("seed", r_seed);
        vc.apply("decoder", r_decoder);
        vc.apply("bias", r_bias);
    }
    regev->add_option("--m", r_m, "rows of B (<= 6)");
    regev->add_option("--ncols", r_ncols, "columns of B");
    regev->add_option("--seed", r_seed);
    regev->add_option("--decoder", r_decoder, "perfect | interpolated:<theta> | zero");
    regev->add_option("--bias", r_bias, "uniform | random | alpha:<a>");

    // ---- table1 -----------------------------------------------------------
    auto* table1 = app.add_subcommand("table1", "reproduce the benchmark table");
    std::string t_budget = "smoke", t_rows;
    std::vector<std::string> t_skip;
    {
        VerbConfig vc(cfg_root, "table1");
        vc.apply("budget", t_budget);
        vc.apply("rows", t_rows);
    }
    table1->add_option("--budget", t_budget, "smoke | desk | full");
    table1->add_option("--rows", t_rows, "subset like \"3,4;3,6\" (default: all 15)");
    table1->add_option("--skip", t_skip, "columns to skip: sa, de, qaoa, empirical");

    // ---- cycle-audit ------------------------------------------------------
    auto* audit = app.add_subcommand("cycle-audit", "ensemble regularity and cycle counts");
    int a_k = 3, a_D = 6;
    std::size_t a_b = 50, a_samples = 1000;
    std::uint64_t a_seed = 17;
    {
        VerbConfig vc(cfg_root, "cycle-audit");
        vc.apply("k", a_k);
        vc.apply("D", a_D);
        vc.apply("b", a_b);
        vc.apply("samples", a_samples);
        vc.apply("seed", a_seed);
    }
    audit->add_option("--k", a_k);
    audit->add_option("--D", a_D);
    audit->add_option("--b", a_b);
    audit->add_option("--samples", a_samples);
    audit->add_option("--seed", a_seed);

    CLI11_PARSE(app, argc, argv);

    Output out;
    try {
        out.open(output_path);
        const int threads = thread_budget(threads_flag);

        if (*predict) {
            out.stream() << "k,D,e_max,alpha_min,p0,i_hat_star,sigma_D,fgum_score,"
                            "turbo_prange_score,prange_score\n";
            char line[256];
            for (auto [k, D] : parse_rows(predict_rows)) {
                TheoryReport r = theory_report(k, D);
                std::snprintf(line, sizeof line,
                              "%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", k, D,
                              r.e_max, r.alpha_min, r.p0, r.i_hat_star, r.sigma_D,
                              r.fgum_score, r.turbo_prange_score, r.prange_score);
                out.stream() << line;
            }
            return 0;
        }

        if (*sample) {
            Instance inst = sample_instance(s_k, s_D, s_b, s_seed);
            save_instance(inst, s_out);
            ordered_json cfg{{"k", s_k}, {"D", s_D}, {"b", s_b}, {"seed", s_seed},
                             {"out", s_out}};
            out.stream() << record("sample", cfg, "m", double(inst.m()), -1, "exact").dump()
                         << "\n";
            return 0;
        }

        if (*solve_cmd) {
            Instance inst = resolve_instance(so_instance, so_k, so_D, so_b, so_seed);
            SolveResult res;
            if (so_solver == "prange") {
                res = prange(inst, so_solver_seed);
            } else if (so_solver == "turbo-prange") {
                res = turbo_prange(inst, so_solver_seed, so_extra_greedy);
            } else if (so_solver == "greedy") {
                Rng rng(so_solver_seed);
                GF2Vector start(inst.n());
                for (std::size_t i = 0; i < inst.n(); ++i) start.set(i, rng.bernoulli(0.5));
                res = greedy(inst, start, so_solver_seed);
            } else if (so_solver == "sa") {
                SAConfig sa;
                sa.sweeps = so_sweeps;
                sa.seeds = so_chains;
                sa.beta_start = so_beta_start;
                sa.beta_end = so_beta_end;
                sa.schedule = so_schedule;
                res = simulated_annealing(inst, sa, so_solver_seed);
            } else {
                throw CLI::ValidationError("unknown solver: " + so_solver);
            }
            ordered_json cfg{{"instance", so_instance}, {"solver", so_solver},
                             {"k", inst.k},  {"D", inst.D},
                             {"b", inst.b},  {"seed", inst.seed},
                             {"solver-seed", so_solver_seed}};
            if (so_solver == "sa")
                cfg.update(ordered_json{{"sweeps", so_sweeps}, {"chains", so_chains},
                                        {"beta-start", so_beta_start},
                                        {"beta-end", so_beta_end},
                                        {"schedule", so_schedule}});
            ordered_json rec = record("solve", cfg, "satisfied_fraction", res.score, -1,
                                      "montecarlo");
            rec["satisfied"] = res.satisfied;
            rec["wall_time"] = res.wall_time;
            rec["sweeps_or_iters"] = res.sweeps_or_iters;
            if (res.packed_fraction >= 0) rec["packed_fraction"] = res.packed_fraction;
            out.stream() << rec.dump() << "\n";
            return 0;
        }

        if (*fgum) {
            std::vector<double> rates;
            if (!f_rates.empty()) {
                std::stringstream ss(f_rates);
                std::string tok;
                while (std::getline(ss, tok, ',')) rates.push_back(std::stod(tok));
            } else {
                double em = e_max(f_k, f_D);
                for (int i = -4; i <= 4; ++i)
                    rates.push_back(std::min(0.999, std::max(1e-4, em * (1.0 + 0.05 * i))));
            }
            ThresholdCurve curve = threshold_scan(f_k, f_D, f_b, rates, f_trials, f_seed);
            out.stream() << "erasure_rate,success_prob,ci_halfwidth\n";
            char line[128];
            for (std::size_t i = 0; i < curve.erasure_rates.size(); ++i) {
                std::snprintf(line, sizeof line, "%.6f,%.6f,%.6f\n", curve.erasure_rates[i],
                              curve.success_probs[i], curve.ci_halfwidth[i]);
                out.stream() << line;
            }
            ordered_json cfg{{"k", f_k}, {"D", f_D}, {"b", f_b}, {"trials", f_trials},
                             {"seed", f_seed}};
            ordered_json rec = record("fgum-sim", cfg, "crossing_at_half",
                                      crossing_at_half(curve), -1, "montecarlo");
            rec["e_max_theory"] = e_max(f_k, f_D);
            out.stream() << rec.dump() << "\n";
            return 0;
        }

        if (*bpth) {
            double th = de_threshold(bt_k, bt_D, bt_cfg);
            ordered_json cfg{{"k", bt_k}, {"D", bt_D},
                             {"population", bt_cfg.population_size},
                             {"max-iters", bt_cfg.max_iters},
                             {"tol", bt_cfg.bisection_tol},
                             {"seed", bt_cfg.seed}};
            out.stream() << record("bp-threshold", cfg, "threshold", th, -1, "montecarlo").dump()
                         << "\n";
            out.stream() << record("bp-threshold", cfg, "dqi_bp_score",
                                   bp_score_from_threshold(th), -1, "montecarlo").dump()
                         << "\n";
            return 0;
        }

        if (*bpd) {
            Rng root(bd_seed);
            std::size_t ok = 0;
            double iters = 0;
            for (std::size_t t = 0; t < bd_trials; ++t) {
                Rng trial = root.split(t);
                Instance inst = sample_instance(bd_k, bd_D, bd_b, trial.next_u64());
                GF2Vector received(inst.m());  // zero codeword of the dual, plus noise
                for (std::size_t i = 0; i < inst.m(); ++i)
                    if (trial.bernoulli(bd_crossover)) received.flip(i);
                BPResult res = bp_decode(inst, received, bd_crossover, bd_iters);
                if (res.converged && res.decoded.is_zero()) ++ok;
                iters += double(res.iterations);
            }
            double rate = double(ok) / double(bd_trials);
            ordered_json cfg{{"k", bd_k}, {"D", bd_D}, {"b", bd_b}, {"trials", bd_trials},
                             {"crossover", bd_crossover}, {"max-iters", bd_iters},
                             {"seed", bd_seed}};
            double ci = 1.96 * std::sqrt(rate * (1 - rate) / double(bd_trials));
            ordered_json rec = record("bp-decode", cfg, "block_success_rate", rate, ci,
                                      "montecarlo");
            rec["mean_iterations"] = iters / double(bd_trials);
            out.stream() << rec.dump() << "\n";
            return 0;
        }

        if (*qaoa) {
            TreeEvalResult res = optimize(q_k, q_D, q_p, q_restarts, q_seed);
            ordered_json cfg{{"k", q_k}, {"D", q_D}, {"p", q_p},
                             {"restarts", q_restarts}, {"seed", q_seed}};
            ordered_json rec = record("qaoa", cfg, "satisfied_fraction",
                                      res.satisfied_fraction, -1, "exact");
            rec["gammas"] = res.params.gammas;
            rec["betas"] = res.params.betas;
            rec["optimizer_evals"] = res.optimizer_evals;
            if (q_oracle && q_p == 1) {
                if (lightcone_qubits(q_k, q_D, 1) <= 27) {
                    double oracle = lightcone_statevector_energy(q_k, q_D, res.params);
                    rec["oracle_value"] = oracle;
                    rec["oracle_gap"] = std::abs(oracle - res.satisfied_fraction);
                } else {
                    rec["oracle_value"] = nullptr;  // cone too large to enumerate
                }
            }
            out.stream() << rec.dump() << "\n";
            return 0;
        }

        if (*regev) {
            Rng rng(r_seed);
            GF2Matrix B = random_code_matrix(r_m, r_ncols, rng);
            BiasFunction P = make_bias(r_bias, r_m, rng);
            DecoderSpec dec = make_decoder(r_decoder, B);
            std::vector<double> H(std::size_t(1) << r_m);
            for (std::size_t x = 0; x < H.size(); ++x)
                H[x] = 1.0 - double(std::popcount(std::uint32_t(x))) / r_m;
            ErrorBoundReport eb = verify_error_bound(B, P, dec, H);
            DistanceBoundReport db = verify_distance_bounds(B, P, dec);
            ordered_json cfg{{"m", r_m}, {"ncols", r_ncols}, {"seed", r_seed},
                             {"decoder", r_decoder}, {"bias", r_bias}};
            ordered_json rec = record("regev-verify", cfg, "eps", eb.eps, -1, "exact");
            rec["error_bound"] = {{"lhs", eb.lhs}, {"rhs", eb.rhs}, {"slack", eb.slack},
                                  {"corollary_lhs", eb.cor_lhs},
                                  {"corollary_rhs", eb.cor_rhs},
                                  {"corollary_slack", eb.cor_slack}, {"pass", eb.pass}};
            rec["distance_bounds"] = {{"mean_trace_distance", db.mean_trace_distance},
                                      {"trace_bound", db.trace_bound},
                                      {"mean_tv_algo_actual", db.mean_tv_algo_actual},
                                      {"tv_bound", db.tv_bound},
                                      {"max_contractivity_gap", db.max_contractivity_gap},
                                      {"inner_product_residual", db.inner_product_residual},
                                      {"n_dec_residual", db.n_dec_residual},
                                      {"pass", db.pass}};
            bool pass = eb.pass && db.pass;
            rec["pass"] = pass;
            out.stream() << rec.dump() << "\n";
            return pass ? 0 : 1;
        }

        if (*table1) {
            Budget bu = budget_for(t_budget);
            auto skip = [&](const std::string& col) {
                for (const std::string& s : t_skip)
                    if (s == col || (s == "empirical" && (col == "prange" || col == "turbo")))
                        return true;
                return false;
            };
            std::vector<std::pair<int, int>> rows = parse_rows(t_rows);
            struct RowOut {
                int k, D;
                double prange_th, prange_emp, sa, dqi, fgum_th, turbo_emp, qaoa_v;
                std::string best_computed, best_published;
            };
            std::vector<RowOut> results(rows.size());
            parallel_for(rows.size(), threads, [&](std::size_t i) {
                auto [k, D] = rows[i];
                const Table1Row& pub = table1_row(k, D);
                RowOut r{};
                r.k = k;
                r.D = D;
                TheoryReport th = theory_report(k, D);
                r.prange_th = th.prange_score;
                r.fgum_th = th.fgum_score;
                std::size_t b = bu.n / std::size_t(k);
                r.prange_emp = r.turbo_emp = r.sa = r.dqi = r.qaoa_v = -1;
                if (!skip("prange") && !skip("turbo")) {
                    double ps = 0, ts = 0;
                    for (int s = 0; s < bu.seeds; ++s) {
                        Instance inst = sample_instance(k, D, b, 1000 + s);
                        ps += prange(inst, 77 + s).score;
                        ts += turbo_prange(inst, 77 + s).score;
                    }
                    r.prange_emp = ps / bu.seeds;
                    r.turbo_emp = ts / bu.seeds;
                }
                if (!skip("sa")) {
                    Instance inst = sample_instance(k, D, b, 4242);
                    SAConfig sa;
                    sa.sweeps = bu.sa_sweeps;
                    sa.seeds = bu.sa_chains;
                    r.sa = simulated_annealing(inst, sa, 9).score;
                }
                if (!skip("de")) {
                    DEConfig de;
                    de.population_size = bu.de_pop;
                    de.max_iters = bu.de_iters;
                    de.bisection_tol = bu.de_tol;
                    r.dqi = dqi_bp_score(k, D, de);
                }
                if (!skip("qaoa")) r.qaoa_v = optimize(k, D, bu.qaoa_p, bu.qaoa_restarts, 5).satisfied_fraction;
                // Bolding: computed theory/DE columns against the published
                // empirical SA / QAOA(p=16) columns.
                double best = th.prange_score;
                r.best_computed = "prange";
                auto consider = [&](double v, const char* name) {
                    if (v > best) { best = v; r.best_computed = name; }
                };
                consider(pub.sa, "sa");
                if (r.dqi >= 0) consider(r.dqi, "dqi_bp");
                consider(th.fgum_score, "regev_fgum");
                consider(pub.qaoa_p16, "qaoa");
                r.best_published =
                    pub.best == Table1Best::SimulatedAnnealing ? "sa" : "regev_fgum";
                results[i] = r;
            });
            out.stream() << "k,D,prange_analytic,prange_empirical,sa,dqi_bp_de,"
                            "regev_fgum_theory,turbo_prange_empirical,qaoa_p" +
                                std::to_string(bu.qaoa_p) +
                                ",best_computed,best_published\n";
            char line[320];
            bool bold_ok = true;
            for (const RowOut& r : results) {
                std::snprintf(line, sizeof line,
                              "%d,%d,%.5f,%.5f,%.5f,%.5f,%.5f,%.5f,%.5f,%s,%s\n", r.k, r.D,
                              r.prange_th, r.prange_emp, r.sa, r.dqi, r.fgum_th, r.turbo_emp,
                              r.qaoa_v, r.best_computed.c_str(), r.best_published.c_str());
                out.stream() << line;
                if (r.best_computed != r.best_published) bold_ok = false;
            }
            ordered_json cfg{{"budget", t_budget}, {"rows", t_rows}};
            out.stream() << record("table1", cfg, "bolding_matches", bold_ok ? 1.0 : 0.0, -1,
                                   "exact").dump()
                         << "\n";
            return bold_ok ? 0 : 1;
        }

        if (*audit) {
            Rng root(a_seed);
            double n2 = 0, n3 = 0, tree2 = 0;
            const double bound2 = std::pow(4.0 * a_k * a_D, 2);
            const double bound3 = std::pow(4.0 * a_k * a_D, 3);
            for (std::size_t s = 0; s < a_samples; ++s) {
                Instance inst = sample_instance(a_k, a_D, a_b, root.next_u64());
                inst.validate();  // throws on any regularity breach
                n2 += double(count_short_cycles(inst, 2));
                n3 += double(count_short_cycles(inst, 3));
                if (s < 50) tree2 += treelike_fraction(inst, 2);
            }
            n2 /= double(a_samples);
            n3 /= double(a_samples);
            tree2 /= std::min<std::size_t>(a_samples, 50);
            ordered_json cfg{{"k", a_k}, {"D", a_D}, {"b", a_b}, {"samples", a_samples},
                             {"seed", a_seed}};
            ordered_json rec = record("cycle-audit", cfg, "mean_cycles_ell2", n2, -1,
                                      "montecarlo");
            rec["bound_ell2"] = bound2;
            rec["mean_cycles_ell3"] = n3;
            rec["bound_ell3"] = bound3;
            rec["treelike_fraction_ell2"] = tree2;
            bool pass = n2 <= bound2 && n3 <= bound3;
            rec["pass"] = pass;
            out.stream() << rec.dump() << "\n";
            return pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
