// JSON-lines pipeline tool around the amm library: replay and check traces,
// generate random ones, and solve single-pool arbitrage. Exit codes: 0 on
// success, 1 when the model rejects an input or a property fails (details as
// JSON on stderr), 2 for unusable flags or files.
#include "amm/serial.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace amm;

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Trace load_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return trace_from_jsonl(in);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void emit(const Json& j, std::ostream& out = std::cout) {
    out << j.dump() << '\n';
}

struct ReplayArgs {
    std::string trace_path;
    std::string oracle_path;
    std::uint64_t gain_account = 0;
    bool want_gain = false;
    int decimals = -1;
};

int cmd_replay(const ReplayArgs& args) {
    const Trace trace = load_trace_file(args.trace_path);
    if (args.want_gain && args.oracle_path.empty())
        throw std::invalid_argument("--gain needs --oracle to price the account's holdings");

    const ReplayResult res = replay(trace);
    if (!res.ok()) {
        Json err = error_to_json(res.failure->cause);
        if (res.failure->step) err["step"] = *res.failure->step;
        emit(err, std::cerr);
        return 1;
    }

    if (!args.want_gain) {
        // Bare replay prints the final state only, so the output can feed
        // `arb --state` directly.
        emit(state_to_json(res.final_state()));
        return 0;
    }

    const PriceOracle oracle = oracle_from_json(load_json_file(args.oracle_path));
    const AccountId acct{args.gain_account};
    Json gains = Json::array();
    Json gains_dec = Json::array();
    Rational sum;
    for (std::size_t i = 0; i + 1 < res.states.size(); ++i) {
        const Rational g = gain(acct, oracle, res.states[i], res.states[i + 1]);
        sum += g;
        gains.push_back(g.str());
        if (args.decimals >= 0) gains_dec.push_back(g.decimal(args.decimals));
    }
    const Rational total = gain(acct, oracle, res.states.front(), res.states.back());
    Json out{{"final", state_to_json(res.final_state())},
             {"account", args.gain_account},
             {"gains", std::move(gains)},
             {"total_gain", total.str()},
             {"gains_sum", sum.str()}};
    if (args.decimals >= 0) {
        out["gains_decimal"] = std::move(gains_dec);
        out["total_gain_decimal"] = total.decimal(args.decimals);
    }
    emit(out);
    return 0;
}

struct GenArgs {
    std::string config_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> steps, accounts, tokens;
};

GenConfig resolve_gen_config(const GenArgs& args) {
    GenConfig cfg;
    if (!args.config_path.empty()) cfg = gen_config_from_json(load_json_file(args.config_path));
    if (args.seed) cfg.seed = *args.seed;
    if (args.steps) cfg.n_steps = *args.steps;
    if (args.accounts) cfg.n_accounts = *args.accounts;
    if (args.tokens) cfg.n_tokens = *args.tokens;
    return cfg;
}

int cmd_gen(const GenArgs& args) {
    const Trace trace = gen_trace(resolve_gen_config(args));
    const std::string text = trace_to_jsonl(trace);
    if (args.out_path.empty() || args.out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream out(args.out_path);
        if (!out) throw std::invalid_argument("cannot write " + args.out_path);
        out << text;
    }
    return 0;
}

struct ArbArgs {
    std::string state_path;
    std::string oracle_path;
    std::string pool;
    std::uint64_t account = 0;
    int decimals = -1;
};

int cmd_arb(const ArbArgs& args) {
    const State state = state_from_json(load_json_file(args.state_path));
    const PriceOracle oracle = oracle_from_json(load_json_file(args.oracle_path));
    const MintedId pool = pool_from_key(args.pool);

    std::optional<ArbSolution> sol;
    try {
        sol = solve_arbitrage(state, AccountId{args.account}, oracle, pool);
    } catch (const std::invalid_argument& e) {
        // Shareholding accounts are rejected by the solver; that is a
        // property of the request, not of the flags.
        emit(Json{{"error", "ShareholderAccount"}, {"detail", e.what()}}, std::cerr);
        return 1;
    }

    if (!sol) {
        emit(Json{{"pool", args.pool}, {"solution", "none"}});
        return 0;
    }
    Json out = arb_solution_to_json(*sol, pool);
    if (args.decimals >= 0) {
        out["x_decimal"] = sol->x.value().decimal(args.decimals);
        out["y_decimal"] = sol->y.value().decimal(args.decimals);
        out["gain_decimal"] = sol->gain.decimal(args.decimals);
        out["post_ratio_decimal"] = sol->post_ratio.decimal(args.decimals);
    }
    emit(out);
    return 0;
}

struct CheckArgs {
    std::string trace_path;
    GenArgs gen;
    std::uint32_t count = 1;
    unsigned jobs = 1;
};

int finish_report(const CheckReport& rep) {
    emit(report_to_json(rep));
    if (!rep.ok()) {
        emit(report_to_json(rep)["violations"], std::cerr);
        return 1;
    }
    return 0;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t i) {
    std::uint64_t z = seed + (i + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

int cmd_check(const CheckArgs& args) {
    if (!args.trace_path.empty()) return finish_report(check_trace(load_trace_file(args.trace_path)));

    const GenConfig base = resolve_gen_config(args.gen);
    const unsigned jobs = std::max(1u, std::min(args.jobs, args.count == 0 ? 1u : args.count));
    std::vector<CheckReport> partial(args.count);
    auto worker = [&](unsigned w) {
        for (std::uint32_t i = w; i < args.count; i += jobs) {
            GenConfig cfg = base;
            cfg.seed = mix_seed(base.seed, i);
            partial[i] = check_trace(gen_trace(cfg));
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    CheckReport rep;
    for (std::uint32_t i = 0; i < args.count; ++i)
        merge_reports(rep, partial[i], "trace" + std::to_string(i));
    return finish_report(rep);
}

struct LemmaArgs {
    GenArgs gen;
    LemmaCampaign sizes;
    unsigned jobs = 1;
};

int cmd_lemmas(const LemmaArgs& args) {
    const GenConfig cfg = resolve_gen_config(args.gen);
    if (args.jobs <= 1) return finish_report(check_lemmas(cfg, args.sizes));

    // One task per campaign; each draws from its own seed stream, so the
    // merged report is identical to the sequential one.
    std::uint64_t stream = cfg.seed;
    const std::uint64_t seed_dir = mix_seed(stream, 0);
    const std::uint64_t seed_opt = mix_seed(stream, 1);
    const std::uint64_t seed_fix = mix_seed(stream, 2);
    CheckReport gain_rep, sign_rep, zero_rep, dir_rep, opt_rep, fix_rep;
    std::vector<std::thread> pool;
    pool.emplace_back([&] { gain_rep = check_gain_closed_form(cfg, args.sizes.gain_swaps); });
    pool.emplace_back([&] { sign_rep = check_gain_sign(cfg, args.sizes.sign_swaps); });
    pool.emplace_back([&] { zero_rep = check_zero_sum(cfg, args.sizes.zero_sum_swaps); });
    pool.emplace_back([&] {
        dir_rep = check_direction(seed_dir, args.sizes.direction_pools, args.sizes.direction_grid);
    });
    pool.emplace_back([&] {
        opt_rep =
            check_optimality(seed_opt, args.sizes.optimality_pools, args.sizes.optimality_grid);
    });
    pool.emplace_back([&] { fix_rep = check_fixed_point(seed_fix, args.sizes.fixed_point_pools); });
    for (auto& th : pool) th.join();

    CheckReport rep;
    merge_reports(rep, gain_rep, "gain");
    merge_reports(rep, sign_rep, "sign");
    merge_reports(rep, zero_rep, "zero_sum");
    merge_reports(rep, dir_rep, "direction");
    merge_reports(rep, opt_rep, "optimality");
    merge_reports(rep, fix_rep, "fixed_point");
    return finish_report(rep);
}

void add_gen_flags(CLI::App* cmd, GenArgs& args) {
    cmd->add_option("--config", args.config_path, "gen config JSON file");
    cmd->add_option("--seed", args.seed, "generator seed");
    cmd->add_option("--steps", args.steps, "transactions per trace");
    cmd->add_option("--accounts", args.accounts, "number of accounts");
    cmd->add_option("--tokens", args.tokens, "number of atomic tokens");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-rational constant-product AMM simulator"};
    app.require_subcommand(1);

    ReplayArgs replay_args;
    CLI::App* replay_cmd = app.add_subcommand("replay", "replay a JSONL trace file");
    replay_cmd->add_option("trace", replay_args.trace_path, "trace file")->required();
    replay_cmd->add_option("--oracle", replay_args.oracle_path, "price oracle JSON file");
    CLI::Option* gain_opt =
        replay_cmd->add_option("--gain", replay_args.gain_account, "report per-step gains of this account");
    replay_cmd->add_option("--decimals", replay_args.decimals, "append decimal approximations");

    GenArgs gen_args;
    CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random valid trace");
    add_gen_flags(gen_cmd, gen_args);
    gen_cmd->add_option("-o,--out", gen_args.out_path, "output path (default stdout)");

    ArbArgs arb_args;
    CLI::App* arb_cmd = app.add_subcommand("arb", "solve single-pool arbitrage");
    arb_cmd->add_option("--state", arb_args.state_path, "state JSON file")->required();
    arb_cmd->add_option("--oracle", arb_args.oracle_path, "price oracle JSON file")->required();
    arb_cmd->add_option("--pool", arb_args.pool, "pool key, e.g. 0-1")->required();
    arb_cmd->add_option("--account", arb_args.account, "trading account id")->required();
    arb_cmd->add_option("--decimals", arb_args.decimals, "append decimal approximations");

    CheckArgs check_args;
    CLI::App* check_cmd = app.add_subcommand("check", "check state properties over traces");
    check_cmd->add_option("--trace", check_args.trace_path, "check this trace file");
    add_gen_flags(check_cmd, check_args.gen);
    check_cmd->add_option("--count", check_args.count, "number of generated traces");
    check_cmd->add_option("--jobs", check_args.jobs, "worker threads");

    LemmaArgs lemma_args;
    CLI::App* lemmas_cmd = app.add_subcommand("lemmas", "run the economic-law campaigns");
    add_gen_flags(lemmas_cmd, lemma_args.gen);
    lemmas_cmd->add_option("--gain-swaps", lemma_args.sizes.gain_swaps, "closed-form gain samples");
    lemmas_cmd->add_option("--sign-swaps", lemma_args.sizes.sign_swaps, "gain-sign samples");
    lemmas_cmd->add_option("--zero-sum-swaps", lemma_args.sizes.zero_sum_swaps, "zero-sum samples");
    lemmas_cmd->add_option("--direction-pools", lemma_args.sizes.direction_pools, "direction samples");
    lemmas_cmd->add_option("--direction-grid", lemma_args.sizes.direction_grid, "direction grid points");
    lemmas_cmd->add_option("--optimality-pools", lemma_args.sizes.optimality_pools, "optimality samples");
    lemmas_cmd->add_option("--optimality-grid", lemma_args.sizes.optimality_grid, "optimality grid points");
    lemmas_cmd->add_option("--fixed-point-pools", lemma_args.sizes.fixed_point_pools, "fixed-point samples");
    lemmas_cmd->add_option("--jobs", lemma_args.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        replay_args.want_gain = gain_opt->count() > 0;
        if (app.got_subcommand(replay_cmd)) return cmd_replay(replay_args);
        if (app.got_subcommand(gen_cmd)) return cmd_gen(gen_args);
        if (app.got_subcommand(arb_cmd)) return cmd_arb(arb_args);
        if (app.got_subcommand(check_cmd)) return cmd_check(check_args);
        return cmd_lemmas(lemma_args);
    } catch (const AmmError& e) {
        emit(error_to_json(e), std::cerr);
        return 1;
    } catch (const GenerationStalled& e) {
        emit(Json{{"error", "GenerationStalled"}, {"detail", e.what()}}, std::cerr);
        return 1;
    } catch (const std::exception& e) {
        emit(Json{{"error", "BadInput"}, {"detail", e.what()}}, std::cerr);
        return 2;
    }
}
