#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amm/harness.hpp"
#include "amm/serial.hpp"

using namespace amm;

namespace {

GenConfig small_config(std::uint64_t seed = 42) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n_accounts = 4;
    cfg.n_tokens = 3;
    cfg.n_steps = 30;
    return cfg;
}

} // namespace

TEST_CASE("generation is deterministic in the config") {
    const GenConfig cfg = small_config();
    const Trace a = gen_trace(cfg);
    const Trace b = gen_trace(cfg);
    CHECK(trace_to_jsonl(a) == trace_to_jsonl(b));
    CHECK(a.initial == b.initial);
    CHECK(a.steps.size() == cfg.n_steps);

    const Trace other = gen_trace(small_config(43));
    CHECK(trace_to_jsonl(other) != trace_to_jsonl(a));
}

TEST_CASE("zero steps yields a bare initial state") {
    GenConfig cfg = small_config();
    cfg.n_steps = 0;
    const Trace t = gen_trace(cfg);
    CHECK(t.steps.empty());
    CHECK(valid_init(t.initial));
    const ReplayResult res = replay(t);
    CHECK(res.ok());
    CHECK(res.states.size() == 1);
}

TEST_CASE("generated traces replay cleanly and pass every state check") {
    const Trace t = gen_trace(small_config());
    const ReplayResult res = replay(t);
    REQUIRE(res.ok());
    CHECK(res.states.size() == t.steps.size() + 1);

    const CheckReport rep = check_trace(t);
    CHECK(rep.ok());
    CHECK(rep.states_checked == t.steps.size() + 1);
    // A swap-heavy 30-step trace exercises every transaction kind.
    bool saw_create = false, saw_swap = false;
    for (const Tx& tx : t.steps) {
        saw_create |= std::holds_alternative<CreateTx>(tx);
        saw_swap |= std::holds_alternative<SwapTx>(tx);
    }
    CHECK(saw_create);
    CHECK(saw_swap);
}

TEST_CASE("degenerate configs are rejected up front") {
    GenConfig cfg = small_config();
    cfg.n_tokens = 1;
    CHECK_THROWS_AS(gen_trace(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.n_accounts = 0;
    CHECK_THROWS_AS(gen_trace(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.weights = TxWeights{0, 0, 0, 0};
    CHECK_THROWS_AS(gen_trace(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.amount_lo = PosRational(Rational(8));
    cfg.amount_hi = PosRational(Rational(4));
    CHECK_THROWS_AS(gen_trace(cfg), std::invalid_argument);
}

TEST_CASE("generation stalls when no kind can ever validate") {
    GenConfig cfg = small_config();
    // Redeems need an existing pool; with creates disabled none ever appears.
    cfg.weights = TxWeights{0, 0, 1, 0};
    cfg.n_steps = 1;
    CHECK_THROWS_AS(gen_trace(cfg), GenerationStalled);
}

TEST_CASE("check_trace reports replay failures instead of throwing") {
    // Initial states must carry no pools.
    State pooled;
    pooled.amms = pooled.amms.create(MintedId(TokenId{0}, TokenId{1}),
                                     Reserves{PosRational(Rational(1)), PosRational(Rational(1))});
    const CheckReport bad_init = check_trace(Trace{pooled, {}});
    REQUIRE(!bad_init.ok());
    CHECK(bad_init.violations[0].property == "replay");
    CHECK(bad_init.violations[0].step == 0);

    // A swap against a pool that never existed fails at its step index.
    State init;
    init.atoms = init.atoms.add(AccountId{0}, TokenId{0}, PosRational(Rational(5)));
    Trace t{init, {SwapTx{AccountId{0}, TokenId{0}, TokenId{1}, PosRational(Rational(1))}}};
    const CheckReport bad_step = check_trace(t);
    REQUIRE(!bad_step.ok());
    CHECK(bad_step.violations[0].property == "replay");
    CHECK(bad_step.violations[0].step == 0);
    CHECK(bad_step.states_checked == 1); // the valid prefix is still checked
}

TEST_CASE("merge_reports prefixes tallies and violations") {
    CheckReport dst;
    dst.states_checked = 1;
    dst.tallies["swaps"] = 2;

    CheckReport src;
    src.states_checked = 3;
    src.tallies["swaps"] = 5;
    src.violations.push_back(Violation{7, "gain_sign", "off by one"});

    merge_reports(dst, src, "sign");
    CHECK(dst.states_checked == 4);
    CHECK(dst.tallies["swaps"] == 2);
    CHECK(dst.tallies["sign.swaps"] == 5);
    REQUIRE(dst.violations.size() == 1);
    CHECK(dst.violations[0].property == "sign.gain_sign");
    CHECK(dst.violations[0].step == 7);

    merge_reports(dst, src, "");
    CHECK(dst.tallies["swaps"] == 7);
    CHECK(dst.violations[1].property == "gain_sign");
}

TEST_CASE("closed-form gain campaign holds on sampled swaps") {
    const CheckReport rep = check_gain_closed_form(small_config(), 25);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("swaps") == 25);
}

TEST_CASE("gain sign campaign stratifies the three orderings evenly") {
    const CheckReport rep = check_gain_sign(small_config(), 27);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("sign_less") == 9);
    CHECK(rep.tallies.at("sign_equal") == 9);
    CHECK(rep.tallies.at("sign_greater") == 9);
}

TEST_CASE("swaps move networth between accounts but never create it") {
    const CheckReport rep = check_zero_sum(small_config(), 20);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("swaps") == 20);
}

TEST_CASE("direction campaign finds profit only where predicted") {
    const CheckReport rep = check_direction(11, 6, 200);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("pools") == 6);
}

TEST_CASE("optimality campaign beats the grid on every pool") {
    const CheckReport rep = check_optimality(11, 6, 300);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("square_pools") + rep.tallies.at("generic_pools") == 6);
    CHECK(rep.tallies.at("square_pools") == 3);
}

TEST_CASE("solved pools stay solved-out") {
    const CheckReport rep = check_fixed_point(11, 8);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("square_pools") + rep.tallies.at("generic_pools") == 8);
}

TEST_CASE("the aggregate campaign prefixes every stratum") {
    LemmaCampaign sizes;
    sizes.gain_swaps = 6;
    sizes.sign_swaps = 6;
    sizes.zero_sum_swaps = 6;
    sizes.direction_pools = 3;
    sizes.direction_grid = 150;
    sizes.optimality_pools = 2;
    sizes.optimality_grid = 200;
    sizes.fixed_point_pools = 3;
    const CheckReport rep = check_lemmas(small_config(), sizes);
    CHECK(rep.ok());
    CHECK(rep.tallies.at("gain.swaps") == 6);
    CHECK(rep.tallies.at("sign.sign_equal") == 2);
    CHECK(rep.tallies.at("direction.pools") == 3);
    CHECK(rep.tallies.count("optimality.square_pools") +
              rep.tallies.count("optimality.generic_pools") >=
          1);
    CHECK(rep.tallies.at("fixed_point.square_pools") +
              rep.tallies.at("fixed_point.generic_pools") ==
          3);
}
