#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "amm/arb.hpp"

using namespace amm;

namespace {

const TokenId T0{0}, T1{1};
const AccountId LP{1}, TRADER{5};

PosRational pos(long n, long d = 1) { return PosRational(Rational(n, d)); }

PriceOracle oracle34() {
    return PriceOracle({{T0, pos(3)}, {T1, pos(4)}});
}

// Pool (T0: 18, T1: 6); all 18 shares with LP; trader holds nothing.
State pooled_state() {
    State s;
    const MintedId m(T0, T1);
    s.amms = s.amms.create(m, Reserves{pos(18), pos(6)});
    s.mints = s.mints.add(LP, m, pos(18));
    return s;
}

} // namespace

TEST_CASE("gain sign is the rate-versus-price-ratio comparison") {
    // Selling 6 T1 into (r_in 6, r_out 18): rate 3/2 vs price ratio 4/3.
    CHECK(gain_sign(pos(6), pos(6), pos(18), pos(4), pos(3)) == std::strong_ordering::greater);
    // Selling 6 T0 the other way: rate 1/4 vs 3/4.
    CHECK(gain_sign(pos(6), pos(18), pos(6), pos(3), pos(4)) == std::strong_ordering::less);
    // Break-even: rate 18/(6+x) equals 4/3 at x = 15/2.
    CHECK(gain_sign(pos(15, 2), pos(6), pos(18), pos(4), pos(3)) == std::strong_ordering::equal);
}

TEST_CASE("profitable side is the one the oracle says is undervalued") {
    // Values 18 * 3 = 54 versus 6 * 4 = 24: sell the hi token.
    CHECK(profitable_side(pos(18), pos(6), pos(3), pos(4)) == PoolSide::hi);
    CHECK(profitable_side(pos(6), pos(18), pos(4), pos(3)) == PoolSide::lo);
    // 18 * 3 == 54 == 27/2 * 4: balanced.
    CHECK(!profitable_side(pos(18), pos(27, 2), pos(3), pos(4)).has_value());
}

TEST_CASE("optimal amount for the worked pool is exactly 3") {
    // sqrt(3 * 6 * 18 / 4) - 6 = sqrt(81) - 6.
    CHECK(optimal_amount(pos(6), pos(18), pos(4), pos(3)) == Rational(3));
    // Aligned or wrong-way pools clamp to zero.
    CHECK(optimal_amount(pos(18), pos(27, 2), pos(3), pos(4)).is_zero());
    CHECK(optimal_amount(pos(18), pos(6), pos(3), pos(4)).is_zero());
}

TEST_CASE("worked arbitrage solves exactly") {
    const State s = pooled_state();
    const auto sol = solve_arbitrage(s, TRADER, oracle34(), MintedId(T0, T1));
    REQUIRE(sol.has_value());
    CHECK(sol->input == T1);
    CHECK(sol->output == T0);
    CHECK(sol->x == Rational(3));
    CHECK(sol->y == Rational(6));
    CHECK(sol->gain == Rational(6));
    CHECK(sol->post_ratio == Rational(3, 4));
    // The post-trade ratio lands on price(output) / price(input).
    CHECK(sol->post_ratio == oracle34().price(T0) / oracle34().price(T1));
}

TEST_CASE("aligned pools have no solution") {
    State s;
    const MintedId m(T0, T1);
    s.amms = s.amms.create(m, Reserves{pos(18), pos(27, 2)});
    s.mints = s.mints.add(LP, m, pos(18));
    CHECK(!solve_arbitrage(s, TRADER, oracle34(), m).has_value());
}

TEST_CASE("near-aligned pools within tolerance count as aligned") {
    State s;
    const MintedId m(T0, T1);
    // hi reserve off the aligned 27/2 by one part in ~10^10.
    const PosRational nudged(Rational(27, 2) * (Rational(1) + Rational(1, 10000000000L)));
    s.amms = s.amms.create(m, Reserves{pos(18), nudged});
    s.mints = s.mints.add(LP, m, pos(18));
    CHECK(!solve_arbitrage(s, TRADER, oracle34(), m).has_value());
    // The same pool is solvable under a tighter alignment tolerance.
    CHECK(solve_arbitrage(s, TRADER, oracle34(), m, PosRational(Rational(1, 1L << 60)))
              .has_value());
}

TEST_CASE("solver rejects shareholders and missing pools") {
    const State s = pooled_state();
    CHECK_THROWS_AS(solve_arbitrage(s, LP, oracle34(), MintedId(T0, T1)), std::invalid_argument);
    try {
        solve_arbitrage(s, TRADER, oracle34(), MintedId(T0, TokenId{7}));
        FAIL("solved a pool that does not exist");
    } catch (const AmmError& e) {
        CHECK(e.code() == ErrorCode::uninitialized_amm);
    }
}

TEST_CASE("applying the worked solution leaves an aligned pool") {
    State s = pooled_state();
    const MintedId m(T0, T1);
    const auto sol = solve_arbitrage(s, TRADER, oracle34(), m);
    REQUIRE(sol.has_value());

    s.atoms = s.atoms.add(TRADER, sol->input, sol->x);
    const State settled = apply_swap(s, SwapTx{TRADER, sol->input, sol->output, sol->x});
    CHECK(settled.amms.reserve(T1, T0) == Rational(9));
    CHECK(settled.amms.reserve(T0, T1) == Rational(12));
    // Exact alignment: 12 * 3 == 9 * 4.
    CHECK(settled.amms.reserve(T0, T1) * oracle34().price(T0) ==
          settled.amms.reserve(T1, T0) * oracle34().price(T1));
    CHECK(!solve_arbitrage(settled, TRADER, oracle34(), m).has_value());
}

TEST_CASE("grid scan never beats the solver on the worked pool") {
    const State s = pooled_state();
    const auto sol = solve_arbitrage(s, TRADER, oracle34(), MintedId(T0, T1));
    REQUIRE(sol.has_value());
    // 1000 points over (0, 10 * 6]; x = 3 sits on the grid (point 50).
    const auto best = grid_best_gain(s, TRADER, oracle34(), T1, T0, 1000);
    CHECK(best.first == Rational(3));
    CHECK(best.second == Rational(6));
    CHECK(sol->gain >= best.second);
}

TEST_CASE("grid scan sees only losses against the profitable direction") {
    const State s = pooled_state();
    const auto wrong_way = grid_best_gain(s, TRADER, oracle34(), T0, T1, 1000);
    CHECK(wrong_way.second < Rational(0));
    CHECK_THROWS_AS(grid_best_gain(s, TRADER, oracle34(), T0, T1, 0), std::invalid_argument);
}
