#pragma once

#include "amm/econ.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <utility>

namespace amm {

// Sign of the gain a share-free trader makes selling x into a constprod
// pool: the comparison of the offered rate r_out / (r_in + x) against the
// oracle's relative price price_in / price_out. `greater` means profit.
std::strong_ordering gain_sign(const PosRational& x, const PosRational& r_in,
                               const PosRational& r_out, const PosRational& price_in,
                               const PosRational& price_out);

// Which side of a constprod pool must be sold to profit: the side whose
// oracle-valued reserve is smaller. Equal reserve values mean the pool
// already sits at the oracle ratio and no direction profits.
enum class PoolSide { lo, hi };
std::optional<PoolSide> profitable_side(const PosRational& r_lo, const PosRational& r_hi,
                                        const PosRational& price_lo, const PosRational& price_hi);

// Input amount maximizing the trade gain in a fixed direction:
// sqrt(price_out * r_in * r_out / price_in) - r_in, clamped at zero. Exact
// whenever the radicand is a perfect square, otherwise within sqrt_approx
// tolerance of the true optimum.
NonNegRational optimal_amount(const PosRational& r_in, const PosRational& r_out,
                              const PosRational& price_in, const PosRational& price_out);

// A fully solved single-pool arbitrage: sell x of `input`, receive y of
// `output`, for the stated gain. post_ratio is the pool's reserve ratio
// (input side over output side) after the trade; at the optimum it equals
// price_output / price_input, up to sqrt_approx error.
struct ArbSolution {
    TokenId input;
    TokenId output;
    PosRational x;
    PosRational y;
    Rational gain;
    Rational post_ratio;
};

// Best trade on pool m for account a, which must hold none of m's shares
// (std::invalid_argument otherwise; a shareholder's gain has a different
// shape). Returns nullopt when the pool is already aligned with the oracle:
// exactly balanced, or balanced within align_tol relative error, which
// absorbs the approximation left behind by a previous solution's sqrt.
std::optional<ArbSolution> solve_arbitrage(const State& s, AccountId a, const PriceOracle& o,
                                           MintedId m);
std::optional<ArbSolution> solve_arbitrage(const State& s, AccountId a, const PriceOracle& o,
                                           MintedId m, const PosRational& align_tol);

// 10^-9 relative; reserve ratios this close to the oracle ratio count as
// aligned.
PosRational default_align_tol();

// Exhaustive scan used to cross-check the closed-form optimum: evaluates
// the closed-form gain of account a at n_points equally spaced amounts in
// (0, 10 * r_in] and returns the best (x, gain), preferring smaller x on
// ties. n_points must be at least 1.
std::pair<PosRational, Rational> grid_best_gain(const State& s, AccountId a, const PriceOracle& o,
                                                TokenId input, TokenId output,
                                                std::size_t n_points);

} // namespace amm
