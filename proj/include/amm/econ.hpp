#pragma once

#include "amm/txn.hpp"

#include <functional>
#include <map>

namespace amm {

// Per-unit prices for atomic tokens. Total on its configured set; asking
// for anything else throws UnknownPrice rather than defaulting, so a
// mispriced token cannot silently value as zero.
class PriceOracle {
public:
    PriceOracle() = default;
    explicit PriceOracle(std::map<TokenId, PosRational> prices) : prices_(std::move(prices)) {}

    const PosRational& price(TokenId t) const;
    const std::map<TokenId, PosRational>& prices() const { return prices_; }

private:
    std::map<TokenId, PosRational> prices_;
};

// Pricing rule for minted tokens, kept abstract because share value depends
// on the whole state, not just the oracle.
using MintedPriceFn = std::function<NonNegRational(MintedId)>;

// Sum of balance * price over a wallet.
NonNegRational value_atomic(const AtomicWallet& w, const PriceOracle& o);
NonNegRational value_minted(const MintedWallet& w, const MintedPriceFn& mp);

// Value of one share of pool m: (r_lo * price(lo) + r_hi * price(hi)) / supply.
// An uninitialized pool's share is worthless (zero); an initialized pool
// with zero supply has no well-defined share value and throws DivisionByZero.
NonNegRational minted_price(const State& s, const PriceOracle& o, MintedId m);

// minted_price with the state and oracle bound in by reference; the closure
// must not outlive either of them.
MintedPriceFn minted_price_fn(const State& s, const PriceOracle& o);

// Atomic plus minted holdings of one account, at oracle prices and the
// state's own share prices.
NonNegRational networth(const State& s, AccountId a, const PriceOracle& o);

// networth(after) - networth(before); the sign convention is the account's
// point of view.
Rational gain(AccountId a, const PriceOracle& o, const State& before, const State& after);

// Gain of a constprod swap (x in, y out) without forming the successor
// state: (y * price_out - x * price_in) * (1 - trader_shares / supply).
// The second factor discounts the trader's own cut of the pool.
Rational swap_gain_closed_form(const PosRational& x, const PosRational& y,
                               const PosRational& price_in, const PosRational& price_out,
                               const NonNegRational& trader_shares, const PosRational& supply);

// Closed-form gain of a swap against the pool it names in s.
Rational swap_gain(const State& s, const SwapTx& tx, const PriceOracle& o,
                   const SwapRateFn& rate = constprod_rate());

} // namespace amm
