#include "amm/econ.hpp"

namespace amm {

const PosRational& PriceOracle::price(TokenId t) const {
    const auto it = prices_.find(t);
    if (it == prices_.end())
        throw AmmError(ErrorCode::unknown_price, "no price for token " + std::to_string(t.id));
    return it->second;
}

NonNegRational value_atomic(const AtomicWallet& w, const PriceOracle& o) {
    Rational total;
    for (const auto& [t, x] : w.entries())
        total += x * o.price(t);
    return NonNegRational(total);
}

NonNegRational value_minted(const MintedWallet& w, const MintedPriceFn& mp) {
    Rational total;
    for (const auto& [m, x] : w.entries())
        total += x * mp(m);
    return NonNegRational(total);
}

NonNegRational minted_price(const State& s, const PriceOracle& o, MintedId m) {
    if (!s.amms.initialized(m)) return NonNegRational();
    const Reserves& r = s.amms.pools().at(m);
    const NonNegRational supply = mint_supply(s, m);
    if (supply.is_zero())
        throw AmmError(ErrorCode::division_by_zero,
                       "pool " + std::to_string(m.lo().id) + "-" + std::to_string(m.hi().id) +
                           " is initialized but has zero share supply");
    const Rational pool_value = r.lo * o.price(m.lo()) + r.hi * o.price(m.hi());
    return NonNegRational(pool_value / supply);
}

MintedPriceFn minted_price_fn(const State& s, const PriceOracle& o) {
    return [&s, &o](MintedId m) { return minted_price(s, o, m); };
}

NonNegRational networth(const State& s, AccountId a, const PriceOracle& o) {
    const Rational atomic = value_atomic(s.atoms.wallet(a), o);
    const Rational minted = value_minted(s.mints.wallet(a), minted_price_fn(s, o));
    return NonNegRational(atomic + minted);
}

Rational gain(AccountId a, const PriceOracle& o, const State& before, const State& after) {
    return networth(after, a, o) - networth(before, a, o);
}

Rational swap_gain_closed_form(const PosRational& x, const PosRational& y,
                               const PosRational& price_in, const PosRational& price_out,
                               const NonNegRational& trader_shares, const PosRational& supply) {
    const Rational edge = y * price_out - x * price_in;
    return edge * (Rational(1) - trader_shares / supply);
}

Rational swap_gain(const State& s, const SwapTx& tx, const PriceOracle& o, const SwapRateFn& rate) {
    const MintedId m(tx.input, tx.output);
    const PosRational& r_in = s.amms.reserve(tx.input, tx.output);
    const PosRational& r_out = s.amms.reserve(tx.output, tx.input);
    const PosRational y = swap_output(tx.x, r_in, r_out, rate);
    const PosRational supply(mint_supply(s, m));
    return swap_gain_closed_form(tx.x, y, o.price(tx.input), o.price(tx.output),
                                 s.mints.get(tx.account, m), supply);
}

} // namespace amm
