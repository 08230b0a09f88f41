#include "amm/arb.hpp"

#include <stdexcept>

namespace amm {

std::strong_ordering gain_sign(const PosRational& x, const PosRational& r_in,
                               const PosRational& r_out, const PosRational& price_in,
                               const PosRational& price_out) {
    return constprod(x, r_in, r_out) <=> price_in / price_out;
}

std::optional<PoolSide> profitable_side(const PosRational& r_lo, const PosRational& r_hi,
                                        const PosRational& price_lo, const PosRational& price_hi) {
    const Rational value_lo = r_lo * price_lo;
    const Rational value_hi = r_hi * price_hi;
    if (value_lo < value_hi) return PoolSide::lo;
    if (value_hi < value_lo) return PoolSide::hi;
    return std::nullopt;
}

NonNegRational optimal_amount(const PosRational& r_in, const PosRational& r_out,
                              const PosRational& price_in, const PosRational& price_out) {
    const NonNegRational radicand(price_out * r_in * r_out / price_in);
    const Rational x = sqrt_approx(radicand) - r_in;
    return x.sign() > 0 ? NonNegRational(x) : NonNegRational();
}

PosRational default_align_tol() {
    return PosRational(Rational(1, 1000000000L));
}

std::optional<ArbSolution> solve_arbitrage(const State& s, AccountId a, const PriceOracle& o,
                                           MintedId m) {
    return solve_arbitrage(s, a, o, m, default_align_tol());
}

std::optional<ArbSolution> solve_arbitrage(const State& s, AccountId a, const PriceOracle& o,
                                           MintedId m, const PosRational& align_tol) {
    if (!s.amms.initialized(m))
        throw AmmError(ErrorCode::uninitialized_amm,
                       "no pool " + std::to_string(m.lo().id) + "-" + std::to_string(m.hi().id));
    if (!s.mints.get(a, m).is_zero())
        throw std::invalid_argument("account " + std::to_string(a.id) +
                                    " holds shares of the pool it would arbitrage");

    const Reserves& r = s.amms.pools().at(m);
    const PosRational& price_lo = o.price(m.lo());
    const PosRational& price_hi = o.price(m.hi());
    const Rational value_lo = r.lo * price_lo;
    const Rational value_hi = r.hi * price_hi;
    const Rational spread = (value_lo - value_hi).abs();
    const Rational larger = value_lo < value_hi ? value_hi : value_lo;
    if (spread <= align_tol * larger) return std::nullopt;

    const PoolSide side = *profitable_side(r.lo, r.hi, price_lo, price_hi);
    const TokenId input = side == PoolSide::lo ? m.lo() : m.hi();
    const TokenId output = m.other(input);
    const PosRational& r_in = side == PoolSide::lo ? r.lo : r.hi;
    const PosRational& r_out = side == PoolSide::lo ? r.hi : r.lo;
    const PosRational& price_in = o.price(input);
    const PosRational& price_out = o.price(output);

    const NonNegRational x = optimal_amount(r_in, r_out, price_in, price_out);
    if (x.is_zero()) return std::nullopt;
    const PosRational x_pos(x);
    const PosRational y = swap_output(x_pos, r_in, r_out);
    // A share-free trader's gain is the bare price edge of the trade.
    const Rational trade_gain = y * price_out - x_pos * price_in;
    const Rational post_ratio = (r_in + x_pos) / (r_out - y);
    return ArbSolution{input, output, x_pos, y, trade_gain, post_ratio};
}

std::pair<PosRational, Rational> grid_best_gain(const State& s, AccountId a, const PriceOracle& o,
                                                TokenId input, TokenId output,
                                                std::size_t n_points) {
    if (n_points == 0) throw std::invalid_argument("grid_best_gain needs at least one point");
    const MintedId m(input, output);
    const PosRational& r_in = s.amms.reserve(input, output);
    const PosRational& r_out = s.amms.reserve(output, input);
    const PosRational& price_in = o.price(input);
    const PosRational& price_out = o.price(output);
    const NonNegRational shares = s.mints.get(a, m);
    const PosRational supply(mint_supply(s, m));

    const Rational step = Rational(10) * r_in / Rational(static_cast<long>(n_points));
    std::optional<std::pair<PosRational, Rational>> best;
    for (std::size_t k = 1; k <= n_points; ++k) {
        const PosRational x(step * Rational(static_cast<long>(k)));
        const PosRational y = swap_output(x, r_in, r_out);
        const Rational g = swap_gain_closed_form(x, y, price_in, price_out, shares, supply);
        if (!best || best->second < g) best.emplace(x, g);
    }
    return *best;
}

} // namespace amm
