#include "amm/txn.hpp"

namespace amm {

namespace {

std::string tok(TokenId t) {
    return std::to_string(t.id);
}

std::optional<AmmError> check_distinct(TokenId a, TokenId b) {
    if (a == b)
        return AmmError(ErrorCode::same_token, "both legs name token " + tok(a));
    return std::nullopt;
}

std::optional<AmmError> check_balance(const State& s, AccountId a, TokenId t, const Rational& need) {
    if (Rational have = s.atoms.get(a, t); have < need)
        return AmmError(ErrorCode::insufficient_balance, "account " + std::to_string(a.id) +
                                                             ", token " + tok(t) + ": have " +
                                                             have.str() + ", need " + need.str());
    return std::nullopt;
}

std::optional<AmmError> check_initialized(const State& s, MintedId m) {
    if (!s.amms.initialized(m))
        return AmmError(ErrorCode::uninitialized_amm,
                        "no pool " + tok(m.lo()) + "-" + tok(m.hi()));
    return std::nullopt;
}

} // namespace

PosRational constprod(const PosRational& x, const PosRational& r_in, const PosRational& r_out) {
    return PosRational(r_out / (r_in + x));
}

const SwapRateFn& constprod_rate() {
    static const SwapRateFn fn = [](const PosRational& x, const PosRational& r_in,
                                    const PosRational& r_out) { return constprod(x, r_in, r_out); };
    return fn;
}

PosRational swap_output(const PosRational& x, const PosRational& r_in, const PosRational& r_out,
                        const SwapRateFn& rate) {
    return PosRational(x * rate(x, r_in, r_out));
}

AccountId tx_account(const Tx& tx) {
    return std::visit([](const auto& t) { return t.account; }, tx);
}

std::optional<AmmError> validate_create(const State& s, const CreateTx& tx) {
    if (auto err = check_distinct(tx.token0, tx.token1)) return err;
    const MintedId m(tx.token0, tx.token1);
    if (s.amms.initialized(m))
        return AmmError(ErrorCode::already_initialized,
                        "pool " + tok(m.lo()) + "-" + tok(m.hi()) + " already exists");
    if (auto err = check_balance(s, tx.account, tx.token0, tx.x0)) return err;
    if (auto err = check_balance(s, tx.account, tx.token1, tx.x1)) return err;
    return std::nullopt;
}

std::optional<AmmError> validate_deposit(const State& s, const DepositTx& tx) {
    if (auto err = check_distinct(tx.token0, tx.token1)) return err;
    if (auto err = check_initialized(s, MintedId(tx.token0, tx.token1))) return err;
    const PosRational& r0 = s.amms.reserve(tx.token0, tx.token1);
    const PosRational& r1 = s.amms.reserve(tx.token1, tx.token0);
    if (auto err = check_balance(s, tx.account, tx.token0, tx.x0)) return err;
    if (auto err = check_balance(s, tx.account, tx.token1, tx.x0 * r1 / r0)) return err;
    return std::nullopt;
}

std::optional<AmmError> validate_redeem(const State& s, const RedeemTx& tx) {
    if (auto err = check_distinct(tx.token0, tx.token1)) return err;
    const MintedId m(tx.token0, tx.token1);
    if (auto err = check_initialized(s, m)) return err;
    if (Rational held = s.mints.get(tx.account, m); held < Rational(tx.v))
        return AmmError(ErrorCode::insufficient_balance,
                        "account " + std::to_string(tx.account.id) + ", minted " + tok(m.lo()) +
                            "-" + tok(m.hi()) + ": have " + held.str() + ", need " + tx.v.str());
    if (Rational supply = mint_supply(s, m); !(Rational(tx.v) < supply))
        return AmmError(ErrorCode::reserve_drained,
                        "redeeming " + tx.v.str() + " of supply " + supply.str() +
                            " would empty pool " + tok(m.lo()) + "-" + tok(m.hi()));
    return std::nullopt;
}

std::optional<AmmError> validate_swap(const State& s, const SwapTx& tx, const SwapRateFn& rate) {
    if (auto err = check_distinct(tx.input, tx.output)) return err;
    if (auto err = check_balance(s, tx.account, tx.input, tx.x)) return err;
    if (auto err = check_initialized(s, MintedId(tx.input, tx.output))) return err;
    const PosRational& r_in = s.amms.reserve(tx.input, tx.output);
    const PosRational& r_out = s.amms.reserve(tx.output, tx.input);
    if (Rational y = swap_output(tx.x, r_in, r_out, rate); !(y < Rational(r_out)))
        return AmmError(ErrorCode::reserve_drained, "swap output " + y.str() +
                                                        " would drain reserve " + r_out.str() +
                                                        " of token " + tok(tx.output));
    return std::nullopt;
}

std::optional<AmmError> validate_tx(const State& s, const Tx& tx, const SwapRateFn& rate) {
    return std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, CreateTx>) return validate_create(s, t);
            else if constexpr (std::is_same_v<T, DepositTx>) return validate_deposit(s, t);
            else if constexpr (std::is_same_v<T, RedeemTx>) return validate_redeem(s, t);
            else return validate_swap(s, t, rate);
        },
        tx);
}

State apply_create(const State& s, const CreateTx& tx) {
    if (auto err = validate_create(s, tx)) throw *err;
    const MintedId m(tx.token0, tx.token1);
    const bool in_order = tx.token0 == m.lo();
    State next = s;
    next.atoms = next.atoms.sub(tx.account, tx.token0, tx.x0).sub(tx.account, tx.token1, tx.x1);
    next.amms = next.amms.create(m, in_order ? Reserves{tx.x0, tx.x1} : Reserves{tx.x1, tx.x0});
    next.mints = next.mints.add(tx.account, m, tx.x0);
    return next;
}

State apply_deposit(const State& s, const DepositTx& tx) {
    if (auto err = validate_deposit(s, tx)) throw *err;
    const MintedId m(tx.token0, tx.token1);
    const PosRational r0 = s.amms.reserve(tx.token0, tx.token1);
    const PosRational r1 = s.amms.reserve(tx.token1, tx.token0);
    const PosRational x1(tx.x0 * r1 / r0);
    const NonNegRational minted(tx.x0 * mint_supply(s, m) / r0);
    State next = s;
    next.atoms = next.atoms.sub(tx.account, tx.token0, tx.x0).sub(tx.account, tx.token1, x1);
    next.amms = next.amms.add_reserve(tx.token0, tx.token1, tx.x0)
                    .add_reserve(tx.token1, tx.token0, x1);
    // Zero supply on an initialized pool cannot arise from a replayed trace;
    // minting nothing keeps the applier total on hand-built states.
    if (!minted.is_zero()) next.mints = next.mints.add(tx.account, m, PosRational(minted));
    return next;
}

State apply_redeem(const State& s, const RedeemTx& tx) {
    if (auto err = validate_redeem(s, tx)) throw *err;
    const MintedId m(tx.token0, tx.token1);
    const PosRational supply(mint_supply(s, m));
    const PosRational r0 = s.amms.reserve(tx.token0, tx.token1);
    const PosRational r1 = s.amms.reserve(tx.token1, tx.token0);
    const PosRational x0(tx.v * r0 / supply);
    const PosRational x1(tx.v * r1 / supply);
    State next = s;
    next.mints = next.mints.sub(tx.account, m, tx.v);
    next.atoms = next.atoms.add(tx.account, tx.token0, x0).add(tx.account, tx.token1, x1);
    next.amms = next.amms.sub_reserve(tx.token0, tx.token1, x0)
                    .sub_reserve(tx.token1, tx.token0, x1);
    return next;
}

State apply_swap(const State& s, const SwapTx& tx, const SwapRateFn& rate) {
    if (auto err = validate_swap(s, tx, rate)) throw *err;
    const PosRational& r_in = s.amms.reserve(tx.input, tx.output);
    const PosRational& r_out = s.amms.reserve(tx.output, tx.input);
    const PosRational y = swap_output(tx.x, r_in, r_out, rate);
    State next = s;
    next.atoms = next.atoms.sub(tx.account, tx.input, tx.x).add(tx.account, tx.output, y);
    next.amms = next.amms.add_reserve(tx.input, tx.output, tx.x)
                    .sub_reserve(tx.output, tx.input, y);
    return next;
}

State apply_tx(const State& s, const Tx& tx, const SwapRateFn& rate) {
    return std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, CreateTx>) return apply_create(s, t);
            else if constexpr (std::is_same_v<T, DepositTx>) return apply_deposit(s, t);
            else if constexpr (std::is_same_v<T, RedeemTx>) return apply_redeem(s, t);
            else return apply_swap(s, t, rate);
        },
        tx);
}

ReplayResult replay(const Trace& trace, const SwapRateFn& rate) {
    ReplayResult res;
    if (!valid_init(trace.initial)) {
        res.failure = ReplayFailure{
            std::nullopt,
            AmmError(ErrorCode::invalid_initial_state,
                     "trace must start with no pools and no minted balances")};
        return res;
    }
    res.states.push_back(trace.initial);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        if (auto err = validate_tx(res.states.back(), trace.steps[i], rate)) {
            res.failure = ReplayFailure{i, *err};
            return res;
        }
        res.states.push_back(apply_tx(res.states.back(), trace.steps[i], rate));
    }
    return res;
}

} // namespace amm
