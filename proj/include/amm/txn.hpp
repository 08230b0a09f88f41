#pragma once

#include "amm/state.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

namespace amm {

// Exchange rate offered for selling x units of the input token against the
// (input, output) reserves; the buyer receives x * rate(x, r_in, r_out).
using SwapRateFn =
    std::function<PosRational(const PosRational& x, const PosRational& r_in, const PosRational& r_out)>;

// Constant-product rate r_out / (r_in + x): the output amount is exactly
// what keeps r_in * r_out unchanged.
PosRational constprod(const PosRational& x, const PosRational& r_in, const PosRational& r_out);

// constprod wrapped as a SwapRateFn, the default rate everywhere.
const SwapRateFn& constprod_rate();

// x * rate(x, r_in, r_out).
PosRational swap_output(const PosRational& x, const PosRational& r_in, const PosRational& r_out,
                        const SwapRateFn& rate = constprod_rate());

// Token order in Create/Deposit/Redeem is the submitter's order, not the
// canonical pool order: the share accounting of create and deposit is
// anchored to the first-named token.
struct CreateTx {
    AccountId account;
    TokenId token0;
    TokenId token1;
    PosRational x0; // initial reserve of token0, also the share amount minted
    PosRational x1; // initial reserve of token1
};

struct DepositTx {
    AccountId account;
    TokenId token0;
    TokenId token1;
    PosRational x0; // token1 is charged pro rata: x0 * r1 / r0
};

struct RedeemTx {
    AccountId account;
    TokenId token0;
    TokenId token1;
    PosRational v; // shares burned; both reserves pay out pro rata
};

struct SwapTx {
    AccountId account;
    TokenId input;
    TokenId output;
    PosRational x; // amount of input sold
};

using Tx = std::variant<CreateTx, DepositTx, RedeemTx, SwapTx>;

// The account a transaction is submitted by.
AccountId tx_account(const Tx& tx);

// Validation reports the first violated condition; nullopt means the
// transaction applies cleanly to this state.
std::optional<AmmError> validate_create(const State& s, const CreateTx& tx);
std::optional<AmmError> validate_deposit(const State& s, const DepositTx& tx);
std::optional<AmmError> validate_redeem(const State& s, const RedeemTx& tx);
std::optional<AmmError> validate_swap(const State& s, const SwapTx& tx,
                                      const SwapRateFn& rate = constprod_rate());
std::optional<AmmError> validate_tx(const State& s, const Tx& tx,
                                    const SwapRateFn& rate = constprod_rate());

// Appliers return the successor state and throw the validation error on an
// invalid transaction; they never modify their input.
State apply_create(const State& s, const CreateTx& tx);
State apply_deposit(const State& s, const DepositTx& tx);
State apply_redeem(const State& s, const RedeemTx& tx);
State apply_swap(const State& s, const SwapTx& tx, const SwapRateFn& rate = constprod_rate());
State apply_tx(const State& s, const Tx& tx, const SwapRateFn& rate = constprod_rate());

struct Trace {
    State initial;
    std::vector<Tx> steps;
};

// Where a replay stopped: before step `step` (nullopt when the initial
// state itself was rejected), and why.
struct ReplayFailure {
    std::optional<std::size_t> step;
    AmmError cause;
};

struct ReplayResult {
    // states[0] is the initial state, states[i + 1] the state after step i;
    // on failure the vector ends at the last valid state.
    std::vector<State> states;
    std::optional<ReplayFailure> failure;

    bool ok() const { return !failure.has_value(); }
    const State& final_state() const { return states.back(); }
};

// Runs a trace from its initial state, stopping at the first invalid step.
// The initial state must satisfy valid_init.
ReplayResult replay(const Trace& trace, const SwapRateFn& rate = constprod_rate());

} // namespace amm
