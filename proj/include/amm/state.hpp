#pragma once

#include "amm/errors.hpp"
#include "amm/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace amm {

struct AccountId {
    std::uint64_t id = 0;
    auto operator<=>(const AccountId&) const = default;
};

struct TokenId {
    std::uint64_t id = 0;
    auto operator<=>(const TokenId&) const = default;
};

// Identity of the share token minted by one pool: the unordered pair of the
// pool's two atomic tokens, stored smaller id first. A degenerate pair (t, t)
// is rejected at construction, so every value of this type is a distinct,
// order-free pair.
class MintedId {
public:
    MintedId(TokenId a, TokenId b);

    TokenId lo() const { return lo_; }
    TokenId hi() const { return hi_; }
    bool contains(TokenId t) const { return t == lo_ || t == hi_; }
    // The pool token paired with t; t must be one of the two.
    TokenId other(TokenId t) const;

    auto operator<=>(const MintedId&) const = default;

private:
    TokenId lo_;
    TokenId hi_;
};

// token -> balance, storing only strictly positive balances. Absent keys
// read as zero, so distinct map contents mean distinct holdings.
class AtomicWallet {
public:
    NonNegRational get(TokenId t) const;
    AtomicWallet add(TokenId t, const PosRational& x) const;
    // Requires x <= get(t); throws InsufficientBalance otherwise.
    AtomicWallet sub(TokenId t, const PosRational& x) const;
    bool empty() const { return bal_.empty(); }
    const std::map<TokenId, PosRational>& entries() const { return bal_; }

    bool operator==(const AtomicWallet&) const = default;

private:
    std::map<TokenId, PosRational> bal_;
};

// minted token -> balance, same storage discipline as AtomicWallet.
class MintedWallet {
public:
    NonNegRational get(MintedId m) const;
    MintedWallet add(MintedId m, const PosRational& x) const;
    MintedWallet sub(MintedId m, const PosRational& x) const;
    bool empty() const { return bal_.empty(); }
    const std::map<MintedId, PosRational>& entries() const { return bal_; }

    bool operator==(const MintedWallet&) const = default;

private:
    std::map<MintedId, PosRational> bal_;
};

// account -> atomic wallet; wallets that become empty are dropped, so absent
// accounts and accounts holding nothing are the same thing.
class AtomicLedger {
public:
    NonNegRational get(AccountId a, TokenId t) const;
    const AtomicWallet& wallet(AccountId a) const;
    AtomicLedger add(AccountId a, TokenId t, const PosRational& x) const;
    AtomicLedger sub(AccountId a, TokenId t, const PosRational& x) const;
    const std::map<AccountId, AtomicWallet>& entries() const { return map_; }

    bool operator==(const AtomicLedger&) const = default;

private:
    std::map<AccountId, AtomicWallet> map_;
};

class MintedLedger {
public:
    NonNegRational get(AccountId a, MintedId m) const;
    const MintedWallet& wallet(AccountId a) const;
    MintedLedger add(AccountId a, MintedId m, const PosRational& x) const;
    MintedLedger sub(AccountId a, MintedId m, const PosRational& x) const;
    const std::map<AccountId, MintedWallet>& entries() const { return map_; }

    bool operator==(const MintedLedger&) const = default;

private:
    std::map<AccountId, MintedWallet> map_;
};

// Reserve pair of one pool, in MintedId order: lo's reserve first. Stored
// pools always hold two strictly positive reserves; a swap or redeem that
// would zero a side is rejected before it gets here.
struct Reserves {
    PosRational lo;
    PosRational hi;

    bool operator==(const Reserves&) const = default;
};

// The set of initialized pools. Reserves are addressed by (token, other);
// reading a side of an uninitialized pool is an error, not zero, because
// every caller has to branch on initialization anyway.
class AmmSet {
public:
    bool initialized(MintedId m) const;
    // Reserve of `token` inside the {token, other} pool.
    const PosRational& reserve(TokenId token, TokenId other) const;
    AmmSet create(MintedId m, Reserves r) const;
    AmmSet add_reserve(TokenId token, TokenId other, const PosRational& x) const;
    // Requires x < reserve(token, other); throws ReserveDrained otherwise.
    AmmSet sub_reserve(TokenId token, TokenId other, const PosRational& x) const;
    const std::map<MintedId, Reserves>& pools() const { return pools_; }

    bool operator==(const AmmSet&) const = default;

private:
    std::map<MintedId, Reserves> pools_;
};

struct State {
    AtomicLedger atoms;
    MintedLedger mints;
    AmmSet amms;

    bool operator==(const State&) const = default;
};

// Circulating amount of an atomic token: all wallet balances plus the
// matching reserve of every pool that trades it.
NonNegRational atom_supply(const State& s, TokenId t);

// Circulating amount of a minted token: the sum over all minted wallets.
NonNegRational mint_supply(const State& s, MintedId m);

// True when the state has no pools and no minted balances; traces must
// start from such a state.
bool valid_init(const State& s);

} // namespace amm
