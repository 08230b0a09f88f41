#include "amm/state.hpp"

namespace amm {

namespace {

std::string token_pair_str(TokenId a, TokenId b) {
    return std::to_string(a.id) + "-" + std::to_string(b.id);
}

} // namespace

MintedId::MintedId(TokenId a, TokenId b) {
    if (a == b)
        throw AmmError(ErrorCode::same_token,
                       "minted token needs two distinct atomic tokens, got " + std::to_string(a.id));
    lo_ = a < b ? a : b;
    hi_ = a < b ? b : a;
}

TokenId MintedId::other(TokenId t) const {
    if (t == lo_) return hi_;
    if (t == hi_) return lo_;
    throw std::invalid_argument("token " + std::to_string(t.id) + " is not part of pool " +
                                token_pair_str(lo_, hi_));
}

NonNegRational AtomicWallet::get(TokenId t) const {
    const auto it = bal_.find(t);
    return it == bal_.end() ? NonNegRational() : NonNegRational(it->second);
}

AtomicWallet AtomicWallet::add(TokenId t, const PosRational& x) const {
    AtomicWallet next = *this;
    const auto it = next.bal_.find(t);
    if (it == next.bal_.end())
        next.bal_.emplace(t, x);
    else
        it->second = PosRational(it->second + x);
    return next;
}

AtomicWallet AtomicWallet::sub(TokenId t, const PosRational& x) const {
    const Rational left = get(t) - x;
    if (left.sign() < 0)
        throw AmmError(ErrorCode::insufficient_balance,
                       "token " + std::to_string(t.id) + ": have " + get(t).str() + ", need " + x.str());
    AtomicWallet next = *this;
    if (left.is_zero())
        next.bal_.erase(t);
    else
        next.bal_.insert_or_assign(t, PosRational(left));
    return next;
}

NonNegRational MintedWallet::get(MintedId m) const {
    const auto it = bal_.find(m);
    return it == bal_.end() ? NonNegRational() : NonNegRational(it->second);
}

MintedWallet MintedWallet::add(MintedId m, const PosRational& x) const {
    MintedWallet next = *this;
    const auto it = next.bal_.find(m);
    if (it == next.bal_.end())
        next.bal_.emplace(m, x);
    else
        it->second = PosRational(it->second + x);
    return next;
}

MintedWallet MintedWallet::sub(MintedId m, const PosRational& x) const {
    const Rational left = get(m) - x;
    if (left.sign() < 0)
        throw AmmError(ErrorCode::insufficient_balance,
                       "minted " + token_pair_str(m.lo(), m.hi()) + ": have " + get(m).str() +
                           ", need " + x.str());
    MintedWallet next = *this;
    if (left.is_zero())
        next.bal_.erase(m);
    else
        next.bal_.insert_or_assign(m, PosRational(left));
    return next;
}

NonNegRational AtomicLedger::get(AccountId a, TokenId t) const {
    return wallet(a).get(t);
}

const AtomicWallet& AtomicLedger::wallet(AccountId a) const {
    static const AtomicWallet empty;
    const auto it = map_.find(a);
    return it == map_.end() ? empty : it->second;
}

AtomicLedger AtomicLedger::add(AccountId a, TokenId t, const PosRational& x) const {
    AtomicLedger next = *this;
    next.map_.insert_or_assign(a, wallet(a).add(t, x));
    return next;
}

AtomicLedger AtomicLedger::sub(AccountId a, TokenId t, const PosRational& x) const {
    AtomicWallet w = wallet(a).sub(t, x);
    AtomicLedger next = *this;
    if (w.empty())
        next.map_.erase(a);
    else
        next.map_.insert_or_assign(a, std::move(w));
    return next;
}

NonNegRational MintedLedger::get(AccountId a, MintedId m) const {
    return wallet(a).get(m);
}

const MintedWallet& MintedLedger::wallet(AccountId a) const {
    static const MintedWallet empty;
    const auto it = map_.find(a);
    return it == map_.end() ? empty : it->second;
}

MintedLedger MintedLedger::add(AccountId a, MintedId m, const PosRational& x) const {
    MintedLedger next = *this;
    next.map_.insert_or_assign(a, wallet(a).add(m, x));
    return next;
}

MintedLedger MintedLedger::sub(AccountId a, MintedId m, const PosRational& x) const {
    MintedWallet w = wallet(a).sub(m, x);
    MintedLedger next = *this;
    if (w.empty())
        next.map_.erase(a);
    else
        next.map_.insert_or_assign(a, std::move(w));
    return next;
}

bool AmmSet::initialized(MintedId m) const {
    return pools_.contains(m);
}

const PosRational& AmmSet::reserve(TokenId token, TokenId other) const {
    const MintedId m(token, other);
    const auto it = pools_.find(m);
    if (it == pools_.end())
        throw AmmError(ErrorCode::uninitialized_amm, "no pool " + token_pair_str(m.lo(), m.hi()));
    return token == m.lo() ? it->second.lo : it->second.hi;
}

AmmSet AmmSet::create(MintedId m, Reserves r) const {
    if (initialized(m))
        throw AmmError(ErrorCode::already_initialized,
                       "pool " + token_pair_str(m.lo(), m.hi()) + " already exists");
    AmmSet next = *this;
    next.pools_.emplace(m, std::move(r));
    return next;
}

AmmSet AmmSet::add_reserve(TokenId token, TokenId other, const PosRational& x) const {
    const MintedId m(token, other);
    const PosRational updated(reserve(token, other) + x);
    AmmSet next = *this;
    Reserves& r = next.pools_.at(m);
    (token == m.lo() ? r.lo : r.hi) = updated;
    return next;
}

AmmSet AmmSet::sub_reserve(TokenId token, TokenId other, const PosRational& x) const {
    const MintedId m(token, other);
    const Rational left = reserve(token, other) - x;
    if (left.sign() <= 0)
        throw AmmError(ErrorCode::reserve_drained,
                       "pool " + token_pair_str(m.lo(), m.hi()) + " side " + std::to_string(token.id) +
                           ": reserve " + reserve(token, other).str() + ", withdrawing " + x.str());
    AmmSet next = *this;
    Reserves& r = next.pools_.at(m);
    (token == m.lo() ? r.lo : r.hi) = PosRational(left);
    return next;
}

NonNegRational atom_supply(const State& s, TokenId t) {
    Rational total;
    for (const auto& [account, wallet] : s.atoms.entries())
        total += wallet.get(t);
    for (const auto& [m, r] : s.amms.pools()) {
        if (m.lo() == t) total += r.lo;
        if (m.hi() == t) total += r.hi;
    }
    return NonNegRational(total);
}

NonNegRational mint_supply(const State& s, MintedId m) {
    Rational total;
    for (const auto& [account, wallet] : s.mints.entries())
        total += wallet.get(m);
    return NonNegRational(total);
}

bool valid_init(const State& s) {
    return s.amms.pools().empty() && s.mints.entries().empty();
}

} // namespace amm
