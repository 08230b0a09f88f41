#include "amm/harness.hpp"

#include <random>
#include <set>
#include <stdexcept>

namespace amm {

namespace {

// Seed stream shared by all campaigns; fixed algorithm, so traces and
// samples are identical across platforms and runs.
std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::uint64_t next() { return eng_(); }
    // Uniform-enough draw from [0, n); modulo instead of a distribution
    // class keeps the stream implementation-independent.
    std::uint64_t pick(std::uint64_t n) { return n == 0 ? 0 : eng_() % n; }

private:
    std::mt19937_64 eng_;
};

// Rational in [lo, hi] with a power-of-two denominator at most 8. Small
// denominators here are what keeps reserve bit-lengths flat over a trace.
PosRational draw_amount(Rng& rng, const PosRational& lo, const PosRational& hi) {
    static const long dens[] = {1, 2, 4, 8};
    const long d = dens[rng.pick(4)];
    mpz_class nmin, nmax;
    const mpz_class lo_scaled = lo.value().num() * d;
    mpz_cdiv_q(nmin.get_mpz_t(), lo_scaled.get_mpz_t(), lo.value().den().get_mpz_t());
    const mpz_class hi_scaled = hi.value().num() * d;
    mpz_fdiv_q(nmax.get_mpz_t(), hi_scaled.get_mpz_t(), hi.value().den().get_mpz_t());
    if (nmin < 1) nmin = 1;
    if (nmax < nmin) nmax = nmin;
    mpz_class span = nmax - nmin + 1;
    if (!span.fits_ulong_p()) span = 1ul << 20;
    const mpz_class n = nmin + mpz_class(static_cast<unsigned long>(rng.pick(span.get_ui())));
    return PosRational(Rational(n, mpz_class(d)));
}

PosRational draw_price(Rng& rng) {
    return draw_amount(rng, PosRational(Rational(1, 8)), PosRational(16));
}

std::pair<TokenId, TokenId> draw_token_pair(Rng& rng, std::uint32_t n_tokens) {
    const std::uint64_t t0 = rng.pick(n_tokens);
    const std::uint64_t t1 = (t0 + 1 + rng.pick(n_tokens - 1)) % n_tokens;
    return {TokenId{t0}, TokenId{t1}};
}

const MintedId& pick_pool(Rng& rng, const AmmSet& amms) {
    auto it = amms.pools().begin();
    std::advance(it, static_cast<long>(rng.pick(amms.pools().size())));
    return it->first;
}

std::optional<Tx> make_candidate(Rng& rng, const State& cur, const GenConfig& cfg) {
    const unsigned u = static_cast<unsigned>(rng.pick(cfg.weights.total()));
    const AccountId account{rng.pick(cfg.n_accounts)};

    if (u < cfg.weights.create) {
        const auto [t0, t1] = draw_token_pair(rng, cfg.n_tokens);
        return CreateTx{account, t0, t1, draw_amount(rng, cfg.amount_lo, cfg.amount_hi),
                        draw_amount(rng, cfg.amount_lo, cfg.amount_hi)};
    }

    if (cur.amms.pools().empty()) return std::nullopt;
    const MintedId m = pick_pool(rng, cur.amms);
    const bool flip = rng.pick(2) == 1;
    const TokenId t0 = flip ? m.hi() : m.lo();
    const TokenId t1 = m.other(t0);

    if (u < cfg.weights.create + cfg.weights.deposit)
        return DepositTx{account, t0, t1, draw_amount(rng, cfg.amount_lo, cfg.amount_hi)};

    if (u < cfg.weights.create + cfg.weights.deposit + cfg.weights.redeem) {
        std::vector<AccountId> holders;
        for (const auto& [a, w] : cur.mints.entries())
            if (!w.get(m).is_zero()) holders.push_back(a);
        if (holders.empty()) return std::nullopt;
        const AccountId holder = holders[rng.pick(holders.size())];
        const Rational held = cur.mints.get(holder, m);
        // k/8 of the holding, k < 8: strictly below the holding, hence
        // strictly below the supply, so redeems never drain a pool.
        const long k = 1 + static_cast<long>(rng.pick(7));
        return RedeemTx{holder, t0, t1, PosRational(held * Rational(k, 8))};
    }

    const Rational balance = cur.atoms.get(account, t0);
    if (balance.sign() <= 0) return std::nullopt;
    PosRational x = draw_amount(rng, cfg.amount_lo, cfg.amount_hi);
    if (balance < Rational(x)) x = PosRational(balance);
    return SwapTx{account, t0, t1, x};
}

void validate_config(const GenConfig& cfg) {
    if (cfg.n_accounts == 0) throw std::invalid_argument("gen config needs at least one account");
    if (cfg.n_tokens < 2) throw std::invalid_argument("gen config needs at least two tokens");
    if (cfg.weights.total() == 0) throw std::invalid_argument("gen config weights are all zero");
    if (Rational(cfg.amount_hi) < Rational(cfg.amount_lo))
        throw std::invalid_argument("gen config amount range is empty");
}

} // namespace

Trace gen_trace(const GenConfig& cfg) {
    validate_config(cfg);
    Rng rng(cfg.seed);

    State init;
    const PosRational endow(cfg.amount_hi * Rational(16));
    for (std::uint64_t a = 0; a < cfg.n_accounts; ++a)
        for (std::uint64_t t = 0; t < cfg.n_tokens; ++t)
            init.atoms = init.atoms.add(AccountId{a}, TokenId{t}, endow);

    Trace trace{init, {}};
    State cur = init;
    constexpr int attempts_per_step = 200;
    for (std::uint32_t step = 0; step < cfg.n_steps; ++step) {
        bool placed = false;
        for (int attempt = 0; attempt < attempts_per_step && !placed; ++attempt) {
            const auto cand = make_candidate(rng, cur, cfg);
            if (!cand || validate_tx(cur, *cand)) continue;
            cur = apply_tx(cur, *cand);
            trace.steps.push_back(*cand);
            placed = true;
        }
        if (!placed)
            throw GenerationStalled("no valid transaction found for step " + std::to_string(step) +
                                    " after " + std::to_string(attempts_per_step) + " attempts");
    }
    return trace;
}

namespace {

void add_violation(CheckReport& rep, std::size_t step, std::string property, std::string detail) {
    rep.violations.push_back({step, std::move(property), std::move(detail)});
}

std::string pool_str(MintedId m) {
    return std::to_string(m.lo().id) + "-" + std::to_string(m.hi().id);
}

void check_state_properties(CheckReport& rep, std::size_t step, const State& s,
                            const std::map<TokenId, Rational>& initial_supply) {
    for (const auto& [a, w] : s.atoms.entries())
        if (w.empty())
            add_violation(rep, step, "storage",
                          "empty atomic wallet stored for account " + std::to_string(a.id));
    for (const auto& [a, w] : s.mints.entries()) {
        if (w.empty())
            add_violation(rep, step, "storage",
                          "empty minted wallet stored for account " + std::to_string(a.id));
        for (const auto& [m, x] : w.entries())
            if (!s.amms.initialized(m))
                add_violation(rep, step, "orphan_shares",
                              "account " + std::to_string(a.id) + " holds " + x.str() +
                                  " shares of nonexistent pool " + pool_str(m));
    }

    for (const auto& [m, r] : s.amms.pools()) {
        if (r.lo.value().sign() <= 0 || r.hi.value().sign() <= 0)
            add_violation(rep, step, "reserve_positive",
                          "pool " + pool_str(m) + " stores reserves " + r.lo.str() + ", " +
                              r.hi.str());
        Rational wallet_sum;
        for (const auto& [a, w] : s.mints.entries())
            wallet_sum += w.get(m);
        if (wallet_sum.sign() <= 0)
            add_violation(rep, step, "pool_supply",
                          "pool " + pool_str(m) + " is initialized with zero share supply");
        if (!(wallet_sum == Rational(mint_supply(s, m))))
            add_violation(rep, step, "supply_consistency",
                          "pool " + pool_str(m) + ": supply " + mint_supply(s, m).str() +
                              " != wallet sum " + wallet_sum.str());
    }

    for (const auto& [t, supply0] : initial_supply) {
        const Rational now = atom_supply(s, t);
        if (!(now == supply0))
            add_violation(rep, step, "conservation",
                          "token " + std::to_string(t.id) + ": circulation " + now.str() +
                              " != initial " + supply0.str());
    }
    for (const auto& [a, w] : s.atoms.entries())
        for (const auto& [t, x] : w.entries())
            if (!initial_supply.contains(t))
                add_violation(rep, step, "alien_token",
                              "token " + std::to_string(t.id) + " appears from nowhere");
    for (const auto& [m, r] : s.amms.pools())
        if (!initial_supply.contains(m.lo()) || !initial_supply.contains(m.hi()))
            add_violation(rep, step, "alien_token",
                          "pool " + pool_str(m) + " trades a token that never circulated");
}

} // namespace

CheckReport check_trace(const Trace& trace) {
    CheckReport rep;
    const ReplayResult res = replay(trace);
    if (!res.ok())
        add_violation(rep, res.failure->step.value_or(0), "replay", res.failure->cause.what());

    std::map<TokenId, Rational> initial_supply;
    for (const auto& [a, w] : trace.initial.atoms.entries())
        for (const auto& [t, x] : w.entries())
            initial_supply.try_emplace(t, atom_supply(trace.initial, t));

    for (std::size_t i = 0; i < res.states.size(); ++i) {
        check_state_properties(rep, i, res.states[i], initial_supply);
        ++rep.states_checked;
    }
    return rep;
}

namespace {

// A reachable state together with a swap that validates on it.
struct SwapSample {
    State state;
    SwapTx swap;
    MintedId pool;
    GenConfig cfg;
};

std::optional<SwapSample> draw_reachable_swap(const GenConfig& base, std::uint64_t sample_seed,
                                              bool share_free_account) {
    GenConfig cfg = base;
    cfg.seed = sample_seed;
    Rng rng(sample_seed ^ 0xD1B54A32D192ED03ull);
    // Mix shallow and deep states; depth does not matter to the laws being
    // checked, only reachability does.
    cfg.n_steps = 2 + static_cast<std::uint32_t>(rng.pick(base.n_steps > 2 ? base.n_steps - 2 : 1));

    Trace trace;
    try {
        trace = gen_trace(cfg);
    } catch (const GenerationStalled&) {
        return std::nullopt;
    }
    State s = replay(trace).final_state();
    if (s.amms.pools().empty()) return std::nullopt;

    const MintedId m = pick_pool(rng, s.amms);
    const bool flip = rng.pick(2) == 1;
    const TokenId input = flip ? m.hi() : m.lo();
    const TokenId output = m.other(input);

    for (std::uint64_t start = rng.pick(cfg.n_accounts), k = 0; k < cfg.n_accounts; ++k) {
        const AccountId a{(start + k) % cfg.n_accounts};
        if (share_free_account && !s.mints.get(a, m).is_zero()) continue;
        const Rational balance = s.atoms.get(a, input);
        if (balance.sign() <= 0) continue;
        PosRational x = draw_amount(rng, cfg.amount_lo, cfg.amount_hi);
        if (balance < Rational(x)) x = PosRational(balance);
        SwapTx swap{a, input, output, x};
        if (validate_swap(s, swap)) continue;
        return SwapSample{std::move(s), std::move(swap), m, std::move(cfg)};
    }
    return std::nullopt;
}

PriceOracle draw_oracle(Rng& rng, std::uint32_t n_tokens) {
    std::map<TokenId, PosRational> prices;
    for (std::uint64_t t = 0; t < n_tokens; ++t)
        prices.emplace(TokenId{t}, draw_price(rng));
    return PriceOracle(std::move(prices));
}

// Accounts that can possibly have a nonzero networth delta.
std::set<AccountId> touched_accounts(const State& a, const State& b) {
    std::set<AccountId> out;
    for (const State* s : {&a, &b}) {
        for (const auto& [acct, w] : s->atoms.entries()) out.insert(acct);
        for (const auto& [acct, w] : s->mints.entries()) out.insert(acct);
    }
    return out;
}

} // namespace

CheckReport check_gain_closed_form(const GenConfig& cfg, std::size_t n_swaps) {
    CheckReport rep;
    std::uint64_t stream = cfg.seed ^ 0x8BADF00Dull;
    std::size_t collected = 0;
    for (std::size_t attempt = 0; collected < n_swaps && attempt < 10 * n_swaps; ++attempt) {
        const std::uint64_t seed = splitmix64(stream);
        const auto sample = draw_reachable_swap(cfg, seed, false);
        if (!sample) continue;
        Rng rng(seed ^ 0xACE1ull);
        const PriceOracle oracle = draw_oracle(rng, cfg.n_tokens);

        const Rational closed = swap_gain(sample->state, sample->swap, oracle);
        const State after = apply_swap(sample->state, sample->swap);
        const Rational direct = gain(sample->swap.account, oracle, sample->state, after);
        if (!(closed == direct))
            add_violation(rep, collected, "gain_closed_form",
                          "closed form " + closed.str() + " != networth delta " + direct.str());
        ++collected;
        ++rep.states_checked;
    }
    rep.tallies["swaps"] = collected;
    if (collected < n_swaps)
        add_violation(rep, collected, "sampling_exhausted",
                      "only " + std::to_string(collected) + " of " + std::to_string(n_swaps) +
                          " swaps could be drawn");
    return rep;
}

CheckReport check_gain_sign(const GenConfig& cfg, std::size_t n_swaps) {
    CheckReport rep;
    std::uint64_t stream = cfg.seed ^ 0x5151DE57ull;
    std::size_t collected = 0;
    for (std::size_t attempt = 0; collected < n_swaps && attempt < 10 * n_swaps; ++attempt) {
        const std::uint64_t seed = splitmix64(stream);
        const auto sample = draw_reachable_swap(cfg, seed, true);
        if (!sample) continue;

        const SwapTx& swap = sample->swap;
        const PosRational& r_in = sample->state.amms.reserve(swap.input, swap.output);
        const PosRational& r_out = sample->state.amms.reserve(swap.output, swap.input);
        const PosRational rate = constprod(swap.x, r_in, r_out);

        // Force each of the three orderings in turn by pricing the input
        // token off the offered rate itself; every other token prices at 1.
        const std::strong_ordering target = collected % 3 == 0   ? std::strong_ordering::less
                                            : collected % 3 == 1 ? std::strong_ordering::equal
                                                                 : std::strong_ordering::greater;
        const PosRational price_in = target == std::strong_ordering::less
                                         ? PosRational(rate * Rational(2))
                                     : target == std::strong_ordering::equal
                                         ? rate
                                         : PosRational(rate / Rational(2));
        std::map<TokenId, PosRational> prices;
        for (std::uint64_t t = 0; t < cfg.n_tokens; ++t) prices.emplace(TokenId{t}, PosRational(1));
        prices.insert_or_assign(swap.input, price_in);
        prices.insert_or_assign(swap.output, PosRational(1));
        const PriceOracle oracle{std::move(prices)};

        const std::strong_ordering predicted =
            gain_sign(swap.x, r_in, r_out, price_in, PosRational(1));
        const State after = apply_swap(sample->state, swap);
        const Rational actual = gain(swap.account, oracle, sample->state, after);
        const std::strong_ordering observed = actual <=> Rational(0);

        const auto name = [](std::strong_ordering o) {
            return o == std::strong_ordering::less      ? "less"
                   : o == std::strong_ordering::greater ? "greater"
                                                        : "equal";
        };
        if (predicted != target)
            add_violation(rep, collected, "gain_sign",
                          std::string("constructed ordering ") + name(target) +
                              " but rate comparison says " + name(predicted));
        if (observed != predicted)
            add_violation(rep, collected, "gain_sign",
                          std::string("rate comparison says ") + name(predicted) +
                              " but realized gain " + actual.str() + " is " + name(observed));
        ++rep.tallies[std::string("sign_") + name(target)];
        ++collected;
        ++rep.states_checked;
    }
    if (collected < n_swaps)
        add_violation(rep, collected, "sampling_exhausted",
                      "only " + std::to_string(collected) + " of " + std::to_string(n_swaps) +
                          " swaps could be drawn");
    return rep;
}

CheckReport check_zero_sum(const GenConfig& cfg, std::size_t n_swaps) {
    CheckReport rep;
    std::uint64_t stream = cfg.seed ^ 0x0C0FFEEull;
    std::size_t collected = 0;
    for (std::size_t attempt = 0; collected < n_swaps && attempt < 10 * n_swaps; ++attempt) {
        const std::uint64_t seed = splitmix64(stream);
        const auto sample = draw_reachable_swap(cfg, seed, false);
        if (!sample) continue;
        Rng rng(seed ^ 0xBEEFull);
        const PriceOracle oracle = draw_oracle(rng, cfg.n_tokens);

        const State after = apply_swap(sample->state, sample->swap);
        Rational total;
        for (const AccountId a : touched_accounts(sample->state, after))
            total += gain(a, oracle, sample->state, after);
        if (!total.is_zero())
            add_violation(rep, collected, "zero_sum",
                          "account gains sum to " + total.str() + " across a swap");
        ++collected;
        ++rep.states_checked;
    }
    rep.tallies["swaps"] = collected;
    if (collected < n_swaps)
        add_violation(rep, collected, "sampling_exhausted",
                      "only " + std::to_string(collected) + " of " + std::to_string(n_swaps) +
                          " swaps could be drawn");
    return rep;
}

namespace {

// Minimal two-token state around one pool: account 0 provides liquidity and
// holds the whole share supply, account 1 is the share-free trader.
struct PoolFixture {
    State state;
    MintedId pool{TokenId{0}, TokenId{1}};
    AccountId lp{0};
    AccountId trader{1};
    PriceOracle oracle;
};

PoolFixture make_pool(const PosRational& r_lo, const PosRational& r_hi, const PosRational& p_lo,
                      const PosRational& p_hi) {
    PoolFixture f;
    f.state.amms = f.state.amms.create(f.pool, Reserves{r_lo, r_hi});
    f.state.mints = f.state.mints.add(f.lp, f.pool, r_lo);
    f.oracle = PriceOracle({{TokenId{0}, p_lo}, {TokenId{1}, p_hi}});
    return f;
}

// Oracle-valued reserves differ by at least 0.1%, enough that solutions and
// profit windows are nondegenerate.
bool solidly_misaligned(const PosRational& r_lo, const PosRational& r_hi, const PosRational& p_lo,
                        const PosRational& p_hi) {
    const Rational v_lo = r_lo * p_lo;
    const Rational v_hi = r_hi * p_hi;
    const Rational spread = (v_lo - v_hi).abs();
    const Rational larger = v_lo < v_hi ? v_hi : v_lo;
    return spread * Rational(1000) > larger;
}

struct PoolDraw {
    PosRational r_lo, r_hi, p_lo, p_hi;
};

std::optional<PoolDraw> draw_misaligned_pool(Rng& rng) {
    const PosRational lo(Rational(1, 4)), hi(64);
    for (int tries = 0; tries < 64; ++tries) {
        PoolDraw d{draw_amount(rng, lo, hi), draw_amount(rng, lo, hi), draw_price(rng),
                   draw_price(rng)};
        if (solidly_misaligned(d.r_lo, d.r_hi, d.p_lo, d.p_hi)) return d;
    }
    return std::nullopt;
}

} // namespace

CheckReport check_direction(std::uint64_t seed, std::size_t n_pools, std::size_t grid_points) {
    CheckReport rep;
    std::uint64_t stream = seed ^ 0xD123C7104ull;
    std::size_t collected = 0;
    for (std::size_t attempt = 0; collected < n_pools && attempt < 20 * n_pools; ++attempt) {
        Rng rng(splitmix64(stream));
        const auto d = draw_misaligned_pool(rng);
        if (!d) continue;
        const auto side = profitable_side(d->r_lo, d->r_hi, d->p_lo, d->p_hi);
        const TokenId input = *side == PoolSide::lo ? TokenId{0} : TokenId{1};
        const TokenId output{1 - input.id};
        const PosRational& r_in = *side == PoolSide::lo ? d->r_lo : d->r_hi;
        const PosRational& r_out = *side == PoolSide::lo ? d->r_hi : d->r_lo;
        const PosRational& p_in = *side == PoolSide::lo ? d->p_lo : d->p_hi;
        const PosRational& p_out = *side == PoolSide::lo ? d->p_hi : d->p_lo;

        // The gain is positive exactly on (0, x_up); require x_up to cover
        // several grid steps so the scan cannot miss the profit window.
        const Rational x_up = r_out * p_out / p_in - r_in;
        if (!(x_up * Rational(static_cast<long>(grid_points)) >
              Rational(50) * r_in))
            continue;

        const PoolFixture f = make_pool(d->r_lo, d->r_hi, d->p_lo, d->p_hi);
        const auto fwd = grid_best_gain(f.state, f.trader, f.oracle, input, output, grid_points);
        if (!(fwd.second > Rational(0)))
            add_violation(rep, collected, "direction_profit",
                          "no profitable amount found selling token " + std::to_string(input.id) +
                              ": best gain " + fwd.second.str());
        const auto back = grid_best_gain(f.state, f.trader, f.oracle, output, input, grid_points);
        if (!(back.second < Rational(0)))
            add_violation(rep, collected, "direction_loss",
                          "selling token " + std::to_string(output.id) +
                              " should always lose; best gain " + back.second.str());
        ++collected;
        ++rep.states_checked;
    }
    rep.tallies["pools"] = collected;
    if (collected < n_pools)
        add_violation(rep, collected, "sampling_exhausted",
                      "only " + std::to_string(collected) + " of " + std::to_string(n_pools) +
                          " pools could be drawn");
    return rep;
}

namespace {

// Pool whose optimal input is exact: prices chosen so the optimum's square
// root argument is the square of a rational. With p_in = r_out and
// p_out = r_in * k^2 the optimal amount is r_in * (k - 1).
struct SquarePool {
    PoolDraw d;
    PosRational x_star;
};

SquarePool draw_square_pool(Rng& rng) {
    const PosRational lo(Rational(1, 4)), hi(64);
    const PosRational r_in = draw_amount(rng, lo, hi);
    const PosRational r_out = draw_amount(rng, lo, hi);
    const long k = 2 + static_cast<long>(rng.pick(6));
    const PosRational p_in = r_out;
    const PosRational p_out(r_in * Rational(k * k));
    return {PoolDraw{r_in, r_out, p_in, p_out}, PosRational(r_in * Rational(k - 1))};
}

} // namespace

CheckReport check_optimality(std::uint64_t seed, std::size_t n_pools, std::size_t grid_points) {
    CheckReport rep;
    std::uint64_t stream = seed ^ 0x0B7A11057ull;
    std::size_t collected = 0;
    for (std::size_t attempt = 0; collected < n_pools && attempt < 20 * n_pools; ++attempt) {
        Rng rng(splitmix64(stream));
        const bool square = collected % 2 == 0;

        PosRational r_lo(1), r_hi(1), p_lo(1), p_hi(1);
        std::optional<PosRational> x_star;
        if (square) {
            // Input side is lo by construction: its oracle value is k^2
            // times smaller.
            const SquarePool sp = draw_square_pool(rng);
            r_lo = sp.d.r_lo;
            r_hi = sp.d.r_hi;
            p_lo = sp.d.p_lo;
            p_hi = sp.d.p_hi;
            x_star = sp.x_star;
        } else {
            const auto d = draw_misaligned_pool(rng);
            if (!d) continue;
            r_lo = d->r_lo;
            r_hi = d->r_hi;
            p_lo = d->p_lo;
            p_hi = d->p_hi;
        }

        const PoolFixture f = make_pool(r_lo, r_hi, p_lo, p_hi);
        const auto sol = solve_arbitrage(f.state, f.trader, f.oracle, f.pool);
        if (!sol) {
            add_violation(rep, collected, "optimality_no_solution",
                          "misaligned pool reported as aligned");
            ++collected;
            continue;
        }
        const auto side = profitable_side(r_lo, r_hi, p_lo, p_hi);
        const TokenId want_input = *side == PoolSide::lo ? TokenId{0} : TokenId{1};
        if (sol->input != want_input)
            add_violation(rep, collected, "optimality_direction",
                          "solution sells token " + std::to_string(sol->input.id) +
                              ", profitable side is " + std::to_string(want_input.id));

        const auto best =
            grid_best_gain(f.state, f.trader, f.oracle, sol->input, sol->output, grid_points);
        const Rational one(1);
        const Rational eps =
            Rational(1, 1000000000L) * (best.second.abs() < one ? one : best.second.abs());
        if (sol->gain < best.second - eps)
            add_violation(rep, collected, "optimality_grid",
                          "solution gain " + sol->gain.str() + " below grid best " +
                              best.second.str() + " at x = " + best.first.str());

        if (square) {
            if (!(Rational(sol->x) == Rational(*x_star)))
                add_violation(rep, collected, "optimality_exact_x",
                              "expected exact optimum " + x_star->str() + ", solver returned " +
                                  sol->x.str());
            const Rational want_ratio = f.oracle.price(sol->output) / f.oracle.price(sol->input);
            if (!(sol->post_ratio == want_ratio))
                add_violation(rep, collected, "optimality_post_ratio",
                              "post-trade ratio " + sol->post_ratio.str() + " != price ratio " +
                                  want_ratio.str());

            // Strict maximality against every other grid point.
            const PosRational& r_in = *side == PoolSide::lo ? r_lo : r_hi;
            const PosRational& r_out = *side == PoolSide::lo ? r_hi : r_lo;
            const PosRational& price_in = *side == PoolSide::lo ? p_lo : p_hi;
            const PosRational& price_out = *side == PoolSide::lo ? p_hi : p_lo;
            const Rational step = Rational(10) * r_in / Rational(static_cast<long>(grid_points));
            bool strict = true;
            for (std::size_t g = 1; g <= grid_points && strict; ++g) {
                const PosRational x(step * Rational(static_cast<long>(g)));
                if (Rational(x) == Rational(sol->x)) continue;
                const PosRational y = swap_output(x, r_in, r_out);
                const Rational gain_g = y * price_out - x * price_in;
                if (!(gain_g < sol->gain)) {
                    add_violation(rep, collected, "optimality_strict",
                                  "grid point x = " + x.str() + " gains " + gain_g.str() +
                                      ", not strictly below " + sol->gain.str());
                    strict = false;
                }
            }
            ++rep.tallies["square_pools"];
        } else {
            ++rep.tallies["generic_pools"];
        }
        ++collected;
        ++rep.states_checked;
    }
    if (collected < n_pools)
        add_violation(rep, collected, "sampling_exhausted",
                      "only " + std::to_string(collected) + " of " + std::to_string(n_pools) +
                          " pools could be drawn");
    return rep;
}

CheckReport check_fixed_point(std::uint64_t seed, std::size_t n_pools) {
    CheckReport rep;
    std::uint64_t stream = seed ^ 0xF17ED0117ull;
    std::size_t collected = 0;
    for (std::size_t attempt = 0; collected < n_pools && attempt < 20 * n_pools; ++attempt) {
        Rng rng(splitmix64(stream));
        const bool square = collected % 2 == 0;
        PoolDraw d{PosRational(1), PosRational(1), PosRational(1), PosRational(1)};
        if (square) {
            d = draw_square_pool(rng).d;
        } else {
            const auto drawn = draw_misaligned_pool(rng);
            if (!drawn) continue;
            d = *drawn;
        }

        const PoolFixture f = make_pool(d.r_lo, d.r_hi, d.p_lo, d.p_hi);
        const auto sol = solve_arbitrage(f.state, f.trader, f.oracle, f.pool);
        if (!sol) {
            add_violation(rep, collected, "fixed_point_no_solution",
                          "misaligned pool reported as aligned");
            ++collected;
            continue;
        }

        State funded = f.state;
        funded.atoms = funded.atoms.add(f.trader, sol->input, sol->x);
        const State settled =
            apply_swap(funded, SwapTx{f.trader, sol->input, sol->output, sol->x});

        if (square) {
            const Rational v_in = settled.amms.reserve(sol->input, sol->output) *
                                  f.oracle.price(sol->input);
            const Rational v_out = settled.amms.reserve(sol->output, sol->input) *
                                   f.oracle.price(sol->output);
            if (!(v_in == v_out))
                add_violation(rep, collected, "fixed_point_exact",
                              "reserve values " + v_in.str() + " and " + v_out.str() +
                                  " should match exactly after an exact solution");
            ++rep.tallies["square_pools"];
        } else {
            ++rep.tallies["generic_pools"];
        }

        if (const auto again = solve_arbitrage(settled, f.trader, f.oracle, f.pool))
            add_violation(rep, collected, "fixed_point_resolve",
                          "second solution x = " + again->x.str() + ", gain " +
                              again->gain.str() + " found after settling the first");
        ++collected;
        ++rep.states_checked;
    }
    if (collected < n_pools)
        add_violation(rep, collected, "sampling_exhausted",
                      "only " + std::to_string(collected) + " of " + std::to_string(n_pools) +
                          " pools could be drawn");
    return rep;
}

void merge_reports(CheckReport& dst, const CheckReport& src, const std::string& prefix) {
    const std::string sep = prefix.empty() ? "" : ".";
    dst.states_checked += src.states_checked;
    for (const auto& [key, count] : src.tallies) dst.tallies[prefix + sep + key] += count;
    for (const auto& v : src.violations)
        dst.violations.push_back({v.step, prefix + sep + v.property, v.detail});
}

CheckReport check_lemmas(const GenConfig& cfg, const LemmaCampaign& sizes) {
    CheckReport rep;
    std::uint64_t stream = cfg.seed;
    merge_reports(rep, check_gain_closed_form(cfg, sizes.gain_swaps), "gain");
    merge_reports(rep, check_gain_sign(cfg, sizes.sign_swaps), "sign");
    merge_reports(rep, check_zero_sum(cfg, sizes.zero_sum_swaps), "zero_sum");
    merge_reports(rep, check_direction(splitmix64(stream), sizes.direction_pools,
                                       sizes.direction_grid),
                  "direction");
    merge_reports(rep, check_optimality(splitmix64(stream), sizes.optimality_pools,
                                        sizes.optimality_grid),
                  "optimality");
    merge_reports(rep, check_fixed_point(splitmix64(stream), sizes.fixed_point_pools),
                  "fixed_point");
    return rep;
}

} // namespace amm
