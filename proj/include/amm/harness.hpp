#pragma once

#include "amm/arb.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace amm {

// Relative odds of each transaction kind during generation. Swaps dominate
// by default; they are the only kind the economic laws quantify over.
struct TxWeights {
    unsigned create = 15;
    unsigned deposit = 15;
    unsigned redeem = 10;
    unsigned swap = 60;

    unsigned total() const { return create + deposit + redeem + swap; }
    bool operator==(const TxWeights&) const = default;
};

// Everything gen_trace consumes. Equal configs produce identical traces on
// every platform: the generator draws from a fixed-algorithm engine and
// never goes through distribution classes.
struct GenConfig {
    std::uint64_t seed = 1;
    std::uint32_t n_accounts = 6;
    std::uint32_t n_tokens = 4;
    std::uint32_t n_steps = 50;
    TxWeights weights;
    // Drawn amounts land in [amount_lo, amount_hi] with power-of-two
    // denominators, which keeps reserve bit-lengths flat enough that a
    // 50-step trace stays cheap to replay exactly.
    PosRational amount_lo = PosRational(Rational(1, 4));
    PosRational amount_hi = PosRational(64);
};

// A step could not be filled with a valid transaction within the attempt
// budget; thrown with the step index in the message. Configurations with a
// sane balance of weights and amounts never hit this.
class GenerationStalled : public std::runtime_error {
public:
    explicit GenerationStalled(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic pseudo-random trace: endows every account with every token,
// then draws transactions one by one, rejection-sampling until each step
// validates against the state built so far.
Trace gen_trace(const GenConfig& cfg);

struct Violation {
    std::size_t step = 0; // which state (0 = initial) or sample tripped it
    std::string property;
    std::string detail;
};

struct CheckReport {
    std::size_t states_checked = 0;
    // Sample counts per stratum, e.g. how many swaps of each gain sign a
    // campaign actually exercised.
    std::map<std::string, std::size_t> tallies;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Replays the trace and checks every reached state: reserves and stored
// balances strictly positive, initialized pools have nonzero share supply,
// shares only exist for initialized pools, per-token circulation equal to
// the initial state's, and share supply equal to the wallet sum.
CheckReport check_trace(const Trace& trace);

// Sample sizes for the per-law campaigns, sized for a quick run; the
// acceptance suite passes its own, much larger numbers.
struct LemmaCampaign {
    std::size_t gain_swaps = 150;
    std::size_t sign_swaps = 150;
    std::size_t zero_sum_swaps = 100;
    std::size_t direction_pools = 40;
    std::size_t direction_grid = 400;
    std::size_t optimality_pools = 15;
    std::size_t optimality_grid = 1500;
    std::size_t fixed_point_pools = 40;
};

// Each campaign derives per-sample seeds from cfg.seed (or the given seed),
// so runs are reproducible and samples independent.

// Closed-form swap gain == networth difference, exactly, on swaps drawn
// from generated reachable states.
CheckReport check_gain_closed_form(const GenConfig& cfg, std::size_t n_swaps);

// Sign of a share-free trader's swap gain == rate-vs-price comparison.
// Oracles are constructed per sample to hit losing, neutral and winning
// swaps in equal shares; the tallies record the split.
CheckReport check_gain_sign(const GenConfig& cfg, std::size_t n_swaps);

// The networth deltas of a swap, summed over every account, cancel exactly.
CheckReport check_zero_sum(const GenConfig& cfg, std::size_t n_swaps);

// On a pool priced away from the oracle, a grid scan finds profit in the
// predicted direction and only losses in the other.
CheckReport check_direction(std::uint64_t seed, std::size_t n_pools, std::size_t grid_points);

// solve_arbitrage beats a grid scan up to 1e-9 * max(1, |grid best|); on
// pools engineered so the optimum is exact it beats every other grid point
// strictly and lands the reserve ratio exactly on the price ratio.
CheckReport check_optimality(std::uint64_t seed, std::size_t n_pools, std::size_t grid_points);

// Applying a solution leaves nothing to solve: re-solving reports aligned.
CheckReport check_fixed_point(std::uint64_t seed, std::size_t n_pools);

// Folds src into dst; violation properties and tally keys gain the prefix.
void merge_reports(CheckReport& dst, const CheckReport& src, const std::string& prefix);

// All of the above in one report, properties prefixed by campaign name.
CheckReport check_lemmas(const GenConfig& cfg, const LemmaCampaign& sizes = {});

} // namespace amm
