#pragma once

#include "amm/harness.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace amm {

using Json = nlohmann::json;

// JSON shapes, pinned because files written by one build must load in any
// other:
//   rational        "num/den"; a bare integer (string or JSON number) is
//                   accepted on input, anything inexact is rejected
//   state           {"atoms": {acct: {token: rat}}, "mints": {acct: {pool: rat}},
//                    "amms": {pool: [rat, rat]}}
//   pool key        "lo-hi" with lo < hi; reversed or equal ids are rejected
//   transaction     {"kind": "create"|"deposit"|"redeem"|"swap", "account": n, ...}
//   trace           JSON lines: the state first, then one transaction per line
// Balances and reserves must be strictly positive: a stored zero is not a
// representable state.

// "lo-hi" <-> MintedId; parsing rejects keys whose ids are not strictly
// ascending, so the same pool cannot hide under two spellings.
std::string pool_key(MintedId m);
MintedId pool_from_key(const std::string& key);

Json state_to_json(const State& s);
State state_from_json(const Json& j);

Json tx_to_json(const Tx& tx);
Tx tx_from_json(const Json& j);

std::string trace_to_jsonl(const Trace& t);
Trace trace_from_jsonl(std::istream& in);

// {"prices": {token: rat}}
Json oracle_to_json(const PriceOracle& o);
PriceOracle oracle_from_json(const Json& j);

// {"seed": n, "accounts": n, "tokens": n, "steps": n,
//  "weights": {"create": n, "deposit": n, "redeem": n, "swap": n},
//  "amounts": [rat, rat]}; every field optional on input, defaults apply.
Json gen_config_to_json(const GenConfig& c);
GenConfig gen_config_from_json(const Json& j);

Json report_to_json(const CheckReport& r);

// {"pool": "lo-hi", "direction": [input, output], "x": rat, "y": rat,
//  "gain": rat, "post_ratio": rat}
Json arb_solution_to_json(const ArbSolution& sol, MintedId pool);

// {"error": name, "detail": text}
Json error_to_json(const AmmError& e);

} // namespace amm
