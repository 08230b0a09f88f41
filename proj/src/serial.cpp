#include "amm/serial.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

namespace amm {

namespace {

Rational rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string())
        throw std::invalid_argument("expected a rational string, got " + j.dump());
    return Rational::parse(j.get<std::string>());
}

PosRational pos_from_json(const Json& j, const std::string& what) {
    const Rational r = rat_from_json(j);
    if (r.sign() <= 0)
        throw std::invalid_argument(what + " must be strictly positive, got " + r.str());
    return PosRational(r);
}

std::uint64_t uint_from_json(const Json& j, const std::string& what) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                   j.get<long long>() < 0))
        throw std::invalid_argument(what + " must be a nonnegative integer, got " + j.dump());
    return j.get<std::uint64_t>();
}

std::uint64_t id_from_key(const std::string& key, const std::string& what) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument(what + " key must be a decimal id, got \"" + key + "\"");
    return std::stoull(key);
}

} // namespace

std::string pool_key(MintedId m) {
    return std::to_string(m.lo().id) + "-" + std::to_string(m.hi().id);
}

MintedId pool_from_key(const std::string& key) {
    const auto dash = key.find('-');
    if (dash == std::string::npos)
        throw std::invalid_argument("pool key must look like \"lo-hi\", got \"" + key + "\"");
    const std::uint64_t lo = id_from_key(key.substr(0, dash), "pool token");
    const std::uint64_t hi = id_from_key(key.substr(dash + 1), "pool token");
    if (!(lo < hi))
        throw std::invalid_argument("pool key \"" + key +
                                    "\" must order its tokens strictly ascending");
    return MintedId(TokenId{lo}, TokenId{hi});
}

Json state_to_json(const State& s) {
    Json atoms = Json::object();
    for (const auto& [a, w] : s.atoms.entries()) {
        Json wallet = Json::object();
        for (const auto& [t, x] : w.entries()) wallet[std::to_string(t.id)] = x.str();
        atoms[std::to_string(a.id)] = std::move(wallet);
    }
    Json mints = Json::object();
    for (const auto& [a, w] : s.mints.entries()) {
        Json wallet = Json::object();
        for (const auto& [m, x] : w.entries()) wallet[pool_key(m)] = x.str();
        mints[std::to_string(a.id)] = std::move(wallet);
    }
    Json amms = Json::object();
    for (const auto& [m, r] : s.amms.pools())
        amms[pool_key(m)] = Json::array({r.lo.str(), r.hi.str()});
    return Json{{"atoms", std::move(atoms)}, {"mints", std::move(mints)},
                {"amms", std::move(amms)}};
}

State state_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("state must be a JSON object");
    State s;
    // .items() keeps a reference, so the sections must outlive the loops.
    const Json atoms = j.value("atoms", Json::object());
    const Json mints = j.value("mints", Json::object());
    const Json amms = j.value("amms", Json::object());
    for (const auto& [acct_key, wallet] : atoms.items()) {
        const AccountId a{id_from_key(acct_key, "account")};
        for (const auto& [tok_key, bal] : wallet.items())
            s.atoms = s.atoms.add(a, TokenId{id_from_key(tok_key, "token")},
                                  pos_from_json(bal, "balance"));
    }
    for (const auto& [acct_key, wallet] : mints.items()) {
        const AccountId a{id_from_key(acct_key, "account")};
        for (const auto& [pool, bal] : wallet.items())
            s.mints = s.mints.add(a, pool_from_key(pool), pos_from_json(bal, "share balance"));
    }
    for (const auto& [pool, reserves] : amms.items()) {
        if (!reserves.is_array() || reserves.size() != 2)
            throw std::invalid_argument("pool \"" + pool +
                                        "\" must map to exactly two reserves");
        s.amms = s.amms.create(pool_from_key(pool),
                               Reserves{pos_from_json(reserves[0], "reserve"),
                                        pos_from_json(reserves[1], "reserve")});
    }
    return s;
}

Json tx_to_json(const Tx& tx) {
    return std::visit(
        [](const auto& t) -> Json {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, CreateTx>)
                return Json{{"kind", "create"},     {"account", t.account.id},
                            {"token0", t.token0.id}, {"token1", t.token1.id},
                            {"x0", t.x0.str()},      {"x1", t.x1.str()}};
            else if constexpr (std::is_same_v<T, DepositTx>)
                return Json{{"kind", "deposit"},    {"account", t.account.id},
                            {"token0", t.token0.id}, {"token1", t.token1.id},
                            {"x0", t.x0.str()}};
            else if constexpr (std::is_same_v<T, RedeemTx>)
                return Json{{"kind", "redeem"},     {"account", t.account.id},
                            {"token0", t.token0.id}, {"token1", t.token1.id},
                            {"v", t.v.str()}};
            else
                return Json{{"kind", "swap"},      {"account", t.account.id},
                            {"input", t.input.id}, {"output", t.output.id},
                            {"x", t.x.str()}};
        },
        tx);
}

Tx tx_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("transaction must be a JSON object");
    const std::string kind = j.at("kind").get<std::string>();
    const AccountId account{uint_from_json(j.at("account"), "account")};
    if (kind == "create")
        return CreateTx{account,
                        TokenId{uint_from_json(j.at("token0"), "token0")},
                        TokenId{uint_from_json(j.at("token1"), "token1")},
                        pos_from_json(j.at("x0"), "x0"),
                        pos_from_json(j.at("x1"), "x1")};
    if (kind == "deposit")
        return DepositTx{account,
                         TokenId{uint_from_json(j.at("token0"), "token0")},
                         TokenId{uint_from_json(j.at("token1"), "token1")},
                         pos_from_json(j.at("x0"), "x0")};
    if (kind == "redeem")
        return RedeemTx{account,
                        TokenId{uint_from_json(j.at("token0"), "token0")},
                        TokenId{uint_from_json(j.at("token1"), "token1")},
                        pos_from_json(j.at("v"), "v")};
    if (kind == "swap")
        return SwapTx{account,
                      TokenId{uint_from_json(j.at("input"), "input")},
                      TokenId{uint_from_json(j.at("output"), "output")},
                      pos_from_json(j.at("x"), "x")};
    throw std::invalid_argument("unknown transaction kind \"" + kind + "\"");
}

std::string trace_to_jsonl(const Trace& t) {
    std::ostringstream out;
    out << state_to_json(t.initial).dump() << '\n';
    for (const Tx& tx : t.steps) out << tx_to_json(tx).dump() << '\n';
    return out.str();
}

Trace trace_from_jsonl(std::istream& in) {
    Trace t;
    std::string line;
    bool have_state = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!have_state) {
            t.initial = state_from_json(j);
            have_state = true;
        } else {
            t.steps.push_back(tx_from_json(j));
        }
    }
    if (!have_state) throw std::invalid_argument("trace has no initial state line");
    return t;
}

Json oracle_to_json(const PriceOracle& o) {
    Json prices = Json::object();
    for (const auto& [t, p] : o.prices()) prices[std::to_string(t.id)] = p.str();
    return Json{{"prices", std::move(prices)}};
}

PriceOracle oracle_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("oracle must be a JSON object");
    std::map<TokenId, PosRational> prices;
    const Json section = j.value("prices", Json::object());
    for (const auto& [key, val] : section.items())
        prices.emplace(TokenId{id_from_key(key, "token")}, pos_from_json(val, "price"));
    return PriceOracle(std::move(prices));
}

Json gen_config_to_json(const GenConfig& c) {
    return Json{{"seed", c.seed},
                {"accounts", c.n_accounts},
                {"tokens", c.n_tokens},
                {"steps", c.n_steps},
                {"weights",
                 Json{{"create", c.weights.create},
                      {"deposit", c.weights.deposit},
                      {"redeem", c.weights.redeem},
                      {"swap", c.weights.swap}}},
                {"amounts", Json::array({c.amount_lo.str(), c.amount_hi.str()})}};
}

GenConfig gen_config_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("gen config must be a JSON object");
    GenConfig c;
    if (j.contains("seed")) c.seed = uint_from_json(j.at("seed"), "seed");
    if (j.contains("accounts"))
        c.n_accounts = static_cast<std::uint32_t>(uint_from_json(j.at("accounts"), "accounts"));
    if (j.contains("tokens"))
        c.n_tokens = static_cast<std::uint32_t>(uint_from_json(j.at("tokens"), "tokens"));
    if (j.contains("steps"))
        c.n_steps = static_cast<std::uint32_t>(uint_from_json(j.at("steps"), "steps"));
    if (j.contains("weights")) {
        const Json& w = j.at("weights");
        c.weights.create = static_cast<unsigned>(uint_from_json(w.value("create", Json(c.weights.create)), "create weight"));
        c.weights.deposit = static_cast<unsigned>(uint_from_json(w.value("deposit", Json(c.weights.deposit)), "deposit weight"));
        c.weights.redeem = static_cast<unsigned>(uint_from_json(w.value("redeem", Json(c.weights.redeem)), "redeem weight"));
        c.weights.swap = static_cast<unsigned>(uint_from_json(w.value("swap", Json(c.weights.swap)), "swap weight"));
    }
    if (j.contains("amounts")) {
        const Json& a = j.at("amounts");
        if (!a.is_array() || a.size() != 2)
            throw std::invalid_argument("amounts must be an array of two rationals");
        c.amount_lo = pos_from_json(a[0], "amount_lo");
        c.amount_hi = pos_from_json(a[1], "amount_hi");
    }
    return c;
}

Json report_to_json(const CheckReport& r) {
    Json violations = Json::array();
    for (const Violation& v : r.violations)
        violations.push_back(
            Json{{"step", v.step}, {"property", v.property}, {"detail", v.detail}});
    Json tallies = Json::object();
    for (const auto& [key, count] : r.tallies) tallies[key] = count;
    return Json{{"ok", r.ok()},
                {"states_checked", r.states_checked},
                {"tallies", std::move(tallies)},
                {"violations", std::move(violations)}};
}

Json arb_solution_to_json(const ArbSolution& sol, MintedId pool) {
    return Json{{"pool", pool_key(pool)},
                {"direction", Json::array({sol.input.id, sol.output.id})},
                {"x", sol.x.str()},
                {"y", sol.y.str()},
                {"gain", sol.gain.str()},
                {"post_ratio", sol.post_ratio.str()}};
}

Json error_to_json(const AmmError& e) {
    return Json{{"error", error_name(e.code())}, {"detail", e.detail()}};
}

} // namespace amm
