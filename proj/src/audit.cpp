#include "spread/audit.hpp"

#include <chrono>
#include <map>
#include <optional>

#include "spread/checks.hpp"
#include "spread/json_io.hpp"
#include "spread/or_model.hpp"

namespace spread {

using nlohmann::json;

AuditReport monotonicity_sweep(MechanismId mech, const WelfareModel& model, int budget_cap) {
  const auto t0 = std::chrono::steady_clock::now();
  const int k = model.player_count();
  const int swept_cap = std::min(budget_cap, model.ground_size());
  const int deviation_cap = std::min(budget_cap + 1, model.ground_size());

  AuditReport rep;
  rep.mechanism = mechanism_name(mech);
  rep.model_id = model.id();
  rep.budget_cap = budget_cap;

  std::optional<TwoPlayerTable> table;
  if (mech == MechanismId::kTwoPlayerTable || mech == MechanismId::kTwoPlayerDisjoint)
    table = TwoPlayerTable::construct(model, deviation_cap,
                                      mech == MechanismId::kTwoPlayerDisjoint);

  std::map<std::vector<int>, std::vector<Rational>> memo;
  const auto eval = [&](const BidProfile& bids) -> const std::vector<Rational>& {
    auto it = memo.find(bids.budgets);
    if (it == memo.end()) {
      std::vector<Rational> u;
      if (table) {
        const TableEntry& cell = table->at(bids.budgets[0], bids.budgets[1]);
        u = {cell.wa, cell.wb};
      } else {
        u = expected_utilities(mech, model, bids);
      }
      it = memo.emplace(bids.budgets, std::move(u)).first;
    }
    return it->second;
  };

  std::vector<char> violated(k, 0);
  std::vector<int> bvec(k, 0);
  while (true) {
    BidProfile bids{bvec};
    if (bids.total() <= swept_cap) {
      ++rep.profiles_checked;
      const auto base = eval(bids);
      if (bids.total() + 1 <= deviation_cap) {
        for (int i = 0; i < k; ++i) {
          BidProfile up = bids;
          ++up.budgets[i];
          const auto after = eval(up);
          if (after[i] < base[i]) {
            violated[i] = 1;
            rep.witnesses.push_back({i, bids, up, base[i], after[i]});
          }
        }
      }
    }
    int i = k - 1;
    while (i >= 0 && bvec[i] == swept_cap) bvec[i--] = 0;
    if (i < 0) break;
    ++bvec[i];
  }

  rep.pass = rep.witnesses.empty();
  for (int i = 0; i < k; ++i) rep.player_verdicts.push_back(violated[i] ? "violated" : "monotone");
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

ApproxReport approximation_audit(MechanismId mech, const WelfareModel& model, int budget_cap,
                                 bool disjoint) {
  const int k = model.player_count();
  const int cap = std::min(budget_cap, model.ground_size());
  const bool dis =
      disjoint || mech == MechanismId::kTwoPlayerDisjoint || model.disjoint_only();

  ApproxReport rep;
  rep.mechanism = mechanism_name(mech);
  rep.model_id = model.id();
  rep.bound_den = 1;
  switch (mech) {
    case MechanismId::kTwoPlayerDisjoint:
      rep.bound_num = k + 1;
      rep.bound_label = "(k+1)-approximation (disjoint, anonymous players)";
      break;
    case MechanismId::kUniformRandom:
      // 632/1000 <= 1 - 1/e, so this check is a documented relaxation of
      // welfare * e >= (e-1) * OPT
      rep.bound_num = 1000;
      rep.bound_den = 632;
      rep.bound_label = "e/(e-1)-approximation via 632/1000 <= 1-1/e";
      break;
    default:
      rep.bound_num = 2;
      rep.bound_label = "2-approximation";
      break;
  }

  std::optional<TwoPlayerTable> table;
  if (mech == MechanismId::kTwoPlayerTable || mech == MechanismId::kTwoPlayerDisjoint)
    table = TwoPlayerTable::construct(model, cap, mech == MechanismId::kTwoPlayerDisjoint);

  rep.pass = true;
  std::vector<int> bvec(k, 0);
  while (true) {
    BidProfile bids{bvec};
    const int total = bids.total();
    if (total >= 1 && total <= cap) {
      RatioRow row;
      row.bids = bids;
      if (table) {
        const TableEntry& cell = table->at(bids.budgets[0], bids.budgets[1]);
        row.mechanism_welfare = cell.wa + cell.wb;
      } else {
        Rational acc(0);
        for (const auto& u : expected_utilities(mech, model, bids)) acc += u;
        row.mechanism_welfare = acc;
      }
      row.optimum = brute_force_opt(model, bids, dis).welfare;
      row.bound_ok = rep.bound_num * row.mechanism_welfare >= rep.bound_den * row.optimum;
      if (!row.bound_ok) rep.pass = false;
      rep.rows.push_back(std::move(row));
    }
    int i = k - 1;
    while (i >= 0 && bvec[i] == cap) bvec[i--] = 0;
    if (i < 0) break;
    ++bvec[i];
  }
  return rep;
}

namespace {

json rational_json(const Rational& q) { return rat_str(q); }

ReproReport repro_dictatorship_counter1(const Rational& eps) {
  ReproReport rep;
  rep.case_id = "dictatorship-counter1";
  const auto model = load_fixture("counter1", eps);
  const Rational u_low = expected_utilities(MechanismId::kDictatorship, *model,
                                            BidProfile{{1, 1}})[0];
  const Rational u_high = expected_utilities(MechanismId::kDictatorship, *model,
                                             BidProfile{{2, 1}})[0];
  const Rational reference_low(2), reference_high(8, 5);
  rep.claim_holds = u_high < u_low;
  rep.detail = {
      {"epsilon", rational_json(eps)},
      {"mechanism", "dictatorship"},
      {"u_A", {{"bids(1,1)", rational_json(u_low)}, {"bids(2,1)", rational_json(u_high)}}},
      {"reference_values", {{"bids(1,1)", "2"}, {"bids(2,1)", "16/10"}}},
      {"deviation_from_reference",
       {{"bids(1,1)", rational_json(abs(u_low - reference_low))},
        {"bids(2,1)", rational_json(abs(u_high - reference_high))}}},
      {"reference_within_3eps", abs(u_low - reference_low) <= 3 * eps &&
                                  abs(u_high - reference_high) <= 3 * eps},
      {"claim", "u_A(2,1) < u_A(1,1)"},
      {"claim_holds", rep.claim_holds},
  };
  return rep;
}

ReproReport repro_roundrobin_counter2(const Rational& eps) {
  ReproReport rep;
  rep.case_id = "roundrobin-counter2";
  const auto model = load_fixture("counter2", eps);
  const Rational u_low = expected_utilities(MechanismId::kRoundRobin, *model,
                                            BidProfile{{1, 2}})[0];
  const Rational u_high = expected_utilities(MechanismId::kRoundRobin, *model,
                                             BidProfile{{2, 2}})[0];
  // the reference decomposition drops the seed weights; it is reported, not
  // asserted, and any mismatch with the oracle is flagged
  const Rational reference_high = rat(1, 2) + 4 * eps;
  const Rational reference_low(1);
  rep.claim_holds = u_high < u_low;
  rep.detail = {
      {"epsilon", rational_json(eps)},
      {"mechanism", "round-robin"},
      {"u_A", {{"bids(1,2)", rational_json(u_low)}, {"bids(2,2)", rational_json(u_high)}}},
      {"reference_values",
       {{"bids(1,2)", "1"}, {"bids(2,2)", "3e+2e+(1-2e)/2 = " + rat_str(reference_high)}}},
      {"reference_closed_form_matches",
       u_low == reference_low && u_high == reference_high},
      {"mismatch",
       {{"bids(1,2)", rational_json(abs(u_low - reference_low))},
        {"bids(2,2)", rational_json(abs(u_high - reference_high))}}},
      {"claim", "u_A(2,2) < u_A(1,2)"},
      {"claim_holds", rep.claim_holds},
  };
  return rep;
}

ReproReport repro_uniform_counter3(const Rational& eps) {
  ReproReport rep;
  rep.case_id = "uniform-counter3";
  const auto model = load_fixture("counter3", eps);
  const Rational u31 = expected_utilities(MechanismId::kUniformRandom, *model,
                                          BidProfile{{3, 1}})[0];
  const Rational u41 = expected_utilities(MechanismId::kUniformRandom, *model,
                                          BidProfile{{4, 1}})[0];
  const Rational closed31 = rat(5, 8) + rat(3, 4) * eps;
  const Rational closed41 = rat(3, 5) + rat(4, 5) * eps;
  rep.claim_holds = u41 < u31 && u31 == closed31 && u41 == closed41;
  rep.detail = {
      {"epsilon", rational_json(eps)},
      {"mechanism", "uniform"},
      {"u_A", {{"bids(3,1)", rational_json(u31)}, {"bids(4,1)", rational_json(u41)}}},
      {"closed_form",
       {{"bids(3,1)", "5/8 + 3/4*e = " + rat_str(closed31)},
        {"bids(4,1)", "3/5 + 4/5*e = " + rat_str(closed41)}}},
      {"closed_form_matches", u31 == closed31 && u41 == closed41},
      {"claim", "u_A(4,1) < u_A(3,1)"},
      {"claim_holds", u41 < u31},
  };
  return rep;
}

ReproReport repro_adverse_competition(const Rational& N) {
  ReproReport rep;
  rep.case_id = "adverse-competition";
  const auto model = load_fixture("adverse-competition", rat(1, 100), N);
  const CheckResult adv = check_adverse_competition(*model);
  const Rational u_truthful = expected_utilities(MechanismId::kDictatorship, *model,
                                                 BidProfile{{1, 1}})[0];
  const Rational u_underreport = expected_utilities(MechanismId::kDictatorship, *model,
                                                    BidProfile{{0, 1}})[0];
  std::string construction_error = "none";
  try {
    TwoPlayerTable::construct(*model, 2);
  } catch (const std::logic_error& e) {
    construction_error = e.what();
  }
  rep.claim_holds = !adv.pass && u_underreport > u_truthful;
  rep.detail = {
      {"N", rational_json(N)},
      {"adverse_competition_check", adv.pass ? "PASS" : "FAIL"},
      {"adverse_competition_witness", adv.detail},
      {"u_A_truthful(1,1)", rational_json(u_truthful)},
      {"u_A_underreport(0,1)", rational_json(u_underreport)},
      {"underreporting_profitable", u_underreport > u_truthful},
      {"table_construction", construction_error},
      {"claim", "without adverse competition, bidding 0 beats truthful bidding (N > 2)"},
      {"claim_holds", rep.claim_holds},
  };
  return rep;
}

ReproReport repro_extension_infeasibility() {
  ReproReport rep;
  rep.case_id = "extension-infeasibility";
  const auto model = load_fixture("extension-infeasibility");

  // prescribed behavior for budgets totalling at most 2: the named player
  // is served first, so it takes the single valuable element
  struct Row {
    std::vector<int> bids;
    int first;
  };
  const std::vector<Row> behavior = {
      {{1, 0, 0}, 0}, {{0, 1, 0}, 1}, {{0, 0, 1}, 2},
      {{1, 1, 0}, 0}, {{0, 1, 1}, 1}, {{1, 0, 1}, 2},
  };
  json table = json::array();
  std::map<std::vector<int>, std::vector<Rational>> util;
  util[{0, 0, 0}] = {Rational(0), Rational(0), Rational(0)};
  for (const auto& row : behavior) {
    const GreedyResult g =
        locally_greedy(*model, ordering_for_policy(MechanismId::kDictatorship,
                                                   BidProfile{row.bids}),
                       true);
    auto u = model->utilities(g.profile);
    // the dictatorship order serves players by index; re-order so that the
    // prescribed player allocates first
    if (row.first != 0) {
      std::vector<int> turns;
      turns.insert(turns.end(), row.bids[row.first], row.first);
      for (int i = 0; i < 3; ++i)
        if (i != row.first) turns.insert(turns.end(), row.bids[i], i);
      u = model->utilities(locally_greedy(*model, TurnSequence{turns}, true).profile);
    }
    util[row.bids] = u;
    table.push_back({{"bids", row.bids},
                     {"selected", std::string(1, static_cast<char>('A' + row.first))},
                     {"utilities", {rat_str(u[0]), rat_str(u[1]), rat_str(u[2])}}});
  }

  // adverse-competition constraints at (1,1,1): for each player X and
  // opponent Y, w^X(1,1,1) <= w^X with Y zeroed + [W - w(Y zeroed)].
  // Welfare here is 0 or 1; test W = 1 for exact infeasibility.
  const auto sum3 = [](const std::vector<Rational>& v) -> Rational {
    return v[0] + v[1] + v[2];
  };
  const Rational w101 = sum3(util[{1, 0, 1}]);
  const Rational w110 = sum3(util[{1, 1, 0}]);
  const Rational w011 = sum3(util[{0, 1, 1}]);
  const Rational W(1);
  const Rational bound_a = util[{1, 0, 1}][0] + (W - w101);
  const Rational bound_b = util[{1, 1, 0}][1] + (W - w110);
  const Rational bound_c = util[{0, 1, 1}][2] + (W - w011);
  const bool positive_welfare_infeasible = bound_a + bound_b + bound_c < W;
  const Rational opt = brute_force_opt(*model, BidProfile{{1, 1, 1}}, true).welfare;

  rep.claim_holds = positive_welfare_infeasible && opt > 0;
  rep.detail = {
      {"behavior_table", table},
      {"constraints_at_(1,1,1)",
       {{"w^A <= w^A(1,0,1) + W - w(1,0,1) = ", rational_json(bound_a)},
        {"w^B <= w^B(1,1,0) + W - w(1,1,0) = ", rational_json(bound_b)},
        {"w^C <= w^C(0,1,1) + W - w(0,1,1) = ", rational_json(bound_c)}}},
      {"welfare_1_infeasible",
       {{"sum_of_bounds", rational_json(bound_a + bound_b + bound_c)},
        {"required", rational_json(W)},
        {"infeasible", positive_welfare_infeasible}}},
      {"forced_welfare_at_(1,1,1)", "0"},
      {"optimal_welfare_at_(1,1,1)", rational_json(opt)},
      {"conclusion", "every adverse-competition-respecting extension yields zero welfare at "
                     "(1,1,1); the approximation ratio is unbounded"},
      {"claim_holds", rep.claim_holds},
  };
  return rep;
}

}  // namespace

ReproReport reproduce(const std::string& case_id, const Rational& epsilon, const Rational& N) {
  if (case_id == "dictatorship-counter1") return repro_dictatorship_counter1(epsilon);
  if (case_id == "roundrobin-counter2") return repro_roundrobin_counter2(epsilon);
  if (case_id == "uniform-counter3") return repro_uniform_counter3(epsilon);
  if (case_id == "adverse-competition") return repro_adverse_competition(N);
  if (case_id == "extension-infeasibility") return repro_extension_infeasibility();
  throw std::invalid_argument("unknown reproduction case '" + case_id + "'");
}

}  // namespace spread
