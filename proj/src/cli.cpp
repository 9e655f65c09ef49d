#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "spread/checks.hpp"
#include "spread/json_io.hpp"

namespace spread {

using nlohmann::json;

namespace {

BidProfile parse_bids(const std::string& text, int players) {
  BidProfile bids;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t pos = 0;
    const int b = std::stoi(part, &pos);
    if (pos != part.size() || b < 0) throw std::invalid_argument("bad budget '" + part + "'");
    bids.budgets.push_back(b);
  }
  if (bids.players() != players)
    throw std::invalid_argument("expected " + std::to_string(players) + " budgets, got " +
                                std::to_string(bids.players()));
  return bids;
}

json check_to_json(const CheckResult& r) {
  return {{"check", r.check}, {"verdict", r.pass ? "PASS" : "FAIL"}, {"detail", r.detail}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"strategyproof allocation mechanisms for competitive submodular welfare"};
  app.require_subcommand(1);

  std::string instance, mechanism = "two-player", bids_text, case_id, export_table;
  std::string epsilon_text = "1/100", n_text = "100";
  std::uint64_t seed = 0;
  int cap = 4;
  bool disjoint = false;

  auto* run = app.add_subcommand("run", "sample one allocation from a mechanism");
  run->add_option("--instance", instance, "instance file or bundled fixture name")->required();
  run->add_option("--bids", bids_text, "comma-separated budgets, one per player")->required();
  run->add_option("--mechanism", mechanism, "two-player|uniform|disjoint or an ordering policy");
  run->add_option("--seed", seed, "rng seed");
  run->add_option("--export-table", export_table, "write the constructed table as JSON");
  run->add_option("--epsilon", epsilon_text, "fixture parameter");
  run->add_option("--N", n_text, "fixture parameter");

  auto* audit = app.add_subcommand("audit", "exhaustive monotonicity sweep");
  audit->add_option("--instance", instance)->required();
  audit->add_option("--mechanism", mechanism);
  audit->add_option("--cap", cap, "sweep bid profiles with total at most this");
  audit->add_option("--epsilon", epsilon_text);
  audit->add_option("--N", n_text);

  auto* repro = app.add_subcommand("repro", "reproduce a bundled construction");
  repro->add_option("--case", case_id, "dictatorship-counter1|roundrobin-counter2|uniform-counter3|adverse-competition|extension-infeasibility")->required();
  repro->add_option("--epsilon", epsilon_text);
  repro->add_option("--N", n_text);

  auto* opt = app.add_subcommand("opt", "exact optimum by enumeration");
  opt->add_option("--instance", instance)->required();
  opt->add_option("--bids", bids_text)->required();
  opt->add_flag("--disjoint", disjoint);
  opt->add_option("--epsilon", epsilon_text);
  opt->add_option("--N", n_text);

  auto* check = app.add_subcommand("check", "run the structural model checkers");
  check->add_option("--instance", instance)->required();
  check->add_option("--epsilon", epsilon_text);
  check->add_option("--N", n_text);

  std::vector<const char*> argv;
  argv.push_back("spreadmech");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // usage problems exit 1; --help exits 0
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    const Rational eps = rat_parse(epsilon_text);
    const Rational N = rat_parse(n_text);

    if (app.got_subcommand(run)) {
      const auto model = load_instance(instance, eps, N);
      const BidProfile bids = parse_bids(bids_text, model->player_count());
      const MechanismId mech = mechanism_from_string(mechanism);
      RunResult rr;
      switch (mech) {
        case MechanismId::kTwoPlayerTable:
        case MechanismId::kTwoPlayerDisjoint: {
          if (model->player_count() != 2)
            throw std::invalid_argument("the table mechanism needs exactly two players");
          if (!export_table.empty()) {
            const auto table = TwoPlayerTable::construct(
                *model, bids.total(), mech == MechanismId::kTwoPlayerDisjoint);
            std::ofstream f(export_table);
            if (!f) throw std::invalid_argument("cannot write '" + export_table + "'");
            f << table_to_json(*model, table).dump(2) << "\n";
          }
          rr = run_two_player(*model, bids.budgets[0], bids.budgets[1], seed,
                              mech == MechanismId::kTwoPlayerDisjoint);
          break;
        }
        case MechanismId::kUniformRandom:
          rr = run_uniform_random(*model, bids, seed);
          break;
        default: {
          const GreedyResult g = locally_greedy(*model, ordering_for_policy(mech, bids), true);
          rr.profile = g.profile;
          rr.utilities = model->utilities(g.profile);
          rr.welfare = g.welfare;
          rr.sequence = ordering_for_policy(mech, bids);
          for (const auto& step : g.steps) rr.trace.push_back(step.gain);
          rr.notes["mechanism"] = mechanism_name(mech);
          break;
        }
      }
      out << run_result_to_json(*model, rr).dump(2) << "\n";
      return 0;
    }

    if (app.got_subcommand(audit)) {
      const auto model = load_instance(instance, eps, N);
      const AuditReport rep = monotonicity_sweep(mechanism_from_string(mechanism), *model, cap);
      out << audit_report_to_json(rep).dump(2) << "\n";
      return rep.pass ? 0 : 2;
    }

    if (app.got_subcommand(repro)) {
      const ReproReport rep = reproduce(case_id, eps, N);
      out << json{{"case", rep.case_id}, {"claim_holds", rep.claim_holds}, {"report", rep.detail}}
                 .dump(2)
          << "\n";
      return rep.claim_holds ? 0 : 2;
    }

    if (app.got_subcommand(opt)) {
      const auto model = load_instance(instance, eps, N);
      const BidProfile bids = parse_bids(bids_text, model->player_count());
      const OptResult best = brute_force_opt(*model, bids, disjoint);
      const auto utils = model->utilities(best.profile);
      json us = json::array();
      for (const auto& u : utils) us.push_back(rat_str(u));
      out << json{{"sets", profile_to_json(*model, best.profile)},
                  {"welfare", rat_str(best.welfare)},
                  {"utilities", us},
                  {"disjoint", disjoint || model->disjoint_only()}}
                 .dump(2)
          << "\n";
      return 0;
    }

    if (app.got_subcommand(check)) {
      const auto model = load_instance(instance, eps, N);
      json checks = json::array();
      bool all_pass = true;
      const auto add = [&](const CheckResult& r) {
        checks.push_back(check_to_json(r));
        all_pass = all_pass && r.pass;
      };
      add(check_nondecreasing_submodular(*model));
      add(check_adverse_competition(*model));
      add(check_mei(*model));
      add(check_agi(*model));
      add(check_anonymity(*model));
      if (model->player_count() >= 3) {
        try {
          const auto thm = check_mei_agi_implies_anonymity(*model);
          checks.push_back({{"check", "mei_agi_implies_anonymity"},
                            {"verdict", thm.implication_holds ? "PASS" : "FAIL"},
                            {"detail", "mei=" + std::string(thm.mei.pass ? "PASS" : "FAIL") +
                                           " agi=" + (thm.agi.pass ? "PASS" : "FAIL") +
                                           " anonymity=" + (thm.anonymity.pass ? "PASS" : "FAIL")}});
          all_pass = all_pass && thm.implication_holds;
        } catch (const std::invalid_argument& e) {
          checks.push_back({{"check", "mei_agi_implies_anonymity"},
                            {"verdict", "SKIPPED"},
                            {"detail", e.what()}});
        }
      }
      out << json{{"instance", model->id()},
                  {"verdict", all_pass ? "PASS" : "FAIL"},
                  {"checks", checks}}
                 .dump(2)
          << "\n";
      return all_pass ? 0 : 2;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << json{{"error", e.what()}}.dump(2) << "\n";
    return 1;
  }
  return 1;
}

}  // namespace spread
