#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "spread/mechanism.hpp"

namespace spread {

struct MonotonicityWitness {
  int player = 0;
  BidProfile bids;
  BidProfile bids_after;  // own bid incremented
  Rational u_before;
  Rational u_after;
};

struct AuditReport {
  std::string mechanism;
  std::string model_id;
  int budget_cap = 0;
  bool pass = false;
  std::vector<std::string> player_verdicts;  // "monotone" / "violated"
  std::vector<MonotonicityWitness> witnesses;
  int profiles_checked = 0;
  double runtime_seconds = 0.0;
};

// Exhaustively compares u_i(b) against u_i(b_i + 1, b_-i) for every bid
// profile with total <= budget_cap (deviations stay within the ground
// size), as exact rational inequalities. Witnesses are emitted in
// canonical bid order. No sampling ever feeds a verdict.
AuditReport monotonicity_sweep(MechanismId mech, const WelfareModel& model, int budget_cap);

struct RatioRow {
  BidProfile bids;
  Rational mechanism_welfare;
  Rational optimum;
  bool bound_ok = false;
};

struct ApproxReport {
  std::string mechanism;
  std::string model_id;
  bool pass = false;
  // bound checked as bound_num * welfare >= bound_den * OPT
  Rational bound_num;
  Rational bound_den;
  std::string bound_label;
  std::vector<RatioRow> rows;
};

// Expected mechanism welfare against the exact optimum for every bid
// profile up to the cap. Bounds: 2 for the two-player table, k+1 for the
// disjoint variant, and welfare >= 632/1000 * OPT for the uniform random
// mechanism (a rational lower bound on 1 - 1/e).
ApproxReport approximation_audit(MechanismId mech, const WelfareModel& model, int budget_cap,
                                 bool disjoint = false);

struct ReproReport {
  std::string case_id;
  bool claim_holds = false;
  nlohmann::json detail;
};

// Reproduces a named construction from the bundled fixtures:
// dictatorship-counter1, roundrobin-counter2, uniform-counter3,
// adverse-competition, extension-infeasibility. Exact values are computed
// through the oracles; the printed closed forms are reported alongside,
// never asserted as equalities.
ReproReport reproduce(const std::string& case_id, const Rational& epsilon = rat(1, 100),
                      const Rational& N = rat(100));

// CLI entry point (subcommands run / audit / repro / opt / check). Writes
// one JSON document to `out`. Exit codes: 0 success or audit PASS, 2 audit
// or reproduction FAIL (witnesses in the JSON), 1 usage and instance
// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spread
