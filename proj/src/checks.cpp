#include "spread/checks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace spread {
namespace {

void guard(const WelfareModel& model, const std::string& check, int max_ground, int max_k = 64) {
  if (!model.exact())
    throw std::invalid_argument(check + ": sampling-backed models cannot be checked exactly");
  if (model.ground_size() > max_ground)
    throw std::invalid_argument(check + ": ground size " + std::to_string(model.ground_size()) +
                                " exceeds enumeration cap " + std::to_string(max_ground));
  if (model.player_count() > max_k)
    throw std::invalid_argument(check + ": player count exceeds cap");
}

std::string render_profile(const WelfareModel& m, const AllocationProfile& p) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < p.players(); ++i) {
    if (i) os << ", ";
    os << "{";
    bool first = true;
    for (int e : mask_elements(p.sets[i])) {
      if (!first) os << " ";
      os << m.element_name(e);
      first = false;
    }
    os << "}";
  }
  os << ")";
  return os.str();
}

}  // namespace

CheckResult check_nondecreasing_submodular(const WelfareModel& model, int max_ground, int max_k) {
  guard(model, "check_nondecreasing_submodular", max_ground, max_k);
  CheckResult r;
  r.check = "nondecreasing_submodular";
  const int n = model.ground_size();
  const int k = model.player_count();
  for_each_disjoint_profile(n, k, [&](const AllocationProfile& p) {
    if (!r.pass) return;
    const Mask used = p.union_mask();
    const Rational f = model.welfare(p);
    const auto base_utils = model.utilities(p);
    for (int i = 0; i < k && r.pass; ++i) {
      for (int e = 0; e < n && r.pass; ++e) {
        if (mask_has(used, e)) continue;
        AllocationProfile pe = p;
        pe.sets[i] = mask_add(pe.sets[i], e);
        const Rational fe = model.welfare(pe);
        const Rational gain = fe - f;
        if (gain < 0) {
          r.pass = false;
          r.player = i;
          r.element = e;
          r.profile_a = p;
          r.profile_b = pe;
          r.detail = "f decreases when " + model.element_name(e) + " joins player " +
                     std::to_string(i) + "'s set at " + render_profile(model, p);
          return;
        }
        if (model.utilities(pe)[i] < base_utils[i]) {
          r.pass = false;
          r.player = i;
          r.element = e;
          r.profile_a = p;
          r.profile_b = pe;
          r.detail = "f_" + std::to_string(i) + " decreases in the player's own set at " +
                     render_profile(model, p) + " + " + model.element_name(e);
          return;
        }
        // diminishing returns: grow S_i by one element x, marginal of e
        // must not increase
        for (int x = 0; x < n; ++x) {
          if (x == e || mask_has(used, x)) continue;
          AllocationProfile px = p;
          px.sets[i] = mask_add(px.sets[i], x);
          AllocationProfile pxe = px;
          pxe.sets[i] = mask_add(pxe.sets[i], e);
          if (model.welfare(pxe) - model.welfare(px) > gain) {
            r.pass = false;
            r.player = i;
            r.element = e;
            r.profile_a = px;  // S_i' = S_i + x
            r.profile_b = p;
            r.detail = "marginal of " + model.element_name(e) + " grows from " +
                       render_profile(model, p) + " to " + render_profile(model, px) +
                       " (player " + std::to_string(i) + ")";
            return;
          }
        }
      }
    }
  });
  return r;
}

CheckResult check_adverse_competition(const WelfareModel& model, int max_ground) {
  guard(model, "check_adverse_competition", max_ground);
  CheckResult r;
  r.check = "adverse_competition";
  const int n = model.ground_size();
  const int k = model.player_count();
  for_each_disjoint_profile(n, k, [&](const AllocationProfile& p) {
    if (!r.pass) return;
    const Mask used = p.union_mask();
    const auto base = model.utilities(p);
    for (int j = 0; j < k && r.pass; ++j) {
      for (int e = 0; e < n; ++e) {
        if (mask_has(used, e)) continue;
        AllocationProfile pe = p;
        pe.sets[j] = mask_add(pe.sets[j], e);
        const auto grown = model.utilities(pe);
        for (int i = 0; i < k; ++i) {
          if (i == j) continue;
          if (grown[i] > base[i]) {
            r.pass = false;
            r.player = i;
            r.other_player = j;
            r.element = e;
            r.profile_a = p;
            r.profile_b = pe;
            r.detail = "f_" + std::to_string(i) + " grows from " + rat_str(base[i]) + " to " +
                       rat_str(grown[i]) + " when player " + std::to_string(j) + " gains " +
                       model.element_name(e) + " at " + render_profile(model, p);
            return;
          }
        }
      }
    }
  });
  return r;
}

CheckResult check_mei(const WelfareModel& model, int max_ground) {
  guard(model, "check_mei", max_ground);
  CheckResult r;
  r.check = "mechanism_indifference";
  std::map<Mask, std::pair<AllocationProfile, Rational>> seen;
  for_each_disjoint_profile(model.ground_size(), model.player_count(),
                            [&](const AllocationProfile& p) {
                              if (!r.pass) return;
                              const Mask u = p.union_mask();
                              const Rational f = model.welfare(p);
                              auto it = seen.find(u);
                              if (it == seen.end()) {
                                seen.emplace(u, std::make_pair(p, f));
                                return;
                              }
                              if (it->second.second != f) {
                                r.pass = false;
                                r.profile_a = it->second.first;
                                r.profile_b = p;
                                r.detail = "same union, different welfare: f" +
                                           render_profile(model, it->second.first) + " = " +
                                           rat_str(it->second.second) + " but f" +
                                           render_profile(model, p) + " = " + rat_str(f);
                              }
                            });
  return r;
}

CheckResult check_agi(const WelfareModel& model, int max_ground) {
  guard(model, "check_agi", max_ground);
  CheckResult r;
  r.check = "agent_indifference";
  if (model.player_count() == 2) {
    r.detail = "vacuous for two players";
    return r;
  }
  // key: (player, own set, union of the others)
  std::map<std::tuple<int, Mask, Mask>, std::pair<AllocationProfile, Rational>> seen;
  for_each_disjoint_profile(
      model.ground_size(), model.player_count(), [&](const AllocationProfile& p) {
        if (!r.pass) return;
        const auto utils = model.utilities(p);
        for (int i = 0; i < p.players(); ++i) {
          Mask others = 0;
          for (int j = 0; j < p.players(); ++j)
            if (j != i) others |= p.sets[j];
          const auto key = std::make_tuple(i, p.sets[i], others);
          auto it = seen.find(key);
          if (it == seen.end()) {
            seen.emplace(key, std::make_pair(p, utils[i]));
            continue;
          }
          if (it->second.second != utils[i]) {
            r.pass = false;
            r.player = i;
            r.profile_a = it->second.first;
            r.profile_b = p;
            r.detail = "f_" + std::to_string(i) + " differs across opponent partitions: " +
                       rat_str(it->second.second) + " at " +
                       render_profile(model, it->second.first) + " vs " + rat_str(utils[i]) +
                       " at " + render_profile(model, p);
            return;
          }
        }
      });
  return r;
}

CheckResult check_anonymity(const WelfareModel& model, int max_ground) {
  guard(model, "check_anonymity", max_ground);
  CheckResult r;
  r.check = "anonymity";
  const int k = model.player_count();
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  for_each_disjoint_profile(model.ground_size(), k, [&](const AllocationProfile& p) {
    if (!r.pass) return;
    const auto utils = model.utilities(p);
    std::vector<int> pi = perm;
    do {
      // relabel: player pi[j] of q owns what player j owned in p
      AllocationProfile q(k, p.ground);
      for (int j = 0; j < k; ++j) q.sets[pi[j]] = p.sets[j];
      const auto permuted = model.utilities(q);
      for (int i = 0; i < k; ++i) {
        const int j = pi[i];
        if (permuted[j] != utils[i]) {
          r.pass = false;
          r.player = i;
          r.other_player = j;
          r.profile_a = p;
          r.profile_b = q;
          r.detail = "f_" + std::to_string(i) + render_profile(model, p) + " = " +
                     rat_str(utils[i]) + " but f_" + std::to_string(j) +
                     render_profile(model, q) + " = " + rat_str(permuted[j]);
          return;
        }
      }
    } while (std::next_permutation(pi.begin(), pi.end()) && r.pass);
  });
  return r;
}

IndifferenceImplication check_mei_agi_implies_anonymity(const WelfareModel& model,
                                                          int max_ground) {
  guard(model, "check_mei_agi_implies_anonymity", max_ground);
  if (model.player_count() < 3)
    throw std::invalid_argument("check_mei_agi_implies_anonymity needs k >= 3 players");
  // the implication's proof normalizes f_i to 0 on an empty own set;
  // fixtures breaking that are rejected here (and only here)
  for_each_disjoint_profile(
      model.ground_size(), model.player_count(), [&](const AllocationProfile& p) {
        const auto utils = model.utilities(p);
        for (int i = 0; i < p.players(); ++i)
          if (p.sets[i] == 0 && utils[i] != 0)
            throw std::invalid_argument(
                "fixture violates the empty-own-set normalization: f_" + std::to_string(i) + " = " +
                rat_str(utils[i]) + " with an empty own set");
      });
  IndifferenceImplication out;
  out.mei = check_mei(model, max_ground);
  out.agi = check_agi(model, max_ground);
  out.anonymity = check_anonymity(model, max_ground);
  out.implication_holds = !(out.mei.pass && out.agi.pass) || out.anonymity.pass;
  return out;
}

}  // namespace spread
