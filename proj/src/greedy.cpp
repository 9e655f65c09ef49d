#include "spread/greedy.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "spread/checks.hpp"

namespace spread {

BidProfile TurnSequence::budgets(int players) const {
  BidProfile b;
  b.budgets.assign(players, 0);
  for (int i : turns) {
    if (i < 0 || i >= players) throw std::invalid_argument("turn references unknown player");
    ++b.budgets[i];
  }
  return b;
}

TurnSequence sequence_from_string(const std::string& word) {
  TurnSequence s;
  for (char c : word) {
    if (c < 'A' || c > 'Z') throw std::invalid_argument("turn sequences use letters A..Z");
    s.turns.push_back(c - 'A');
  }
  return s;
}

std::string sequence_to_string(const TurnSequence& seq) {
  std::string out;
  for (int i : seq.turns) out.push_back(static_cast<char>('A' + i));
  return out;
}

GreedyStep locally_greedy_step(const WelfareModel& model, AllocationProfile& partial, int player,
                               bool disjoint) {
  const bool exclude_all = disjoint || model.disjoint_only();
  const Mask taken = exclude_all ? partial.union_mask() : partial.sets[player];
  const Rational before = model.welfare(partial);
  bool found = false;
  GreedyStep best;
  best.player = player;
  for (int e = 0; e < model.ground_size(); ++e) {
    if (mask_has(taken, e)) continue;
    AllocationProfile next = partial;
    next.sets[player] = mask_add(next.sets[player], e);
    const Rational gain = model.welfare(next) - before;
    if (!found || gain > best.gain) {  // ties resolve to the lowest element id
      best.element = e;
      best.gain = gain;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("ground set exhausted during greedy allocation");
  partial.sets[player] = mask_add(partial.sets[player], best.element);
  return best;
}

GreedyResult locally_greedy(const WelfareModel& model, const TurnSequence& seq, bool disjoint) {
  if (seq.length() > model.ground_size())
    throw std::invalid_argument("sequence longer than the ground set");
  GreedyResult r;
  r.profile = AllocationProfile(model.player_count(), model.ground_size());
  for (int player : seq.turns) {
    if (player < 0 || player >= model.player_count())
      throw std::invalid_argument("turn references unknown player");
    r.steps.push_back(locally_greedy_step(model, r.profile, player, disjoint));
  }
  r.welfare = model.welfare(r.profile);
  return r;
}

UniformGreedyResult uniform_greedy(const WelfareModel& model, int total_budget) {
  if (total_budget > model.ground_size())
    throw std::invalid_argument("budget exceeds the ground set");
  UniformGreedyResult r;
  // welfare evaluated on unions: hand the whole pick set to player 0
  AllocationProfile p(model.player_count(), model.ground_size());
  r.welfare_by_count.push_back(model.welfare(p));
  for (int step = 0; step < total_budget; ++step) {
    int best = -1;
    Rational best_welfare;
    for (int e = 0; e < model.ground_size(); ++e) {
      if (mask_has(p.sets[0], e)) continue;
      AllocationProfile next = p;
      next.sets[0] = mask_add(next.sets[0], e);
      const Rational w = model.welfare(next);
      if (best < 0 || w > best_welfare) {
        best = e;
        best_welfare = w;
      }
    }
    p.sets[0] = mask_add(p.sets[0], best);
    r.picks.push_back(best);
    r.welfare_by_count.push_back(best_welfare);
  }
  return r;
}

namespace {

void enumerate_profiles(const WelfareModel& model, const BidProfile& bids, bool disjoint,
                        int player, AllocationProfile& current,
                        const std::function<void(const AllocationProfile&)>& fn) {
  if (player == bids.players()) {
    fn(current);
    return;
  }
  Mask pool = (model.ground_size() >= 64 ? ~Mask{0} : (Mask{1} << model.ground_size()) - 1);
  if (disjoint)
    for (int j = 0; j < player; ++j) pool &= ~current.sets[j];
  for (Mask s : submasks_of_size(pool, bids.budgets[player])) {
    current.sets[player] = s;
    enumerate_profiles(model, bids, disjoint, player + 1, current, fn);
  }
  current.sets[player] = 0;
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t acc = 1;
  for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

}  // namespace

OptResult brute_force_opt(const WelfareModel& model, const BidProfile& bids, bool disjoint,
                          std::uint64_t enumeration_cap) {
  if (bids.players() != model.player_count())
    throw std::invalid_argument("bid profile arity mismatch");
  if (bids.total() > model.ground_size())
    throw std::invalid_argument("demand exceeds the ground set");
  for (int b : bids.budgets)
    if (b < 0) throw std::invalid_argument("negative budget");
  const bool dis = disjoint || model.disjoint_only();
  std::uint64_t count = 1;
  int left = model.ground_size();
  for (int b : bids.budgets) {
    count *= binomial(dis ? left : model.ground_size(), b);
    if (dis) left -= b;
    if (count > enumeration_cap)
      throw std::invalid_argument("optimum enumeration would exceed the size guard");
  }
  OptResult best;
  bool have = false;
  AllocationProfile current(model.player_count(), model.ground_size());
  enumerate_profiles(model, bids, dis, 0, current, [&](const AllocationProfile& p) {
    const Rational w = model.welfare(p);
    if (!have || w > best.welfare) {
      best.profile = p;
      best.welfare = w;
      have = true;
    }
  });
  return best;
}

DisjointBoundReport verify_disjoint_bound(const WelfareModel& model, const BidProfile& bids,
                                          int max_sequences, std::uint64_t rng_seed) {
  DisjointBoundReport rep;
  const int k = model.player_count();
  const auto anon = check_anonymity(model);
  rep.anonymity_ok = anon.pass;
  if (!rep.anonymity_ok) {
    rep.detail = "anonymity precondition violated: " + anon.detail;
    return rep;
  }
  const OptResult opt = brute_force_opt(model, bids, /*disjoint=*/true);
  rep.bound_ok = rep.stripped_opt_ok = rep.trace_chain_ok = true;
  rep.worst_ratio = Rational(0);

  std::vector<int> base;
  for (int i = 0; i < k; ++i) base.insert(base.end(), bids.budgets[i], i);
  std::sort(base.begin(), base.end());

  std::vector<std::vector<int>> sequences;
  std::vector<int> word = base;
  do {
    sequences.push_back(word);
  } while (std::next_permutation(word.begin(), word.end()));
  if (static_cast<int>(sequences.size()) > max_sequences) {
    std::mt19937_64 rng(rng_seed);
    std::shuffle(sequences.begin(), sequences.end(), rng);
    sequences.resize(max_sequences);
  }

  std::ostringstream why;
  for (const auto& turns : sequences) {
    TurnSequence seq{turns};
    const GreedyResult g = locally_greedy(model, seq, /*disjoint=*/true);
    ++rep.sequences_checked;

    if (opt.welfare > (k + 1) * g.welfare) {
      rep.bound_ok = false;
      why << "OPT " << rat_str(opt.welfare) << " > (k+1) * " << rat_str(g.welfare) << " for "
          << sequence_to_string(seq) << "; ";
    }
    if (g.welfare != 0) {
      const Rational ratio = opt.welfare / g.welfare;
      if (ratio > rep.worst_ratio) rep.worst_ratio = ratio;
    } else if (opt.welfare != 0) {
      rep.bound_ok = false;
      why << "zero greedy welfare against a positive optimum; ";
    }

    // O_i^0 strips every element the greedy gave to the other players
    AllocationProfile o0(k, model.ground_size());
    for (int i = 0; i < k; ++i) {
      Mask others = 0;
      for (int j = 0; j < k; ++j)
        if (j != i) others |= g.profile.sets[j];
      o0.sets[i] = opt.profile.sets[i] & ~others;
    }
    const Rational w_o0 = model.welfare(o0);
    if (w_o0 > 2 * g.welfare) {
      rep.stripped_opt_ok = false;
      why << "w(O^0) " << rat_str(w_o0) << " > 2 * " << rat_str(g.welfare) << " for "
          << sequence_to_string(seq) << "; ";
    }

    // chain re-evaluated from the recorded trace: the smallest marginal a
    // player accepted bounds what its optimum-only elements could add
    Rational budgeted_min_sum(0);
    for (int i = 0; i < k; ++i) {
      bool first = true;
      Rational lo(0);
      for (const auto& step : g.steps)
        if (step.player == i && (first || step.gain < lo)) {
          lo = step.gain;
          first = false;
        }
      budgeted_min_sum += lo * bids.budgets[i];
    }
    if (w_o0 > g.welfare + budgeted_min_sum || budgeted_min_sum > g.welfare) {
      rep.trace_chain_ok = false;
      why << "trace chain fails for " << sequence_to_string(seq) << ": w(O^0)=" << rat_str(w_o0)
          << ", w(I)=" << rat_str(g.welfare) << ", sum b_i*rho_min=" << rat_str(budgeted_min_sum)
          << "; ";
    }
  }
  rep.detail = why.str();
  return rep;
}

}  // namespace spread
