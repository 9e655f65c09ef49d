#pragma once

// Hand-built tabular models used across the suites, plus a brute-force
// expected-utility oracle for the one-shot spread model that enumerates
// edge outcomes directly (independent of the per-node product form in the
// library).

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "spread/model.hpp"
#include "spread/or_model.hpp"

namespace spread::testing {

// Each player values only its own elements; value of element e is v[e].
inline std::shared_ptr<TabularModel> additive_model(int players,
                                                    const std::vector<Rational>& values) {
  std::vector<std::string> names;
  for (size_t e = 0; e < values.size(); ++e) names.push_back("x" + std::to_string(e + 1));
  auto m = std::make_shared<TabularModel>(players, names, true, "additive");
  for_each_disjoint_profile(static_cast<int>(values.size()), players,
                            [&](const AllocationProfile& p) {
                              std::vector<Rational> u(players, Rational(0));
                              for (int i = 0; i < players; ++i)
                                for (int e : mask_elements(p.sets[i])) u[i] += values[e];
                              m->set_entry(p.sets, u);
                            });
  m->require_complete();
  return m;
}

// f(a)=f(b)=1 but f({a,b})=5: the pair is worth more than its parts.
inline std::shared_ptr<TabularModel> superadditive_model() {
  auto m = std::make_shared<TabularModel>(2, std::vector<std::string>{"a", "b"}, true,
                                          "superadditive");
  for_each_disjoint_profile(2, 2, [&](const AllocationProfile& p) {
    std::vector<Rational> u(2, Rational(0));
    for (int i = 0; i < 2; ++i) u[i] = mask_size(p.sets[i]) == 2 ? Rational(5) : Rational(mask_size(p.sets[i]));
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Mechanism indifference holds but the players value contested splits
// asymmetrically (8/5 vs 7/5), so they are not anonymous.
inline std::shared_ptr<TabularModel> mei_without_anonymity_model() {
  auto m = std::make_shared<TabularModel>(2, std::vector<std::string>{"a", "b"}, true,
                                          "mei-without-anonymity");
  for_each_disjoint_profile(2, 2, [&](const AllocationProfile& p) {
    std::vector<Rational> u(2, Rational(0));
    const int sa = mask_size(p.sets[0]), sb = mask_size(p.sets[1]);
    if (sa == 1 && sb == 1) {
      u[0] = rat(8, 5);
      u[1] = rat(7, 5);
    } else {
      if (sa) u[0] = sa == 2 ? Rational(3) : Rational(2);
      if (sb) u[1] = sb == 2 ? Rational(3) : Rational(2);
    }
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Anonymous, but splitting {a,b} between the players loses welfare
// (3/4 + 3/4 < 2), so welfare is not union-determined.
inline std::shared_ptr<TabularModel> anonymity_without_mei_model() {
  auto m = std::make_shared<TabularModel>(2, std::vector<std::string>{"a", "b"}, true,
                                          "anonymity-without-mei");
  for_each_disjoint_profile(2, 2, [&](const AllocationProfile& p) {
    std::vector<Rational> u(2, Rational(0));
    const int sa = mask_size(p.sets[0]), sb = mask_size(p.sets[1]);
    if (sa == 1 && sb == 1) {
      u[0] = rat(3, 4);
      u[1] = rat(3, 4);
    } else {
      if (sa) u[0] = Rational(sa == 2 ? 2 : 1);
      if (sb) u[1] = Rational(sb == 2 ? 2 : 1);
    }
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Three anonymous players over three symmetric objects; the all-singleton
// profile pays 7/24 each, so neither MeI nor AgI hold. Values not pinned
// by the construction are completed to keep the sum submodular and the
// competition adverse.
inline std::shared_ptr<TabularModel> anonymous_three_player_model() {
  auto m = std::make_shared<TabularModel>(3, std::vector<std::string>{"a1", "a2", "a3"}, true,
                                          "anonymous-3p");
  const auto value = [](int own, int other1, int other2) -> Rational {
    if (own == 0) return Rational(0);
    const int lo = std::min(other1, other2), hi = std::max(other1, other2);
    if (own == 3) return Rational(1);
    if (own == 2) return rat(3, 4);  // both (2;0,0) and (2;1,0)
    // own == 1
    if (hi == 0) return rat(1, 2);
    if (hi == 2) return rat(1, 4);
    if (lo == 1) return rat(7, 24);  // (1;1,1)
    return rat(3, 8);                // (1;1,0)
  };
  for_each_disjoint_profile(3, 3, [&](const AllocationProfile& p) {
    std::vector<Rational> u(3);
    const int s0 = mask_size(p.sets[0]), s1 = mask_size(p.sets[1]), s2 = mask_size(p.sets[2]);
    u[0] = value(s0, s1, s2);
    u[1] = value(s1, s0, s2);
    u[2] = value(s2, s0, s1);
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Two elements with strong free-riding (utilities stay positive on empty
// own sets). Forces the (1,1) table entry into an interior mixing weight:
// the A-monotonicity constraint binds at alpha = 4/5 and the entry keeps
// a genuine two-sequence support.
inline std::shared_ptr<TabularModel> interior_mixing_model() {
  auto m = std::make_shared<TabularModel>(2, std::vector<std::string>{"x", "y"}, true,
                                          "interior-mixing");
  const auto entry = [&](Mask a, Mask b, long ua, long ub) {
    m->set_entry({a, b}, {Rational(ua), Rational(ub)});
  };
  const Mask X = mask_of({0}), Y = mask_of({1}), XY = mask_of({0, 1});
  entry(0, 0, 10, 10);
  entry(X, 0, 12, 9);
  entry(Y, 0, 11, 9);
  entry(0, X, 9, 11);
  entry(0, Y, 2, 18);
  entry(X, Y, 5, 16);
  entry(Y, X, 10, 10);
  entry(XY, 0, 13, 8);
  entry(0, XY, 2, 18);
  m->require_complete();
  return m;
}

// Disjoint two-item instance with asymmetric valuations: the locally
// greedy allocation serving player A first leaves only value 2 + eps on
// the table out of an optimum of N + 1.
inline std::shared_ptr<TabularModel> asymmetric_disjoint_model(const Rational& eps,
                                                               const Rational& N) {
  auto m = std::make_shared<TabularModel>(2, std::vector<std::string>{"i1", "i2"}, true,
                                          "asymmetric-disjoint");
  for_each_disjoint_profile(2, 2, [&](const AllocationProfile& p) {
    std::vector<Rational> u(2, Rational(0));
    if (mask_has(p.sets[0], 0)) u[0] += 1;
    if (mask_has(p.sets[0], 1)) u[0] += 1 + eps;
    if (mask_has(p.sets[1], 0)) u[1] += 1;
    if (mask_has(p.sets[1], 1)) u[1] += N;
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Modular utilities with negative externalities and free riding:
// f_i = base + sum of own(e) over the player's set - sum of drop(e) over
// the opponent's set. Own values dominate drops so total welfare stays
// non-decreasing; adverse competition and per-coordinate submodularity
// hold by construction. A harsher family than the spread/coverage models
// for the table mechanism (mixing weights land strictly inside (0,1)).
inline std::shared_ptr<TabularModel> modular_externality_model(int ground, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<long>> own(2, std::vector<long>(ground));
  std::vector<std::vector<long>> drop(2, std::vector<long>(ground));
  long base = 0;
  for (int e = 0; e < ground; ++e) {
    drop[0][e] = static_cast<long>(rng() % 8);
    drop[1][e] = static_cast<long>(rng() % 8);
    const long floor_own = std::max(drop[0][e], drop[1][e]);
    own[0][e] = floor_own + static_cast<long>(rng() % 6);
    own[1][e] = floor_own + static_cast<long>(rng() % 6);
    base += floor_own;
  }
  std::vector<std::string> names;
  for (int e = 0; e < ground; ++e) names.push_back("m" + std::to_string(e + 1));
  auto m = std::make_shared<TabularModel>(2, names, true, "mod-ext-" + std::to_string(seed));
  for_each_disjoint_profile(ground, 2, [&](const AllocationProfile& p) {
    std::vector<Rational> u(2, Rational(base));
    for (int i = 0; i < 2; ++i) {
      for (int e : mask_elements(p.sets[i])) u[i] += own[i][e];
      for (int e : mask_elements(p.sets[1 - i])) u[i] -= drop[i][e];
    }
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Expected utilities by enumerating every subset of live infection
// attempts, weighting by the product of edge probabilities. Exponential
// in the number of live edges; a test-only oracle.
inline std::vector<Rational> edge_enumeration_utility(const OrModel& m,
                                                      const AllocationProfile& p) {
  const auto& g = m.graph();
  const int k = m.player_count();
  std::vector<Rational> utils(k, Rational(0));

  const Mask seeded = p.union_mask();
  std::vector<char> node_seeded(g.nodes.size(), 0);
  for (int e : mask_elements(seeded)) node_seeded[m.ground_node(e)] = 1;
  for (int e : mask_elements(seeded)) {
    int owners = 0;
    for (int i = 0; i < k; ++i)
      if (mask_has(p.sets[i], e)) ++owners;
    for (int i = 0; i < k; ++i)
      if (mask_has(p.sets[i], e)) utils[i] += g.nodes[m.ground_node(e)].weight / owners;
  }

  struct Attempt {
    int player;
    int target;
    Rational p;
  };
  std::vector<Attempt> attempts;
  for (int i = 0; i < k; ++i)
    for (int e : mask_elements(p.sets[i]))
      for (const auto& edge : g.edges)
        if (edge.from == m.ground_node(e) && !node_seeded[edge.to])
          attempts.push_back({i, edge.to, edge.p});
  if (attempts.size() > 22) throw std::invalid_argument("edge oracle: too many live attempts");

  for (std::uint64_t outcome = 0; outcome < (std::uint64_t{1} << attempts.size()); ++outcome) {
    Rational prob(1);
    std::vector<Mask> reached(g.nodes.size(), 0);
    for (size_t a = 0; a < attempts.size(); ++a) {
      if (outcome >> a & 1) {
        prob *= attempts[a].p;
        reached[attempts[a].target] = mask_add(reached[attempts[a].target], attempts[a].player);
      } else {
        prob *= Rational(1) - attempts[a].p;
      }
    }
    if (prob == 0) continue;
    for (size_t v = 0; v < g.nodes.size(); ++v) {
      const int r = mask_size(reached[v]);
      if (!r) continue;
      const Rational share = prob * g.nodes[v].weight / r;
      for (int i : mask_elements(reached[v])) utils[i] += share;
    }
  }
  return utils;
}

}  // namespace spread::testing
