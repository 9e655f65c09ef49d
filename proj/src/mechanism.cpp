#include "spread/mechanism.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "spread/checks.hpp"

namespace spread {
namespace {

Rational weighted_sum(const std::vector<SequenceEntry>& entries, bool player_b) {
  Rational acc(0);
  for (const auto& e : entries) acc += e.prob * (player_b ? e.ub : e.ua);
  return acc;
}

// one linear constraint coeff*alpha >= rhs intersected into [lo, hi]
bool apply_constraint(const Rational& coeff, const Rational& rhs, Rational& lo, Rational& hi) {
  if (coeff > 0) {
    const Rational bound = rhs / coeff;
    if (bound > lo) lo = bound;
  } else if (coeff < 0) {
    const Rational bound = rhs / coeff;
    if (bound < hi) hi = bound;
  } else if (rhs > 0) {
    return false;
  }
  return lo <= hi;
}

std::uint64_t multinomial_guarded(const BidProfile& bids, std::uint64_t cap) {
  std::uint64_t count = 1;
  int placed = 0;
  for (int b : bids.budgets) {
    placed += b;
    // C(placed, b), multiplicative form
    std::uint64_t c = 1;
    for (int i = 1; i <= b; ++i) c = c * (placed - b + i) / i;
    count *= c;
    if (count > cap)
      throw std::invalid_argument("assignment enumeration would exceed the cap; shrink the instance");
  }
  return count;
}

}  // namespace

std::vector<std::pair<int, Rational>> caratheodory_prune(const std::vector<WeightedPoint>& points) {
  if (points.empty()) throw std::invalid_argument("nothing to prune");
  Rational total(0);
  for (const auto& p : points) {
    if (p.weight < 0) throw std::invalid_argument("negative weight");
    total += p.weight;
  }
  if (total != 1) throw std::invalid_argument("weights must sum to one");
  Rational tx(0), ty(0);
  for (const auto& p : points) {
    tx += p.weight * p.x;
    ty += p.weight * p.y;
  }
  const int n = static_cast<int>(points.size());

  for (int i = 0; i < n; ++i)
    if (points[i].x == tx && points[i].y == ty) return {{i, Rational(1)}};

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const auto& a = points[i];
      const auto& b = points[j];
      if (a.x == b.x && a.y == b.y) continue;  // singleton pass already failed
      Rational t;
      if (a.x != b.x) {
        t = (tx - b.x) / (a.x - b.x);
        if (t * a.y + (1 - t) * b.y != ty) continue;
      } else {
        t = (ty - b.y) / (a.y - b.y);
        if (t * a.x + (1 - t) * b.x != tx) continue;
      }
      if (t < 0 || t > 1) continue;
      return {{i, t}, {j, 1 - t}};
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        const auto& a = points[i];
        const auto& b = points[j];
        const auto& c = points[l];
        const Rational det = (a.x - c.x) * (b.y - c.y) - (b.x - c.x) * (a.y - c.y);
        if (det == 0) continue;  // degenerate triangle, covered by the pair pass
        const Rational l1 = ((tx - c.x) * (b.y - c.y) - (b.x - c.x) * (ty - c.y)) / det;
        const Rational l2 = ((a.x - c.x) * (ty - c.y) - (tx - c.x) * (a.y - c.y)) / det;
        const Rational l3 = 1 - l1 - l2;
        if (l1 < 0 || l2 < 0 || l3 < 0) continue;
        return {{i, l1}, {j, l2}, {l, l3}};
      }
    }
  }
  throw std::logic_error("no 3-point convex decomposition found; the mean must lie in the hull");
}

TwoPlayerTable TwoPlayerTable::construct(const WelfareModel& model, int t_max, bool disjoint) {
  if (model.player_count() != 2)
    throw std::invalid_argument("the sequence table mechanism is defined for two players");
  if (!model.exact())
    throw std::invalid_argument("table construction needs an exact oracle; sampling noise would"
                                " leak into the distributions");
  if (t_max > model.ground_size())
    throw std::invalid_argument("total budget exceeds the ground set");

  TwoPlayerTable tab;
  tab.t_max_ = t_max;
  tab.disjoint_ = disjoint || model.disjoint_only();
  tab.m_.resize(t_max + 1);
  for (int a = 0; a <= t_max; ++a) tab.m_[a].resize(t_max - a + 1);

  const auto extend = [&](const std::vector<SequenceEntry>& parents, int player) {
    std::vector<SequenceEntry> out;
    out.reserve(parents.size());
    for (const auto& parent : parents) {
      SequenceEntry e;
      e.seq = parent.seq;
      e.seq.turns.push_back(player);
      e.prob = parent.prob;
      e.alloc = parent.alloc;
      locally_greedy_step(model, e.alloc, player, tab.disjoint_);
      const auto utils = model.utilities(e.alloc);
      e.ua = utils[0];
      e.ub = utils[1];
      out.push_back(std::move(e));
    }
    return out;
  };

  {
    TableEntry& base = tab.m_[0][0];
    SequenceEntry e;
    e.prob = 1;
    e.alloc = AllocationProfile(2, model.ground_size());
    const auto utils = model.utilities(e.alloc);
    e.ua = utils[0];
    e.ub = utils[1];
    base.entries.push_back(std::move(e));
    base.wa = base.entries[0].ua;
    base.wb = base.entries[0].ub;
    base.alpha = 1;
  }

  for (int t = 1; t <= t_max; ++t) {
    for (int a = 0; a <= t; ++a) {
      const int b = t - a;
      TableEntry& cell = tab.m_[a][b];
      if (b == 0) {
        cell.entries = extend(tab.m_[a - 1][0].entries, 0);
        cell.alpha = 1;
      } else if (a == 0) {
        cell.entries = extend(tab.m_[0][b - 1].entries, 1);
        cell.alpha = 0;
      } else {
        auto d1 = extend(tab.m_[a - 1][b].entries, 0);
        auto d2 = extend(tab.m_[a][b - 1].entries, 1);
        const Rational w1a = weighted_sum(d1, false), w1b = weighted_sum(d1, true);
        const Rational w0a = weighted_sum(d2, false), w0b = weighted_sum(d2, true);
        const Rational prev_a = tab.m_[a - 1][b].wa;   // lower bound for player A
        const Rational prev_b = tab.m_[a][b - 1].wb;   // lower bound for player B

        const auto fail = [&](const std::string& what) {
          std::ostringstream os;
          os << "table construction failed at (" << a << "," << b << "): " << what
             << " [W1A=" << rat_str(w1a) << " W0A=" << rat_str(w0a) << " W1B=" << rat_str(w1b)
             << " W0B=" << rat_str(w0b) << " wA(a-1,b)=" << rat_str(prev_a)
             << " wB(a,b-1)=" << rat_str(prev_b)
             << "]; the model violates a mechanism precondition";
          throw std::logic_error(os.str());
        };
        if (w1a < prev_a) fail("appending an A-turn decreased player A's expectation");
        if (w0a > tab.m_[a][b - 1].wa) fail("appending a B-turn increased player A's expectation");

        Rational lo(0), hi(1);
        if (!apply_constraint(w1a - w0a, prev_a - w0a, lo, hi) ||
            !apply_constraint(w1b - w0b, prev_b - w0b, lo, hi))
          fail("empty feasible mixing interval");
        // minimize player A's expectation over the feasible interval;
        // ties in direction resolve to the smaller mixing weight
        cell.alpha = (w1a > w0a) ? lo : (w1a < w0a ? hi : lo);

        for (auto& e : d1) e.prob *= cell.alpha;
        for (auto& e : d2) e.prob *= 1 - cell.alpha;
        for (auto& e : d1)
          if (e.prob != 0) cell.entries.push_back(std::move(e));
        for (auto& e : d2)
          if (e.prob != 0) cell.entries.push_back(std::move(e));
      }

      cell.wa = weighted_sum(cell.entries, false);
      cell.wb = weighted_sum(cell.entries, true);

      if (cell.entries.size() > 1) {
        std::vector<WeightedPoint> pts;
        pts.reserve(cell.entries.size());
        for (const auto& e : cell.entries) pts.push_back({e.ua, e.ub, e.prob});
        const auto support = caratheodory_prune(pts);
        std::vector<SequenceEntry> pruned;
        for (const auto& [idx, weight] : support) {
          SequenceEntry e = cell.entries[idx];
          e.prob = weight;
          pruned.push_back(std::move(e));
        }
        cell.entries = std::move(pruned);
      }

      Rational total(0);
      for (const auto& e : cell.entries) total += e.prob;
      if (total != 1 || weighted_sum(cell.entries, false) != cell.wa ||
          weighted_sum(cell.entries, true) != cell.wb)
        throw std::logic_error("pruning changed the expectation; this is a bug");
    }
  }
  return tab;
}

const TableEntry& TwoPlayerTable::at(int a, int b) const {
  if (a < 0 || b < 0 || a + b > t_max_) throw std::invalid_argument("table entry out of range");
  return m_[a][b];
}

TableCheckReport TwoPlayerTable::check_invariants(const WelfareModel& model) const {
  TableCheckReport rep;
  auto flag = [&](int a, int b, const std::string& what) {
    rep.ok = false;
    rep.violations.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "): " + what);
  };
  for (int a = 0; a <= t_max_; ++a) {
    for (int b = 0; a + b <= t_max_; ++b) {
      const TableEntry& cell = m_[a][b];
      ++rep.entries_checked;
      if (cell.entries.size() > 3) flag(a, b, "support larger than 3");
      Rational total(0);
      Rational wa(0), wb(0);
      for (const auto& e : cell.entries) {
        if (e.prob < 0 || e.prob > 1) flag(a, b, "probability outside [0,1]");
        total += e.prob;
        wa += e.prob * e.ua;
        wb += e.prob * e.ub;
        const BidProfile sb = e.seq.budgets(2);
        if (sb.budgets[0] != a || sb.budgets[1] != b) flag(a, b, "sequence multiset mismatch");
        const GreedyResult g = locally_greedy(model, e.seq, disjoint_);
        if (!(g.profile == e.alloc)) flag(a, b, "cached allocation does not replay");
        const auto utils = model.utilities(e.alloc);
        if (utils[0] != e.ua || utils[1] != e.ub) flag(a, b, "cached utilities stale");
      }
      if (total != 1) flag(a, b, "probabilities do not sum to 1");
      if (wa != cell.wa || wb != cell.wb) flag(a, b, "cached expectations stale");
      if (a >= 1 && cell.wa < m_[a - 1][b].wa) flag(a, b, "w^A not monotone in a");
      if (b >= 1 && cell.wb < m_[a][b - 1].wb) flag(a, b, "w^B not monotone in b");
      if (a >= 1 && a - 1 + b + 1 <= t_max_ && cell.wa < m_[a - 1][b + 1].wa)
        flag(a, b, "cross-monotonicity w^A(a,b) >= w^A(a-1,b+1) fails");
    }
  }
  return rep;
}

ScalarTable ScalarTable::construct(const WelfareModel& model, int t_max, bool verify_mei) {
  if (model.player_count() != 2)
    throw std::invalid_argument("the scalar table mechanism is defined for two players");
  if (!model.exact()) throw std::invalid_argument("scalar table needs an exact oracle");
  if (verify_mei) {
    const CheckResult mei = check_mei(model);
    if (!mei.pass)
      throw std::invalid_argument("scalar table requires welfare to depend only on the union: " +
                                  mei.detail);
  }

  ScalarTable tab;
  tab.t_max_ = t_max;
  const UniformGreedyResult ug = uniform_greedy(model, t_max);
  tab.order_ = ug.picks;
  tab.welfare_by_count_ = ug.welfare_by_count;
  tab.p_.assign(t_max + 1, std::vector<Rational>(t_max + 1, Rational(0)));
  tab.wa_ = tab.p_;
  tab.wb_ = tab.p_;
  tab.dist_.assign(t_max + 1, {});
  for (int a = 0; a <= t_max; ++a) tab.dist_[a].resize(t_max - a + 1);

  const auto eval = [&](const AllocationProfile& p) { return model.utilities(p); };

  for (int t = 0; t <= t_max; ++t) {
    for (int a = 0; a <= t; ++a) {
      const int b = t - a;
      auto& dist = tab.dist_[a][b];
      if (t == 0) {
        dist.push_back({AllocationProfile(2, model.ground_size()), Rational(1)});
      } else if (b == 0) {
        AllocationProfile p(2, model.ground_size());
        for (int j = 0; j < a; ++j) p.sets[0] = mask_add(p.sets[0], tab.order_[j]);
        dist.push_back({p, Rational(1)});
        tab.p_[a][0] = 1;
      } else if (a == 0) {
        AllocationProfile p(2, model.ground_size());
        for (int j = 0; j < b; ++j) p.sets[1] = mask_add(p.sets[1], tab.order_[j]);
        dist.push_back({p, Rational(1)});
        tab.p_[0][b] = 0;
      } else {
        const int u = tab.order_[t - 1];  // the element this entry assigns
        Rational w1a(0), w1b(0), w0a(0), w0b(0);
        for (const auto& [alloc, prob] : tab.dist_[a - 1][b]) {
          AllocationProfile p = alloc;
          p.sets[0] = mask_add(p.sets[0], u);
          const auto utils = eval(p);
          w1a += prob * utils[0];
          w1b += prob * utils[1];
        }
        for (const auto& [alloc, prob] : tab.dist_[a][b - 1]) {
          AllocationProfile p = alloc;
          p.sets[1] = mask_add(p.sets[1], u);
          const auto utils = eval(p);
          w0a += prob * utils[0];
          w0b += prob * utils[1];
        }
        const Rational delta = tab.welfare_by_count_[t] - tab.welfare_by_count_[t - 1];
        const Rational prev_a = tab.wa_[a - 1][b];
        const Rational side_a = tab.wa_[a][b - 1];
        if (w1a < prev_a + delta || w0a > side_a) {
          std::ostringstream os;
          os << "scalar table endpoint claim fails at (" << a << "," << b
             << "): W1A=" << rat_str(w1a) << " W0A=" << rat_str(w0a)
             << " wA(a-1,b)=" << rat_str(prev_a) << " delta=" << rat_str(delta)
             << "; the model violates a mechanism precondition";
          throw std::logic_error(os.str());
        }
        const Rational im_hi = side_a + delta;
        const Rational lo = std::max(prev_a, std::min(w1a, w0a));
        const Rational hi = std::min(im_hi, std::max(w1a, w0a));
        if (lo > hi)
          throw std::logic_error("scalar table: empty feasible interval at (" + std::to_string(a) +
                                 "," + std::to_string(b) + ")");
        const Rational target = lo;  // minimize player A's expectation
        Rational alpha;
        if (w1a == w0a) {
          alpha = 0;  // any mixing weight matches; take the smaller
          if (target != w0a) throw std::logic_error("degenerate interval mismatch");
        } else {
          alpha = (target - w0a) / (w1a - w0a);
        }
        if (alpha < 0 || alpha > 1) throw std::logic_error("mixing weight escaped [0,1]");
        tab.p_[a][b] = alpha;
        for (const auto& [alloc, prob] : tab.dist_[a - 1][b]) {
          if (prob * alpha == 0) continue;
          AllocationProfile p = alloc;
          p.sets[0] = mask_add(p.sets[0], u);
          dist.push_back({p, prob * alpha});
        }
        for (const auto& [alloc, prob] : tab.dist_[a][b - 1]) {
          if (prob * (1 - alpha) == 0) continue;
          AllocationProfile p = alloc;
          p.sets[1] = mask_add(p.sets[1], u);
          dist.push_back({p, prob * (1 - alpha)});
        }
      }
      Rational wa(0), wb(0);
      for (const auto& [alloc, prob] : dist) {
        const auto utils = eval(alloc);
        wa += prob * utils[0];
        wb += prob * utils[1];
      }
      tab.wa_[a][b] = wa;
      tab.wb_[a][b] = wb;
    }
  }
  return tab;
}

Rational ScalarTable::p(int a, int b) const {
  if (a < 0 || b < 0 || a + b > t_max_ || a + b == 0)
    throw std::invalid_argument("probability entry out of range");
  return p_[a][b];
}
Rational ScalarTable::wa(int a, int b) const {
  if (a < 0 || b < 0) return Rational(0);
  if (a + b > t_max_) throw std::invalid_argument("entry out of range");
  return wa_[a][b];
}
Rational ScalarTable::wb(int a, int b) const {
  if (a < 0 || b < 0) return Rational(0);
  if (a + b > t_max_) throw std::invalid_argument("entry out of range");
  return wb_[a][b];
}
Rational ScalarTable::delta(int t) const {
  if (t < 1 || t > t_max_) throw std::invalid_argument("delta out of range");
  return welfare_by_count_[t] - welfare_by_count_[t - 1];
}

const std::vector<std::pair<AllocationProfile, Rational>>& ScalarTable::distribution(int a,
                                                                                     int b) const {
  if (a < 0 || b < 0 || a + b > t_max_) throw std::invalid_argument("entry out of range");
  return dist_[a][b];
}

TableCheckReport ScalarTable::check_invariants() const {
  TableCheckReport rep;
  auto flag = [&](int a, int b, const std::string& what) {
    rep.ok = false;
    rep.violations.push_back("(" + std::to_string(a) + "," + std::to_string(b) + "): " + what);
  };
  for (int a = 0; a <= t_max_; ++a) {
    for (int b = 0; a + b <= t_max_; ++b) {
      ++rep.entries_checked;
      if (a + b >= 1 && (p_[a][b] < 0 || p_[a][b] > 1)) flag(a, b, "probability outside [0,1]");
      Rational total(0);
      for (const auto& [alloc, prob] : dist_[a][b]) {
        (void)alloc;
        total += prob;
      }
      if (total != 1) flag(a, b, "distribution does not sum to 1");
      if (a >= 1 && wa_[a][b] < wa_[a - 1][b]) flag(a, b, "w^A not monotone in a");
      if (b >= 1 && wb_[a][b] < wb_[a][b - 1]) flag(a, b, "w^B not monotone in b");
      if (a >= 1 && a + b < t_max_ && wa_[a][b] < wa_[a - 1][b + 1])
        flag(a, b, "cross-monotonicity fails");
      if (a >= 1 && b >= 1 && wa_[a][b] > wa_[a][b - 1] + delta(a + b))
        flag(a, b, "w^A exceeds w^A(a,b-1) + delta");
    }
  }
  return rep;
}

RunResult run_two_player(const WelfareModel& model, int a, int b, std::uint64_t rng_seed,
                         bool disjoint) {
  const TwoPlayerTable table = TwoPlayerTable::construct(model, a + b, disjoint);
  return run_two_player(table, model, a, b, rng_seed);
}

RunResult run_two_player(const TwoPlayerTable& table, const WelfareModel& model, int a, int b,
                         std::uint64_t rng_seed) {
  const TableEntry& cell = table.at(a, b);

  std::mt19937_64 eng(rng_seed);
  Rational draw(0);
  {
    mpz_class num(0);
    const std::uint64_t r = eng();
    num = static_cast<unsigned long>(r >> 32);
    num <<= 32;
    num += static_cast<unsigned long>(r & 0xFFFFFFFFULL);
    mpz_class den(1);
    den <<= 64;
    draw = Rational(num) / Rational(den);
  }
  const SequenceEntry* chosen = &cell.entries.back();
  Rational cum(0);
  for (const auto& e : cell.entries) {
    cum += e.prob;
    if (draw < cum) {
      chosen = &e;
      break;
    }
  }

  RunResult r;
  r.profile = chosen->alloc;
  r.utilities = model.utilities(r.profile);
  r.welfare = model.welfare(r.profile);
  r.sequence = chosen->seq;
  r.notes["mechanism"] = table.disjoint() ? "disjoint" : "two-player";
  r.notes["alpha"] = rat_str(cell.alpha);
  if (table.disjoint())
    r.notes["approximation_requires"] = "anonymous players ((k+1)-approximation)";
  return r;
}

RunResult run_uniform_random(const WelfareModel& model, const BidProfile& bids,
                             std::uint64_t rng_seed) {
  if (bids.players() != model.player_count())
    throw std::invalid_argument("bid profile arity mismatch");
  const int t = bids.total();
  const UniformGreedyResult ug = uniform_greedy(model, t);
  std::vector<int> word;
  for (int i = 0; i < bids.players(); ++i) word.insert(word.end(), bids.budgets[i], i);
  std::mt19937_64 eng(rng_seed);
  for (int i = t - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(word[i], word[pick(eng)]);
  }
  RunResult r;
  r.profile = AllocationProfile(model.player_count(), model.ground_size());
  for (int j = 0; j < t; ++j)
    r.profile.sets[word[j]] = mask_add(r.profile.sets[word[j]], ug.picks[j]);
  r.utilities = model.utilities(r.profile);
  r.welfare = model.welfare(r.profile);
  r.sequence = TurnSequence{word};
  r.notes["mechanism"] = "uniform";
  if (model.player_count() == 2)
    r.notes["warning"] = "the uniform random mechanism is not strategyproof for k=2";
  return r;
}

MechanismId mechanism_from_string(const std::string& name) {
  if (name == "two-player") return MechanismId::kTwoPlayerTable;
  if (name == "disjoint") return MechanismId::kTwoPlayerDisjoint;
  if (name == "uniform") return MechanismId::kUniformRandom;
  if (name == "dictatorship") return MechanismId::kDictatorship;
  if (name == "round-robin") return MechanismId::kRoundRobin;
  if (name == "largest-remaining") return MechanismId::kLargestRemaining;
  if (name == "smallest-remaining") return MechanismId::kSmallestRemaining;
  throw std::invalid_argument("unknown mechanism '" + name + "'");
}

std::string mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::kTwoPlayerTable: return "two-player";
    case MechanismId::kTwoPlayerDisjoint: return "disjoint";
    case MechanismId::kUniformRandom: return "uniform";
    case MechanismId::kDictatorship: return "dictatorship";
    case MechanismId::kRoundRobin: return "round-robin";
    case MechanismId::kLargestRemaining: return "largest-remaining";
    case MechanismId::kSmallestRemaining: return "smallest-remaining";
  }
  throw std::logic_error("unreachable");
}

TurnSequence ordering_for_policy(MechanismId policy, const BidProfile& bids) {
  const int k = bids.players();
  std::vector<int> remaining = bids.budgets;
  TurnSequence seq;
  const int total = bids.total();
  switch (policy) {
    case MechanismId::kDictatorship:
      for (int i = 0; i < k; ++i) seq.turns.insert(seq.turns.end(), remaining[i], i);
      break;
    case MechanismId::kRoundRobin: {
      int i = 0;
      while (seq.length() < total) {
        if (remaining[i] > 0) {
          seq.turns.push_back(i);
          --remaining[i];
        }
        i = (i + 1) % k;
      }
      break;
    }
    case MechanismId::kLargestRemaining:
      while (seq.length() < total) {
        int pick = 0;
        for (int i = 1; i < k; ++i)
          if (remaining[i] > remaining[pick]) pick = i;
        seq.turns.push_back(pick);
        --remaining[pick];
      }
      break;
    case MechanismId::kSmallestRemaining:
      while (seq.length() < total) {
        int pick = -1;
        for (int i = 0; i < k; ++i)
          if (remaining[i] > 0 && (pick < 0 || remaining[i] < remaining[pick])) pick = i;
        seq.turns.push_back(pick);
        --remaining[pick];
      }
      break;
    default:
      throw std::invalid_argument("not a deterministic ordering policy");
  }
  return seq;
}

std::vector<Rational> expected_utilities(MechanismId mech, const WelfareModel& model,
                                         const BidProfile& bids, std::uint64_t enum_cap) {
  if (bids.players() != model.player_count())
    throw std::invalid_argument("bid profile arity mismatch");
  if (bids.total() > model.ground_size())
    throw std::invalid_argument("demand exceeds the ground set");
  switch (mech) {
    case MechanismId::kTwoPlayerTable:
    case MechanismId::kTwoPlayerDisjoint: {
      const TwoPlayerTable table = TwoPlayerTable::construct(
          model, bids.total(), mech == MechanismId::kTwoPlayerDisjoint);
      const TableEntry& cell = table.at(bids.budgets[0], bids.budgets[1]);
      return {cell.wa, cell.wb};
    }
    case MechanismId::kUniformRandom: {
      const int t = bids.total();
      const int k = model.player_count();
      if (t == 0) return model.utilities(AllocationProfile(k, model.ground_size()));
      const std::uint64_t count = multinomial_guarded(bids, enum_cap);
      const UniformGreedyResult ug = uniform_greedy(model, t);
      std::vector<int> word;
      for (int i = 0; i < k; ++i) word.insert(word.end(), bids.budgets[i], i);
      std::sort(word.begin(), word.end());
      std::vector<Rational> sums(k, Rational(0));
      std::uint64_t seen = 0;
      do {
        AllocationProfile p(k, model.ground_size());
        for (int j = 0; j < t; ++j) p.sets[word[j]] = mask_add(p.sets[word[j]], ug.picks[j]);
        const auto utils = model.utilities(p);
        for (int i = 0; i < k; ++i) sums[i] += utils[i];
        ++seen;
      } while (std::next_permutation(word.begin(), word.end()));
      if (seen != count) throw std::logic_error("assignment enumeration miscounted");
      for (auto& s : sums) s /= static_cast<long>(count);
      return sums;
    }
    default: {
      // the ordering policies mirror the counterexample constructions,
      // which follow the disjoint-allocation convention
      const GreedyResult g = locally_greedy(model, ordering_for_policy(mech, bids), true);
      return model.utilities(g.profile);
    }
  }
}

std::vector<Rational> uniform_closed_form_utilities(const WelfareModel& model,
                                                    const BidProfile& bids) {
  const int t = bids.total();
  std::vector<Rational> out(bids.players(), Rational(0));
  if (t == 0) return out;
  const UniformGreedyResult ug = uniform_greedy(model, t);
  for (int i = 0; i < bids.players(); ++i)
    out[i] = ug.welfare_by_count[t] * bids.budgets[i] / t;
  return out;
}

}  // namespace spread
