#include "spread/or_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace spread {
namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

int SpreadGraph::node_index(const std::string& node_id) const {
  for (int v = 0; v < static_cast<int>(nodes.size()); ++v)
    if (nodes[v].id == node_id) return v;
  return -1;
}

void SpreadGraph::validate() const {
  const int n = static_cast<int>(nodes.size());
  if (player_count < 1) throw std::invalid_argument("spread graph needs at least one player");
  std::set<std::string> ids;
  for (const auto& node : nodes) {
    if (!ids.insert(node.id).second)
      throw std::invalid_argument("duplicate node id '" + node.id + "'");
    if (node.weight < 0) throw std::invalid_argument("node '" + node.id + "' has negative weight");
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.p < 0 || e.p > 1)
      throw std::invalid_argument("edge probability outside [0,1]: " + rat_str(e.p));
    if (!seen.insert({e.from, e.to}).second)
      throw std::invalid_argument("duplicate edge " + nodes[e.from].id + " -> " + nodes[e.to].id);
  }
  for (int v : ground)
    if (v < 0 || v >= n) throw std::invalid_argument("ground node index out of range");
  if (static_cast<int>(ground.size()) > 64)
    throw std::invalid_argument("ground set larger than 64 elements");
}

Rational reach_probability(const SpreadGraph& g, const std::vector<int>& seed_nodes, int node) {
  if (node < 0 || node >= static_cast<int>(g.nodes.size()))
    throw std::invalid_argument("unknown node id");
  for (int s : seed_nodes)
    if (s < 0 || s >= static_cast<int>(g.nodes.size()))
      throw std::invalid_argument("unknown seed node id");
  if (std::find(seed_nodes.begin(), seed_nodes.end(), node) != seed_nodes.end())
    return Rational(1);
  Rational miss(1);
  for (const auto& e : g.edges)
    if (e.to == node &&
        std::find(seed_nodes.begin(), seed_nodes.end(), e.from) != seed_nodes.end())
      miss *= Rational(1) - e.p;
  return Rational(1) - miss;
}

OrModel::OrModel(SpreadGraph g, std::string id) : graph_(std::move(g)), id_(std::move(id)) {
  if (graph_.ground.empty()) {
    graph_.ground.resize(graph_.nodes.size());
    for (int v = 0; v < static_cast<int>(graph_.nodes.size()); ++v) graph_.ground[v] = v;
  }
  graph_.validate();
  out_.resize(graph_.ground.size());
  node_to_element_.assign(graph_.nodes.size(), -1);
  for (int e = 0; e < static_cast<int>(graph_.ground.size()); ++e)
    node_to_element_[graph_.ground[e]] = e;
  for (const auto& edge : graph_.edges) {
    int e = node_to_element_[edge.from];
    if (e >= 0) out_[e].push_back({edge.to, edge.p});
  }
}

std::vector<Rational> OrModel::utilities(const AllocationProfile& p) const {
  require_valid(p);
  const int k = player_count();
  std::vector<Rational> utils(k, Rational(0));

  // seeded nodes go to their owners, weight split when multiply seeded
  const Mask seeded = p.union_mask();
  for (int e : mask_elements(seeded)) {
    int owners = 0;
    for (int i = 0; i < k; ++i)
      if (mask_has(p.sets[i], e)) ++owners;
    const Rational share = graph_.nodes[graph_.ground[e]].weight / owners;
    for (int i = 0; i < k; ++i)
      if (mask_has(p.sets[i], e)) utils[i] += share;
  }

  // per-target one-shot reach probabilities, independent across players
  std::map<int, std::vector<Rational>> miss;  // target node -> per-player miss product
  for (int i = 0; i < k; ++i) {
    for (int e : mask_elements(p.sets[i])) {
      for (const auto& [target, prob] : out_[e]) {
        const int te = node_to_element_[target];
        if (te >= 0 && mask_has(seeded, te)) continue;  // owner keeps a seeded node
        auto it = miss.find(target);
        if (it == miss.end()) it = miss.emplace(target, std::vector<Rational>(k, Rational(1))).first;
        it->second[i] *= Rational(1) - prob;
      }
    }
  }
  for (const auto& [target, miss_by_player] : miss) {
    const Rational& weight = graph_.nodes[target].weight;
    if (weight == 0) continue;
    std::vector<int> support;
    std::vector<Rational> q(k);
    for (int i = 0; i < k; ++i) {
      q[i] = Rational(1) - miss_by_player[i];
      if (q[i] != 0) support.push_back(i);
    }
    // exact expectation of w / |reachers| over the 2^|support| patterns
    const int s = static_cast<int>(support.size());
    for (unsigned pattern = 1; pattern < (1u << s); ++pattern) {
      Rational prob(1);
      int reachers = 0;
      for (int b = 0; b < s; ++b) {
        if (pattern & (1u << b)) {
          prob *= q[support[b]];
          ++reachers;
        } else {
          prob *= miss_by_player[support[b]];
        }
      }
      const Rational share = prob * weight / reachers;
      for (int b = 0; b < s; ++b)
        if (pattern & (1u << b)) utils[support[b]] += share;
    }
  }
  return utils;
}

SampledOrModel::SampledOrModel(std::shared_ptr<const OrModel> base, int samples,
                               std::uint64_t rng_seed)
    : base_(std::move(base)), samples_(samples), seed_(rng_seed) {
  if (samples_ < 1) throw std::invalid_argument("sample count must be positive");
}

std::vector<Rational> SampledOrModel::utilities(const AllocationProfile& p) const {
  const auto est = monte_carlo_utility(*base_, p, samples_, seed_);
  std::vector<Rational> out;
  out.reserve(est.mean.size());
  for (double m : est.mean) {
    Rational q(m);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

MonteCarloEstimate monte_carlo_utility(const OrModel& model, const AllocationProfile& p,
                                       int samples, std::uint64_t rng_seed) {
  if (samples < 1) throw std::invalid_argument("sample count must be positive");
  const int k = model.player_count();
  const auto& g = model.graph();
  const int n_nodes = static_cast<int>(g.nodes.size());

  // deterministic per-profile preprocessing: live attempts and seed shares
  const Mask seeded = p.union_mask();
  std::vector<char> node_seeded(n_nodes, 0);
  for (int e : mask_elements(seeded)) node_seeded[g.ground[e]] = 1;
  std::vector<double> seed_part(k, 0.0);
  for (int e : mask_elements(seeded)) {
    int owners = 0;
    for (int i = 0; i < k; ++i)
      if (mask_has(p.sets[i], e)) ++owners;
    for (int i = 0; i < k; ++i)
      if (mask_has(p.sets[i], e))
        seed_part[i] += rat_double(g.nodes[g.ground[e]].weight) / owners;
  }
  struct Attempt {
    int player;
    int target;
    double p;
  };
  std::vector<Attempt> attempts;
  std::vector<int> targets;
  {
    std::set<int> target_set;
    for (int i = 0; i < k; ++i)
      for (int e : mask_elements(p.sets[i]))
        for (const auto& edge : g.edges)
          if (edge.from == model.ground_node(e) && !node_seeded[edge.to]) {
            attempts.push_back({i, edge.to, rat_double(edge.p)});
            target_set.insert(edge.to);
          }
    targets.assign(target_set.begin(), target_set.end());
  }
  std::vector<double> node_weight(n_nodes);
  for (int v = 0; v < n_nodes; ++v) node_weight[v] = rat_double(g.nodes[v].weight);

  std::vector<double> sum(k, 0.0), sumsq(k, 0.0);
  std::vector<char> reached(static_cast<std::size_t>(n_nodes) * k);
  std::vector<double> value(k);
  for (int s = 0; s < samples; ++s) {
    // independent substream per sample; safe to fan out across workers
    std::mt19937_64 eng(splitmix64(rng_seed + 0x632BE59BD9B4E019ULL * (s + 1)));
    std::fill(reached.begin(), reached.end(), 0);
    for (const auto& a : attempts)
      if (unit_double(eng) < a.p) reached[static_cast<std::size_t>(a.target) * k + a.player] = 1;
    std::fill(value.begin(), value.end(), 0.0);
    for (int v : targets) {
      int reachers = 0;
      for (int i = 0; i < k; ++i) reachers += reached[static_cast<std::size_t>(v) * k + i];
      if (!reachers) continue;
      const double share = node_weight[v] / reachers;
      for (int i = 0; i < k; ++i)
        if (reached[static_cast<std::size_t>(v) * k + i]) value[i] += share;
    }
    for (int i = 0; i < k; ++i) {
      sum[i] += value[i];
      sumsq[i] += value[i] * value[i];
    }
  }

  MonteCarloEstimate est;
  est.samples = samples;
  est.mean.resize(k);
  est.stderr_per_player.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    const double mean = sum[i] / samples;
    est.mean[i] = mean + seed_part[i];
    if (samples > 1) {
      double var = (sumsq[i] - samples * mean * mean) / (samples - 1);
      if (var < 0) var = 0;
      est.stderr_per_player[i] = std::sqrt(var / samples);
    }
  }
  return est;
}

namespace {

SpreadGraph counter_graph(int which, const Rational& eps) {
  if (eps <= 0 || eps >= rat(1, 8))
    throw std::invalid_argument("epsilon must lie in (0, 1/8), got " + rat_str(eps));
  SpreadGraph g;
  g.player_count = 2;
  auto node = [&](const std::string& id, const Rational& w) {
    g.nodes.push_back({id, w});
    return static_cast<int>(g.nodes.size()) - 1;
  };
  auto edge = [&](int from, int to, const Rational& p) { g.edges.push_back({from, to, p}); };
  if (which == 1) {
    int u1 = node("u1", 1), u2 = node("u2", 1), u3 = node("u3", 1), u4 = node("u4", 1);
    int c1 = node("c1", eps), c2 = node("c2", eps), c3 = node("c3", eps);
    edge(c1, u1, 1);
    edge(c1, u2, 1);
    edge(c2, u1, rat(9, 10));
    edge(c2, u2, rat(9, 10));
    edge(c2, u3, eps / 4);
    edge(c3, u4, rat(1, 2));
    g.ground = {c1, c2, c3};
  } else if (which == 2) {
    int u1 = node("u1", 1), u2 = node("u2", 1), u3 = node("u3", 1), u4 = node("u4", 1);
    int c1 = node("c1", eps), c2 = node("c2", eps), c3 = node("c3", eps), c4 = node("c4", eps);
    edge(c1, u1, 1);
    edge(c2, u1, 1 - 2 * eps);
    edge(c2, u2, eps);
    edge(c3, u3, 1);
    edge(c4, u4, 3 * eps);
    g.ground = {c1, c2, c3, c4};
  } else {
    int u1 = node("u1", 1), u2 = node("u2", 1);
    int c1 = node("c1", 0), c2 = node("c2", 0), c3 = node("c3", 0), c4 = node("c4", 0),
        c5 = node("c5", 0);
    edge(c1, u1, eps);
    edge(c2, u2, 1);
    edge(c3, u2, 1);
    edge(c4, u2, 1);
    edge(c5, u2, 1);
    g.ground = {c1, c2, c3, c4, c5};
  }
  return g;
}

// Two items; u1 is worth 1 to its owner and N to the competitor, u2 pays 1
// to both players once allocated to anyone. Violates adverse competition.
std::shared_ptr<TabularModel> adverse_competition_fixture(const Rational& N) {
  if (N <= 1) throw std::invalid_argument("adverse-competition fixture needs N > 1");
  auto m = std::make_shared<TabularModel>(2, std::vector<std::string>{"u1", "u2"}, true,
                                          "adverse-competition");
  for_each_disjoint_profile(2, 2, [&](const AllocationProfile& p) {
    std::vector<Rational> u(2, Rational(0));
    const bool u2_allocated = mask_has(p.union_mask(), 1);
    for (int i = 0; i < 2; ++i) {
      if (mask_has(p.sets[i], 0)) {
        u[i] += 1;
        u[1 - i] += N;
      }
      if (u2_allocated) u[i] += 1;
    }
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

// Three players, one valuable element c (utility 1 to whoever holds it)
// plus two worthless fillers.
std::shared_ptr<TabularModel> extension_infeasibility_fixture() {
  auto m = std::make_shared<TabularModel>(3, std::vector<std::string>{"c", "d1", "d2"}, true,
                                          "extension-infeasibility");
  for_each_disjoint_profile(3, 3, [&](const AllocationProfile& p) {
    std::vector<Rational> u(3, Rational(0));
    for (int i = 0; i < 3; ++i)
      if (mask_has(p.sets[i], 0)) u[i] = 1;
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

}  // namespace

std::shared_ptr<OrModel> load_or_fixture(const std::string& name, const Rational& epsilon) {
  if (name == "counter1") return std::make_shared<OrModel>(counter_graph(1, epsilon), "counter1");
  if (name == "counter2") return std::make_shared<OrModel>(counter_graph(2, epsilon), "counter2");
  if (name == "counter3") return std::make_shared<OrModel>(counter_graph(3, epsilon), "counter3");
  throw std::invalid_argument("unknown OR fixture '" + name + "'");
}

std::shared_ptr<WelfareModel> load_fixture(const std::string& name, const Rational& epsilon,
                                           const Rational& N) {
  if (name == "counter1" || name == "counter2" || name == "counter3")
    return load_or_fixture(name, epsilon);
  if (name == "adverse-competition") return adverse_competition_fixture(N);
  if (name == "extension-infeasibility") return extension_infeasibility_fixture();
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::shared_ptr<OrModel> random_or_instance(int players, int seed_candidates, int targets,
                                            std::uint64_t rng_seed) {
  std::mt19937_64 rng(splitmix64(rng_seed));
  SpreadGraph g;
  g.player_count = players;
  for (int t = 0; t < targets; ++t)
    g.nodes.push_back({"u" + std::to_string(t + 1), rat(1 + static_cast<long>(rng() % 6), 2)});
  for (int c = 0; c < seed_candidates; ++c) {
    g.nodes.push_back({"c" + std::to_string(c + 1), rat(static_cast<long>(rng() % 3), 25)});
    g.ground.push_back(targets + c);
  }
  for (int c = 0; c < seed_candidates; ++c)
    for (int t = 0; t < targets; ++t) {
      const auto roll = rng() % 10;
      if (roll < 6) {
        long num = 1 + static_cast<long>(rng() % 20);
        g.edges.push_back({targets + c, t, rat(num, 20)});
      }
    }
  return std::make_shared<OrModel>(std::move(g), "random-or-" + std::to_string(rng_seed));
}

std::shared_ptr<TabularModel> random_split_fixture(int players, int ground,
                                                   std::uint64_t rng_seed) {
  std::mt19937_64 rng(splitmix64(rng_seed));
  // concave non-decreasing welfare sequence from sorted marginal drops
  std::vector<long> deltas(ground);
  for (auto& d : deltas) d = static_cast<long>(rng() % 13);
  std::sort(deltas.rbegin(), deltas.rend());
  std::vector<Rational> w(ground + 1, Rational(0));
  for (int t = 1; t <= ground; ++t) w[t] = w[t - 1] + rat(deltas[t - 1], 12);

  std::vector<std::string> names;
  for (int e = 0; e < ground; ++e) names.push_back("e" + std::to_string(e + 1));
  auto m = std::make_shared<TabularModel>(players, names, true,
                                          "split-fixture-" + std::to_string(rng_seed));
  for_each_disjoint_profile(ground, players, [&](const AllocationProfile& p) {
    std::vector<Rational> u(players, Rational(0));
    const int t = mask_size(p.union_mask());
    if (t > 0)
      for (int i = 0; i < players; ++i) u[i] = w[t] * mask_size(p.sets[i]) / t;
    m->set_entry(p.sets, u);
  });
  m->require_complete();
  return m;
}

}  // namespace spread
