#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "spread/model.hpp"

namespace spread {

struct SpreadNode {
  std::string id;
  Rational weight;
};

struct SpreadEdge {
  int from = 0;
  int to = 0;
  Rational p;  // in [0,1]
};

// Directed graph of one-shot infection attempts. `ground` lists the node
// indices that may be allocated as seeds (the figures' u-nodes are spread
// targets, not seed candidates); empty means every node is allocatable.
struct SpreadGraph {
  std::vector<SpreadNode> nodes;
  std::vector<SpreadEdge> edges;
  int player_count = 2;
  std::vector<int> ground;

  int node_index(const std::string& id) const;  // -1 when unknown
  void validate() const;
};

// Probability that `node` ends up reached when `seed_nodes` are active:
// 1 for a seeded node, otherwise 1 - prod over incoming live edges of
// (1 - p).
Rational reach_probability(const SpreadGraph& g, const std::vector<int>& seed_nodes, int node);

// Single-step competitive spread. Every player's seeds attempt their
// out-edges independently; a contested non-seed node splits its weight
// uniformly among the players that reached it, and a seeded node belongs
// to its owners (weight split equally when several players seeded it).
class OrModel : public WelfareModel {
 public:
  explicit OrModel(SpreadGraph g, std::string id = "or_single_step");

  int player_count() const override { return graph_.player_count; }
  int ground_size() const override { return static_cast<int>(graph_.ground.size()); }
  std::string id() const override { return id_; }
  std::string element_name(int e) const override { return graph_.nodes[graph_.ground[e]].id; }

  std::vector<Rational> utilities(const AllocationProfile& p) const override;

  const SpreadGraph& graph() const { return graph_; }
  int ground_node(int e) const { return graph_.ground[e]; }

 private:
  SpreadGraph graph_;
  std::string id_;
  // per ground element: outgoing (target node, probability)
  std::vector<std::vector<std::pair<int, Rational>>> out_;
  std::vector<int> node_to_element_;  // -1 when the node is not allocatable
};

// Estimate-backed oracle over the same graph; rejected by the structural
// checkers (exact() == false). Utilities are sample means rounded through
// doubles, so only the greedy exploration path should consume them.
class SampledOrModel : public WelfareModel {
 public:
  SampledOrModel(std::shared_ptr<const OrModel> base, int samples, std::uint64_t rng_seed);

  int player_count() const override { return base_->player_count(); }
  int ground_size() const override { return base_->ground_size(); }
  bool exact() const override { return false; }
  std::string id() const override { return base_->id() + "/sampled"; }
  std::string element_name(int e) const override { return base_->element_name(e); }

  std::vector<Rational> utilities(const AllocationProfile& p) const override;

 private:
  std::shared_ptr<const OrModel> base_;
  int samples_;
  std::uint64_t seed_;
};

struct MonteCarloEstimate {
  std::vector<double> mean;
  std::vector<double> stderr_per_player;
  int samples = 0;
};

// Unbiased estimate of expected utilities, deterministic for a fixed seed.
// Each sample draws every live edge independently; contested nodes share
// their weight among the reaching players.
MonteCarloEstimate monte_carlo_utility(const OrModel& model, const AllocationProfile& p,
                                       int samples, std::uint64_t rng_seed);

// Bundled instances transcribed from the counterexample figures, plus the
// two hand-built tabular models. Names: counter1, counter2, counter3,
// adverse-competition, extension-infeasibility.
std::shared_ptr<WelfareModel> load_fixture(const std::string& name,
                                           const Rational& epsilon = rat(1, 100),
                                           const Rational& N = rat(100));
std::shared_ptr<OrModel> load_or_fixture(const std::string& name,
                                         const Rational& epsilon = rat(1, 100));

// Random one-shot spread instance on `seed_candidates` allocatable nodes
// and `targets` weighted target nodes. Always satisfies adverse
// competition and per-coordinate submodularity.
std::shared_ptr<OrModel> random_or_instance(int players, int seed_candidates, int targets,
                                            std::uint64_t rng_seed);

// Random MeI+AgI fixture: utilities depend only on (|own set|, |union|),
// splitting a concave non-decreasing welfare sequence proportionally.
std::shared_ptr<TabularModel> random_split_fixture(int players, int ground,
                                                   std::uint64_t rng_seed);

}  // namespace spread
