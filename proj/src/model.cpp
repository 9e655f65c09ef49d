#include "spread/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace spread {

std::vector<int> mask_elements(Mask m) {
  std::vector<int> out;
  while (m) {
    int e = __builtin_ctzll(m);
    out.push_back(e);
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<int>& elements) {
  Mask m = 0;
  for (int e : elements) m = mask_add(m, e);
  return m;
}

Mask AllocationProfile::union_mask() const {
  Mask u = 0;
  for (Mask s : sets) u |= s;
  return u;
}

bool AllocationProfile::pairwise_disjoint() const {
  Mask seen = 0;
  for (Mask s : sets) {
    if (seen & s) return false;
    seen |= s;
  }
  return true;
}

int AllocationProfile::total_allocated() const {
  int t = 0;
  for (Mask s : sets) t += mask_size(s);
  return t;
}

int BidProfile::total() const { return std::accumulate(budgets.begin(), budgets.end(), 0); }

int WelfareModel::element_index(const std::string& name) const {
  for (int e = 0; e < ground_size(); ++e)
    if (element_name(e) == name) return e;
  return -1;
}

Rational WelfareModel::welfare(const AllocationProfile& p) const {
  const auto u = utilities(p);
  Rational f = 0;
  for (const auto& v : u) f += v;
  return f;
}

Rational WelfareModel::utility(int player, const AllocationProfile& p) const {
  return utilities(p).at(player);
}

void WelfareModel::require_valid(const AllocationProfile& p) const {
  if (p.players() != player_count())
    throw std::invalid_argument("profile has " + std::to_string(p.players()) + " sets, model has " +
                                std::to_string(player_count()) + " players");
  if (p.ground != ground_size())
    throw std::invalid_argument("profile ground size mismatch");
  const Mask legal = ground_size() >= 64 ? ~Mask{0} : (Mask{1} << ground_size()) - 1;
  for (Mask s : p.sets)
    if (s & ~legal) throw std::invalid_argument("profile references unknown element ids");
  if (disjoint_only() && !p.pairwise_disjoint())
    throw std::invalid_argument("model '" + id() + "' only defines pairwise-disjoint profiles");
}

TabularModel::TabularModel(int players, std::vector<std::string> element_names,
                           bool disjoint_domain, std::string id)
    : players_(players),
      names_(std::move(element_names)),
      disjoint_domain_(disjoint_domain),
      id_(std::move(id)) {
  if (players_ < 1) throw std::invalid_argument("tabular model needs at least one player");
  if (names_.size() > 20)
    throw std::invalid_argument("tabular ground set too large for an explicit table");
}

void TabularModel::set_entry(const std::vector<Mask>& sets, std::vector<Rational> utils) {
  if (static_cast<int>(sets.size()) != players_ || static_cast<int>(utils.size()) != players_)
    throw std::invalid_argument("tabular entry arity mismatch");
  entries_[sets] = std::move(utils);
}

bool TabularModel::has_entry(const std::vector<Mask>& sets) const {
  return entries_.count(sets) > 0;
}

void TabularModel::require_complete() const {
  std::string missing;
  for_each_disjoint_profile(ground_size(), players_, [&](const AllocationProfile& p) {
    if (!missing.empty() || entries_.count(p.sets)) return;
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < players_; ++i) {
      if (i) os << ",";
      os << "{";
      bool first = true;
      for (int e : mask_elements(p.sets[i])) {
        if (!first) os << " ";
        os << names_[e];
        first = false;
      }
      os << "}";
    }
    os << ")";
    missing = os.str();
  });
  if (!missing.empty())
    throw std::invalid_argument("tabular model '" + id_ + "' missing entry for profile " + missing);
}

std::vector<Rational> TabularModel::utilities(const AllocationProfile& p) const {
  require_valid(p);
  auto it = entries_.find(p.sets);
  if (it == entries_.end())
    throw std::invalid_argument("tabular model '" + id_ + "' has no entry for queried profile");
  return it->second;
}

void for_each_disjoint_profile(int ground, int players,
                               const std::function<void(const AllocationProfile&)>& fn) {
  // one owner digit per element: 0 = unallocated, i = player i-1
  std::vector<int> owner(ground, 0);
  AllocationProfile p(players, ground);
  while (true) {
    std::fill(p.sets.begin(), p.sets.end(), 0);
    for (int e = 0; e < ground; ++e)
      if (owner[e] > 0) p.sets[owner[e] - 1] = mask_add(p.sets[owner[e] - 1], e);
    fn(p);
    int i = 0;
    while (i < ground && ++owner[i] == players + 1) owner[i++] = 0;
    if (i == ground) break;
  }
}

std::vector<Mask> submasks_of_size(Mask pool, int size) {
  std::vector<int> elems = mask_elements(pool);
  std::vector<Mask> out;
  const int n = static_cast<int>(elems.size());
  if (size > n) return out;
  std::vector<int> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    Mask m = 0;
    for (int i : idx) m = mask_add(m, elems[i]);
    out.push_back(m);
    int i = size - 1;
    while (i >= 0 && idx[i] == n - size + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

}  // namespace spread
