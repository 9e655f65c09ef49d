#include "spread/json_io.hpp"

#include <fstream>
#include <set>

namespace spread {

using nlohmann::json;

namespace {

Rational rat_field(const json& j, const std::string& key) {
  const auto& v = j.at(key);
  if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
  if (v.is_string()) return rat_parse(v.get<std::string>());
  throw std::invalid_argument("field '" + key + "' must be an integer or a \"num/den\" string");
}

std::shared_ptr<WelfareModel> or_from_json(const json& j) {
  SpreadGraph g;
  g.player_count = j.at("players").get<int>();
  for (const auto& node : j.at("nodes"))
    g.nodes.push_back({node.at("id").get<std::string>(), rat_field(node, "weight")});
  for (const auto& edge : j.at("edges")) {
    const int from = g.node_index(edge.at("from").get<std::string>());
    const int to = g.node_index(edge.at("to").get<std::string>());
    if (from < 0 || to < 0)
      throw std::invalid_argument("edge references an undeclared node: " + edge.dump());
    g.edges.push_back({from, to, rat_field(edge, "p")});
  }
  if (j.contains("ground"))
    for (const auto& id : j.at("ground")) {
      const int v = g.node_index(id.get<std::string>());
      if (v < 0) throw std::invalid_argument("ground lists an undeclared node");
      g.ground.push_back(v);
    }
  std::string id = j.value("id", std::string("or_single_step"));
  return std::make_shared<OrModel>(std::move(g), id);
}

std::shared_ptr<WelfareModel> coverage_from_json(const json& j) {
  const int players = j.at("players").get<int>();
  std::vector<std::string> disks;
  for (const auto& d : j.at("disks")) disks.push_back(d.get<std::string>());
  const auto disk_index = [&](const std::string& name) {
    for (int i = 0; i < static_cast<int>(disks.size()); ++i)
      if (disks[i] == name) return i;
    throw std::invalid_argument("cell references an undeclared disk '" + name + "'");
  };
  std::vector<CoverageCell> cells;
  for (const auto& c : j.at("cells")) {
    CoverageCell cell;
    cell.value = rat_field(c, "value");
    for (const auto& d : c.at("disks")) cell.disks = mask_add(cell.disks, disk_index(d));
    cells.push_back(cell);
  }
  std::vector<Rational> weights;
  if (j.contains("player_weights"))
    for (const auto& w : j.at("player_weights")) {
      if (w.is_string())
        weights.push_back(rat_parse(w.get<std::string>()));
      else
        weights.push_back(Rational(static_cast<long>(w.get<long long>())));
    }
  else
    weights.assign(players, Rational(1));
  if (static_cast<int>(weights.size()) != players)
    throw std::invalid_argument("player_weights arity mismatch");
  return std::make_shared<CoverageInstance>(disks, cells, weights,
                                            j.value("id", std::string("disk_coverage")));
}

std::shared_ptr<WelfareModel> tabular_from_json(const json& j) {
  const int players = j.at("players").get<int>();
  std::vector<std::string> names;
  for (const auto& e : j.at("ground")) names.push_back(e.get<std::string>());
  auto model = std::make_shared<TabularModel>(players, names, j.value("disjoint", true),
                                              j.value("id", std::string("tabular")));
  const auto element_index = [&](const std::string& name) {
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
      if (names[i] == name) return i;
    throw std::invalid_argument("profile references an undeclared element '" + name + "'");
  };
  for (const auto& entry : j.at("entries")) {
    const auto& prof = entry.at("profile");
    if (static_cast<int>(prof.size()) != players)
      throw std::invalid_argument("tabular entry profile arity mismatch");
    std::vector<Mask> sets(players, 0);
    for (int i = 0; i < players; ++i)
      for (const auto& name : prof[i]) sets[i] = mask_add(sets[i], element_index(name));
    std::vector<Rational> utils;
    for (const auto& u : entry.at("utilities"))
      utils.push_back(u.is_string() ? rat_parse(u.get<std::string>())
                                    : Rational(static_cast<long>(u.get<long long>())));
    if (static_cast<int>(utils.size()) != players)
      throw std::invalid_argument("tabular entry utilities arity mismatch");
    model->set_entry(sets, std::move(utils));
  }
  model->require_complete();
  return model;
}

json set_names(const WelfareModel& m, Mask s) {
  json arr = json::array();
  for (int e : mask_elements(s)) arr.push_back(m.element_name(e));
  return arr;
}

}  // namespace

std::shared_ptr<WelfareModel> model_from_json(const json& j) {
  const std::string kind = j.value("model", std::string("tabular"));
  if (kind == "or_single_step") return or_from_json(j);
  if (kind == "disk_coverage") return coverage_from_json(j);
  if (kind == "tabular") return tabular_from_json(j);
  throw std::invalid_argument("unknown model kind '" + kind + "'");
}

std::shared_ptr<WelfareModel> load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("instance file '" + path + "': " + e.what());
  }
  try {
    return model_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument("instance file '" + path + "': " + e.what());
  }
}

std::shared_ptr<WelfareModel> load_instance(const std::string& path_or_fixture,
                                            const Rational& epsilon, const Rational& N) {
  static const std::set<std::string> fixtures = {
      "counter1", "counter2", "counter3", "adverse-competition", "extension-infeasibility"};
  if (fixtures.count(path_or_fixture)) return load_fixture(path_or_fixture, epsilon, N);
  return load_model_file(path_or_fixture);
}

json or_model_to_json(const OrModel& m) {
  const auto& g = m.graph();
  json nodes = json::array();
  for (const auto& n : g.nodes) nodes.push_back({{"id", n.id}, {"weight", rat_str(n.weight)}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(
        {{"from", g.nodes[e.from].id}, {"to", g.nodes[e.to].id}, {"p", rat_str(e.p)}});
  json ground = json::array();
  for (int v : g.ground) ground.push_back(g.nodes[v].id);
  return {{"model", "or_single_step"}, {"id", m.id()},          {"players", g.player_count},
          {"nodes", nodes},            {"edges", edges},        {"ground", ground}};
}

json coverage_to_json(const CoverageInstance& m) {
  json disks = json::array();
  for (int d = 0; d < m.ground_size(); ++d) disks.push_back(m.element_name(d));
  json cells = json::array();
  for (const auto& c : m.cells()) {
    json cd = json::array();
    for (int d : mask_elements(c.disks)) cd.push_back(m.element_name(d));
    cells.push_back({{"value", rat_str(c.value)}, {"disks", cd}});
  }
  json weights = json::array();
  for (const auto& w : m.player_weights()) weights.push_back(rat_str(w));
  return {{"model", "disk_coverage"}, {"id", m.id()},   {"players", m.player_count()},
          {"player_weights", weights}, {"disks", disks}, {"cells", cells}};
}

json tabular_to_json(const TabularModel& m) {
  json ground = json::array();
  for (int e = 0; e < m.ground_size(); ++e) ground.push_back(m.element_name(e));
  json entries = json::array();
  for (const auto& [sets, utils] : m.entries()) {
    json prof = json::array();
    for (Mask s : sets) prof.push_back(set_names(m, s));
    json us = json::array();
    for (const auto& u : utils) us.push_back(rat_str(u));
    entries.push_back({{"profile", prof}, {"utilities", us}});
  }
  return {{"model", "tabular"},       {"id", m.id()},      {"players", m.player_count()},
          {"ground", ground},         {"entries", entries}, {"disjoint", m.disjoint_only()}};
}

json model_to_json(const WelfareModel& m) {
  if (const auto* om = dynamic_cast<const OrModel*>(&m)) return or_model_to_json(*om);
  if (const auto* cm = dynamic_cast<const CoverageInstance*>(&m)) return coverage_to_json(*cm);
  if (const auto* tm = dynamic_cast<const TabularModel*>(&m)) return tabular_to_json(*tm);
  throw std::invalid_argument("model kind has no file representation");
}

json profile_to_json(const WelfareModel& m, const AllocationProfile& p) {
  json sets = json::array();
  for (Mask s : p.sets) sets.push_back(set_names(m, s));
  return sets;
}

AllocationProfile profile_from_json(const WelfareModel& m, const json& j) {
  AllocationProfile p(m.player_count(), m.ground_size());
  if (static_cast<int>(j.size()) != m.player_count())
    throw std::invalid_argument("profile arity mismatch");
  for (int i = 0; i < m.player_count(); ++i)
    for (const auto& name : j[i]) {
      const int e = m.element_index(name.get<std::string>());
      if (e < 0) throw std::invalid_argument("unknown element '" + name.get<std::string>() + "'");
      p.sets[i] = mask_add(p.sets[i], e);
    }
  return p;
}

json run_result_to_json(const WelfareModel& m, const RunResult& r) {
  json utils = json::array();
  for (const auto& u : r.utilities) utils.push_back(rat_str(u));
  json notes = json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  json out = {{"sets", profile_to_json(m, r.profile)},
              {"welfare", rat_str(r.welfare)},
              {"utilities", utils},
              {"sequence", sequence_to_string(r.sequence)},
              {"notes", notes}};
  if (!r.trace.empty()) {
    json trace = json::array();
    for (const auto& g : r.trace) trace.push_back(rat_str(g));
    out["trace"] = trace;
  }
  return out;
}

json table_to_json(const WelfareModel& m, const TwoPlayerTable& table) {
  json entries = json::array();
  for (int a = 0; a <= table.t_max(); ++a) {
    for (int b = 0; a + b <= table.t_max(); ++b) {
      const TableEntry& cell = table.at(a, b);
      json support = json::array();
      for (const auto& e : cell.entries)
        support.push_back({{"sequence", sequence_to_string(e.seq)},
                           {"prob", rat_str(e.prob)},
                           {"allocation", profile_to_json(m, e.alloc)},
                           {"uA", rat_str(e.ua)},
                           {"uB", rat_str(e.ub)}});
      entries.push_back({{"a", a},
                         {"b", b},
                         {"alpha", rat_str(cell.alpha)},
                         {"wA", rat_str(cell.wa)},
                         {"wB", rat_str(cell.wb)},
                         {"support", support}});
    }
  }
  return {{"t_max", table.t_max()}, {"disjoint", table.disjoint()}, {"entries", entries}};
}

json audit_report_to_json(const AuditReport& r) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses)
    witnesses.push_back({{"player", w.player},
                         {"bids", w.bids.budgets},
                         {"bids_after", w.bids_after.budgets},
                         {"utility_before", rat_str(w.u_before)},
                         {"utility_after", rat_str(w.u_after)}});
  return {{"mechanism", r.mechanism},
          {"model", r.model_id},
          {"budget_cap", r.budget_cap},
          {"verdict", r.pass ? "PASS" : "FAIL"},
          {"player_verdicts", r.player_verdicts},
          {"witnesses", witnesses},
          {"profiles_checked", r.profiles_checked},
          {"runtime_seconds", r.runtime_seconds}};
}

json approx_report_to_json(const ApproxReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"bids", row.bids.budgets},
                    {"mechanism_welfare", rat_str(row.mechanism_welfare)},
                    {"optimum", rat_str(row.optimum)},
                    {"bound_ok", row.bound_ok}});
  return {{"mechanism", r.mechanism},
          {"model", r.model_id},
          {"verdict", r.pass ? "PASS" : "FAIL"},
          {"bound", r.bound_label},
          {"rows", rows}};
}

}  // namespace spread
