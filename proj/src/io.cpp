#include "mcgame/io.hpp"

#include <algorithm>
#include <initializer_list>
#include <utility>

#include <json.hpp>

#include "mcgame/error.hpp"
#include "mcgame/game.hpp"

namespace mcgame {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     e.what());
  }
}

void require_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ParseError(where + ": unknown field '" + key + "'");
    }
  }
  for (const char* key : allowed) {
    if (!obj.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  }
}

const json& array_at(const json& obj, const char* key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  return v;
}

std::string string_of(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

Rational rational_of(const json& v, const std::string& where) {
  const std::string text = string_of(v, where);
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

CostFunction cost_of(const json& v, const std::string& where) {
  if (!v.is_object() || v.size() != 1) {
    throw ParseError(where + ": expected exactly one of {\"fair_share\": ..} or {\"table\": [..]}");
  }
  if (v.contains("fair_share")) return CostFunction::fair_share(rational_of(v.at("fair_share"), where + ".fair_share"));
  if (v.contains("table")) {
    const json& t = array_at(v, "table", where);
    std::vector<Rational> values;
    for (std::size_t i = 0; i < t.size(); ++i) {
      values.push_back(rational_of(t[i], where + ".table[" + std::to_string(i) + "]"));
    }
    return CostFunction::table(std::move(values));
  }
  throw ParseError(where + ": unknown cost kind '" + v.begin().key() + "'");
}

json cost_json(const CostFunction& cost) {
  if (const auto* f = cost.as_fair_share()) return json{{"fair_share", f->base.to_string()}};
  json values = json::array();
  for (const auto& r : cost.as_table()->values) values.push_back(r.to_string());
  return json{{"table", std::move(values)}};
}

json path_json(const Arena& arena, const Path& p) {
  json out = json::array();
  for (VertexId v : p) out.push_back(arena.name(v));
  return out;
}

json profile_json(const Arena& arena, const StrategyProfile& s) {
  json paths = json::array();
  for (const Path& p : s.paths()) paths.push_back(path_json(arena, p));
  return json{{"paths", std::move(paths)}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

Arena parse_arena(std::string_view text) {
  const json doc = parse_json(text);
  require_keys(doc, "arena", {"vertices", "root", "arcs", "players"});
  std::vector<std::string> vertices;
  const json& vs = array_at(doc, "vertices", "arena");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    vertices.push_back(string_of(vs[i], "vertices[" + std::to_string(i) + "]"));
  }
  const std::string root = string_of(doc.at("root"), "root");
  std::vector<ArcSpec> arcs;
  const json& as = array_at(doc, "arcs", "arena");
  for (std::size_t i = 0; i < as.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    require_keys(as[i], where, {"from", "to", "cost"});
    arcs.push_back(ArcSpec{string_of(as[i].at("from"), where + ".from"), string_of(as[i].at("to"), where + ".to"),
                           cost_of(as[i].at("cost"), where + ".cost")});
  }
  std::vector<std::string> players;
  const json& ps = array_at(doc, "players", "arena");
  for (std::size_t i = 0; i < ps.size(); ++i) players.push_back(string_of(ps[i], "players[" + std::to_string(i) + "]"));
  return Arena::create(std::move(vertices), root, std::move(arcs), players);
}

StrategyProfile parse_profile(std::string_view text, const Arena& arena) {
  const json doc = parse_json(text);
  require_keys(doc, "profile", {"paths"});
  const json& ps = array_at(doc, "paths", "profile");
  std::vector<Path> paths;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const std::string where = "paths[" + std::to_string(i) + "]";
    if (!ps[i].is_array()) throw ParseError(where + ": expected an array");
    Path p;
    for (std::size_t j = 0; j < ps[i].size(); ++j) {
      const std::string name = string_of(ps[i][j], where + "[" + std::to_string(j) + "]");
      auto v = arena.find_vertex(name);
      if (!v) throw ValidationError(where + ": unknown vertex '" + name + "'");
      p.push_back(*v);
    }
    paths.push_back(std::move(p));
  }
  return StrategyProfile::create(arena, std::move(paths));
}

ColouredGraph parse_coloured_graph(std::string_view text) {
  const json doc = parse_json(text);
  require_keys(doc, "graph", {"classes", "edges"});
  std::vector<std::vector<std::string>> classes;
  const json& cs = array_at(doc, "classes", "graph");
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string where = "classes[" + std::to_string(i) + "]";
    if (!cs[i].is_array()) throw ParseError(where + ": expected an array");
    auto& cls = classes.emplace_back();
    for (std::size_t j = 0; j < cs[i].size(); ++j) {
      cls.push_back(string_of(cs[i][j], where + "[" + std::to_string(j) + "]"));
    }
  }
  std::vector<std::pair<std::string, std::string>> edges;
  const json& es = array_at(doc, "edges", "graph");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    if (!es[i].is_array() || es[i].size() != 2) throw ParseError(where + ": expected a pair of vertex names");
    edges.emplace_back(string_of(es[i][0], where + "[0]"), string_of(es[i][1], where + "[1]"));
  }
  return ColouredGraph::create(std::move(classes), edges);
}

std::string to_json(const Arena& arena) {
  json arcs = json::array();
  for (const Arc& a : arena.arcs()) {
    arcs.push_back(json{{"from", arena.name(a.from)}, {"to", arena.name(a.to)}, {"cost", cost_json(a.cost)}});
  }
  json players = json::array();
  for (VertexId t : arena.terminals()) players.push_back(arena.name(t));
  return dump(json{{"vertices", arena.vertex_names()},
                   {"root", arena.name(arena.root())},
                   {"arcs", std::move(arcs)},
                   {"players", std::move(players)}});
}

std::string to_json(const Arena& arena, const StrategyProfile& s) { return dump(profile_json(arena, s)); }

std::string to_json(const ColouredGraph& h) {
  json edges = json::array();
  for (const auto& [u, v] : h.edges()) edges.push_back(json::array({u, v}));
  return dump(json{{"classes", h.classes()}, {"edges", std::move(edges)}});
}

std::string eval_report(const Arena& arena, const StrategyProfile& s) {
  json costs = json::array();
  for (std::size_t i = 0; i < s.player_count(); ++i) costs.push_back(player_cost(arena, s, i).to_string());
  const auto nash = check_nash(arena, s);
  json deviation = nullptr;
  if (!nash.is_nash) {
    deviation = json{{"player", *nash.player},
                     {"path", path_json(arena, nash.deviation->path)},
                     {"cost", nash.deviation->cost.to_string()}};
  }
  return dump(json{{"potential", potential(arena, s).to_string()},
                   {"total_cost", total_cost(arena, s).to_string()},
                   {"player_costs", std::move(costs)},
                   {"nash", nash.is_nash},
                   {"deviation", std::move(deviation)}});
}

std::string dynamics_report(const Arena& arena, const StrategyProfile& start, const DynamicsResult& result) {
  json steps = json::array();
  for (const auto& step : result.trace) {
    steps.push_back(json{{"player", step.player},
                         {"old_path", path_json(arena, step.old_path)},
                         {"new_path", path_json(arena, step.new_path)},
                         {"potential", step.potential_after.to_string()}});
  }
  return dump(json{{"converged", result.converged},
                   {"initial_potential", potential(arena, start).to_string()},
                   {"potential", potential(arena, result.profile).to_string()},
                   {"steps", std::move(steps)},
                   {"profile", profile_json(arena, result.profile)}});
}

std::string reduction_metadata(const GeneratedInstance& instance) {
  const auto& p = instance.params;
  json witness = nullptr;
  if (instance.witness) witness = *instance.witness;
  return dump(json{{"k", p.k},
                   {"radius", p.radius},
                   {"R", p.r_cost.to_string()},
                   {"W", p.w_cost.to_string()},
                   {"epsilon", p.epsilon.to_string()},
                   {"initial_potential", potential(instance.arena, instance.initial).to_string()},
                   {"label", to_string(instance.label)},
                   {"witness", std::move(witness)}});
}

}  // namespace mcgame
