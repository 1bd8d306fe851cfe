// Command-line front end. Talks to the solvers exclusively through mcgame.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcgame.h"

namespace {

using nlohmann::json;

struct CliError {
  int code;
  std::string message;
};

struct ArenaDeleter {
  void operator()(mcg_arena* a) const { mcg_arena_free(a); }
};
struct ProfileDeleter {
  void operator()(mcg_profile* p) const { mcg_profile_free(p); }
};
using ArenaPtr = std::unique_ptr<mcg_arena, ArenaDeleter>;
using ProfilePtr = std::unique_ptr<mcg_profile, ProfileDeleter>;

void check(mcg_status status) {
  if (status != MCG_OK) throw CliError{status, mcg_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  mcg_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{MCG_ERR_USAGE, "cannot read '" + path + "'"};
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CliError{MCG_ERR_USAGE, "cannot write '" + path + "'"};
  out << text;
}

struct Common {
  std::string arena_path;
  std::string profile_path;
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 1;
  unsigned parallel = 0;
  bool first_found = false;
  bool trust_no = false;
};

void add_common(CLI::App* cmd, Common& c, bool needs_profile) {
  cmd->add_option("--arena", c.arena_path, "arena document")->required();
  if (needs_profile) cmd->add_option("--profile", c.profile_path, "profile document")->required();
  cmd->add_option("--out", c.out_path, "write the resulting profile document here");
  cmd->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--parallel", c.parallel, "worker threads");
}

mcg_options options_of(const Common& c) {
  mcg_options o;
  mcg_options_init(&o);
  if (c.parallel > 0) o.workers = c.parallel;
  o.first_found = c.first_found ? 1 : 0;
  o.trust_no = c.trust_no ? 1 : 0;
  return o;
}

ArenaPtr load_arena(const Common& c) {
  mcg_arena* a = nullptr;
  check(mcg_arena_parse(read_file(c.arena_path).c_str(), &a));
  return ArenaPtr(a);
}

ProfilePtr load_profile(const mcg_arena* arena, const Common& c) {
  mcg_profile* p = nullptr;
  check(mcg_profile_parse(arena, read_file(c.profile_path).c_str(), &p));
  return ProfilePtr(p);
}

std::string potential_of(const mcg_profile* p) {
  char* s = nullptr;
  check(mcg_potential(p, &s));
  return take(s);
}

json profile_json(const mcg_profile* p) {
  char* s = nullptr;
  check(mcg_profile_to_json(p, &s));
  return json::parse(take(s));
}

void emit(const json& doc, const std::string& format) {
  if (format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "profile") {
      std::cout << "profile:\n";
      std::size_t i = 0;
      for (const auto& path : value.at("paths")) {
        std::cout << "  player " << i++ << ": ";
        for (std::size_t j = 0; j < path.size(); ++j) std::cout << (j ? " -> " : "") << path[j].get<std::string>();
        std::cout << "\n";
      }
    } else {
      std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

void emit_profile_result(const mcg_profile* p, const Common& c, json extra = json::object()) {
  if (!c.out_path.empty()) {
    char* s = nullptr;
    check(mcg_profile_to_json(p, &s));
    write_file(c.out_path, take(s));
  }
  extra["potential"] = potential_of(p);
  extra["profile"] = profile_json(p);
  emit(extra, c.format);
}

void print_eval_text(const json& report) {
  std::cout << "potential   " << report.at("potential").get<std::string>() << "\n";
  std::cout << "total cost  " << report.at("total_cost").get<std::string>() << "\n";
  std::cout << "nash        " << (report.at("nash").get<bool>() ? "yes" : "no") << "\n";
  std::cout << "player  cost\n";
  std::size_t i = 0;
  for (const auto& c : report.at("player_costs")) std::cout << i++ << "       " << c.get<std::string>() << "\n";
  if (!report.at("deviation").is_null()) {
    const auto& d = report.at("deviation");
    std::cout << "player " << d.at("player").get<std::size_t>() << " can deviate to ";
    const char* sep = "";
    for (const auto& v : d.at("path")) {
      std::cout << sep << v.get<std::string>();
      sep = " -> ";
    }
    std::cout << " paying " << d.at("cost").get<std::string>() << "\n";
  }
}

int run_local(const Common& c, std::size_t k, bool oracle) {
  auto arena = load_arena(c);
  auto start = load_profile(arena.get(), c);
  const mcg_options o = options_of(c);
  mcg_profile* next = nullptr;
  const mcg_status status =
      oracle ? mcg_oracle_local(start.get(), k, &o, &next) : mcg_local_search(start.get(), k, &o, &next);
  if (status == MCG_NO_IMPROVEMENT) {
    emit(json{{"improved", false}, {"potential", potential_of(start.get())}}, c.format);
    return MCG_NO_IMPROVEMENT;
  }
  check(status);
  ProfilePtr result(next);
  std::size_t distance = 0;
  check(mcg_hamming_distance(start.get(), result.get(), &distance));
  const json extra{{"improved", true}, {"potential_before", potential_of(start.get())}, {"distance", distance}};
  emit_profile_result(result.get(), c, extra);
  return MCG_OK;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solvers for multicast cost-sharing games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mcg_version()));

  Common c;
  std::size_t k = 0;
  std::size_t max_steps = 1000;

  auto* eval = app.add_subcommand("eval", "potential, costs and Nash check of a profile");
  add_common(eval, c, true);

  auto* solve = app.add_subcommand("solve-min", "exact minimum of the potential");
  add_common(solve, c, false);

  auto* local = app.add_subcommand("local-search", "improving move within Hamming distance k (exit 3: none)");
  add_common(local, c, true);
  local->add_option("--k", k, "neighbourhood radius")->required();
  local->add_flag("--first-found", c.first_found, "stop at the first improving player subset");

  auto* brd = app.add_subcommand("brd", "best-response dynamics");
  add_common(brd, c, true);
  brd->add_option("--max-steps", max_steps, "step limit");

  auto* omin = app.add_subcommand("oracle-min", "brute-force minimum of the potential");
  add_common(omin, c, false);

  auto* olocal = app.add_subcommand("oracle-local", "brute-force improving move (exit 3: none)");
  add_common(olocal, c, true);
  olocal->add_option("--k", k, "neighbourhood radius")->required();

  std::string clique_file;
  auto* gen = app.add_subcommand("gen-reduction", "local-search instance from a coloured graph");
  gen->add_option("--clique-file", clique_file, "coloured graph document")->required();
  gen->add_option("--out", c.out_path, "prefix for <prefix>.arena.json, .profile.json, .meta.json");
  gen->add_option("--format", c.format)->check(CLI::IsMember({"json", "text"}));
  gen->add_flag("--trust-no", c.trust_no, "label instances without a clique as 'no'");

  std::size_t vertices = 7;
  std::size_t arcs = 10;
  std::size_t players = 4;
  std::string profile_out;
  auto* rnd = app.add_subcommand("gen-random", "random small arena");
  rnd->add_option("--seed", c.seed, "random seed");
  rnd->add_option("--vertices", vertices, "maximum vertex count");
  rnd->add_option("--arcs", arcs, "maximum arc count");
  rnd->add_option("--players", players, "maximum player count");
  rnd->add_option("--out", c.out_path, "write the arena document here");
  rnd->add_option("--profile-out", profile_out, "also write a random profile document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : MCG_ERR_USAGE;
  }

  try {
    if (*eval) {
      auto arena = load_arena(c);
      auto profile = load_profile(arena.get(), c);
      char* s = nullptr;
      check(mcg_eval(profile.get(), &s));
      const json report = json::parse(take(s));
      if (c.format == "text") {
        print_eval_text(report);
      } else {
        std::cout << report.dump(2) << "\n";
      }
      return 0;
    }
    if (*solve || *omin) {
      auto arena = load_arena(c);
      const mcg_options o = options_of(c);
      mcg_profile* p = nullptr;
      check(*solve ? mcg_solve_min(arena.get(), &o, &p) : mcg_oracle_min(arena.get(), &o, &p));
      ProfilePtr result(p);
      emit_profile_result(result.get(), c);
      return 0;
    }
    if (*local) return run_local(c, k, false);
    if (*olocal) return run_local(c, k, true);
    if (*brd) {
      auto arena = load_arena(c);
      auto start = load_profile(arena.get(), c);
      mcg_profile* p = nullptr;
      char* report = nullptr;
      check(mcg_best_response_dynamics(start.get(), max_steps, &p, &report));
      ProfilePtr result(p);
      const json doc = json::parse(take(report));
      if (!c.out_path.empty()) write_file(c.out_path, profile_json(result.get()).dump(2) + "\n");
      emit(doc, c.format);
      return 0;
    }
    if (*gen) {
      const mcg_options o = options_of(c);
      mcg_arena* a = nullptr;
      mcg_profile* p = nullptr;
      char* meta = nullptr;
      check(mcg_generate_reduction(read_file(clique_file).c_str(), &o, &a, &p, &meta));
      ArenaPtr arena(a);
      ProfilePtr initial(p);
      const std::string metadata = take(meta);
      char* arena_text = nullptr;
      check(mcg_arena_to_json(arena.get(), &arena_text));
      char* profile_text = nullptr;
      check(mcg_profile_to_json(initial.get(), &profile_text));
      const std::string arena_doc = take(arena_text);
      const std::string profile_doc = take(profile_text);
      if (!c.out_path.empty()) {
        write_file(c.out_path + ".arena.json", arena_doc);
        write_file(c.out_path + ".profile.json", profile_doc);
        write_file(c.out_path + ".meta.json", metadata);
        emit(json::parse(metadata), c.format);
      } else {
        const json bundle{
            {"arena", json::parse(arena_doc)}, {"profile", json::parse(profile_doc)}, {"metadata", json::parse(metadata)}};
        emit(bundle, "json");
      }
      return 0;
    }
    if (*rnd) {
      mcg_arena* a = nullptr;
      check(mcg_arena_random(c.seed, vertices, arcs, players, &a));
      ArenaPtr arena(a);
      char* text = nullptr;
      check(mcg_arena_to_json(arena.get(), &text));
      const std::string doc = take(text);
      if (!profile_out.empty()) {
        mcg_profile* p = nullptr;
        check(mcg_profile_random(arena.get(), c.seed + 1, &p));
        ProfilePtr profile(p);
        write_file(profile_out, profile_json(profile.get()).dump(2) + "\n");
      }
      if (c.out_path.empty()) {
        std::cout << doc;
      } else {
        write_file(c.out_path, doc);
      }
      return 0;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return MCG_ERR_INTERNAL;
  }
  return MCG_ERR_USAGE;
}
