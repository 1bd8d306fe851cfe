// Acceptance suite: prints one PASS/FAIL line per criterion and writes the
// scaling measurements to a markdown report.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mcgame/exact_dp.hpp"
#include "mcgame/game.hpp"
#include "mcgame/local_search.hpp"
#include "mcgame/oracle.hpp"
#include "mcgame/random_instances.hpp"
#include "mcgame/reduction.hpp"

using namespace mcgame;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& check) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", id, title.c_str(), out.detail.c_str(),
              seconds_since(start));
  std::fflush(stdout);
}

std::vector<Arena> corpus(std::uint64_t seed, std::size_t count, const RandomArenaParams& params) {
  std::mt19937_64 rng(seed);
  std::vector<Arena> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_arena(rng, params));
  return out;
}

// Sizes near the top of each range so most players have several paths.
RandomArenaParams desk(std::size_t max_players) {
  RandomArenaParams p;
  p.min_vertices = 5;
  p.max_vertices = 7;
  p.min_arcs = 8;
  p.max_arcs = 10;
  p.min_players = 2;
  p.max_players = max_players;
  return p;
}

// Criteria 1, 2 and 7 share this corpus: <= 7 vertices, <= 10 arcs, <= 4
// players, mixed fair-share and table costs with integer bases up to 6.
const std::vector<Arena>& main_corpus() {
  static const std::vector<Arena> arenas = corpus(20240601, 500, desk(4));
  return arenas;
}

std::string corpus_summary(const std::vector<Arena>& arenas) {
  std::size_t players = 0;
  std::size_t paths = 0;
  for (const Arena& a : arenas) {
    players += a.player_count();
    for (std::size_t i = 0; i < a.player_count(); ++i) {
      paths += enumerate_paths(a, a.root(), a.terminal(i), 100000).size();
    }
  }
  std::ostringstream os;
  os.precision(3);
  os << "avg " << static_cast<double>(players) / arenas.size() << " players, "
     << static_cast<double>(paths) / players << " paths each";
  return os.str();
}

Outcome dp_vs_oracle() {
  const auto start = Clock::now();
  std::size_t agree = 0;
  for (const Arena& a : main_corpus()) {
    if (min_potential(a).value == brute_min_potential(a).value) ++agree;
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << agree << "/" << main_corpus().size() << " arenas (" << corpus_summary(main_corpus())
     << ") agree exactly in " << elapsed << "s (budget 60s)";
  return {agree == main_corpus().size() && elapsed < 60.0, os.str()};
}

Outcome out_tree_minimum() {
  std::size_t agree = 0;
  for (const Arena& a : main_corpus()) {
    if (brute_min_tree_potential(a) == brute_min_potential(a).value) ++agree;
  }
  std::ostringstream os;
  os << agree << "/" << main_corpus().size() << " arenas: out-tree minimum equals unrestricted minimum";
  return {agree == main_corpus().size(), os.str()};
}

Outcome local_search_completeness() {
  const RandomArenaParams params = desk(5);
  std::mt19937_64 rng(77);
  std::size_t triples = 0;
  std::size_t agree = 0;
  std::size_t sound = 0;
  std::size_t improving = 0;
  for (const Arena& a : corpus(31337, 400, params)) {
    const auto s = random_profile(a, rng);
    const std::size_t k = uniform_int(rng, 1, std::min<std::size_t>(3, a.player_count()));
    const auto fast = improving_move(a, s, k);
    const auto slow = brute_improving_move(a, s, k);
    ++triples;
    if (fast.has_value() == slow.has_value()) ++agree;
    if (!fast) {
      ++sound;
      continue;
    }
    ++improving;
    if (potential(a, *fast) < potential(a, s) && hamming_distance(s, *fast) <= k) ++sound;
  }
  std::ostringstream os;
  os << triples << " triples (" << improving << " improvable): yes/no agree " << agree << ", sound " << sound;
  return {agree == triples && sound == triples && triples >= 100, os.str()};
}

Outcome exact_potential() {
  std::mt19937_64 rng(4242);
  const RandomArenaParams params = desk(4);
  std::size_t checked = 0;
  std::size_t exact = 0;
  while (checked < 2000) {
    const Arena a = random_arena(rng, params);
    const auto s = random_profile(a, rng);
    for (int rep = 0; rep < 5 && checked < 2000; ++rep) {
      const std::size_t i = uniform_int(rng, 0, a.player_count() - 1);
      const auto paths = enumerate_paths(a, a.root(), a.terminal(i), 100000);
      const Path& alt = paths[uniform_int(rng, 0, paths.size() - 1)];
      const auto t = s.with_path(a, i, alt);
      ++checked;
      if (potential(a, t) - potential(a, s) == player_cost(a, t, i) - player_cost(a, s, i)) ++exact;
    }
  }
  std::ostringstream os;
  os << exact << "/" << checked << " unilateral deviations satisfy the exact potential identity";
  return {exact == checked, os.str()};
}

Outcome nash_agreement() {
  std::mt19937_64 rng(99);
  const RandomArenaParams params = desk(5);
  std::size_t agree = 0;
  std::size_t nash = 0;
  std::size_t total = 0;
  for (const Arena& a : corpus(5150, 500, params)) {
    auto s = random_profile(a, rng);
    // Half the sample starts at an equilibrium so both sides are exercised.
    if (total % 2 == 1) s = best_response_dynamics(a, s, 10 * a.player_count() * a.vertex_count()).profile;
    const bool eq = is_nash(a, s);
    nash += eq;
    if (eq == !improving_move(a, s, 1).has_value()) ++agree;
    ++total;
  }
  std::ostringstream os;
  os << agree << "/" << total << " profiles agree (" << nash << " Nash)";
  return {agree == total, os.str()};
}

// Classes named a, b, c, ... with `per` vertices each; vertex 1 of every class
// forms the planted clique; `extra` adds non-clique edges.
ColouredGraph planted(std::size_t k, std::size_t per, const std::vector<std::pair<std::string, std::string>>& extra) {
  std::vector<std::vector<std::string>> classes(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::string letter(1, static_cast<char>('a' + c));
    for (std::size_t j = 1; j <= per; ++j) classes[c].push_back(letter + std::to_string(j));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t d = c + 1; d < k; ++d) edges.emplace_back(classes[c][0], classes[d][0]);
  }
  edges.insert(edges.end(), extra.begin(), extra.end());
  return ColouredGraph::create(classes, edges);
}

Outcome reduction_forward() {
  std::ostringstream os;
  bool pass = true;

  const ColouredGraph fixture = planted(3, 2, {{"a2", "b2"}, {"b2", "c2"}});
  const auto fx = generate(fixture);
  const bool fixture_ok = potential(fx.arena, fx.initial) == Rational(81) && fx.params.epsilon == Rational(2, 243) &&
                          fx.params.w_cost == Rational(174920, 11907) && fx.arena.player_count() == 12;
  pass = pass && fixture_ok;
  os << "k=3 fixture Phi=" << potential(fx.arena, fx.initial) << " eps=" << fx.params.epsilon
     << " W=" << fx.params.w_cost << (fixture_ok ? "" : " MISMATCH");

  struct Case {
    std::size_t k;
    ColouredGraph h;
  };
  const std::vector<Case> cases{
      {3, fixture},
      {3, planted(3, 3, {{"a2", "b3"}, {"b2", "c2"}, {"a3", "c3"}})},
      {4, planted(4, 2, {{"a2", "b2"}})},
      {4, planted(4, 3, {{"c2", "d3"}})},
  };
  for (const auto& c : cases) {
    const auto inst = generate(c.h);
    const auto clique = clique_witness(c.h);
    const Rational eps(static_cast<std::int64_t>(c.k - 1),
                       static_cast<std::int64_t>(c.k * c.k * c.k * c.k * c.k));
    bool ok = inst.label == Label::Yes && clique.has_value() && inst.params.epsilon == eps;
    if (ok) {
      const auto s = clique_to_profile(c.h, inst, *clique);
      ok = potential(inst.arena, s) == potential(inst.arena, inst.initial) - eps &&
           hamming_distance(inst.initial, s) == c.k * (c.k - 1);
    }
    const auto start = Clock::now();
    const auto move = ok ? improving_move(inst.arena, inst.initial, inst.params.radius) : std::nullopt;
    const double elapsed = seconds_since(start);
    const Rational drop = move ? potential(inst.arena, inst.initial) - potential(inst.arena, *move) : Rational{};
    ok = ok && move.has_value() && drop >= eps;
    pass = pass && ok;
    os << "; k=" << c.k << " |V(H)|=" << c.h.vertex_count() << " radius " << inst.params.radius << " decrease "
       << drop << (ok ? "" : " FAILED") << " in " << elapsed << "s";
  }
  return {pass, os.str()};
}

Outcome dynamics_converge() {
  std::mt19937_64 rng(8080);
  std::size_t converged = 0;
  std::size_t longest = 0;
  for (const Arena& a : main_corpus()) {
    const auto start = random_profile(a, rng);
    const std::size_t cap = 10 * a.player_count() * a.vertex_count();
    const auto result = best_response_dynamics(a, start, cap);
    bool ok = result.converged && result.trace.size() <= cap && is_nash(a, result.profile);
    Rational last = potential(a, start);
    for (const auto& step : result.trace) {
      ok = ok && step.potential_after < last;
      last = step.potential_after;
    }
    ok = ok && last == potential(a, result.profile);
    converged += ok;
    longest = std::max(longest, result.trace.size());
  }
  std::ostringstream os;
  os << converged << "/" << main_corpus().size() << " runs reach Nash with strictly decreasing potential (longest "
     << longest << " steps)";
  return {converged == main_corpus().size(), os.str()};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

Outcome scaling(const std::string& report_path) {
  std::ofstream md(report_path);
  md << "# Local search scaling\n\n"
     << "Median wall time of `improving_move` (best-improvement scan, one worker) over 7 random arenas per n\n"
     << "(8 vertices, 20 to 24 arcs, mixed costs). `C(n,k)*3^k` is the subset-times-split work estimate.\n\n"
     << "| n | k | median ms | C(n,k)*3^k | ns per unit |\n|---|---|---|---|---|\n";
  bool monotone = true;
  std::ostringstream os;
  for (std::size_t n : {8, 10, 12}) {
    RandomArenaParams params;
    params.min_vertices = 8;
    params.max_vertices = 8;
    params.min_arcs = 20;
    params.max_arcs = 24;
    params.min_players = n;
    params.max_players = n;
    std::mt19937_64 rng(1000 + n);
    std::vector<Arena> arenas;
    std::vector<StrategyProfile> profiles;
    for (int i = 0; i < 7; ++i) {
      arenas.push_back(random_arena(rng, params));
      profiles.push_back(random_profile(arenas.back(), rng));
    }
    double previous = 0;
    os << (n == 8 ? "" : "; ") << "n=" << n << ":";
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<double> times;
      for (std::size_t i = 0; i < arenas.size(); ++i) {
        const auto start = Clock::now();
        (void)improving_move(arenas[i], profiles[i], k);
        times.push_back(seconds_since(start));
      }
      const double med = median(times);
      const double work = binomial(n, k) * std::pow(3.0, static_cast<double>(k));
      md << "| " << n << " | " << k << " | " << med * 1e3 << " | " << work << " | " << med * 1e9 / work << " |\n";
      monotone = monotone && med > previous;
      previous = med;
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.1fms", med * 1e3);
      os << buf;
    }
  }
  md << "\nMedians are " << (monotone ? "" : "not ") << "monotone in k at every n.\n";
  os << " (report: " << report_path << ")";
  return {monotone, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string report_path = argc > 1 ? argv[1] : "benchmark_report.md";
  report(1, "DP-oracle equivalence", dp_vs_oracle);
  report(2, "out-tree minimum", out_tree_minimum);
  report(3, "local-search completeness", local_search_completeness);
  report(4, "exact potential", exact_potential);
  report(5, "Nash / 1-exchange agreement", nash_agreement);
  report(6, "reduction forward guarantee", reduction_forward);
  report(7, "best-response convergence", dynamics_converge);
  report(8, "scaling sanity", [&] { return scaling(report_path); });
  std::printf("%s: %d of 8 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures == 0 ? 0 : 1;
}
