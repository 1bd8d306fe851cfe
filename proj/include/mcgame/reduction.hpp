#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcgame/arena.hpp"
#include "mcgame/rational.hpp"

namespace mcgame {

// Undirected graph whose vertices are split into k independent colour classes.
class ColouredGraph {
 public:
  // Throws ValidationError on overlapping classes, unknown endpoints, duplicate
  // edges or an edge inside a class.
  static ColouredGraph create(std::vector<std::vector<std::string>> classes,
                              const std::vector<std::pair<std::string, std::string>>& edges);

  [[nodiscard]] std::size_t class_count() const { return classes_.size(); }
  [[nodiscard]] const std::vector<std::vector<std::string>>& classes() const { return classes_; }
  // Edges with the lower-class endpoint first, in input order.
  [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
  // Zero-based class index.
  [[nodiscard]] std::size_t class_of(const std::string& v) const;
  [[nodiscard]] bool adjacent(const std::string& a, const std::string& b) const;
  [[nodiscard]] std::size_t vertex_count() const { return colour_.size(); }

 private:
  std::vector<std::vector<std::string>> classes_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::unordered_map<std::string, std::size_t> colour_;
};

enum class Label { Yes, No, Unknown };

const char* to_string(Label label);

// Cost parameters of the construction for clique size k.
struct ReductionParams {
  std::size_t k;
  std::size_t radius;  // k(k-1)
  Rational r_cost;     // k^2, on every (r, bar:u)
  Rational epsilon;    // (k-1)/k^5
  Rational w_cost;     // on (r, rp)
};

// Throws ArgumentError when k < 2 or the resulting W < 1.
ReductionParams reduction_params(std::size_t k);

struct GeneratedInstance {
  Arena arena;
  StrategyProfile initial;
  ReductionParams params;
  Label label;
  std::optional<std::vector<std::string>> witness;
};

struct ReductionOptions {
  // Report No (instead of Unknown) when the exhaustive scan finds no clique.
  bool trust_no = false;
  std::uint64_t clique_scan_cap = 50'000'000;
};

// Vertex names: "r", "rp", "bar:<u>", "<u>:<j>" (j one-based class index),
// "x:<u>:<v>". One player per "<u>:<j>" vertex, initially routed via bar:<u>.
GeneratedInstance generate(const ColouredGraph& h, const ReductionOptions& options = {});

// A multicoloured k-clique (one vertex per class, in class order) if any exists.
std::optional<std::vector<std::string>> clique_witness(const ColouredGraph& h, std::uint64_t cap = 50'000'000);

// Reroutes the k(k-1) players of the clique's vertices through rp and the
// clique's edge gadgets. Throws ValidationError if `clique` is not a multicoloured clique.
StrategyProfile clique_to_profile(const ColouredGraph& h, const GeneratedInstance& instance,
                                  const std::vector<std::string>& clique);

}  // namespace mcgame
