#pragma once

#include <string>
#include <string_view>

#include "mcgame/arena.hpp"
#include "mcgame/local_search.hpp"
#include "mcgame/reduction.hpp"

namespace mcgame {

// Arena document:
//   {"vertices": [..], "root": "r", "players": [terminal, ..],
//    "arcs": [{"from": "a", "to": "b", "cost": {"fair_share": "3/2"} | {"table": ["4", "2"]}}, ..]}
// Unknown keys are rejected. Rationals are strings ("p/q" or an integer).
// Throws ParseError (syntax, with line:column or field path) or ValidationError.
Arena parse_arena(std::string_view text);

// Profile document: {"paths": [[vertex, ..], ..]}, index-aligned with the arena's players.
StrategyProfile parse_profile(std::string_view text, const Arena& arena);

// Coloured graph document: {"classes": [[v, ..], ..], "edges": [[u, v], ..]}.
ColouredGraph parse_coloured_graph(std::string_view text);

// Canonical serializations: sorted keys, two-space indent, trailing newline.
std::string to_json(const Arena& arena);
std::string to_json(const Arena& arena, const StrategyProfile& s);
std::string to_json(const ColouredGraph& h);

// Result documents.
std::string eval_report(const Arena& arena, const StrategyProfile& s);
std::string dynamics_report(const Arena& arena, const StrategyProfile& start, const DynamicsResult& result);
std::string reduction_metadata(const GeneratedInstance& instance);

}  // namespace mcgame
