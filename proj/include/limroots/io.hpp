#pragma once

#include <cmath>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "limroots/arrangement.hpp"
#include "limroots/coxeter.hpp"
#include "limroots/limits.hpp"

namespace limroots {

/// Graph JSON: {"rank": n, "edges": [{"i": 0, "j": 1, "m": 3},
/// {"i": 0, "j": 1, "m": "inf", "c": 1.05}, ...]}. Absent edges have m = 2.
/// Errors name the offending edge by its position in the list.
CoxeterGraph parse_graph_json(const std::string& text);
/// Canonical form: edges sorted by (i, j), m = 2 edges omitted.
std::string graph_to_json(const CoxeterGraph& g);

/// Built-in graphs: "fig1a", "fig1b", "fig8", "a2", "universal3" and
/// "universal3:<c>".
std::optional<CoxeterGraph> builtin_graph(std::string_view name);
std::vector<std::string> builtin_graph_names();
/// A built-in name or a path to a graph JSON file.
CoxeterGraph load_graph(const std::string& name_or_path);

/// Words print as letters s, t, u, v, w, x, y, z when the rank is at most 8
/// ("stu"), otherwise as dot-separated indices ("0.1.2"). The identity is "".
std::string format_word(std::span<const Generator> word, int rank);
/// Accepts that output, whitespace/comma separated tokens, 0-based indices,
/// and 1-based "s1 s2" tokens.
Word parse_word(std::string_view text, int rank);

/// "a..b" or a single integer "a".
LengthRange parse_range(std::string_view text);

struct PointRecord {
  Vector coords;
  PointKind kind = PointKind::Orbit;
  Word source;
  Word conjugator;
  double bnorm = 0.0;

  bool at_infinity() const { return std::abs(coords.sum()) < 0.5; }
};

/// Header x1,...,xn,kind,source_word,conjugator_word,bnorm; numbers are
/// printed with 17 significant digits so they read back exactly.
void write_points_csv(std::ostream& os, const PointSet& set);
std::vector<PointRecord> read_points_csv(std::istream& is, int* rank = nullptr);
std::vector<PointRecord> to_records(const PointSet& set);

/// JSON mirror of the CSV with a metadata block.
nlohmann::json points_json(const PointSet& set, const nlohmann::json& metadata);

/// root1_word,root2_word,pairing,kind,x1..xn. Roots print as word(simple),
/// e.g. "st(u)" for s t (alpha_u). Coordinates are the chart point for rank 3
/// and left empty otherwise.
void write_intersections_csv(std::ostream& os, const std::vector<Root>& roots,
                             const std::vector<Codim2Intersection>& cis, int rank);
std::string format_root(const Root& r, int rank);

nlohmann::json weights_json(const GeometricSystem& sys, const std::vector<Weight>& weights);

}  // namespace limroots
