#include "limroots/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "limroots/error.hpp"

namespace limroots {

namespace {

constexpr std::string_view kLetters = "stuvwxyz";

std::string edge_context(std::size_t k, const nlohmann::json& e) {
  std::ostringstream os;
  os << "edge #" << k << " " << e.dump();
  return os.str();
}

}  // namespace

CoxeterGraph parse_graph_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::InvalidInput, std::string("graph JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rank") || !doc["rank"].is_number_integer()) {
    throw Error(ErrorKind::InvalidInput, "graph JSON needs an integer \"rank\"");
  }
  const int rank = doc["rank"].get<int>();
  if (rank < 1) throw Error(ErrorKind::InvalidInput, "graph rank must be at least 1");
  CoxeterGraph g(rank);
  if (!doc.contains("edges")) return g;
  if (!doc["edges"].is_array()) throw Error(ErrorKind::InvalidInput, "\"edges\" must be an array");

  std::set<std::pair<int, int>> seen;
  std::size_t k = 0;
  for (const auto& e : doc["edges"]) {
    const std::string where = edge_context(k++, e);
    if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("m") || !e["i"].is_number_integer() ||
        !e["j"].is_number_integer()) {
      throw Error(ErrorKind::InvalidInput, where + ": needs integer i, j and a label m");
    }
    const int i = e["i"].get<int>();
    const int j = e["j"].get<int>();
    if (!seen.insert({std::min(i, j), std::max(i, j)}).second) {
      throw Error(ErrorKind::InvalidInput, where + ": duplicate edge");
    }
    try {
      const auto& m = e["m"];
      if (m.is_string()) {
        const std::string s = m.get<std::string>();
        if (s != "inf" && s != "infinity" && s != "\xe2\x88\x9e") {
          throw Error(ErrorKind::InvalidInput, "label '" + s + "' is neither an integer nor \"inf\"");
        }
        std::optional<double> c;
        if (e.contains("c")) {
          if (!e["c"].is_number()) throw Error(ErrorKind::InvalidInput, "c must be a number");
          c = e["c"].get<double>();
        }
        g.set_infinite(i, j, c);
      } else if (m.is_number_integer()) {
        if (e.contains("c")) throw Error(ErrorKind::InvalidInput, "c is only allowed on infinite edges");
        g.set_label(i, j, m.get<int>());
      } else {
        throw Error(ErrorKind::InvalidInput, "label must be an integer or \"inf\"");
      }
    } catch (const Error& err) {
      throw Error(err.kind(), where + ": " + err.what());
    }
  }
  return g;
}

std::string graph_to_json(const CoxeterGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (int i = 0; i < g.rank(); ++i) {
    for (int j = i + 1; j < g.rank(); ++j) {
      if (g.is_infinite(i, j)) {
        nlohmann::json e{{"i", i}, {"j", j}, {"m", "inf"}};
        if (auto c = g.cparam(i, j)) e["c"] = *c;
        edges.push_back(e);
      } else if (g.label(i, j) != 2) {
        edges.push_back({{"i", i}, {"j", j}, {"m", g.label(i, j)}});
      }
    }
  }
  return nlohmann::json{{"rank", g.rank()}, {"edges", edges}}.dump();
}

std::optional<CoxeterGraph> builtin_graph(std::string_view name) {
  if (name == "a2") {
    CoxeterGraph g(2);
    g.set_label(0, 1, 3);
    return g;
  }
  if (name == "fig1a") {
    CoxeterGraph g(4);
    g.set_infinite(0, 1, 1.05);
    g.set_label(1, 2, 3);
    g.set_infinite(2, 3, 1.05);
    return g;
  }
  if (name == "fig1b") {
    CoxeterGraph g(4);
    g.set_label(0, 1, 5);
    g.set_label(0, 2, 5);
    g.set_infinite(0, 3, 1.0);
    g.set_label(1, 2, 3);
    g.set_label(1, 3, 3);
    g.set_label(2, 3, 3);
    return g;
  }
  if (name == "fig8") {
    CoxeterGraph g(5);
    g.set_infinite(0, 1, 2.0);
    g.set_label(1, 2, 3);
    g.set_label(2, 3, 3);
    g.set_infinite(3, 4, 2.0);
    return g;
  }
  if (name == "universal3" || name.starts_with("universal3:")) {
    double c = 1.0;
    if (name.size() > 10) {
      const std::string text(name.substr(11));
      std::size_t used = 0;
      try {
        c = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != text.size()) throw Error(ErrorKind::InvalidInput, "bad c-parameter in '" + std::string(name) + "'");
    }
    CoxeterGraph g(3);
    g.set_infinite(0, 1, c);
    g.set_infinite(0, 2, c);
    g.set_infinite(1, 2, c);
    return g;
  }
  return std::nullopt;
}

std::vector<std::string> builtin_graph_names() { return {"a2", "fig1a", "fig1b", "fig8", "universal3"}; }

CoxeterGraph load_graph(const std::string& name_or_path) {
  if (auto g = builtin_graph(name_or_path)) return *g;
  std::ifstream in(name_or_path);
  if (!in) throw Error(ErrorKind::InvalidInput, "'" + name_or_path + "' is neither a built-in graph nor a readable file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str());
}

std::string format_word(std::span<const Generator> word, int rank) {
  std::string out;
  if (rank <= static_cast<int>(kLetters.size())) {
    for (Generator s : word) out.push_back(kLetters[static_cast<std::size_t>(s)]);
    return out;
  }
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(word[i]);
  }
  return out;
}

Word parse_word(std::string_view text, int rank) {
  Word w;
  auto bad = [&](std::string_view tok, const std::string& why) {
    return Error(ErrorKind::InvalidInput, "word '" + std::string(text) + "': token '" + std::string(tok) + "' " + why);
  };
  auto push = [&](std::string_view tok, long v) {
    if (v < 0 || v >= rank) throw bad(tok, "is out of range for rank " + std::to_string(rank));
    w.push_back(static_cast<Generator>(v));
  };
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '.') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',' && text[j] != '.') ++j;
    const std::string_view tok = text.substr(i, j - i);
    i = j;
    auto all_digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (all_digits(tok)) {
      push(tok, std::stol(std::string(tok)));
    } else if (tok.size() > 1 && tok[0] == 's' && all_digits(tok.substr(1))) {
      push(tok, std::stol(std::string(tok.substr(1))) - 1);
    } else {
      for (char c : tok) {
        const auto pos = kLetters.find(c);
        if (pos == std::string_view::npos || rank > static_cast<int>(kLetters.size())) {
          throw bad(tok, "is not a generator name");
        }
        push(tok, static_cast<long>(pos));
      }
    }
  }
  return w;
}

LengthRange parse_range(std::string_view text) {
  auto number = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorKind::InvalidInput, "bad length range '" + std::string(text) + "'");
    }
    return v;
  };
  LengthRange r;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  } else {
    r.lo = r.hi = number(text);
  }
  if (r.lo < 0 || r.hi < r.lo) throw Error(ErrorKind::InvalidInput, "bad length range '" + std::string(text) + "'");
  return r;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line) + ": '" + s + "' is not a number");
}

}  // namespace

std::vector<PointRecord> to_records(const PointSet& set) {
  std::vector<PointRecord> out;
  out.reserve(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto& p = set.points()[i];
    const auto& pr = set.provenance()[i];
    out.push_back({p.coords, pr.kind, pr.source, pr.conjugator, p.bnorm});
  }
  return out;
}

void write_points_csv(std::ostream& os, const PointSet& set) {
  const int n = set.rank();
  for (int i = 0; i < n; ++i) os << 'x' << i + 1 << ',';
  os << "kind,source_word,conjugator_word,bnorm\n";
  for (const auto& r : to_records(set)) {
    for (int i = 0; i < n; ++i) os << fmt17(r.coords[i]) << ',';
    os << to_string(r.kind) << ',' << format_word(r.source, n) << ',' << format_word(r.conjugator, n) << ','
       << fmt17(r.bnorm) << '\n';
  }
}

std::vector<PointRecord> read_points_csv(std::istream& is, int* rank) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorKind::InvalidInput, "points CSV is empty");
  const auto header = split_csv(line);
  int n = 0;
  while (n < static_cast<int>(header.size()) && header[static_cast<std::size_t>(n)] == "x" + std::to_string(n + 1)) ++n;
  const std::vector<std::string> tail{"kind", "source_word", "conjugator_word", "bnorm"};
  if (n == 0 || header.size() != static_cast<std::size_t>(n) + tail.size() ||
      !std::equal(tail.begin(), tail.end(), header.begin() + n)) {
    throw Error(ErrorKind::InvalidInput, "points CSV header must be x1,...,xn,kind,source_word,conjugator_word,bnorm");
  }
  if (rank) *rank = n;
  std::vector<PointRecord> out;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv(line);
    if (f.size() != header.size()) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": expected " +
                                               std::to_string(header.size()) + " fields, got " + std::to_string(f.size()));
    }
    PointRecord r;
    r.coords.resize(n);
    for (int i = 0; i < n; ++i) r.coords[i] = parse_double(f[static_cast<std::size_t>(i)], lineno);
    const auto k = static_cast<std::size_t>(n);
    try {
      r.kind = point_kind_from_string(f[k]);
      r.source = parse_word(f[k + 1], n);
      r.conjugator = parse_word(f[k + 2], n);
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidInput, "line " + std::to_string(lineno) + ": " + e.what());
    }
    r.bnorm = parse_double(f[k + 3], lineno);
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json points_json(const PointSet& set, const nlohmann::json& metadata) {
  nlohmann::json pts = nlohmann::json::array();
  const int n = set.rank();
  for (const auto& r : to_records(set)) {
    pts.push_back({{"coords", std::vector<double>(r.coords.data(), r.coords.data() + r.coords.size())},
                   {"at_infinity", r.at_infinity()},
                   {"kind", to_string(r.kind)},
                   {"source_word", format_word(r.source, n)},
                   {"conjugator_word", format_word(r.conjugator, n)},
                   {"bnorm", r.bnorm}});
  }
  return {{"metadata", metadata}, {"points", pts}};
}

std::string format_root(const Root& r, int rank) {
  std::string simple = format_word(std::span<const Generator>(&r.simple, 1), rank);
  return format_word(r.word, rank) + "(" + simple + ")";
}

void write_intersections_csv(std::ostream& os, const std::vector<Root>& roots,
                             const std::vector<Codim2Intersection>& cis, int rank) {
  os << "root1_word,root2_word,pairing,kind";
  for (int i = 0; i < rank; ++i) os << ",x" << i + 1;
  os << '\n';
  for (const auto& ci : cis) {
    os << format_root(roots[ci.first], rank) << ',' << format_root(roots[ci.second], rank) << ',' << fmt17(ci.pairing)
       << ',' << to_string(ci.kind);
    for (int i = 0; i < rank; ++i) {
      os << ',';
      if (ci.point && !ci.point->at_infinity) os << fmt17(ci.point->coords[i]);
    }
    os << '\n';
  }
}

nlohmann::json weights_json(const GeometricSystem& sys, const std::vector<Weight>& weights) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : weights) {
    const ProjectivePoint p = to_chart(w.vector, sys.form());
    arr.push_back({{"index", w.index},
                   {"name", format_word(std::span<const Generator>(&w.index, 1), sys.rank())},
                   {"vector", std::vector<double>(w.vector.data(), w.vector.data() + w.vector.size())},
                   {"chart", std::vector<double>(p.coords.data(), p.coords.data() + p.coords.size())},
                   {"at_infinity", p.at_infinity},
                   {"bnorm", sys.bilinear(w.vector, w.vector)},
                   {"causal", to_string(causal_character(w.vector, sys.form()))}});
  }
  return {{"graph", nlohmann::json::parse(graph_to_json(sys.graph()))}, {"weights", arr}};
}

}  // namespace limroots
