#include "polytree/scoreio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "polytree/errors.hpp"

namespace polytree {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

/// Yields the non-blank lines of a text split into whitespace-separated tokens.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  std::optional<Line> next() {
    while (pos_ < text_.size()) {
      std::size_t end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view raw = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_number_;
      Line line{line_number_, tokenize(raw)};
      if (!line.tokens.empty()) return line;
    }
    return std::nullopt;
  }

  /// Like next(), but a missing line is an error.
  Line expect(const char* what) {
    auto line = next();
    if (!line) throw ParseError(line_number_ + 1, std::string("unexpected end of input, expected ") + what);
    return *line;
  }

  void expect_end() {
    if (auto line = next()) throw ParseError(line->number, "unexpected trailing content");
  }

 private:
  static std::vector<std::string_view> tokenize(std::string_view raw) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space(raw[i])) ++i;
      std::size_t j = i;
      while (j < raw.size() && !is_space(raw[j])) ++j;
      if (j > i) tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    return tokens;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_number_ = 0;
};

std::size_t parse_count(std::string_view token, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("expected non-negative integer ") + what + ", got '" +
                               std::string(token) + "'");
  }
  return value;
}

Score parse_score_token(std::string_view token, std::size_t line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "malformed score '" + std::string(token) + "'");
  }
  if (std::isnan(value) || value == std::numeric_limits<double>::infinity()) {
    throw ParseError(line, "score must be finite or -inf");
  }
  return value;
}

void expect_tokens(const Line& line, std::size_t count, const char* what) {
  if (line.tokens.size() != count) {
    throw ParseError(line.number, std::string("expected ") + what + " (" + std::to_string(count) +
                                      " tokens), got " + std::to_string(line.tokens.size()));
  }
}

}  // namespace

Instance parse_scores(std::string_view text) {
  LineReader reader(text);
  const Line header = reader.expect("variable count");
  expect_tokens(header, 1, "variable count");
  const std::size_t n = parse_count(header.tokens[0], header.number, "variable count");

  struct RawEntry {
    std::size_t line;
    Score score;
    std::vector<std::string_view> parents;
  };
  std::vector<std::string> names;
  std::vector<std::vector<RawEntry>> raw(n);
  std::unordered_map<std::string, NodeId> index;
  for (std::size_t v = 0; v < n; ++v) {
    const Line var = reader.expect("variable header 'name m'");
    expect_tokens(var, 2, "variable header 'name m'");
    std::string name(var.tokens[0]);
    if (!index.emplace(name, static_cast<NodeId>(v)).second) {
      throw ParseError(var.number, "duplicate variable name '" + name + "'");
    }
    names.push_back(std::move(name));
    const std::size_t m = parse_count(var.tokens[1], var.number, "parent set count");
    for (std::size_t j = 0; j < m; ++j) {
      const Line rec = reader.expect("parent set record 'score p parents...'");
      if (rec.tokens.size() < 2) {
        throw ParseError(rec.number, "expected 'score p parents...'");
      }
      const Score s = parse_score_token(rec.tokens[0], rec.number);
      const std::size_t p = parse_count(rec.tokens[1], rec.number, "parent count");
      if (rec.tokens.size() != 2 + p) {
        throw ParseError(rec.number, "parent count " + std::to_string(p) + " does not match " +
                                         std::to_string(rec.tokens.size() - 2) + " listed parents");
      }
      raw[v].push_back({rec.number, s, {rec.tokens.begin() + 2, rec.tokens.end()}});
    }
  }
  reader.expect_end();

  std::vector<std::vector<ParentSetEntry>> families(n);
  for (NodeId v = 0; v < n; ++v) {
    for (const RawEntry& e : raw[v]) {
      NodeSet parents;
      for (std::string_view pname : e.parents) {
        auto it = index.find(std::string(pname));
        if (it == index.end()) {
          throw ParseError(e.line, "unknown parent name '" + std::string(pname) + "'");
        }
        if (it->second == v) throw ParseError(e.line, "variable lists itself as a parent");
        if (parents.contains(it->second)) {
          throw ParseError(e.line, "parent '" + std::string(pname) + "' listed twice");
        }
        parents.insert(it->second);
      }
      families[v].push_back({std::move(parents), e.score});
    }
  }
  return Instance(std::move(families), std::move(names));
}

std::string format_score(Score s) {
  if (!is_finite_score(s)) return "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s);
  return std::string(buf, ptr);
}

std::string write_scores(const Instance& instance) {
  std::string out = std::to_string(instance.n()) + "\n";
  for (NodeId v = 0; v < instance.n(); ++v) {
    const auto fam = instance.family(v);
    out += instance.name(v) + " " + std::to_string(fam.size()) + "\n";
    for (const auto& e : fam) {
      out += format_score(e.score) + " " + std::to_string(e.parents.size());
      e.parents.for_each([&](NodeId u) { out += " " + instance.name(u); });
      out += "\n";
    }
  }
  return out;
}

GraphInput parse_graph(std::string_view text) {
  LineReader reader(text);
  const Line header = reader.expect("graph header 'n m'");
  expect_tokens(header, 2, "graph header 'n m'");
  GraphInput g;
  g.n = parse_count(header.tokens[0], header.number, "node count");
  const std::size_t m = parse_count(header.tokens[1], header.number, "edge count");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t i = 0; i < m; ++i) {
    const Line e = reader.expect("edge 'u v'");
    expect_tokens(e, 2, "edge 'u v'");
    const std::size_t u = parse_count(e.tokens[0], e.number, "node index");
    const std::size_t v = parse_count(e.tokens[1], e.number, "node index");
    if (u >= g.n || v >= g.n) throw ParseError(e.number, "node index out of range");
    if (u == v) throw ParseError(e.number, "self-loop on node " + std::to_string(u));
    const std::pair<std::size_t, std::size_t> key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) throw ParseError(e.number, "duplicate edge");
    g.edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  reader.expect_end();
  return g;
}

std::string write_graph(const GraphInput& graph) {
  std::string out = std::to_string(graph.n) + " " + std::to_string(graph.edges.size()) + "\n";
  for (const auto& [u, v] : graph.edges) {
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

SetFamilyInput parse_set_family(std::string_view text) {
  LineReader reader(text);
  const Line header = reader.expect("set family header \"n' m t\"");
  expect_tokens(header, 3, "set family header \"n' m t\"");
  SetFamilyInput f;
  f.universe = parse_count(header.tokens[0], header.number, "universe size");
  const std::size_t m = parse_count(header.tokens[1], header.number, "set count");
  f.t = parse_count(header.tokens[2], header.number, "budget t");
  if (f.t < 1 || f.t > f.universe) {
    throw ParseError(header.number, "budget t must satisfy 1 <= t <= universe size");
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Line s = reader.expect("set 'size e_1 ... e_size'");
    const std::size_t size = parse_count(s.tokens[0], s.number, "set size");
    if (size == 0) throw ParseError(s.number, "sets must be nonempty");
    expect_tokens(s, size + 1, "set 'size e_1 ... e_size'");
    NodeSet set;
    for (std::size_t j = 1; j <= size; ++j) {
      const std::size_t e = parse_count(s.tokens[j], s.number, "element");
      if (e >= f.universe) throw ParseError(s.number, "element out of range");
      if (set.contains(static_cast<NodeId>(e))) throw ParseError(s.number, "repeated element");
      set.insert(static_cast<NodeId>(e));
    }
    f.sets.push_back(std::move(set));
  }
  reader.expect_end();
  return f;
}

std::string write_set_family(const SetFamilyInput& family) {
  std::string out = std::to_string(family.universe) + " " + std::to_string(family.sets.size()) +
                    " " + std::to_string(family.t) + "\n";
  for (const auto& s : family.sets) {
    out += std::to_string(s.size());
    s.for_each([&](NodeId e) { out += " " + std::to_string(e); });
    out += "\n";
  }
  return out;
}

std::string write_result(const SolveResult& result, const std::vector<std::string>& names) {
  nlohmann::ordered_json record;
  if (is_finite_score(result.score)) {
    record["score"] = result.score;
  } else {
    record["score"] = "-inf";
  }
  auto arcs = nlohmann::ordered_json::array();
  for (const Arc& a : result.polytree.arcs()) {
    arcs.push_back({names.at(a.parent), names.at(a.child)});
  }
  record["arcs"] = std::move(arcs);
  record["algorithm"] = result.algorithm;
  record["n"] = result.polytree.n();
  record["states_visited"] = result.states_visited;
  record["runtime_ms"] = result.runtime_ms;
  if (result.ratio_bound) record["ratio_bound"] = *result.ratio_bound;
  return record.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

}  // namespace polytree
