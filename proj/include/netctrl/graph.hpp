#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netctrl/errors.hpp"
#include "netctrl/rat_matrix.hpp"

namespace netctrl {

/// Directed edge from -> to with positive weight. Node ids are 0-based here;
/// files and reports use 1-based ids.
struct Edge {
  std::size_t from;
  std::size_t to;
  Rational weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed weighted graph with leader and target sets.
///
/// Invariants (checked on construction): no self-loops, no duplicate
/// (from, to) pairs, strictly positive weights, nonempty leader and target
/// lists without repeats, all ids below n. Edges are stored sorted by
/// (from, to). A leader may also be a target.
class Graph {
 public:
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<std::size_t> leaders,
        std::vector<std::size_t> targets)
      : n_(n), edges_(std::move(edges)), leaders_(std::move(leaders)), targets_(std::move(targets)) {
    if (n_ == 0) throw GraphError("graph must have at least one node");
    check_id_list(leaders_, "leader");
    check_id_list(targets_, "target");
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return std::pair(a.from, a.to) < std::pair(b.from, b.to); });
    for (std::size_t k = 0; k < edges_.size(); ++k) {
      const Edge& e = edges_[k];
      if (e.from >= n_ || e.to >= n_)
        throw GraphError("edge " + std::to_string(e.from + 1) + " -> " + std::to_string(e.to + 1) +
                         " references a node outside 1.." + std::to_string(n_));
      if (e.from == e.to) throw GraphError("self-loop on node " + std::to_string(e.from + 1));
      if (e.weight <= 0)
        throw GraphError("edge " + std::to_string(e.from + 1) + " -> " + std::to_string(e.to + 1) +
                         " has non-positive weight");
      if (k > 0 && edges_[k - 1].from == e.from && edges_[k - 1].to == e.to)
        throw GraphError("duplicate edge " + std::to_string(e.from + 1) + " -> " +
                         std::to_string(e.to + 1));
    }
    is_leader_.assign(n_, false);
    for (std::size_t v : leaders_) is_leader_[v] = true;
    is_target_.assign(n_, false);
    for (std::size_t v : targets_) is_target_[v] = true;
  }

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& leaders() const { return leaders_; }
  const std::vector<std::size_t>& targets() const { return targets_; }
  bool is_leader(std::size_t v) const { return is_leader_[v]; }
  bool is_target(std::size_t v) const { return is_target_[v]; }

  std::vector<std::size_t> followers() const {
    std::vector<std::size_t> f;
    for (std::size_t v = 0; v < n_; ++v)
      if (!is_leader_[v]) f.push_back(v);
    return f;
  }

  /// Successor lists (from -> to).
  std::vector<std::vector<std::size_t>> successors() const {
    std::vector<std::vector<std::size_t>> s(n_);
    for (const Edge& e : edges_) s[e.from].push_back(e.to);
    return s;
  }

  /// Same topology and weights, different leader/target selection.
  Graph with_roles(std::vector<std::size_t> leaders, std::vector<std::size_t> targets) const {
    return Graph(n_, edges_, std::move(leaders), std::move(targets));
  }
  Graph with_targets(std::vector<std::size_t> targets) const { return with_roles(leaders_, std::move(targets)); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.leaders_ == b.leaders_ && a.targets_ == b.targets_;
  }

 private:
  void check_id_list(const std::vector<std::size_t>& ids, const char* what) const {
    if (ids.empty()) throw GraphError(std::string(what) + " set must be nonempty");
    std::vector<bool> seen(n_, false);
    for (std::size_t v : ids) {
      if (v >= n_)
        throw GraphError(std::string(what) + " " + std::to_string(v + 1) + " outside 1.." +
                         std::to_string(n_));
      if (seen[v]) throw GraphError(std::string("repeated ") + what + " " + std::to_string(v + 1));
      seen[v] = true;
    }
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> leaders_;
  std::vector<std::size_t> targets_;
  std::vector<bool> is_leader_;
  std::vector<bool> is_target_;
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    out.push_back({line.substr(i, j - i), i + 1});
    i = j;
  }
  return out;
}

inline std::size_t parse_count(const Token& t, std::size_t line) {
  std::size_t v = 0;
  if (t.text.empty()) throw ParseError(line, t.column, "expected a positive integer");
  for (char c : t.text) {
    if (c < '0' || c > '9')
      throw ParseError(line, t.column, "expected a positive integer, got '" + std::string(t.text) + "'");
    v = v * 10 + static_cast<std::size_t>(c - '0');
    if (v > 10'000'000) throw ParseError(line, t.column, "integer too large");
  }
  return v;
}

inline std::size_t parse_node(const Token& t, std::size_t line, std::size_t n) {
  const std::size_t id = parse_count(t, line);
  if (id < 1 || id > n)
    throw ParseError(line, t.column,
                     "node id " + std::string(t.text) + " out of range 1.." + std::to_string(n));
  return id - 1;
}

}  // namespace detail

/// Parses the line-oriented graph format:
///
///     n <count>
///     leaders <id> ...
///     targets <id> ...
///     edge <from> <to> <weight>     (any number of lines)
///
/// '#' starts a comment. Weights may be integers, p/q fractions or finite
/// decimals and are converted exactly.
inline Graph parse_graph(std::istream& in) {
  std::size_t n = 0;
  bool have_n = false, have_leaders = false, have_targets = false;
  std::vector<std::size_t> leaders, targets;
  std::vector<Edge> edges;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_line;

  auto read_ids = [&](const std::vector<detail::Token>& toks, std::size_t line,
                      std::vector<std::size_t>& out) {
    if (toks.size() < 2) throw ParseError(line, toks[0].column, "'" + std::string(toks[0].text) + "' needs at least one node id");
    std::vector<bool> seen(n, false);
    for (std::size_t k = 1; k < toks.size(); ++k) {
      std::size_t v = detail::parse_node(toks[k], line, n);
      if (seen[v]) throw ParseError(line, toks[k].column, "repeated node id " + std::string(toks[k].text));
      seen[v] = true;
      out.push_back(v);
    }
  };

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    const std::string_view kw = toks[0].text;

    if (!have_n) {
      if (kw != "n") throw ParseError(line_no, toks[0].column, "expected 'n <count>' header first");
      if (toks.size() != 2) throw ParseError(line_no, toks[0].column, "'n' takes exactly one value");
      n = detail::parse_count(toks[1], line_no);
      if (n == 0) throw ParseError(line_no, toks[1].column, "node count must be positive");
      have_n = true;
    } else if (!have_leaders) {
      if (kw != "leaders") throw ParseError(line_no, toks[0].column, "expected 'leaders' header after 'n'");
      read_ids(toks, line_no, leaders);
      have_leaders = true;
    } else if (!have_targets) {
      if (kw != "targets") throw ParseError(line_no, toks[0].column, "expected 'targets' header after 'leaders'");
      read_ids(toks, line_no, targets);
      have_targets = true;
    } else if (kw == "edge") {
      if (toks.size() != 4)
        throw ParseError(line_no, toks[0].column, "expected 'edge <from> <to> <weight>'");
      const std::size_t from = detail::parse_node(toks[1], line_no, n);
      const std::size_t to = detail::parse_node(toks[2], line_no, n);
      if (from == to) throw ParseError(line_no, toks[1].column, "self-loop on node " + std::string(toks[1].text));
      auto w = try_parse_rational(toks[3].text);
      if (!w) throw ParseError(line_no, toks[3].column, "malformed weight '" + std::string(toks[3].text) + "'");
      if (*w <= 0) throw ParseError(line_no, toks[3].column, "edge weight must be positive");
      auto [it, fresh] = edge_line.emplace(std::pair(from, to), line_no);
      if (!fresh)
        throw ParseError(line_no, toks[0].column,
                         "duplicate edge " + std::string(toks[1].text) + " -> " + std::string(toks[2].text) +
                             " (first given on line " + std::to_string(it->second) + ")");
      edges.push_back({from, to, *w});
    } else {
      throw ParseError(line_no, toks[0].column, "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (!have_n) throw ParseError(line_no + 1, 1, "missing 'n' header");
  if (!have_leaders) throw ParseError(line_no + 1, 1, "missing 'leaders' header");
  if (!have_targets) throw ParseError(line_no + 1, 1, "missing 'targets' header");
  return Graph(n, std::move(edges), std::move(leaders), std::move(targets));
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

/// Canonical text form: headers in fixed order, edges sorted by (from, to),
/// weights in lowest terms.
inline std::string serialize_graph(const Graph& g) {
  std::ostringstream os;
  os << "n " << g.size() << "\nleaders";
  for (std::size_t v : g.leaders()) os << ' ' << v + 1;
  os << "\ntargets";
  for (std::size_t v : g.targets()) os << ' ' << v + 1;
  os << '\n';
  for (const Edge& e : g.edges()) os << "edge " << e.from + 1 << ' ' << e.to + 1 << ' ' << to_string(e.weight) << '\n';
  return os.str();
}

/// a_ij = w_ij when there is an edge j -> i.
inline RatMatrix adjacency(const Graph& g) {
  RatMatrix a(g.size(), g.size());
  for (const Edge& e : g.edges()) a(e.to, e.from) = e.weight;
  return a;
}

/// L = D - A with D the weighted in-degree matrix; rows sum to zero.
inline RatMatrix laplacian(const Graph& g) {
  RatMatrix l(g.size(), g.size());
  for (const Edge& e : g.edges()) {
    l(e.to, e.from) -= e.weight;
    l(e.to, e.to) += e.weight;
  }
  return l;
}

/// (A, B, H) realization x' = A x + B u, y = H x.
///
/// Graph-derived triples have A = -L and selection matrices B, H; the lifted
/// and Kronecker-structured systems reuse the type with general blocks.
struct SystemTriple {
  RatMatrix a;
  RatMatrix b;
  RatMatrix h;

  SystemTriple() = default;
  SystemTriple(RatMatrix a_, RatMatrix b_, RatMatrix h_) : a(std::move(a_)), b(std::move(b_)), h(std::move(h_)) {
    if (!a.square()) throw DimensionError("SystemTriple: A must be square");
    if (b.rows() != a.rows()) throw DimensionError("SystemTriple: B row count must equal state dimension");
    if (h.cols() != a.rows()) throw DimensionError("SystemTriple: H column count must equal state dimension");
  }

  std::size_t n() const { return a.rows(); }
  std::size_t l() const { return b.cols(); }
  std::size_t p() const { return h.rows(); }

  friend bool operator==(const SystemTriple&, const SystemTriple&) = default;
};

/// B = [e_{v1} ... e_{vl}] for leaders v, H = [e_{t1} ... e_{tp}]^T for targets t.
inline RatMatrix selection_columns(std::size_t n, const std::vector<std::size_t>& ids) {
  RatMatrix b(n, ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) b(ids[k], k) = 1;
  return b;
}

inline SystemTriple system_triple(const Graph& g) {
  return SystemTriple(-laplacian(g), selection_columns(g.size(), g.leaders()),
                      selection_columns(g.size(), g.targets()).transpose());
}

}  // namespace netctrl
