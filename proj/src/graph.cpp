#include "qcert/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

namespace qcert {

namespace {

int words_for(int n) { return (n + 63) / 64; }

}  // namespace

Graph::Graph(int n) : n_(n), stride_(words_for(n)) {
  if (n < 1) throw CapacityError("graph order must be at least 1");
  if (n > kMaxOrder)
    throw CapacityError("graph order " + std::to_string(n) + " exceeds capacity " +
                        std::to_string(kMaxOrder));
  bits_.assign(static_cast<std::size_t>(n_) * stride_, 0);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    throw Error("vertex " + std::to_string(v) + " out of range for order " + std::to_string(n_));
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw Error("loops are not allowed");
  bits_[static_cast<std::size_t>(u) * stride_ + (static_cast<unsigned>(v) >> 6)] |=
      std::uint64_t{1} << (v & 63);
  bits_[static_cast<std::size_t>(v) * stride_ + (static_cast<unsigned>(u) >> 6)] |=
      std::uint64_t{1} << (u & 63);
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  bits_[static_cast<std::size_t>(u) * stride_ + (static_cast<unsigned>(v) >> 6)] &=
      ~(std::uint64_t{1} << (v & 63));
  bits_[static_cast<std::size_t>(v) * stride_ + (static_cast<unsigned>(u) >> 6)] &=
      ~(std::uint64_t{1} << (u & 63));
}

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (auto w : row(v)) d += std::popcount(w);
  return d;
}

long long Graph::size() const {
  long long total = 0;
  for (auto w : bits_) total += std::popcount(w);
  return total / 2;
}

int Graph::min_degree() const {
  int best = n_;
  for (int v = 0; v < n_; ++v) best = std::min(best, degree(v));
  return best;
}

std::vector<int> Graph::degree_sequence() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<int> Graph::neighbors(int v) const {
  check_vertex(v);
  std::vector<int> out;
  auto r = row(v);
  for (int w = 0; w < stride_; ++w) {
    std::uint64_t word = r[w];
    while (word) {
      int bit = std::countr_zero(word);
      out.push_back(w * 64 + bit);
      word &= word - 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// graph6

namespace {

constexpr int kG6Lo = 63;   // '?'
constexpr int kG6Hi = 126;  // '~'

int g6_value(std::string_view line, std::size_t offset) {
  if (offset >= line.size()) throw ParseError("truncated graph6 data", offset);
  unsigned char c = static_cast<unsigned char>(line[offset]);
  if (c < kG6Lo || c > kG6Hi)
    throw ParseError("graph6 character out of range 63..126", offset);
  return c - kG6Lo;
}

}  // namespace

Graph from_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
    line.remove_suffix(1);
  if (line.empty()) throw ParseError("empty graph6 line", 0);

  std::size_t pos = 0;
  long long n = 0;
  int first = g6_value(line, 0);
  if (first < 63) {
    n = first;
    pos = 1;
  } else {
    // '~' header: three more bytes carry an 18-bit order
    if (g6_value(line, 1) == 63)
      throw ParseError("8-byte graph6 order headers are not supported", 1);
    n = (static_cast<long long>(g6_value(line, 1)) << 12) |
        (static_cast<long long>(g6_value(line, 2)) << 6) | g6_value(line, 3);
    pos = 4;
  }
  if (n < 1) throw ParseError("graph6 order must be at least 1", 0);
  if (n > Graph::kMaxOrder)
    throw ParseError("graph6 order " + std::to_string(n) + " exceeds capacity 512", 0);

  Graph g(static_cast<int>(n));
  long long nbits = n * (n - 1) / 2;
  std::size_t expected = pos + static_cast<std::size_t>((nbits + 5) / 6);
  if (line.size() < expected) throw ParseError("truncated graph6 bit body", line.size());
  if (line.size() > expected) throw ParseError("trailing data after graph6 body", expected);

  int current = 0;
  int bits_left = 0;
  long long bit_index = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit_index) {
      if (bits_left == 0) {
        current = g6_value(line, pos++);
        bits_left = 6;
      }
      if (current & (1 << (bits_left - 1))) g.add_edge(i, j);
      --bits_left;
    }
  }
  if (bits_left > 0 && (current & ((1 << bits_left) - 1)) != 0)
    throw ParseError("nonzero graph6 padding bits", pos - 1);
  return g;
}

std::string to_graph6(const Graph& g) {
  std::string out;
  int n = g.order();
  if (n <= 62) {
    out.push_back(static_cast<char>(kG6Lo + n));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(kG6Lo + ((n >> 12) & 63)));
    out.push_back(static_cast<char>(kG6Lo + ((n >> 6) & 63)));
    out.push_back(static_cast<char>(kG6Lo + (n & 63)));
  }
  int acc = 0;
  int nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(kG6Lo + acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>(kG6Lo + (acc << (6 - nbits))));
  return out;
}

// ---------------------------------------------------------------------------
// operators

Graph complement(const Graph& g) {
  int n = g.order();
  Graph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.has_edge(u, v)) out.add_edge(u, v);
  return out;
}

Graph join(const Graph& g, const Graph& h) {
  long long n = static_cast<long long>(g.order()) + h.order();
  if (n > Graph::kMaxOrder)
    throw CapacityError("join order " + std::to_string(n) + " exceeds capacity 512");
  Graph out = disjoint_union(g, h);
  for (int u = 0; u < g.order(); ++u)
    for (int v = 0; v < h.order(); ++v) out.add_edge(u, g.order() + v);
  return out;
}

Graph disjoint_union(const Graph& g, const Graph& h) {
  long long n = static_cast<long long>(g.order()) + h.order();
  if (n > Graph::kMaxOrder)
    throw CapacityError("union order " + std::to_string(n) + " exceeds capacity 512");
  Graph out(static_cast<int>(n));
  for (int u = 0; u < g.order(); ++u)
    for (int v : g.neighbors(u))
      if (u < v) out.add_edge(u, v);
  int off = g.order();
  for (int u = 0; u < h.order(); ++u)
    for (int v : h.neighbors(u))
      if (u < v) out.add_edge(off + u, off + v);
  return out;
}

Graph induced_delete(const Graph& g, const std::vector<int>& drop) {
  std::vector<char> dropped(g.order(), 0);
  for (int v : drop) {
    if (v < 0 || v >= g.order())
      throw Error("induced_delete: vertex " + std::to_string(v) + " out of range");
    dropped[v] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.order(); ++v)
    if (!dropped[v]) keep.push_back(v);
  if (keep.empty()) throw Error("induced_delete: dropping every vertex leaves no graph");
  Graph out(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = i + 1; j < keep.size(); ++j)
      if (g.has_edge(keep[i], keep[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
  return out;
}

// ---------------------------------------------------------------------------
// isomorphism: iterated neighbour-colour refinement, then backtracking inside
// colour classes

namespace {

// Joint colour refinement: both graphs share one signature dictionary per
// round, so equal colour ids mean equal refinement classes across graphs.
// Returns false early when the colour histograms diverge.
bool refine_colors_jointly(const Graph& g, const Graph& h, std::vector<int>& gcol,
                           std::vector<int>& hcol) {
  int n = g.order();
  gcol.resize(n);
  hcol.resize(n);
  for (int v = 0; v < n; ++v) {
    gcol[v] = g.degree(v);
    hcol[v] = h.degree(v);
  }
  int distinct = 0;
  for (int round = 0; round <= n; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> ids;
    auto recolor = [&](const Graph& graph, const std::vector<int>& col, std::vector<int>& next) {
      next.resize(n);
      for (int v = 0; v < n; ++v) {
        std::vector<int> sig;
        for (int u : graph.neighbors(v)) sig.push_back(col[u]);
        std::sort(sig.begin(), sig.end());
        auto key = std::make_pair(col[v], std::move(sig));
        auto [it, inserted] = ids.emplace(std::move(key), static_cast<int>(ids.size()));
        next[v] = it->second;
      }
    };
    std::vector<int> gnext, hnext;
    recolor(g, gcol, gnext);
    recolor(h, hcol, hnext);
    std::vector<int> a = gnext, b = hnext;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
    gcol = std::move(gnext);
    hcol = std::move(hnext);
    int now = static_cast<int>(ids.size());
    if (now == distinct) break;  // stable partition
    distinct = now;
  }
  return true;
}

bool extend_mapping(const Graph& g, const Graph& h, const std::vector<int>& order,
                    const std::vector<int>& gcol, const std::vector<int>& hcol,
                    std::vector<int>& map_gh, std::vector<char>& used, std::size_t depth) {
  if (depth == order.size()) return true;
  int v = order[depth];
  for (int w = 0; w < h.order(); ++w) {
    if (used[w] || hcol[w] != gcol[v]) continue;
    bool ok = true;
    for (std::size_t d = 0; d < depth; ++d) {
      int prev = order[d];
      if (g.has_edge(v, prev) != h.has_edge(w, map_gh[prev])) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    map_gh[v] = w;
    used[w] = 1;
    if (extend_mapping(g, h, order, gcol, hcol, map_gh, used, depth + 1)) return true;
    used[w] = 0;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.order() != h.order() || g.size() != h.size()) return false;
  if (g.degree_sequence() != h.degree_sequence()) return false;

  std::vector<int> gcol, hcol;
  if (!refine_colors_jointly(g, h, gcol, hcol)) return false;

  // map the most constrained (rarest-colour) vertices first
  std::vector<int> class_size(2 * g.order() + 2, 0);
  for (int c : gcol) ++class_size[c];
  std::vector<int> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (class_size[gcol[x]] != class_size[gcol[y]])
      return class_size[gcol[x]] < class_size[gcol[y]];
    if (gcol[x] != gcol[y]) return gcol[x] < gcol[y];
    return x < y;
  });

  std::vector<int> map_gh(g.order(), -1);
  std::vector<char> used(h.order(), 0);
  return extend_mapping(g, h, order, gcol, hcol, map_gh, used, 0);
}

// ---------------------------------------------------------------------------
// family constructors

namespace {

Graph complete_graph(int n) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw ConstructionError("complete-bipartite requires a >= 1 and b >= 1");
  Graph g(a + b);
  for (int u = 0; u < a; ++u)
    for (int v = 0; v < b; ++v) g.add_edge(u, a + v);
  return g;
}

Graph build_join_cliques(const JoinCliques& s) {
  if (s.kappa < 0 || s.a < 1 || s.b < 1)
    throw ConstructionError("join-cliques requires kappa >= 0, a >= 1, b >= 1");
  // vertices: [0,kappa) join set, [kappa,kappa+a) K_a, rest K_b
  Graph parts = disjoint_union(complete_graph(s.a), complete_graph(s.b));
  if (s.kappa == 0) return parts;
  return join(complete_graph(s.kappa), parts);
}

Graph build_join_cliques_minus_edge(const JoinCliquesMinusEdge& s) {
  if (s.delta < 1) throw ConstructionError("join-cliques-minus-edge requires delta >= 1");
  if (s.n < s.delta + 3)
    throw ConstructionError("join-cliques-minus-edge requires n >= delta+3");
  Graph g = build_join_cliques({s.delta, 2, s.n - s.delta - 2});
  // x = first K_2 vertex (degree delta+1), y = first join vertex (degree n-1)
  g.remove_edge(s.delta, 0);
  return g;
}

Graph build_triangle_free_extremal(const TriangleFreeExtremal& s) {
  if (s.k < 2) throw ConstructionError("triangle-free-extremal requires k-1 >= 1");
  if (s.delta < s.k - 1) throw ConstructionError("triangle-free-extremal requires delta >= k-1");
  if (s.n < 2 * s.delta + 1) throw ConstructionError("triangle-free-extremal requires n >= 2*delta+1");
  int span = s.n - 2 * s.delta + s.k - 1;  // |Y u C|
  int ceil_side = (span + 1) / 2;
  if (ceil_side < s.k - 1)
    throw ConstructionError(
        "triangle-free-extremal requires ceil((n-2*delta+k-1)/2) >= k-1 so the cut fits in one "
        "side");
  // layout: X2 | X1 | C | Y1 | Y2, with blocks X2 x (X1 u C) and (C u Y1) x Y2
  int x2 = s.delta;
  int x1 = s.delta - (s.k - 1);
  int c = s.k - 1;
  int y1 = ceil_side - (s.k - 1);
  int y2 = span / 2;
  Graph g(x2 + x1 + c + y1 + y2);
  for (int u = 0; u < x2; ++u)
    for (int v = x2; v < x2 + x1 + c; ++v) g.add_edge(u, v);
  int cbegin = x2 + x1;
  int y2begin = x2 + x1 + c + y1;
  for (int u = cbegin; u < cbegin + c + y1; ++u)
    for (int v = y2begin; v < y2begin + y2; ++v) g.add_edge(u, v);
  return g;
}

}  // namespace

Graph construct(const FamilySpec& spec) {
  return std::visit(
      [](const auto& s) -> Graph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, JoinCliques>) return build_join_cliques(s);
        if constexpr (std::is_same_v<T, JoinCliquesMinusEdge>)
          return build_join_cliques_minus_edge(s);
        if constexpr (std::is_same_v<T, CompleteBipartite>) return complete_bipartite(s.a, s.b);
        if constexpr (std::is_same_v<T, Complete>) {
          if (s.n < 1) throw ConstructionError("complete requires n >= 1");
          return complete_graph(s.n);
        }
        if constexpr (std::is_same_v<T, EmptyGraph>) {
          if (s.n < 1) throw ConstructionError("empty requires n >= 1");
          return Graph(s.n);
        }
        if constexpr (std::is_same_v<T, TriangleFreeExtremal>)
          return build_triangle_free_extremal(s);
      },
      spec);
}

// ---------------------------------------------------------------------------
// CLI spec strings

namespace {

std::map<std::string, int, std::less<>> parse_params(std::string_view text) {
  std::map<std::string, int, std::less<>> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw Error("bad construction parameter '" + std::string(item) + "' (want key=value)");
    std::string key(item.substr(0, eq));
    std::string_view val = item.substr(eq + 1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), value);
    if (ec != std::errc() || ptr != val.data() + val.size())
      throw Error("bad integer value in construction parameter '" + std::string(item) + "'");
    out[key] = value;
  }
  return out;
}

int need(const std::map<std::string, int, std::less<>>& params, std::string_view key,
         std::string_view family) {
  auto it = params.find(key);
  if (it == params.end())
    throw Error("family '" + std::string(family) + "' needs parameter '" + std::string(key) + "'");
  return it->second;
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  auto colon = text.find(':');
  std::string_view name = text.substr(0, colon);
  auto params =
      parse_params(colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1));
  if (name == "join-cliques")
    return JoinCliques{need(params, "k", name), need(params, "a", name), need(params, "b", name)};
  if (name == "join-cliques-minus-edge")
    return JoinCliquesMinusEdge{need(params, "delta", name), need(params, "n", name)};
  if (name == "complete-bipartite")
    return CompleteBipartite{need(params, "a", name), need(params, "b", name)};
  if (name == "complete") return Complete{need(params, "n", name)};
  if (name == "empty") return EmptyGraph{need(params, "n", name)};
  if (name == "triangle-free-extremal")
    return TriangleFreeExtremal{need(params, "n", name), need(params, "delta", name),
                                need(params, "k", name)};
  throw Error("unknown construction family '" + std::string(name) + "'");
}

std::string family_to_string(const FamilySpec& spec) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, JoinCliques>)
          os << "join-cliques:k=" << s.kappa << ",a=" << s.a << ",b=" << s.b;
        if constexpr (std::is_same_v<T, JoinCliquesMinusEdge>)
          os << "join-cliques-minus-edge:delta=" << s.delta << ",n=" << s.n;
        if constexpr (std::is_same_v<T, CompleteBipartite>)
          os << "complete-bipartite:a=" << s.a << ",b=" << s.b;
        if constexpr (std::is_same_v<T, Complete>) os << "complete:n=" << s.n;
        if constexpr (std::is_same_v<T, EmptyGraph>) os << "empty:n=" << s.n;
        if constexpr (std::is_same_v<T, TriangleFreeExtremal>)
          os << "triangle-free-extremal:n=" << s.n << ",delta=" << s.delta << ",k=" << s.k;
      },
      spec);
  return os.str();
}

}  // namespace qcert
