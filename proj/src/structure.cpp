#include "qcert/structure.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <queue>
#include <string>

namespace qcert {

namespace {

// BFS over the bitset rows restricted to `alive`; returns the set reached
// from `start` as a bit mask (one word per 64 vertices).
std::vector<std::uint64_t> reach_mask(const Graph& g, const std::vector<std::uint64_t>& alive,
                                      int start) {
  int stride = g.stride();
  std::vector<std::uint64_t> seen(stride, 0);
  seen[start >> 6] |= std::uint64_t{1} << (start & 63);
  std::vector<int> queue{start};
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    auto r = g.row(v);
    for (int w = 0; w < stride; ++w) {
      std::uint64_t fresh = r[w] & alive[w] & ~seen[w];
      seen[w] |= fresh;
      while (fresh) {
        queue.push_back(w * 64 + std::countr_zero(fresh));
        fresh &= fresh - 1;
      }
    }
  }
  return seen;
}

std::vector<std::uint64_t> all_alive(const Graph& g) {
  std::vector<std::uint64_t> alive(g.stride(), 0);
  for (int v = 0; v < g.order(); ++v) alive[v >> 6] |= std::uint64_t{1} << (v & 63);
  return alive;
}

bool mask_connected(const Graph& g, const std::vector<std::uint64_t>& alive, int alive_count) {
  if (alive_count <= 1) return true;
  int start = -1;
  for (int w = 0; w < g.stride() && start < 0; ++w)
    if (alive[w]) start = w * 64 + std::countr_zero(alive[w]);
  auto seen = reach_mask(g, alive, start);
  int cnt = 0;
  for (auto x : seen) cnt += std::popcount(x);
  return cnt == alive_count;
}

std::vector<std::vector<int>> components_within(const Graph& g, std::vector<std::uint64_t> alive) {
  std::vector<std::vector<int>> out;
  for (int v = 0; v < g.order(); ++v) {
    if (!((alive[v >> 6] >> (v & 63)) & 1)) continue;
    auto seen = reach_mask(g, alive, v);
    std::vector<int> comp;
    for (int u = v; u < g.order(); ++u)
      if ((seen[u >> 6] >> (u & 63)) & 1) comp.push_back(u);
    for (int u : comp) alive[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
    out.push_back(std::move(comp));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace

bool is_connected(const Graph& g) {
  auto alive = all_alive(g);
  return mask_connected(g, alive, g.order());
}

std::vector<std::vector<int>> components(const Graph& g) {
  return components_within(g, all_alive(g));
}

// ---------------------------------------------------------------------------
// flow route: Dinic on the vertex-split digraph, unit node capacities

namespace {

struct FlowNet {
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> level, iter;

  explicit FlowNet(int nodes) : adj(nodes), level(nodes), iter(nodes) {}

  void add(int from, int to, int cap) {
    adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Arc& a : adj[v])
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push(a.to);
        }
    }
    return level[t] >= 0;
  }

  int dfs(int v, int t, int f) {
    if (v == t) return f;
    for (int& i = iter[v]; i < static_cast<int>(adj[v].size()); ++i) {
      Arc& a = adj[v][i];
      if (a.cap > 0 && level[v] < level[a.to]) {
        int d = dfs(a.to, t, std::min(f, a.cap));
        if (d > 0) {
          a.cap -= d;
          adj[a.to][a.rev].cap += d;
          return d;
        }
      }
    }
    return 0;
  }

  int max_flow(int s, int t, int cutoff) {
    int flow = 0;
    while (flow < cutoff && bfs(s, t)) {
      std::fill(iter.begin(), iter.end(), 0);
      while (int f = dfs(s, t, std::numeric_limits<int>::max())) {
        flow += f;
        if (flow >= cutoff) break;
      }
    }
    return flow;
  }
};

// in-node 2v, out-node 2v+1
FlowNet split_network(const Graph& g, int s, int t) {
  int n = g.order();
  FlowNet net(2 * n);
  const int big = n + 1;
  for (int v = 0; v < n; ++v) net.add(2 * v, 2 * v + 1, (v == s || v == t) ? big : 1);
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) net.add(2 * u + 1, 2 * v, big);
  return net;
}

int pair_connectivity(const Graph& g, int s, int t, int cutoff) {
  FlowNet net = split_network(g, s, t);
  return net.max_flow(2 * s + 1, 2 * t, cutoff);
}

// vertices whose split arc is saturated across the final residual cut
std::vector<int> pair_cut(const Graph& g, int s, int t) {
  FlowNet net = split_network(g, s, t);
  net.max_flow(2 * s + 1, 2 * t, std::numeric_limits<int>::max());
  std::vector<char> seen(net.adj.size(), 0);
  std::vector<int> stack{2 * s + 1};
  seen[2 * s + 1] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& a : net.adj[v])
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = 1;
        stack.push_back(a.to);
      }
  }
  std::vector<int> cut;
  for (int v = 0; v < g.order(); ++v)
    if (seen[2 * v] && !seen[2 * v + 1]) cut.push_back(v);
  return cut;
}

CutWitness witness_for_cut(const Graph& g, std::vector<int> cut) {
  auto alive = all_alive(g);
  for (int v : cut) alive[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  CutWitness w;
  w.cut = std::move(cut);
  w.components = components_within(g, std::move(alive));
  return w;
}

}  // namespace

ConnectivityResult vertex_connectivity(const Graph& g) {
  int n = g.order();
  if (!is_connected(g)) {
    ConnectivityResult r;
    r.kappa = 0;
    r.witness.components = components(g);
    return r;
  }
  if (g.size() == static_cast<long long>(n) * (n - 1) / 2) {
    // complete: kappa = n-1, lexicographically least (n-1)-set as cut
    ConnectivityResult r;
    r.kappa = n - 1;
    std::vector<int> cut(n - 1);
    for (int v = 0; v < n - 1; ++v) cut[v] = v;
    r.witness = witness_for_cut(g, std::move(cut));
    return r;
  }

  // min-degree anchor: every minimum cut either avoids v0 (flow to a
  // non-neighbour finds it) or contains it (v0 then has neighbours in two
  // components, a non-adjacent neighbour pair finds it)
  int v0 = 0;
  for (int v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(v0)) v0 = v;

  int best = n - 1;
  std::pair<int, int> best_pair{-1, -1};
  auto consider = [&](int s, int t) {
    int f = pair_connectivity(g, s, t, best);
    if (f < best) {
      best = f;
      best_pair = {s, t};
    }
  };
  for (int u = 0; u < n; ++u)
    if (u != v0 && !g.has_edge(v0, u)) consider(v0, u);
  auto nbrs = g.neighbors(v0);
  for (std::size_t i = 0; i < nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < nbrs.size(); ++j)
      if (!g.has_edge(nbrs[i], nbrs[j])) consider(nbrs[i], nbrs[j]);

  ConnectivityResult r;
  r.kappa = best;
  r.witness = witness_for_cut(g, pair_cut(g, best_pair.first, best_pair.second));
  return r;
}

int brute_force_connectivity(const Graph& g) {
  int n = g.order();
  if (n > 20) throw RegimeError("brute-force connectivity supports n <= 20");
  if (!is_connected(g)) return 0;
  auto full = all_alive(g);
  // subsets of increasing size; the first disconnecting size is kappa
  for (int size = 1; size <= n - 2; ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      auto alive = full;
      for (int v : pick) alive[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      if (!mask_connected(g, alive, n - size)) return size;
      int i = size - 1;
      while (i >= 0 && pick[i] == n - size + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return n - 1;
}

std::vector<std::vector<int>> all_min_cuts(const Graph& g) {
  if (g.order() > 16) throw RegimeError("all_min_cuts supports n <= 16");
  if (!is_connected(g)) return {};
  return all_min_cuts(g, vertex_connectivity(g).kappa);
}

std::vector<std::vector<int>> all_min_cuts(const Graph& g, int kappa) {
  int n = g.order();
  if (n > 16) throw RegimeError("all_min_cuts supports n <= 16");
  std::vector<std::vector<int>> cuts;
  auto full = all_alive(g);
  std::vector<int> pick(kappa);
  if (kappa == 0) return {};
  for (int i = 0; i < kappa; ++i) pick[i] = i;
  while (true) {
    auto alive = full;
    for (int v : pick) alive[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
    // vertex cut: G - C disconnected, or G - C = K_1
    if (n - kappa == 1 || !mask_connected(g, alive, n - kappa)) cuts.push_back(pick);
    int i = kappa - 1;
    while (i >= 0 && pick[i] == n - kappa + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < kappa; ++j) pick[j] = pick[j - 1] + 1;
  }
  return cuts;
}

std::optional<int> girth(const Graph& g) {
  int n = g.order();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), parent(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[root] = 0;
    parent[root] = -1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      if (2 * dist[v] >= best) break;
      for (int u : g.neighbors(v)) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          parent[u] = v;
          q.push(u);
        } else if (u != parent[v]) {
          best = std::min(best, dist[v] + dist[u] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

std::vector<std::vector<int>> components_after_removal(const Graph& g,
                                                       const std::vector<int>& cut) {
  auto alive = all_alive(g);
  for (int v : cut) alive[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  return components_within(g, std::move(alive));
}

bool is_triangle_free(const Graph& g) {
  int n = g.order();
  for (int u = 0; u < n; ++u) {
    auto ru = g.row(u);
    for (int v : g.neighbors(u)) {
      if (v <= u) continue;
      auto rv = g.row(v);
      for (int w = 0; w < g.stride(); ++w)
        if (ru[w] & rv[w]) return false;
    }
  }
  return true;
}

bool is_maximally_connected(const Graph& g) {
  if (!is_connected(g)) return false;
  return vertex_connectivity(g).kappa == g.min_degree();
}

namespace {

bool cut_isolates_min_degree(const Graph& g, const std::vector<int>& cut, int delta) {
  auto alive = all_alive(g);
  for (int v : cut) alive[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  auto comps = components_within(g, std::move(alive));
  for (const auto& comp : comps)
    if (comp.size() == 1 && g.degree(comp[0]) == delta) return true;
  return false;
}

}  // namespace

bool is_super_kappa(const Graph& g) {
  if (!is_connected(g)) return false;
  int delta = g.min_degree();
  auto cuts = all_min_cuts(g);
  for (const auto& cut : cuts)
    if (!cut_isolates_min_degree(g, cut, delta)) return false;
  return true;
}

StructureReport structure_report(const Graph& g) {
  StructureReport r;
  r.n = g.order();
  r.m = g.size();
  r.min_degree = g.min_degree();
  r.girth = girth(g);
  r.connected = is_connected(g);
  r.triangle_free = is_triangle_free(g);
  auto conn = vertex_connectivity(g);
  r.kappa = conn.kappa;
  r.maximally_connected = r.connected && r.kappa == r.min_degree;
  if (r.connected && r.n <= 16)
    r.super_kappa = is_super_kappa(g);
  else if (r.connected)
    r.super_kappa = std::nullopt;
  else
    r.super_kappa = false;
  if (r.kappa < r.n - 1 || !r.connected) r.witness = std::move(conn.witness);
  return r;
}

}  // namespace qcert
