#pragma once

#include <array>
#include <optional>
#include <set>
#include <vector>

#include "graph.hpp"

namespace posaut {

// Priority used on coordinates that an edge does not touch (e.g. a stuttering side).
constexpr int kNeutral = 1 << 20;

struct LEdge {
  int src = 0;
  int dst = 0;
  std::array<int, 3> p{0, 0, 0};
  bool mark = false;
  int label = -1;
};

struct LGraph {
  int n = 0;
  int k = 1;
  std::vector<LEdge> edges;
  int add_node() { return n++; }
  void add(int s, int d, std::array<int, 3> p, bool mark, int label) { edges.push_back({s, d, p, mark, label}); }
};

struct Lasso {
  std::vector<int> prefix;  // edge ids
  std::vector<int> cycle;   // edge ids
  int entry = 0;
};

namespace detail {

inline std::vector<int> bfs_path(const LGraph& g, const std::vector<std::vector<int>>& out,
                                 const std::vector<char>& allowed_edge, const std::vector<int>& from, int to) {
  std::vector<int> pred(g.n, -2);
  std::vector<int> q;
  for (int s : from)
    if (pred[s] == -2) {
      pred[s] = -1;
      q.push_back(s);
    }
  for (size_t i = 0; i < q.size() && pred[to] == -2; ++i) {
    int v = q[i];
    for (int e : out[v]) {
      if (!allowed_edge.empty() && !allowed_edge[e]) continue;
      int w = g.edges[e].dst;
      if (pred[w] == -2) {
        pred[w] = e;
        q.push_back(w);
      }
    }
  }
  std::vector<int> path;
  if (pred[to] == -2) return {-1};
  for (int v = to; pred[v] != -1; v = g.edges[pred[v]].src) path.push_back(pred[v]);
  return {path.rbegin(), path.rend()};
}

}  // namespace detail

// Searches a cycle reachable from `starts` on which every coordinate's minimum is even,
// containing a marked edge when `need_mark`.
inline std::optional<Lasso> find_lasso(const LGraph& g, const std::vector<int>& starts, bool need_mark) {
  std::vector<std::vector<int>> out(g.n);
  Adj full(g.n);
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    out[g.edges[e].src].push_back(e);
    full[g.edges[e].src].push_back(g.edges[e].dst);
  }
  auto reach = reach_from(full, starts);
  std::vector<std::vector<int>> ths(g.k);
  for (int j = 0; j < g.k; ++j) {
    std::set<int> s;
    for (auto& e : g.edges)
      if (reach[e.src] && e.p[j] % 2 == 0) s.insert(e.p[j]);
    ths[j].assign(s.begin(), s.end());
    if (ths[j].empty()) return std::nullopt;
  }
  std::vector<size_t> idx(g.k, 0);
  while (true) {
    std::array<int, 3> th{0, 0, 0};
    for (int j = 0; j < g.k; ++j) th[j] = ths[j][idx[j]];
    std::vector<char> ok(g.edges.size(), 0);
    Adj sub(g.n);
    for (size_t e = 0; e < g.edges.size(); ++e) {
      auto& E = g.edges[e];
      if (!reach[E.src]) continue;
      bool good = true;
      for (int j = 0; j < g.k; ++j) good = good && E.p[j] >= th[j];
      if (good) {
        ok[e] = 1;
        sub[E.src].push_back(E.dst);
      }
    }
    int nc = 0;
    auto comp = scc(sub, &nc);
    // required[c][j] = an internal edge hitting the threshold on coordinate j; slot k is the mark.
    std::vector<std::array<int, 4>> req(nc, {-1, -1, -1, -1});
    for (size_t e = 0; e < g.edges.size(); ++e) {
      if (!ok[e]) continue;
      auto& E = g.edges[e];
      int c = comp[E.src];
      if (comp[E.dst] != c) continue;
      for (int j = 0; j < g.k; ++j)
        if (E.p[j] == th[j] && req[c][j] < 0) req[c][j] = static_cast<int>(e);
      if (E.mark && req[c][3] < 0) req[c][3] = static_cast<int>(e);
    }
    for (int c = 0; c < nc; ++c) {
      bool good = true;
      for (int j = 0; j < g.k; ++j) good = good && req[c][j] >= 0;
      if (need_mark) good = good && req[c][3] >= 0;
      if (!good) continue;
      std::vector<char> inside(g.edges.size(), 0);
      for (size_t e = 0; e < g.edges.size(); ++e)
        inside[e] = ok[e] && comp[g.edges[e].src] == c && comp[g.edges[e].dst] == c;
      std::vector<int> must;
      for (int j = 0; j < g.k; ++j) must.push_back(req[c][j]);
      if (need_mark) must.push_back(req[c][3]);
      Lasso L;
      L.entry = g.edges[must[0]].src;
      L.prefix = detail::bfs_path(g, out, {}, starts, L.entry);
      int cur = L.entry;
      for (int e : must) {
        auto p = detail::bfs_path(g, out, inside, {cur}, g.edges[e].src);
        L.cycle.insert(L.cycle.end(), p.begin(), p.end());
        L.cycle.push_back(e);
        cur = g.edges[e].dst;
      }
      auto back = detail::bfs_path(g, out, inside, {cur}, L.entry);
      L.cycle.insert(L.cycle.end(), back.begin(), back.end());
      return L;
    }
    int j = 0;
    while (j < g.k && ++idx[j] == ths[j].size()) idx[j++] = 0;
    if (j == g.k) break;
  }
  return std::nullopt;
}

inline std::vector<int> labels_of(const LGraph& g, const std::vector<int>& edges) {
  std::vector<int> w;
  for (int e : edges)
    if (g.edges[e].label >= 0) w.push_back(g.edges[e].label);
  return w;
}

}  // namespace posaut
