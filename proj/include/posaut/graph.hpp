#pragma once

#include <vector>

namespace posaut {

using Adj = std::vector<std::vector<int>>;

// Tarjan, iterative. Component ids come out in reverse topological order:
// component 0 has no edges to other components.
inline std::vector<int> scc(const Adj& g, int* count = nullptr) {
  int n = static_cast<int>(g.size());
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on(n, 0);
  std::vector<std::pair<int, size_t>> call;
  int counter = 0, c = 0;
  for (int s = 0; s < n; ++s) {
    if (idx[s] >= 0) continue;
    call.push_back({s, 0});
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i == 0) {
        idx[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = 1;
      }
      if (i < g[v].size()) {
        int w = g[v][i++];
        if (idx[w] < 0) {
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = c;
        } while (w != v);
        ++c;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) {
        int p = call.back().first;
        low[p] = std::min(low[p], low[done]);
      }
    }
  }
  if (count) *count = c;
  return comp;
}

inline std::vector<char> reach_from(const Adj& g, const std::vector<int>& starts) {
  std::vector<char> seen(g.size(), 0);
  std::vector<int> st;
  for (int s : starts)
    if (!seen[s]) {
      seen[s] = 1;
      st.push_back(s);
    }
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    for (int w : g[v])
      if (!seen[w]) {
        seen[w] = 1;
        st.push_back(w);
      }
  }
  return seen;
}

}  // namespace posaut
