#include "maxflow.hpp"

#include <algorithm>
#include <queue>

namespace wetlab {

namespace {
constexpr double kEps = 1e-12;
}

MaxFlow::MaxFlow(int n_nodes) : n_(n_nodes + 2), s_(n_nodes), t_(n_nodes + 1) {
  adj_.resize(n_);
}

void MaxFlow::add_arc(int u, int v, double cap) {
  if (cap <= 0.0) return;
  adj_[u].push_back(int(to_.size()));
  to_.push_back(v);
  cap_.push_back(cap);
  adj_[v].push_back(int(to_.size()));
  to_.push_back(u);
  cap_.push_back(0.0);
}

void MaxFlow::add_terminal(int v, double cap_source, double cap_sink) {
  if (cap_source > 0.0) add_arc(s_, v, cap_source);
  if (cap_sink > 0.0) add_arc(v, t_, cap_sink);
}

bool MaxFlow::bfs_levels() {
  level_.assign(n_, -1);
  std::queue<int> q;
  level_[s_] = 0;
  q.push(s_);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int a : adj_[v]) {
      if (cap_[a] > kEps && level_[to_[a]] < 0) {
        level_[to_[a]] = level_[v] + 1;
        q.push(to_[a]);
      }
    }
  }
  return level_[t_] >= 0;
}

double MaxFlow::dfs_push(int v, double limit) {
  if (v == t_) return limit;
  double pushed = 0.0;
  for (size_t& it = iter_[v]; it < adj_[v].size(); ++it) {
    const int a = adj_[v][it];
    const int u = to_[a];
    if (cap_[a] <= kEps || level_[u] != level_[v] + 1) continue;
    const double got = dfs_push(u, std::min(limit - pushed, cap_[a]));
    if (got > 0.0) {
      cap_[a] -= got;
      cap_[a ^ 1] += got;
      pushed += got;
      if (pushed >= limit - kEps) return pushed;
    }
  }
  level_[v] = -1;
  return pushed;
}

double MaxFlow::solve() {
  double flow = 0.0;
  const double inf = 1e300;
  while (bfs_levels()) {
    iter_.assign(n_, 0);
    flow += dfs_push(s_, inf);
  }
  // Residual reachability from the source: the minimal min-cut.
  reach_.assign(n_, 0);
  std::queue<int> q;
  reach_[s_] = 1;
  q.push(s_);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int a : adj_[v]) {
      if (cap_[a] > kEps && !reach_[to_[a]]) {
        reach_[to_[a]] = 1;
        q.push(to_[a]);
      }
    }
  }
  return flow;
}

bool MaxFlow::source_side(int v) const { return reach_[v] != 0; }

}  // namespace wetlab
