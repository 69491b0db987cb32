#pragma once

#include <vector>

namespace wetlab {

// Dinic max-flow on a fixed node set with paired arcs (arc ^ 1 is the
// reverse). Deterministic: arc order is insertion order.
class MaxFlow {
 public:
  explicit MaxFlow(int n_nodes);

  // Adds a directed arc u -> v with the given capacity (reverse gets 0).
  void add_arc(int u, int v, double cap);
  // Adds source->v (cap_s) and v->sink (cap_t) terminal arcs.
  void add_terminal(int v, double cap_source, double cap_sink);

  double solve();

  // After solve(): true if v is reachable from the source in the residual
  // graph (the minimal minimum cut's source side).
  bool source_side(int v) const;

  int source() const { return s_; }
  int sink() const { return t_; }

 private:
  bool bfs_levels();
  double dfs_push(int v, double limit);

  int n_, s_, t_;
  std::vector<int> to_;
  std::vector<double> cap_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<size_t> iter_;
  std::vector<char> reach_;
};

}  // namespace wetlab
