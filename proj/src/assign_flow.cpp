// Copyright 2026 The jsccalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "jsccalloc/assign.hpp"

namespace jscc {

void CostMatrix::validate() const {
  if (rows < 0 || cols < 0 || values.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("cost matrix shape mismatch");
  }
  for (double v : values) {
    if (v < kForbidden && !(v >= 0.0)) {
      throw std::invalid_argument("finite costs must be >= 0");
    }
  }
}

double assignment_cost(const CostMatrix& c, const Assignment& a) {
  double total = 0.0;
  for (auto [k, m] : a.pairs) total += c.at(k, m);
  return total;
}

namespace {

// Residual-graph edge for the unit-capacity bipartite network.
struct Edge {
  int to;
  int cap;
  double cost;
  int rev;  // index of the reverse edge in graph[to]
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : graph_(nodes) {}

  void add_edge(int from, int to, int cap, double cost) {
    graph_[from].push_back({to, cap, cost, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0, -cost, static_cast<int>(graph_[from].size()) - 1});
  }

  // One successive-shortest-path augmentation of a unit of flow from s to t
  // using Dijkstra with Johnson potentials. Returns false when t is
  // unreachable.
  bool augment(int s, int t) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(graph_.size(), inf);
    std::vector<int> prev_node(graph_.size(), -1);
    std::vector<int> prev_edge(graph_.size(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    dist[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (int i = 0; i < static_cast<int>(graph_[v].size()); ++i) {
        const Edge& e = graph_[v][i];
        if (e.cap <= 0) continue;
        double nd = d + e.cost + potential_[v] - potential_[e.to];
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          prev_node[e.to] = v;
          prev_edge[e.to] = i;
          queue.emplace(nd, e.to);
        }
      }
    }
    if (!(dist[t] < inf)) return false;
    for (std::size_t v = 0; v < graph_.size(); ++v) {
      if (dist[v] < inf) potential_[v] += dist[v];
    }
    for (int v = t; v != s; v = prev_node[v]) {
      Edge& e = graph_[prev_node[v]][prev_edge[v]];
      e.cap -= 1;
      graph_[v][e.rev].cap += 1;
    }
    return true;
  }

  void init_potentials() { potential_.assign(graph_.size(), 0.0); }

  const std::vector<Edge>& edges_from(int node) const { return graph_[node]; }

 private:
  std::vector<std::vector<Edge>> graph_;
  std::vector<double> potential_;
};

}  // namespace

FlowResult solve_k_assignment_flow(const CostMatrix& c, int j_pairs) {
  c.validate();
  if (j_pairs < 0 || j_pairs > std::min(c.rows, c.cols)) {
    throw std::invalid_argument("j_pairs must lie in [0, min(rows, cols)]");
  }
  FlowResult result;
  if (j_pairs == 0) {
    result.feasible = true;
    return result;
  }

  // Nodes: 0 = source, 1..K users, K+1..K+M RBs, K+M+1 = sink.
  int source = 0;
  int sink = c.rows + c.cols + 1;
  FlowNetwork net(sink + 1);
  for (int k = 0; k < c.rows; ++k) net.add_edge(source, 1 + k, 1, 0.0);
  for (int m = 0; m < c.cols; ++m) net.add_edge(1 + c.rows + m, sink, 1, 0.0);
  for (int k = 0; k < c.rows; ++k) {
    for (int m = 0; m < c.cols; ++m) {
      if (!c.forbidden(k, m)) net.add_edge(1 + k, 1 + c.rows + m, 1, c.at(k, m));
    }
  }

  net.init_potentials();
  for (int sent = 0; sent < j_pairs; ++sent) {
    if (!net.augment(source, sink)) {
      result.feasible = false;
      return result;
    }
  }

  // Saturated user->rb arcs carry the matching.
  for (int k = 0; k < c.rows; ++k) {
    for (const Edge& e : net.edges_from(1 + k)) {
      if (e.to >= 1 + c.rows && e.to < 1 + c.rows + c.cols && e.cap == 0 && e.cost >= 0.0) {
        int m = e.to - 1 - c.rows;
        result.assignment.pairs.emplace_back(k, m);
        result.total_cost += c.at(k, m);
      }
    }
  }
  std::sort(result.assignment.pairs.begin(), result.assignment.pairs.end());
  result.feasible = true;
  return result;
}

int max_feasible_matching(const CostMatrix& c) {
  // Kuhn's augmenting-path matching on the allowed pairs.
  std::vector<int> match_col(c.cols, -1);
  std::vector<char> visited(c.cols, 0);

  auto try_user = [&](auto&& self, int k) -> bool {
    for (int m = 0; m < c.cols; ++m) {
      if (c.forbidden(k, m) || visited[m]) continue;
      visited[m] = 1;
      if (match_col[m] < 0 || self(self, match_col[m])) {
        match_col[m] = k;
        return true;
      }
    }
    return false;
  };

  int size = 0;
  for (int k = 0; k < c.rows; ++k) {
    std::fill(visited.begin(), visited.end(), 0);
    if (try_user(try_user, k)) ++size;
  }
  return size;
}

}  // namespace jscc
