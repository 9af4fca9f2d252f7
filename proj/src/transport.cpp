// Copyright 2026 The Summetrics Authors.
//
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
#include <limits>
#include <numeric>
#include <queue>
#include <vector>

#include "summetrics/common.hpp"
#include "summetrics/embedding.hpp"

namespace summetrics::embedding {
namespace {

constexpr double kReducedCostTol = 1e-12;

double euclidean(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    double d = u[i] - v[i];
    s += d * d;
  }
  return std::sqrt(s);
}

struct BasicCell {
  int row;
  int col;
  double flow;
};

// Transportation simplex over an m x n balanced problem. The basis is a
// spanning tree of the bipartite row/column graph; duals come from one
// tree traversal per pivot. Entering variable: most negative reduced cost
// (ties to the smallest (i, j)); after m + n consecutive pivots without a
// strict objective decrease the entering rule switches to Bland's, which
// guarantees termination under degeneracy.
class TransportSolver {
 public:
  TransportSolver(std::vector<double> supply, std::vector<double> demand,
                  std::vector<std::vector<double>> cost)
      : supply_(std::move(supply)),
        demand_(std::move(demand)),
        cost_(std::move(cost)),
        m_(static_cast<int>(supply_.size())),
        n_(static_cast<int>(demand_.size())) {}

  double solve() {
    build_initial_basis();
    int stagnant = 0;
    bool bland = false;
    double prev_objective = objective();
    // generous bound; Bland's rule prevents cycling well before it
    long long max_pivots = 2000LL * (m_ + n_) * (m_ + n_) + 10000;
    for (long long pivot = 0; pivot < max_pivots; ++pivot) {
      compute_duals();
      int enter_row = -1, enter_col = -1;
      if (!find_entering(bland, &enter_row, &enter_col)) break;
      apply_pivot(enter_row, enter_col);
      double obj = objective();
      if (obj < prev_objective - kReducedCostTol) {
        stagnant = 0;
      } else if (!bland && ++stagnant >= m_ + n_) {
        bland = true;  // permanent: anti-cycling takes over
      }
      prev_objective = obj;
    }
    return std::max(0.0, objective());
  }

 private:
  double objective() const {
    double total = 0.0;
    for (const auto& cell : basis_)
      total += cell.flow * cost_[static_cast<std::size_t>(cell.row)]
                                [static_cast<std::size_t>(cell.col)];
    return total;
  }

  // Least-cost starting basis: scan cells by ascending (cost, i, j),
  // closing one side per allocation so exactly m + n - 1 cells enter.
  void build_initial_basis() {
    std::vector<std::pair<double, std::pair<int, int>>> order;
    order.reserve(static_cast<std::size_t>(m_) * static_cast<std::size_t>(n_));
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j)
        order.push_back({cost_[static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)],
                         {i, j}});
    std::sort(order.begin(), order.end());
    std::vector<double> rs = supply_, rd = demand_;
    std::vector<bool> row_done(static_cast<std::size_t>(m_), false);
    std::vector<bool> col_done(static_cast<std::size_t>(n_), false);
    int open_rows = m_, open_cols = n_;
    for (const auto& [c, cell] : order) {
      int i = cell.first, j = cell.second;
      if (row_done[static_cast<std::size_t>(i)] ||
          col_done[static_cast<std::size_t>(j)])
        continue;
      double x = std::min(rs[static_cast<std::size_t>(i)],
                          rd[static_cast<std::size_t>(j)]);
      basis_.push_back({i, j, x});
      rs[static_cast<std::size_t>(i)] -= x;
      rd[static_cast<std::size_t>(j)] -= x;
      if (open_rows == 1 && open_cols == 1) {
        row_done[static_cast<std::size_t>(i)] = true;
        col_done[static_cast<std::size_t>(j)] = true;
        --open_rows;
        --open_cols;
        break;
      }
      // close the exhausted side, but never the last open row while
      // columns remain open (and vice versa): every node needs a basic
      // cell for the basis to stay a spanning tree
      bool close_row = rs[static_cast<std::size_t>(i)] <=
                       rd[static_cast<std::size_t>(j)];
      if (close_row && open_rows == 1) close_row = false;
      if (!close_row && open_cols == 1) close_row = true;
      if (close_row) {
        row_done[static_cast<std::size_t>(i)] = true;
        --open_rows;
      } else {
        col_done[static_cast<std::size_t>(j)] = true;
        --open_cols;
      }
    }
  }

  // Nodes: rows 0..m-1, columns m..m+n-1. Basic cells are tree edges.
  void compute_duals() {
    u_.assign(static_cast<std::size_t>(m_), 0.0);
    v_.assign(static_cast<std::size_t>(n_), 0.0);
    std::vector<std::vector<int>> adjacency(
        static_cast<std::size_t>(m_ + n_));
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      adjacency[static_cast<std::size_t>(basis_[k].row)].push_back(
          static_cast<int>(k));
      adjacency[static_cast<std::size_t>(m_ + basis_[k].col)].push_back(
          static_cast<int>(k));
    }
    std::vector<bool> seen(static_cast<std::size_t>(m_ + n_), false);
    std::queue<int> frontier;
    seen[0] = true;  // u_0 anchored at 0
    frontier.push(0);
    while (!frontier.empty()) {
      int node = frontier.front();
      frontier.pop();
      for (int k : adjacency[static_cast<std::size_t>(node)]) {
        const BasicCell& cell = basis_[static_cast<std::size_t>(k)];
        int other = node < m_ ? m_ + cell.col : cell.row;
        if (seen[static_cast<std::size_t>(other)]) continue;
        seen[static_cast<std::size_t>(other)] = true;
        double c = cost_[static_cast<std::size_t>(cell.row)]
                        [static_cast<std::size_t>(cell.col)];
        if (other >= m_)
          v_[static_cast<std::size_t>(other - m_)] =
              c - u_[static_cast<std::size_t>(cell.row)];
        else
          u_[static_cast<std::size_t>(other)] =
              c - v_[static_cast<std::size_t>(cell.col)];
        frontier.push(other);
      }
    }
  }

  bool find_entering(bool bland, int* enter_row, int* enter_col) const {
    std::vector<std::vector<bool>> basic(
        static_cast<std::size_t>(m_),
        std::vector<bool>(static_cast<std::size_t>(n_), false));
    for (const auto& cell : basis_)
      basic[static_cast<std::size_t>(cell.row)]
           [static_cast<std::size_t>(cell.col)] = true;
    double best = -kReducedCostTol;
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (basic[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
          continue;
        double reduced = cost_[static_cast<std::size_t>(i)]
                              [static_cast<std::size_t>(j)] -
                         u_[static_cast<std::size_t>(i)] -
                         v_[static_cast<std::size_t>(j)];
        if (reduced < -kReducedCostTol) {
          if (bland) {
            *enter_row = i;
            *enter_col = j;
            return true;  // first eligible in (i, j) order
          }
          if (reduced < best) {
            best = reduced;
            *enter_row = i;
            *enter_col = j;
          }
        }
      }
    }
    return *enter_row != -1;
  }

  void apply_pivot(int enter_row, int enter_col) {
    // tree path from column node (m + enter_col) back to row node enter_row
    std::vector<std::vector<std::pair<int, int>>> adjacency(
        static_cast<std::size_t>(m_ + n_));  // (neighbor, basis index)
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      int rn = basis_[k].row, cn = m_ + basis_[k].col;
      adjacency[static_cast<std::size_t>(rn)].push_back(
          {cn, static_cast<int>(k)});
      adjacency[static_cast<std::size_t>(cn)].push_back(
          {rn, static_cast<int>(k)});
    }
    std::vector<int> parent_node(static_cast<std::size_t>(m_ + n_), -1);
    std::vector<int> parent_edge(static_cast<std::size_t>(m_ + n_), -1);
    std::vector<bool> seen(static_cast<std::size_t>(m_ + n_), false);
    std::queue<int> frontier;
    int start = m_ + enter_col, goal = enter_row;
    seen[static_cast<std::size_t>(start)] = true;
    frontier.push(start);
    while (!frontier.empty()) {
      int node = frontier.front();
      frontier.pop();
      if (node == goal) break;
      for (const auto& [next, edge] :
           adjacency[static_cast<std::size_t>(node)]) {
        if (seen[static_cast<std::size_t>(next)]) continue;
        seen[static_cast<std::size_t>(next)] = true;
        parent_node[static_cast<std::size_t>(next)] = node;
        parent_edge[static_cast<std::size_t>(next)] = edge;
        frontier.push(next);
      }
    }
    // cycle: entering edge (+), then alternating (-, +, ...) along the path
    std::vector<int> minus_edges, plus_edges;
    bool minus = true;
    for (int node = goal; node != start;
         node = parent_node[static_cast<std::size_t>(node)]) {
      int edge = parent_edge[static_cast<std::size_t>(node)];
      (minus ? minus_edges : plus_edges).push_back(edge);
      minus = !minus;
    }
    double theta = std::numeric_limits<double>::infinity();
    int leaving = -1;
    for (int edge : minus_edges) {
      const BasicCell& cell = basis_[static_cast<std::size_t>(edge)];
      bool better =
          cell.flow < theta ||
          (cell.flow == theta && leaving != -1 &&
           std::pair<int, int>{cell.row, cell.col} <
               std::pair<int, int>{basis_[static_cast<std::size_t>(leaving)]
                                       .row,
                                   basis_[static_cast<std::size_t>(leaving)]
                                       .col});
      if (leaving == -1 || better) {
        theta = cell.flow;
        leaving = edge;
      }
    }
    for (int edge : minus_edges)
      basis_[static_cast<std::size_t>(edge)].flow -= theta;
    for (int edge : plus_edges)
      basis_[static_cast<std::size_t>(edge)].flow += theta;
    basis_[static_cast<std::size_t>(leaving)] = {enter_row, enter_col, theta};
  }

  std::vector<double> supply_, demand_;
  std::vector<std::vector<double>> cost_;
  int m_, n_;
  std::vector<BasicCell> basis_;
  std::vector<double> u_, v_;
};

std::vector<WeightedPoint> normalized_points(const WeightedPointSet& set,
                                             const char* side) {
  double total = 0.0;
  for (const auto& p : set.points) {
    if (p.weight < 0.0)
      throw ParameterError(std::string("movers_distance: negative weight in ") +
                           side + " set");
    total += p.weight;
  }
  if (total <= 0.0)
    throw InputError(std::string("movers_distance: ") + side +
                     " set has no positive weight");
  std::vector<WeightedPoint> points;
  for (const auto& p : set.points)
    if (p.weight > 0.0) points.push_back({p.vector, p.weight / total});
  return points;
}

}  // namespace

double movers_distance(const WeightedPointSet& a, const WeightedPointSet& b,
                       GroundMetric metric) {
  std::vector<WeightedPoint> pa = normalized_points(a, "first");
  std::vector<WeightedPoint> pb = normalized_points(b, "second");
  if (pa.size() > 500 || pb.size() > 500)
    throw ParameterError("movers_distance: more than 500 points per side");
  std::size_t dim = pa.front().vector.size();
  for (const auto& p : pa)
    if (p.vector.size() != dim)
      throw ParameterError("movers_distance: inconsistent dimensions");
  for (const auto& p : pb)
    if (p.vector.size() != dim)
      throw ParameterError("movers_distance: inconsistent dimensions");

  std::vector<std::vector<double>> cost(
      pa.size(), std::vector<double>(pb.size(), 0.0));
  for (std::size_t i = 0; i < pa.size(); ++i)
    for (std::size_t j = 0; j < pb.size(); ++j)
      cost[i][j] = metric == GroundMetric::kEuclidean
                       ? euclidean(pa[i].vector, pb[j].vector)
                       : 1.0 - cosine(pa[i].vector, pb[j].vector);

  std::vector<double> supply, demand;
  for (const auto& p : pa) supply.push_back(p.weight);
  for (const auto& p : pb) demand.push_back(p.weight);
  TransportSolver solver(std::move(supply), std::move(demand),
                         std::move(cost));
  return solver.solve();
}

}  // namespace summetrics::embedding
