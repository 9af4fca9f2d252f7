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

// Independent reference implementations, deliberately written the slow and
// obvious way. These never share code with the library under test.

#ifndef SUMMETRICS_TESTS_ORACLE_HELPERS_HPP_
#define SUMMETRICS_TESTS_ORACLE_HELPERS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

// --- n-gram overlap ------------------------------------------------------

inline std::map<std::vector<std::string>, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::map<std::vector<std::string>, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i)
    ++counts[std::vector<std::string>(tokens.begin() + i,
                                      tokens.begin() + i + n)];
  return counts;
}

struct PrfTriple {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

inline PrfTriple rouge_n_single(const std::vector<std::string>& cand,
                                const std::vector<std::string>& ref, int n) {
  auto c = ngram_counts(cand, n);
  auto r = ngram_counts(ref, n);
  long long overlap = 0, c_total = 0, r_total = 0;
  for (const auto& [gram, count] : c) c_total += count;
  for (const auto& [gram, count] : r) r_total += count;
  for (const auto& [gram, count] : c) {
    auto it = r.find(gram);
    if (it != r.end()) overlap += std::min(count, it->second);
  }
  PrfTriple out;
  out.precision = c_total == 0 ? 0.0 : double(overlap) / double(c_total);
  out.recall = r_total == 0 ? 0.0 : double(overlap) / double(r_total);
  double pr = out.precision + out.recall;
  out.f = pr == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / pr;
  return out;
}

// LCS by subsequence enumeration: every subsequence of `a` (bitmask) is
// tested for being a subsequence of `b`. Only sane for |a| <= ~16.
inline std::size_t lcs_exhaustive(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << a.size()); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask & (1u << i)) sub.push_back(a[i]);
    if (sub.size() <= best) continue;
    std::size_t j = 0;
    for (const auto& tok : b) {
      if (j < sub.size() && tok == sub[j]) ++j;
    }
    if (j == sub.size()) best = sub.size();
  }
  return best;
}

inline PrfTriple prf_from_lcs(std::size_t lcs, std::size_t cand_len,
                              std::size_t ref_len) {
  PrfTriple out;
  out.precision = cand_len == 0 ? 0.0 : double(lcs) / double(cand_len);
  out.recall = ref_len == 0 ? 0.0 : double(lcs) / double(ref_len);
  double pr = out.precision + out.recall;
  out.f = pr == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / pr;
  return out;
}

// --- rank correlation -----------------------------------------------------

// Quadratic pair enumeration with tie counts. Final expression mirrors the
// textbook tau-b definition; numerator and denominators are exact integers.
inline std::optional<double> kendall_pairs(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  std::size_t n = x.size();
  long long concordant = 0, discordant = 0, ties_x = 0, ties_y = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0.0 && dy == 0.0) {
        ++ties_x;
        ++ties_y;
      } else if (dx == 0.0) {
        ++ties_x;
      } else if (dy == 0.0) {
        ++ties_y;
      } else if ((dx > 0.0) == (dy > 0.0)) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  long long total = static_cast<long long>(n) * (n - 1) / 2;
  long long den1 = total - ties_x;
  long long den2 = total - ties_y;
  if (den1 == 0 || den2 == 0) return std::nullopt;
  return double(concordant - discordant) /
         std::sqrt(double(den1) * double(den2));
}

// --- transport ------------------------------------------------------------

// Minimal transportation cost by enumerating every spanning-tree basis of
// the bipartite supply/demand graph and solving its flows by leaf
// elimination. Exact for the sizes the tests use (<= 4 x 4).
inline double transport_exhaustive(const std::vector<double>& supply,
                                   const std::vector<double>& demand,
                                   const std::vector<std::vector<double>>& cost) {
  int m = static_cast<int>(supply.size());
  int n = static_cast<int>(demand.size());
  int cells = m * n;
  int basis_size = m + n - 1;
  double best = -1.0;

  std::vector<int> pick(basis_size);
  // iterate over combinations of `basis_size` cells out of `cells`
  for (int i = 0; i < basis_size; ++i) pick[i] = i;
  while (true) {
    // solve flows on this candidate basis by repeatedly peeling leaves
    std::vector<double> row_left = supply, col_left = demand;
    std::vector<std::pair<int, int>> edges;
    for (int p : pick) edges.push_back({p / n, p % n});
    std::vector<bool> used(edges.size(), false);
    std::vector<int> row_deg(m, 0), col_deg(n, 0);
    for (auto [r, c] : edges) {
      ++row_deg[r];
      ++col_deg[c];
    }
    double total_cost = 0.0;
    bool feasible = true;
    for (int step = 0; step < basis_size; ++step) {
      int found = -1;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (used[e]) continue;
        auto [r, c] = edges[e];
        if (row_deg[r] == 1 || col_deg[c] == 1) {
          found = static_cast<int>(e);
          break;
        }
      }
      if (found < 0) {
        feasible = false;  // a cycle: not a tree basis
        break;
      }
      auto [r, c] = edges[found];
      double flow = row_deg[r] == 1 ? row_left[r] : col_left[c];
      if (flow < -1e-9) {
        feasible = false;
        break;
      }
      row_left[r] -= flow;
      col_left[c] -= flow;
      used[found] = true;
      --row_deg[r];
      --col_deg[c];
      total_cost += std::max(flow, 0.0) * cost[r][c];
    }
    if (feasible) {
      // every node must end settled for a spanning basis
      for (int r = 0; r < m && feasible; ++r)
        if (std::abs(row_left[r]) > 1e-9) feasible = false;
      for (int c = 0; c < n && feasible; ++c)
        if (std::abs(col_left[c]) > 1e-9) feasible = false;
    }
    if (feasible && (best < 0.0 || total_cost < best)) best = total_cost;

    // next combination
    int i = basis_size - 1;
    while (i >= 0 && pick[i] == cells - basis_size + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < basis_size; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

// --- agreement ------------------------------------------------------------

// Direct per-pair interval alpha, no coincidence matrix.
inline std::optional<double> krippendorff_pairs(
    const std::vector<std::vector<double>>& units) {
  std::vector<std::vector<double>> pairable;
  std::size_t n = 0;
  for (const auto& u : units) {
    if (u.size() >= 2) {
      pairable.push_back(u);
      n += u.size();
    }
  }
  if (n < 2) return std::nullopt;

  double observed = 0.0;
  for (const auto& u : pairable) {
    double unit_sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j)
        if (i != j) unit_sum += (u[i] - u[j]) * (u[i] - u[j]);
    observed += unit_sum / double(u.size() - 1);
  }
  observed /= double(n);

  std::vector<double> all;
  for (const auto& u : pairable)
    for (double v : u) all.push_back(v);
  double expected = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      if (i != j) expected += (all[i] - all[j]) * (all[i] - all[j]);
  expected /= double(n) * double(n - 1);

  if (expected == 0.0) return std::nullopt;
  return 1.0 - observed / expected;
}

// --- deterministic rng ----------------------------------------------------

// splitmix64: tiny, seedable, stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  // uniform double in [0, 1)
  double real() { return double(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace oracle

#endif  // SUMMETRICS_TESTS_ORACLE_HELPERS_HPP_
