#include "mhduq/stochastic/collocation.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace mhduq::stochastic {

int clenshaw_curtis_size(int level) {
  if (level < 0) throw std::invalid_argument("Clenshaw-Curtis level must be >= 0");
  return level == 0 ? 1 : (1 << level) + 1;
}

Rule1d clenshaw_curtis_1d(int level) {
  const int m = clenshaw_curtis_size(level);
  Rule1d rule;
  if (m == 1) {
    rule.nodes = {0.0};
    rule.weights = {2.0};
    return rule;
  }
  const int n = m - 1;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int k = 0; k < m; ++k) {
    const double theta = std::numbers::pi * k / n;
    // Exact zero and exact symmetry for the nested midpoints.
    rule.nodes[k] = 2 * k == n ? 0.0 : std::cos(theta);
    double s = 0.0;
    for (int j = 1; j <= n / 2; ++j) {
      const double b = 2 * j == n ? 1.0 : 2.0;
      s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * theta);
    }
    const double c = (k == 0 || k == n) ? 1.0 : 2.0;
    rule.weights[k] = c / n * (1.0 - s);
  }
  for (int k = 0; k < m / 2; ++k) rule.nodes[m - 1 - k] = -rule.nodes[k];
  return rule;
}

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Enumerates all multi-indices l in N0^d with |l| = total.
void for_each_index(int d, int total, std::vector<int>& idx, int pos, const auto& fn) {
  if (pos == d - 1) {
    idx[pos] = total;
    fn(idx);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    idx[pos] = v;
    for_each_index(d, total - v, idx, pos + 1, fn);
  }
}

}  // namespace

SparseGrid smolyak_grid(int dimension, int level) {
  if (dimension < 1) throw std::invalid_argument("sparse grid dimension must be >= 1");
  if (level < 0) throw std::invalid_argument("sparse grid level must be >= 0");
  const int d = dimension, L = level;
  std::vector<Rule1d> rules;
  for (int l = 0; l <= L; ++l) rules.push_back(clenshaw_curtis_1d(l));

  // Points keyed by rounded coordinates so nested nodes from different levels coincide.
  std::map<std::vector<long long>, std::size_t> index;
  SparseGrid grid;
  const double density = std::pow(0.5, d);
  std::vector<int> idx(d);
  for (int total = std::max(0, L - d + 1); total <= L; ++total) {
    const double coef = ((L - total) % 2 == 0 ? 1.0 : -1.0) * binomial(d - 1, L - total);
    if (coef == 0.0) continue;
    for_each_index(d, total, idx, 0, [&](const std::vector<int>& lv) {
      std::vector<int> pos(d, 0);
      while (true) {
        std::vector<double> point(d);
        std::vector<long long> key(d);
        double w = coef * density;
        for (int k = 0; k < d; ++k) {
          const Rule1d& r = rules[lv[k]];
          point[k] = r.nodes[pos[k]];
          w *= r.weights[pos[k]];
          key[k] = std::llround(point[k] * 1e12);
        }
        const auto [it, inserted] = index.emplace(key, grid.points.size());
        if (inserted) {
          grid.points.push_back(point);
          grid.weights.push_back(w);
        } else {
          grid.weights[it->second] += w;
        }
        int k = 0;
        while (k < d && ++pos[k] == static_cast<int>(rules[lv[k]].nodes.size())) pos[k++] = 0;
        if (k == d) break;
      }
    });
  }
  return grid;
}

}  // namespace mhduq::stochastic
