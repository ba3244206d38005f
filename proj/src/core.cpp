#include "squeezemap/core.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace sqz {

namespace {

// Kuhn augmenting-path matching restricted to pairs with distance <= thr.
bool feasible(const std::vector<std::vector<double>>& d, double thr) {
  const int n = static_cast<int>(d.size());
  std::vector<int> match(n, -1);
  std::vector<char> used;
  std::function<bool(int)> augment = [&](int i) -> bool {
    for (int j = 0; j < n; ++j) {
      if (d[i][j] > thr || used[j]) continue;
      used[j] = 1;
      if (match[j] < 0 || augment(match[j])) {
        match[j] = i;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    used.assign(n, 0);
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

// Bottleneck matching distance: the smallest t such that the two spectra can
// be paired with every pair within t.  Sorting-based comparisons are not
// stable when eigenvalues share real parts up to roundoff.
double multiset_distance(Vec a, Vec b) {
  if (a.size() != b.size())
    throw DimensionMismatchError("multiset_distance: size mismatch");
  const int n = static_cast<int>(a.size());
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  std::vector<double> thresholds;
  thresholds.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      d[i][j] = std::abs(a(i) - b(j));
      thresholds.push_back(d[i][j]);
    }
  std::sort(thresholds.begin(), thresholds.end());
  // binary search the smallest feasible threshold
  int lo = 0, hi = static_cast<int>(thresholds.size()) - 1;
  if (feasible(d, thresholds[lo])) return thresholds[lo];
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (feasible(d, thresholds[mid]) ? hi : lo) = mid;
  }
  return thresholds[hi];
}

}  // namespace sqz
