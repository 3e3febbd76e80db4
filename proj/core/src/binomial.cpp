#include "bernopt/binomial.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bernopt {
namespace {

struct PascalCache {
  std::mutex mutex;
  std::vector<std::vector<double>> rows;
  int cap;

  PascalCache() : cap(64) {
    if (const char* env = std::getenv("BERNOPT_MAX_DEGREE")) {
      const int v = std::atoi(env);
      if (v > 0) cap = v;
    }
  }

  void grow_to(int n) {
    while (static_cast<int>(rows.size()) <= n) {
      const int m = static_cast<int>(rows.size());
      std::vector<double> row(m + 1, 1.0);
      for (int k = 1; k < m; ++k) row[k] = rows[m - 1][k - 1] + rows[m - 1][k];
      rows.push_back(std::move(row));
    }
  }
};

PascalCache& cache() {
  static PascalCache c;
  return c;
}

double binomial_direct(int n, int k) {
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

}  // namespace

double binomial(int n, int k) {
  if (n < 0) throw std::domain_error("binomial: negative n");
  if (k < 0 || k > n) return 0.0;
  auto& c = cache();
  {
    std::lock_guard<std::mutex> lock(c.mutex);
    if (n <= c.cap) {
      c.grow_to(n);
      return c.rows[n][k];
    }
  }
  return binomial_direct(n, k);
}

int binomial_cache_cap() {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  return c.cap;
}

void set_binomial_cache_cap(int cap) {
  if (cap < 0) throw std::domain_error("binomial cache cap must be >= 0");
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  c.cap = cap;
}

}  // namespace bernopt
