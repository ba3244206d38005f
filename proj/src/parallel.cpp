#include "squeezemap/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef SQUEEZEMAP_HAVE_OPENMP
#include <omp.h>
#endif

namespace sqz::parallel {

namespace {
std::atomic<bool> g_enabled{true};
}

bool enabled() {
#ifdef SQUEEZEMAP_HAVE_OPENMP
  return g_enabled.load();
#else
  return false;
#endif
}

void set_enabled(bool on) { g_enabled.store(on); }

void set_max_threads(int n) {
#ifdef SQUEEZEMAP_HAVE_OPENMP
  if (n >= 1) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

void configure_from_environment() {
  const char* env = std::getenv("SQUEEZEMAP_THREADS");
  if (!env) return;
  int n = std::atoi(env);
  if (n == 1) set_enabled(false);
  if (n >= 1) set_max_threads(n);
}

void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& body) {
#ifdef SQUEEZEMAP_HAVE_OPENMP
  if (enabled()) {
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (Eigen::Index i = 0; i < n; ++i) body(i);
}

}  // namespace sqz::parallel
