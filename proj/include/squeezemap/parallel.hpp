#pragma once

#include <Eigen/Dense>
#include <functional>

namespace sqz::parallel {

/// Returns true when the library was built with OpenMP and parallel
/// execution has not been disabled at runtime.
bool enabled();

/// Runtime toggle; the serial path is the reference implementation used by
/// the consistency tests and benchmarks.
void set_enabled(bool on);

/// Caps the OpenMP thread count.  Values < 1 are ignored.
void set_max_threads(int n);

/// Reads SQUEEZEMAP_THREADS and applies it (0 or unset leaves the default).
void configure_from_environment();

/// Data-parallel map over [0, n).  The body must write only to its own index
/// slot; no reduction is performed here, so results are deterministic and
/// identical to the serial path.
void parallel_for(Eigen::Index n, const std::function<void(Eigen::Index)>& body);

}  // namespace sqz::parallel
