#pragma once

namespace bnmoo {

/// Serial kernels are the reference; Parallel uses OpenMP and must produce
/// identical results.
enum class ExecPolicy { Serial, Parallel };

/// Threads for Parallel kernels; 0 leaves the OpenMP default.
void set_thread_count(int threads);
int max_threads();

}  // namespace bnmoo
