#pragma once

// Thread-count policy shared by every OpenMP kernel in the library.
// The environment variable HANKEL_LP_THREADS caps parallelism; a
// programmatic limit (set by the CLI from its config file) takes precedence.

namespace hlp {

// Number of threads a parallel region should use (always >= 1).
int thread_count();

// Override the thread cap; n <= 0 restores the environment/default policy.
void set_thread_limit(int n);

}  // namespace hlp
