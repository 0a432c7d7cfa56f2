#pragma once

namespace chd {

/// Number of worker threads kernels may use. Defaults to the OpenMP limit,
/// capped by the CLICK_HOMODYNE_THREADS environment variable when set.
/// Always >= 1; 1 when built without OpenMP.
int thread_count();

/// Programmatic cap (benchmarks, tests). cap <= 0 restores the default.
void set_thread_cap(int cap);

}  // namespace chd
