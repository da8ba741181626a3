#pragma once

namespace jumpvex {

/// Applies the JUMPVEX_THREADS environment variable (when set) as a cap on
/// the OpenMP thread count; defaults to the machine's cores otherwise.
/// Returns the thread count in effect.
int init_threads();

}  // namespace jumpvex
