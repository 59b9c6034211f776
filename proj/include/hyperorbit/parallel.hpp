#pragma once

namespace hyperorbit {

/// Worker count used by every OpenMP region in the library.
/// Resolution order: explicit set_workers(), HYPERORBIT_WORKERS, hardware.
int workers();
void set_workers(int n);

/// Value of HYPERORBIT_WORKERS if set to a positive integer, else 0.
int workers_from_env();

}  // namespace hyperorbit
