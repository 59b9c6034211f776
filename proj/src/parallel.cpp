#include "hyperorbit/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace hyperorbit {

namespace {
int g_workers = 0;
}

int workers_from_env() {
  const char* env = std::getenv("HYPERORBIT_WORKERS");
  if (env == nullptr) return 0;
  try {
    int n = std::stoi(env);
    return n > 0 ? n : 0;
  } catch (...) {
    return 0;
  }
}

int workers() {
  if (g_workers > 0) return g_workers;
  if (int env = workers_from_env(); env > 0) return env;
  return omp_get_num_procs();
}

void set_workers(int n) {
  g_workers = n > 0 ? n : 0;
  omp_set_num_threads(workers());
}

}  // namespace hyperorbit
