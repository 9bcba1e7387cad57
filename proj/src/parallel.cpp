#include "bargmann/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bargmann::parallel {

namespace {
int default_threads() {
#ifdef _OPENMP
  return omp_get_num_procs();
#else
  return 1;
#endif
}
}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n > 0 ? n : default_threads());
#else
  (void)n;
#endif
}

}  // namespace bargmann::parallel
