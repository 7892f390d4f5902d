#include "bnmoo/exec.hpp"

#include <omp.h>

namespace bnmoo {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace bnmoo
