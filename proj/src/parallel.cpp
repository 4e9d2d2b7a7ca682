#include "bcl/parallel.hpp"

#include <omp.h>

namespace bcl {

namespace {
const int kDefaultThreads = omp_get_max_threads();
}

void set_thread_count(int n) { omp_set_num_threads(n > 0 ? n : kDefaultThreads); }

int max_threads() { return omp_get_max_threads(); }

ScopedThreadCount::ScopedThreadCount(int n) : previous_(omp_get_max_threads()) { set_thread_count(n); }

ScopedThreadCount::~ScopedThreadCount() { omp_set_num_threads(previous_); }

}  // namespace bcl
