#pragma once

namespace bcl {

/// Caps the OpenMP team size for subsequent parallel kernels. n <= 0 restores the default.
void set_thread_count(int n);
int max_threads();

/// Restores the previous cap when it goes out of scope.
class ScopedThreadCount {
 public:
  explicit ScopedThreadCount(int n);
  ~ScopedThreadCount();
  ScopedThreadCount(const ScopedThreadCount&) = delete;
  ScopedThreadCount& operator=(const ScopedThreadCount&) = delete;

 private:
  int previous_;
};

}  // namespace bcl
