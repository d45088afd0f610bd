#include "walkdist/common.hpp"

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>

namespace walkdist {

unsigned thread_count(int requested) {
  if (requested > 0) return static_cast<unsigned>(requested);
  if (const char* env = std::getenv("WALKDIST_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::size_t saturating_power(std::size_t n, int k) {
  std::size_t result = 1;
  for (int i = 0; i < k; ++i) {
    if (n != 0 && result > SIZE_MAX / n) return SIZE_MAX;
    result *= n;
  }
  return result;
}

std::size_t require_within_cap(std::size_t n, int k, std::size_t cap, const std::string& what) {
  std::size_t dim = saturating_power(n, k);
  if (dim > cap) throw RefusedError(dim, cap, what);
  return dim;
}

}  // namespace walkdist
