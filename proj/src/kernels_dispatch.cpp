#include <atomic>
#include <cstdlib>

#include "nlslab/kernels.hpp"

namespace nlslab::kernels {
namespace {

std::atomic<const Backend*> forced{nullptr};

const Backend* pick() {
  if (const char* env = std::getenv("NLSLAB_FORCE_SCALAR"); env && env[0] == '1') {
    return &scalar_backend();
  }
  if (const Backend* b = avx2_backend()) return b;
  return &scalar_backend();
}

}  // namespace

const Backend& active() {
  if (const Backend* f = forced.load(std::memory_order_relaxed)) return *f;
  static const Backend* chosen = pick();
  return *chosen;
}

void force_backend(const Backend* b) { forced.store(b, std::memory_order_relaxed); }

}  // namespace nlslab::kernels
