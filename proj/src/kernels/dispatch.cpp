#include <atomic>
#include <cstdlib>
#include <string_view>

#include "duelbench/kernels.hpp"

namespace duelbench::kernels {

#if DUELBENCH_HAVE_AVX2
const Table& avx2_table_impl();
#endif

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if DUELBENCH_HAVE_AVX2
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported;
#else
  return false;
#endif
}

const Table* avx2_table() {
#if DUELBENCH_HAVE_AVX2
  if (avx2_available()) return &avx2_table_impl();
#endif
  return nullptr;
}

namespace {

Isa default_isa() {
  if (const char* env = std::getenv("DUELBENCH_SIMD")) {
    if (std::string_view(env) == "scalar") return Isa::scalar;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

const Table* table_for(Isa isa) {
  if (isa == Isa::avx2) {
    if (const Table* t = avx2_table()) return t;
  }
  return &scalar_table();
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> table{table_for(default_isa())};
  return table;
}

}  // namespace

const Table& active() { return *current().load(std::memory_order_relaxed); }

Isa active_isa() { return &active() == &scalar_table() ? Isa::scalar : Isa::avx2; }

void force_isa(Isa isa) { current().store(table_for(isa), std::memory_order_relaxed); }

}  // namespace duelbench::kernels
