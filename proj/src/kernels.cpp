#include <cstdlib>
#include <string>

#include "hlipgait/kernels.hpp"

namespace hlipgait::kernels {

namespace {

const KernelTable& select() {
  const char* env = std::getenv("HLIPGAIT_ISA");
  const std::string want = env ? env : "";
  if (want == "scalar") return scalar_table();
  const KernelTable* simd = avx2_table();
  if (simd && cpu_has_avx2()) return *simd;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace hlipgait::kernels
