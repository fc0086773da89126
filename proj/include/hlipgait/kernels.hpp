#pragma once

#include <cstddef>

#include "hlipgait/planar_models.hpp"

namespace hlipgait::kernels {

// All grids are channel-major: channel c of point k lives at q[c * n + k].
struct KernelTable {
  const char* name;

  // ctrl: channels x (degree+1), row-major. s: normalized times in [0, 1].
  // out: channels x n.
  void (*bezier_grid)(const double* ctrl, int degree, int channels, const double* s,
                      std::size_t n, double* out);
  void (*clearance_x)(const double* q, std::size_t n, const XComCoeffs& c, double* out);
  void (*com_x)(const double* q, std::size_t n, const XComCoeffs& c, double* out_x,
                double* out_z);
  void (*clearance_y)(const double* q, std::size_t n, const YComCoeffs& c, double* out);
  void (*com_y)(const double* q, std::size_t n, const YComCoeffs& c, double* out_y,
                double* out_z);
  // Elementwise sin and cos; the reference uses libm.
  void (*sincos)(const double* x, std::size_t n, double* out_sin, double* out_cos);
};

const KernelTable& scalar_table();
// Null when the binary was built without AVX2 support.
const KernelTable* avx2_table();

bool cpu_has_avx2();

// Selected once: AVX2+FMA if the CPU has it, unless HLIPGAIT_ISA=scalar.
const KernelTable& active();

}  // namespace hlipgait::kernels
