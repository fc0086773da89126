// AVX2 + FMA grid kernels. Functions carry target attributes instead of the
// whole file being built with -mavx2, so nothing here runs on a CPU without it
// unless dispatch selected this table.
#include "hlipgait/kernels.hpp"
#include "kernels_internal.hpp"

#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
#define HLIPGAIT_HAVE_AVX2 1
#include <immintrin.h>
#endif

namespace hlipgait::kernels {

#ifdef HLIPGAIT_HAVE_AVX2

#define HLIPGAIT_AVX2 __attribute__((target("avx2,fma")))

namespace {

// pi/2 split in three parts; the leading parts have short mantissas so k * P
// is exact for every k the kernels see.
constexpr double kP1 = 1.570796310901641845703125;
constexpr double kP2 = 1.589325471229585672428e-8;
constexpr double kP3 = 6.123233995736766035868e-17;

constexpr double kSin[6] = {1.58962301576546568060E-10, -2.50507477628578072866E-8,
                            2.75573136213857245213E-6,  -1.98412698295895385996E-4,
                            8.33333333332211858878E-3,  -1.66666666666666307295E-1};
constexpr double kCos[6] = {-1.13585365213876817300E-11, 2.08757008419747316778E-9,
                            -2.75573141792967388112E-7,  2.48015872888517045348E-5,
                            -1.38888888888730564116E-3,  4.16666666666665929218E-2};

HLIPGAIT_AVX2 inline __m256d poly6(__m256d z, const double* c) {
  __m256d r = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) r = _mm256_fmadd_pd(r, z, _mm256_set1_pd(c[i]));
  return r;
}

HLIPGAIT_AVX2 inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(0.63661977236758134308)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kP1), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kP2), r);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kP3), r);
  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, kSin), r);
  const __m256d cr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kCos),
                                     _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z,
                                                      _mm256_set1_pd(1.0)));

  // Quadrant k mod 4, kept in double arithmetic.
  const __m256d q = _mm256_fnmadd_pd(
      _mm256_set1_pd(4.0), _mm256_floor_pd(_mm256_mul_pd(k, _mm256_set1_pd(0.25))), k);
  const __m256d odd = _mm256_cmp_pd(
      _mm256_fnmadd_pd(_mm256_set1_pd(2.0), _mm256_floor_pd(_mm256_mul_pd(q, _mm256_set1_pd(0.5))), q),
      _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d neg_s = _mm256_cmp_pd(q, _mm256_set1_pd(1.5), _CMP_GT_OQ);
  const __m256d neg_c = _mm256_and_pd(_mm256_cmp_pd(q, _mm256_set1_pd(0.5), _CMP_GT_OQ),
                                      _mm256_cmp_pd(q, _mm256_set1_pd(2.5), _CMP_LT_OQ));
  const __m256d sign = _mm256_set1_pd(-0.0);
  s = _mm256_xor_pd(_mm256_blendv_pd(sr, cr, odd), _mm256_and_pd(neg_s, sign));
  c = _mm256_xor_pd(_mm256_blendv_pd(cr, sr, odd), _mm256_and_pd(neg_c, sign));
}

// Loads lanes k..k+3 of each channel, zero-padding past n.
template <int C>
HLIPGAIT_AVX2 inline void load_lanes(const double* q, std::size_t n, std::size_t k, __m256d* v) {
  if (k + 4 <= n) {
    for (int ch = 0; ch < C; ++ch) v[ch] = _mm256_loadu_pd(q + ch * n + k);
    return;
  }
  alignas(32) double buf[4];
  for (int ch = 0; ch < C; ++ch) {
    for (int l = 0; l < 4; ++l) buf[l] = (k + l < n) ? q[ch * n + k + l] : 0.0;
    v[ch] = _mm256_load_pd(buf);
  }
}

HLIPGAIT_AVX2 inline void store_lanes(double* out, std::size_t n, std::size_t k, __m256d v) {
  if (k + 4 <= n) {
    _mm256_storeu_pd(out + k, v);
    return;
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, v);
  for (std::size_t l = 0; k + l < n; ++l) out[k + l] = buf[l];
}

constexpr int kMaxDegree = 32;
constexpr int kMaxTailChannels = 64;

HLIPGAIT_AVX2 void bezier_grid_avx2(const double* ctrl, int degree, int channels,
                                    const double* s, std::size_t n, double* out) {
  if (degree > kMaxDegree || channels > kMaxTailChannels) {
    detail::bezier_grid_reference(ctrl, degree, channels, s, n, out);
    return;
  }
  double binom[kMaxDegree + 1];
  for (int j = 0; j <= degree; ++j) binom[j] = detail::binomial_coeff(degree, j);
  __m256d sp[kMaxDegree + 1], up[kMaxDegree + 1], basis[kMaxDegree + 1];
  const std::size_t body = n - n % 4;
  for (std::size_t k = 0; k < body; k += 4) {
    const __m256d t = _mm256_loadu_pd(s + k);
    const __m256d u = _mm256_sub_pd(_mm256_set1_pd(1.0), t);
    sp[0] = up[0] = _mm256_set1_pd(1.0);
    for (int j = 1; j <= degree; ++j) {
      sp[j] = _mm256_mul_pd(sp[j - 1], t);
      up[j] = _mm256_mul_pd(up[j - 1], u);
    }
    for (int j = 0; j <= degree; ++j) {
      basis[j] = _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(binom[j]), sp[j]), up[degree - j]);
    }
    for (int c = 0; c < channels; ++c) {
      const double* row = ctrl + c * (degree + 1);
      __m256d acc = _mm256_setzero_pd();
      for (int j = 0; j <= degree; ++j) {
        acc = _mm256_fmadd_pd(basis[j], _mm256_set1_pd(row[j]), acc);
      }
      _mm256_storeu_pd(out + c * n + k, acc);
    }
  }
  if (body < n) {
    // Tail points go through the reference path into a scratch block.
    const std::size_t rest = n - body;
    double tail[4 * kMaxTailChannels];
    detail::bezier_grid_reference(ctrl, degree, channels, s + body, rest, tail);
    for (int c = 0; c < channels; ++c) {
      for (std::size_t l = 0; l < rest; ++l) out[c * n + body + l] = tail[c * rest + l];
    }
  }
}

HLIPGAIT_AVX2 void clearance_x_avx2(const double* q, std::size_t n, const XComCoeffs& c,
                                    double* out) {
  const __m256d l1 = _mm256_set1_pd(c.l1), l2 = _mm256_set1_pd(c.l2);
  for (std::size_t k = 0; k < n; k += 4) {
    __m256d v[4];
    load_lanes<4>(q, n, k, v);
    __m256d s12, c12, s2, c2, s3, c3, s34, c34;
    sincos4(_mm256_add_pd(v[0], v[1]), s12, c12);
    sincos4(v[1], s2, c2);
    sincos4(v[2], s3, c3);
    sincos4(_mm256_add_pd(v[2], v[3]), s34, c34);
    const __m256d g = _mm256_fmadd_pd(l1, _mm256_sub_pd(c12, c34),
                                      _mm256_mul_pd(l2, _mm256_sub_pd(c2, c3)));
    store_lanes(out, n, k, g);
  }
}

HLIPGAIT_AVX2 void com_x_avx2(const double* q, std::size_t n, const XComCoeffs& c, double* ox,
                              double* oz) {
  const __m256d a12 = _mm256_set1_pd(c.a12), a2 = _mm256_set1_pd(c.a2),
                a3 = _mm256_set1_pd(c.a3), a34 = _mm256_set1_pd(c.a34),
                a5 = _mm256_set1_pd(c.a5), im = _mm256_set1_pd(c.inv_mass);
  for (std::size_t k = 0; k < n; k += 4) {
    __m256d v[5];
    load_lanes<5>(q, n, k, v);
    __m256d s[5], co[5];
    sincos4(_mm256_add_pd(v[0], v[1]), s[0], co[0]);
    sincos4(v[1], s[1], co[1]);
    sincos4(v[2], s[2], co[2]);
    sincos4(_mm256_add_pd(v[2], v[3]), s[3], co[3]);
    sincos4(v[4], s[4], co[4]);
    __m256d x = _mm256_mul_pd(a12, s[0]);
    x = _mm256_fmadd_pd(a2, s[1], x);
    x = _mm256_fmadd_pd(a3, s[2], x);
    x = _mm256_fmadd_pd(a34, s[3], x);
    x = _mm256_fmadd_pd(a5, s[4], x);
    __m256d z = _mm256_mul_pd(a12, co[0]);
    z = _mm256_fmadd_pd(a2, co[1], z);
    z = _mm256_fmadd_pd(a3, co[2], z);
    z = _mm256_fmadd_pd(a34, co[3], z);
    z = _mm256_fmadd_pd(a5, co[4], z);
    store_lanes(ox, n, k, _mm256_mul_pd(x, im));
    store_lanes(oz, n, k, _mm256_mul_pd(z, im));
  }
}

HLIPGAIT_AVX2 void clearance_y_avx2(const double* q, std::size_t n, const YComCoeffs& c,
                                    double* out) {
  const __m256d ly1 = _mm256_set1_pd(c.ly1), ly2 = _mm256_set1_pd(c.ly2);
  for (std::size_t k = 0; k < n; k += 4) {
    __m256d v[2];
    load_lanes<2>(q, n, k, v);
    __m256d s1, c1, s2, c2;
    sincos4(v[0], s1, c1);
    sincos4(v[1], s2, c2);
    store_lanes(out, n, k, _mm256_fmsub_pd(ly2, c2, _mm256_mul_pd(ly1, c1)));
  }
}

HLIPGAIT_AVX2 void com_y_avx2(const double* q, std::size_t n, const YComCoeffs& c, double* oy,
                              double* oz) {
  const __m256d b1 = _mm256_set1_pd(c.b1), b2 = _mm256_set1_pd(c.b2),
                b3 = _mm256_set1_pd(c.b3), im = _mm256_set1_pd(c.inv_mass);
  for (std::size_t k = 0; k < n; k += 4) {
    __m256d v[3];
    load_lanes<3>(q, n, k, v);
    __m256d s[3], co[3];
    for (int i = 0; i < 3; ++i) sincos4(v[i], s[i], co[i]);
    __m256d y = _mm256_mul_pd(b1, s[0]);
    y = _mm256_fnmadd_pd(b2, s[1], y);
    y = _mm256_fmadd_pd(b3, s[2], y);
    __m256d z = _mm256_mul_pd(b3, co[2]);
    z = _mm256_fnmadd_pd(b1, co[0], z);
    z = _mm256_fnmadd_pd(b2, co[1], z);
    store_lanes(oy, n, k, _mm256_mul_pd(y, im));
    store_lanes(oz, n, k, _mm256_mul_pd(z, im));
  }
}

HLIPGAIT_AVX2 void sincos_avx2(const double* x, std::size_t n, double* os, double* oc) {
  for (std::size_t k = 0; k < n; k += 4) {
    __m256d v[1];
    load_lanes<1>(x, n, k, v);
    __m256d s, c;
    sincos4(v[0], s, c);
    store_lanes(os, n, k, s);
    store_lanes(oc, n, k, c);
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2",     bezier_grid_avx2, clearance_x_avx2, com_x_avx2,
                                 clearance_y_avx2, com_y_avx2,       sincos_avx2};
  return &table;
}

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

const KernelTable* avx2_table() { return nullptr; }
bool cpu_has_avx2() { return false; }

#endif

}  // namespace hlipgait::kernels
