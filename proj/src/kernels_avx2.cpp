#include "kge/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define KGE_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define KGE_HAVE_AVX2_BUILD 0
#endif

namespace kge::kernels {

#if KGE_HAVE_AVX2_BUILD
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sw = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sw));
}

double triple_dot_re_avx2(const double* rr, const double* ri, const double* hr,
                          const double* hi, const double* tr, const double* ti,
                          std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vrr = _mm256_loadu_pd(rr + i);
    __m256d vri = _mm256_loadu_pd(ri + i);
    __m256d vhr = _mm256_loadu_pd(hr + i);
    __m256d vhi = _mm256_loadu_pd(hi + i);
    __m256d wr = _mm256_fmsub_pd(vrr, vhr, _mm256_mul_pd(vri, vhi));
    __m256d wi = _mm256_fmadd_pd(vrr, vhi, _mm256_mul_pd(vri, vhr));
    acc = _mm256_fmadd_pd(wr, _mm256_loadu_pd(tr + i), acc);
    acc = _mm256_fmadd_pd(wi, _mm256_loadu_pd(ti + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) {
    double wr = rr[i] * hr[i] - ri[i] * hi[i];
    double wi = rr[i] * hi[i] + ri[i] * hr[i];
    out += wr * tr[i] + wi * ti[i];
  }
  return out;
}

double hermitian_dot_re_avx2(const double* ur, const double* ui, const double* vr,
                             const double* vi, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(ur + i), _mm256_loadu_pd(vr + i), acc);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(ui + i), _mm256_loadu_pd(vi + i), acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += ur[i] * vr[i] + ui[i] * vi[i];
  return out;
}

void cmul_avx2(const double* ur, const double* ui, const double* vr,
               const double* vi, double* wr, double* wi, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(ur + i);
    __m256d b = _mm256_loadu_pd(ui + i);
    __m256d c = _mm256_loadu_pd(vr + i);
    __m256d d = _mm256_loadu_pd(vi + i);
    _mm256_storeu_pd(wr + i, _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d)));
    _mm256_storeu_pd(wi + i, _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c)));
  }
  for (; i < n; ++i) {
    double re = ur[i] * vr[i] - ui[i] * vi[i];
    double im = ur[i] * vi[i] + ui[i] * vr[i];
    wr[i] = re;
    wi[i] = im;
  }
}

void mobius_apply_avx2(const double* ar, const double* ai, const double* br,
                       const double* bi, const double* cr, const double* ci,
                       const double* dr, const double* di, const double* xr,
                       const double* xi, double* yr, double* yi, std::size_t n) {
  const __m256d eps = _mm256_set1_pd(kMobiusEps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vxr = _mm256_loadu_pd(xr + i);
    __m256d vxi = _mm256_loadu_pd(xi + i);
    __m256d var = _mm256_loadu_pd(ar + i);
    __m256d vai = _mm256_loadu_pd(ai + i);
    __m256d nr = _mm256_add_pd(
        _mm256_fmsub_pd(var, vxr, _mm256_mul_pd(vai, vxi)), _mm256_loadu_pd(br + i));
    __m256d ni = _mm256_add_pd(
        _mm256_fmadd_pd(var, vxi, _mm256_mul_pd(vai, vxr)), _mm256_loadu_pd(bi + i));
    __m256d vcr = _mm256_loadu_pd(cr + i);
    __m256d vci = _mm256_loadu_pd(ci + i);
    __m256d mr = _mm256_add_pd(
        _mm256_fmsub_pd(vcr, vxr, _mm256_mul_pd(vci, vxi)), _mm256_loadu_pd(dr + i));
    __m256d mi = _mm256_add_pd(
        _mm256_fmadd_pd(vcr, vxi, _mm256_mul_pd(vci, vxr)), _mm256_loadu_pd(di + i));
    __m256d s = _mm256_fmadd_pd(mr, mr, _mm256_mul_pd(mi, mi));
    s = _mm256_max_pd(s, eps);
    _mm256_storeu_pd(yr + i,
                     _mm256_div_pd(_mm256_fmadd_pd(nr, mr, _mm256_mul_pd(ni, mi)), s));
    _mm256_storeu_pd(yi + i,
                     _mm256_div_pd(_mm256_fmsub_pd(ni, mr, _mm256_mul_pd(nr, mi)), s));
  }
  for (; i < n; ++i) {
    double nr = ar[i] * xr[i] - ai[i] * xi[i] + br[i];
    double ni = ar[i] * xi[i] + ai[i] * xr[i] + bi[i];
    double mr = cr[i] * xr[i] - ci[i] * xi[i] + dr[i];
    double mi = cr[i] * xi[i] + ci[i] * xr[i] + di[i];
    double s = mr * mr + mi * mi;
    if (s < kMobiusEps) s = kMobiusEps;
    yr[i] = (nr * mr + ni * mi) / s;
    yi[i] = (ni * mr - nr * mi) / s;
  }
}

double sum_squares_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(v + i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  double out = hsum(acc);
  for (; i < n; ++i) out += v[i] * v[i];
  return out;
}

const Kernels kAvx2 = {
    "avx2",    triple_dot_re_avx2, hermitian_dot_re_avx2,
    cmul_avx2, mobius_apply_avx2,  sum_squares_avx2,
};

}  // namespace

const Kernels* avx2() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &kAvx2;
  return nullptr;
}
#else
const Kernels* avx2() { return nullptr; }
#endif

}  // namespace kge::kernels
