#include "kge/kernels.hpp"

namespace kge::kernels {
namespace {

double triple_dot_re_scalar(const double* rr, const double* ri, const double* hr,
                            const double* hi, const double* tr, const double* ti,
                            std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double wr = rr[i] * hr[i] - ri[i] * hi[i];
    double wi = rr[i] * hi[i] + ri[i] * hr[i];
    acc += wr * tr[i] + wi * ti[i];
  }
  return acc;
}

double hermitian_dot_re_scalar(const double* ur, const double* ui, const double* vr,
                               const double* vi, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += ur[i] * vr[i] + ui[i] * vi[i];
  return acc;
}

void cmul_scalar(const double* ur, const double* ui, const double* vr,
                 const double* vi, double* wr, double* wi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double re = ur[i] * vr[i] - ui[i] * vi[i];
    double im = ur[i] * vi[i] + ui[i] * vr[i];
    wr[i] = re;
    wi[i] = im;
  }
}

void mobius_apply_scalar(const double* ar, const double* ai, const double* br,
                         const double* bi, const double* cr, const double* ci,
                         const double* dr, const double* di, const double* xr,
                         const double* xi, double* yr, double* yi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
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

double sum_squares_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[i];
  return acc;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {
      "scalar",          triple_dot_re_scalar, hermitian_dot_re_scalar,
      cmul_scalar,       mobius_apply_scalar,  sum_squares_scalar,
  };
  return k;
}

}  // namespace kge::kernels
