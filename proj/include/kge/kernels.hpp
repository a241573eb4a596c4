#pragma once

#include <cstddef>

namespace kge::kernels {

// Denominator guard for the Mobius division, see mobius_apply.
inline constexpr double kMobiusEps = 1e-12;

// Vector kernel table. All arrays are length n, split real/imag layout.
struct Kernels {
  const char* name;

  // Re( sum_i r_i * h_i * conj(t_i) )
  double (*triple_dot_re)(const double* rr, const double* ri, const double* hr,
                          const double* hi, const double* tr, const double* ti,
                          std::size_t n);

  // Re( sum_i u_i * conj(v_i) )
  double (*hermitian_dot_re)(const double* ur, const double* ui, const double* vr,
                             const double* vi, std::size_t n);

  // w_i = u_i * v_i (complex elementwise product)
  void (*cmul)(const double* ur, const double* ui, const double* vr,
               const double* vi, double* wr, double* wi, std::size_t n);

  // y_i = (a_i x_i + b_i) * conj(c_i x_i + d_i) / max(|c_i x_i + d_i|^2, kMobiusEps)
  void (*mobius_apply)(const double* ar, const double* ai, const double* br,
                       const double* bi, const double* cr, const double* ci,
                       const double* dr, const double* di, const double* xr,
                       const double* xi, double* yr, double* yi, std::size_t n);

  // sum_i v_i^2
  double (*sum_squares)(const double* v, std::size_t n);
};

const Kernels& scalar();

// AVX2 variant; nullptr when not compiled in or not supported by the CPU.
const Kernels* avx2();

// Active kernel set. Defaults to the best supported variant; honors
// KGE_KERNELS=scalar|avx2 in the environment at first use.
const Kernels& active();

// Test/CLI override.
void set_active(const Kernels& k);

}  // namespace kge::kernels
