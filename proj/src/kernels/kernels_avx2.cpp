#include <immintrin.h>

#include "moebius/kernels.hpp"

namespace moebius::kernels {

#if defined(MOEBIUS_HAVE_AVX2)
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(s, _mm_unpackhi_pd(s, s)));
}

double energy_row(const double* const* target, const double* base, std::size_t dim,
                  const double* subtract, double scale, std::size_t count) {
  const __m256d vscale = _mm256_set1_pd(scale);
  __m256d acc = _mm256_setzero_pd();
  std::size_t m = 0;
  for (; m + 4 <= count; m += 4) {
    __m256d q = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(target[a] + m), _mm256_set1_pd(base[a]));
      q = _mm256_fmadd_pd(d, d, q);
    }
    acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_div_pd(vscale, q), _mm256_loadu_pd(subtract + m)));
  }
  double s = hsum(acc);
  for (; m < count; ++m) {
    double q = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double d = target[a][m] - base[a];
      q += d * d;
    }
    s += scale / q - subtract[m];
  }
  return s;
}

VariationSums variation_row(const double* const* gamma_t, const double* gamma_b,
                            const double* const* h_t, const double* h_b, std::size_t dim,
                            const double* inv_w4, std::size_t count) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc_inv2 = _mm256_setzero_pd();
  __m256d acc_dot4 = _mm256_setzero_pd();
  __m256d acc_dotw4 = _mm256_setzero_pd();
  std::size_t m = 0;
  for (; m + 4 <= count; m += 4) {
    __m256d q = _mm256_setzero_pd();
    __m256d dot = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      const __m256d dg = _mm256_sub_pd(_mm256_loadu_pd(gamma_t[a] + m), _mm256_set1_pd(gamma_b[a]));
      const __m256d dh = _mm256_sub_pd(_mm256_loadu_pd(h_t[a] + m), _mm256_set1_pd(h_b[a]));
      q = _mm256_fmadd_pd(dg, dg, q);
      dot = _mm256_fmadd_pd(dg, dh, dot);
    }
    const __m256d c = _mm256_div_pd(one, q);
    acc_inv2 = _mm256_add_pd(acc_inv2, c);
    acc_dot4 = _mm256_fmadd_pd(_mm256_mul_pd(dot, c), c, acc_dot4);
    acc_dotw4 = _mm256_fmadd_pd(dot, _mm256_loadu_pd(inv_w4 + m), acc_dotw4);
  }
  VariationSums r{hsum(acc_inv2), hsum(acc_dot4), hsum(acc_dotw4)};
  for (; m < count; ++m) {
    double q = 0.0, dot = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double dg = gamma_t[a][m] - gamma_b[a];
      const double dh = h_t[a][m] - h_b[a];
      q += dg * dg;
      dot += dg * dh;
    }
    const double c = 1.0 / q;
    r.inv2 += c;
    r.dot4 += dot * c * c;
    r.dotw4 += dot * inv_w4[m];
  }
  return r;
}

double min_scaled_row(const double* const* target, const double* base, std::size_t dim,
                      const double* weight, std::size_t count) {
  __m256d best = _mm256_set1_pd(1e300);
  std::size_t m = 0;
  for (; m + 4 <= count; m += 4) {
    __m256d q = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(target[a] + m), _mm256_set1_pd(base[a]));
      q = _mm256_fmadd_pd(d, d, q);
    }
    best = _mm256_min_pd(best, _mm256_mul_pd(q, _mm256_loadu_pd(weight + m)));
  }
  double b = hmin(best);
  for (; m < count; ++m) {
    double q = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double d = target[a][m] - base[a];
      q += d * d;
    }
    const double v = q * weight[m];
    if (v < b) b = v;
  }
  return b;
}

double gradient_row(const double* const* target, const double* base, std::size_t dim,
                    std::size_t count, double* row_sum) {
  constexpr std::size_t kMaxDim = 8;
  if (dim > kMaxDim) return scalar().gradient_row(target, base, dim, count, row_sum);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  __m256d racc[kMaxDim];
  for (std::size_t a = 0; a < dim; ++a) racc[a] = _mm256_setzero_pd();
  std::size_t m = 0;
  for (; m + 4 <= count; m += 4) {
    __m256d d[kMaxDim];
    __m256d q = _mm256_setzero_pd();
    for (std::size_t a = 0; a < dim; ++a) {
      d[a] = _mm256_sub_pd(_mm256_loadu_pd(target[a] + m), _mm256_set1_pd(base[a]));
      q = _mm256_fmadd_pd(d[a], d[a], q);
    }
    const __m256d c = _mm256_div_pd(one, q);
    const __m256d c2 = _mm256_mul_pd(c, c);
    acc = _mm256_add_pd(acc, c);
    for (std::size_t a = 0; a < dim; ++a) {
      racc[a] = _mm256_fmadd_pd(d[a], c2, racc[a]);
    }
  }
  double s = hsum(acc);
  for (std::size_t a = 0; a < dim; ++a) row_sum[a] += hsum(racc[a]);
  for (; m < count; ++m) {
    double q = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double dd = target[a][m] - base[a];
      q += dd * dd;
    }
    const double c = 1.0 / q;
    const double c2 = c * c;
    s += c;
    for (std::size_t a = 0; a < dim; ++a) {
      row_sum[a] += (target[a][m] - base[a]) * c2;
    }
  }
  return s;
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", energy_row, variation_row, min_scaled_row, gradient_row};
  return &table;
}
#else
const KernelTable* avx2_table() { return nullptr; }
#endif

}  // namespace moebius::kernels
