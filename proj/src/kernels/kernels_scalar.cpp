#include "moebius/kernels.hpp"

namespace moebius::kernels {
namespace {

double energy_row(const double* const* target, const double* base, std::size_t dim,
                  const double* subtract, double scale, std::size_t count) {
  double s = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
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
  VariationSums r;
  for (std::size_t m = 0; m < count; ++m) {
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
  double best = 1e300;
  for (std::size_t m = 0; m < count; ++m) {
    double q = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double d = target[a][m] - base[a];
      q += d * d;
    }
    const double v = q * weight[m];
    if (v < best) best = v;
  }
  return best;
}

double gradient_row(const double* const* target, const double* base, std::size_t dim,
                    std::size_t count, double* row_sum) {
  double s = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    double q = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double d = target[a][m] - base[a];
      q += d * d;
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

const KernelTable& scalar() {
  static const KernelTable table{"scalar", energy_row, variation_row, min_scaled_row, gradient_row};
  return table;
}

}  // namespace moebius::kernels
