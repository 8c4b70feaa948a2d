#pragma once

#include <cstddef>

namespace moebius::kernels {

// Row kernels for the O(N^2) pair sums. A "row" fixes a base point b ∈ ℝ^dim
// and streams `count` target points t_m given component-major
// (target[a][m]). Every kernel exists as a scalar reference and, where the
// CPU allows, an AVX2+FMA variant; both must agree to rounding.

struct VariationSums {
  double inv2 = 0.0;   // Σ 1/|Δγ|²
  double dot4 = 0.0;   // Σ ⟨Δγ,Δh⟩/|Δγ|⁴
  double dotw4 = 0.0;  // Σ ⟨Δγ,Δh⟩·w⁻⁴
};

/// Σ_m (scale/|t_m − b|² − subtract[m]).
using EnergyRowFn = double (*)(const double* const* target, const double* base, std::size_t dim,
                               const double* subtract, double scale, std::size_t count);

using VariationRowFn = VariationSums (*)(const double* const* gamma_t, const double* gamma_b,
                                         const double* const* h_t, const double* h_b,
                                         std::size_t dim, const double* inv_w4, std::size_t count);

/// min_m |t_m − b|² · weight[m].
using MinScaledRowFn = double (*)(const double* const* target, const double* base, std::size_t dim,
                                  const double* weight, std::size_t count);

/// Adjoint accumulation for the L² gradient: with Δ_m = t_m − b and
/// q_m = |Δ_m|², adds Σ_m Δ_m/q_m² into row_sum[a]; returns Σ 1/q_m.
using GradientRowFn = double (*)(const double* const* target, const double* base, std::size_t dim,
                                 std::size_t count, double* row_sum);

struct KernelTable {
  const char* name;
  EnergyRowFn energy_row;
  VariationRowFn variation_row;
  MinScaledRowFn min_scaled_row;
  GradientRowFn gradient_row;
};

enum class Mode { Auto, Scalar };

const KernelTable& scalar();
/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2();

void set_mode(Mode m);
Mode mode();
/// The table selected by the current mode.
const KernelTable& active();

}  // namespace moebius::kernels
