#pragma once

#include <Eigen/Core>

namespace cvoml {

inline constexpr int kNumModes = 3;
inline constexpr int kNumQuads = 2 * kNumModes;

// Mode letters follow the physical roles: a = cavity output temporal mode,
// m = movable mirror, c = atomic ensemble.
enum class Mode : int { a = 0, m = 1, c = 2 };
enum class Quad : int { x = 0, p = 1 };

// Canonical quadrature ordering: (X_a, P_a, X_m, P_m, X_c, P_c).
[[nodiscard]] constexpr int quad_index(Mode mode, Quad quad) noexcept {
  return 2 * static_cast<int>(mode) + static_cast<int>(quad);
}

[[nodiscard]] constexpr Mode mode_at(int index) noexcept {
  return static_cast<Mode>(index / 2);
}

[[nodiscard]] constexpr Quad quad_at(int index) noexcept {
  return static_cast<Quad>(index % 2);
}

template <typename Scalar>
using Covariance = Eigen::Matrix<Scalar, kNumQuads, kNumQuads>;

template <typename Scalar>
using Transfer = Eigen::Matrix<Scalar, kNumQuads, kNumQuads>;

template <typename Scalar>
using LinearForm = Eigen::Matrix<Scalar, kNumQuads, 1>;

// Symplectic form for [X_i, P_j] = i delta_ij: 2x2 blocks [[0,1],[-1,0]] on
// the diagonal.
template <typename Scalar>
[[nodiscard]] Eigen::Matrix<Scalar, kNumQuads, kNumQuads> symplectic_form() {
  Eigen::Matrix<Scalar, kNumQuads, kNumQuads> omega =
      Eigen::Matrix<Scalar, kNumQuads, kNumQuads>::Zero();
  for (int m = 0; m < kNumModes; ++m) {
    omega(2 * m, 2 * m + 1) = Scalar(1);
    omega(2 * m + 1, 2 * m) = Scalar(-1);
  }
  return omega;
}

// Basis form selecting a single quadrature.
template <typename Scalar>
[[nodiscard]] LinearForm<Scalar> unit_form(Mode mode, Quad quad) {
  LinearForm<Scalar> f = LinearForm<Scalar>::Zero();
  f[quad_index(mode, quad)] = Scalar(1);
  return f;
}

}  // namespace cvoml
