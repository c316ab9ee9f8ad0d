#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "cvoml/types.hpp"

namespace cvoml {

// Covariance of the input state: cavity temporal mode and atomic ensemble in
// vacuum (variance 1/2 per quadrature), mirror in a thermal state with mean
// occupation n0.
template <typename Scalar>
[[nodiscard]] Covariance<Scalar> make_input_covariance(Scalar n0) {
  using std::isfinite;
  if (!(n0 >= Scalar(0)) || !isfinite(n0)) {
    throw std::invalid_argument("make_input_covariance: n0 must be finite and >= 0");
  }
  Covariance<Scalar> sigma = Covariance<Scalar>::Identity() * Scalar(0.5);
  sigma(quad_index(Mode::m, Quad::x), quad_index(Mode::m, Quad::x)) += n0;
  sigma(quad_index(Mode::m, Quad::p), quad_index(Mode::m, Quad::p)) += n0;
  return sigma;
}

// Pushes a covariance through a linear quadrature map: t sigma t^T,
// symmetrized to remove floating-point asymmetry.
template <typename DerivedT, typename DerivedS>
[[nodiscard]] Covariance<typename DerivedS::Scalar> transform(
    const Eigen::MatrixBase<DerivedT>& t, const Eigen::MatrixBase<DerivedS>& sigma) {
  using Scalar = typename DerivedS::Scalar;
  Covariance<Scalar> out = t * sigma * t.transpose();
  out = Scalar(0.5) * (out + out.transpose()).eval();
  return out;
}

// Variance of the quadrature combination f . (X_a, P_a, X_m, P_m, X_c, P_c).
template <typename DerivedS, typename DerivedF>
[[nodiscard]] typename DerivedS::Scalar linear_form_variance(
    const Eigen::MatrixBase<DerivedS>& sigma, const Eigen::MatrixBase<DerivedF>& f) {
  return f.dot(sigma * f);
}

// Symmetrized covariance of two quadrature combinations. Relies on sigma
// being symmetric.
template <typename DerivedS, typename DerivedF, typename DerivedG>
[[nodiscard]] typename DerivedS::Scalar linear_form_covariance(
    const Eigen::MatrixBase<DerivedS>& sigma, const Eigen::MatrixBase<DerivedF>& f,
    const Eigen::MatrixBase<DerivedG>& g) {
  return f.dot(sigma * g);
}

template <typename Scalar>
struct Conditional {
  Scalar sd;    // residual standard deviation after the optimal correction
  Scalar gain;  // optimal gain g in target + g * observable
};

// Best linear inference of `target` from `observable`: minimizes the variance
// of target + g * observable over real g. Observables with variance below
// `degeneracy_tol` carry no information; the target is then left uncorrected.
template <typename DerivedS, typename DerivedF, typename DerivedG>
[[nodiscard]] Conditional<typename DerivedS::Scalar> conditional_sd(
    const Eigen::MatrixBase<DerivedS>& sigma, const Eigen::MatrixBase<DerivedF>& target,
    const Eigen::MatrixBase<DerivedG>& observable,
    typename DerivedS::Scalar degeneracy_tol = typename DerivedS::Scalar(1e-14)) {
  using Scalar = typename DerivedS::Scalar;
  using std::max;
  using std::sqrt;
  const Scalar var_t = linear_form_variance(sigma, target);
  const Scalar var_o = linear_form_variance(sigma, observable);
  if (var_o < degeneracy_tol) {
    return {sqrt(max(var_t, Scalar(0))), Scalar(0)};
  }
  const Scalar cov = linear_form_covariance(sigma, target, observable);
  const Scalar residual = var_t - cov * cov / var_o;
  return {sqrt(max(residual, Scalar(0))), -cov / var_o};
}

// Mean photon number of a mode with quadratures (x_form, p_form) obeying
// [X, P] = i: (Var X + Var P - 1) / 2.
template <typename DerivedS, typename DerivedF, typename DerivedG>
[[nodiscard]] typename DerivedS::Scalar photon_number(
    const Eigen::MatrixBase<DerivedS>& sigma, const Eigen::MatrixBase<DerivedF>& x_form,
    const Eigen::MatrixBase<DerivedG>& p_form) {
  using Scalar = typename DerivedS::Scalar;
  return (linear_form_variance(sigma, x_form) + linear_form_variance(sigma, p_form) -
          Scalar(1)) /
         Scalar(2);
}

template <typename DerivedS>
[[nodiscard]] typename DerivedS::Scalar photon_number(
    const Eigen::MatrixBase<DerivedS>& sigma, Mode mode) {
  using Scalar = typename DerivedS::Scalar;
  return photon_number(sigma, unit_form<Scalar>(mode, Quad::x),
                       unit_form<Scalar>(mode, Quad::p));
}

// Largest absolute entry of t Omega t^T - Omega; zero for a canonical
// (commutator-preserving) map.
template <typename DerivedT>
[[nodiscard]] typename DerivedT::Scalar symplectic_residual(
    const Eigen::MatrixBase<DerivedT>& t) {
  using Scalar = typename DerivedT::Scalar;
  const auto omega = symplectic_form<Scalar>();
  return ((t * omega * t.transpose() - omega).cwiseAbs()).maxCoeff();
}

template <typename DerivedT>
[[nodiscard]] bool is_symplectic(const Eigen::MatrixBase<DerivedT>& t,
                                 typename DerivedT::Scalar tol =
                                     typename DerivedT::Scalar(1e-10)) {
  return symplectic_residual(t) <= tol;
}

// Smallest eigenvalue of the Hermitian matrix sigma + (i/2) Omega. A bona
// fide quantum covariance gives a non-negative result up to round-off.
template <typename DerivedS>
[[nodiscard]] typename DerivedS::Scalar physicality_min_eigenvalue(
    const Eigen::MatrixBase<DerivedS>& sigma) {
  using Scalar = typename DerivedS::Scalar;
  using Complex = std::complex<Scalar>;
  Eigen::Matrix<Complex, kNumQuads, kNumQuads> h =
      sigma.template cast<Complex>() +
      Complex(0, Scalar(0.5)) * symplectic_form<Scalar>().template cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, kNumQuads, kNumQuads>> solver(h);
  return solver.eigenvalues().minCoeff();
}

template <typename DerivedS>
[[nodiscard]] bool is_physical(const Eigen::MatrixBase<DerivedS>& sigma,
                               typename DerivedS::Scalar tol =
                                   typename DerivedS::Scalar(1e-10)) {
  return physicality_min_eigenvalue(sigma) >= -tol;
}

// Second moment <a_i a_j> of the annihilation operators of two (possibly
// composite) modes for a zero-mean Gaussian state, reconstructed from
// quadrature covariances via a = (X + iP) / sqrt(2):
//   <a_i a_j> = [ (<X_i X_j> - <P_i P_j>) + i (<X_i P_j> + <P_i X_j>) ] / 2.
template <typename DerivedS, typename F1, typename F2, typename F3, typename F4>
[[nodiscard]] std::complex<typename DerivedS::Scalar> anomalous_correlator(
    const Eigen::MatrixBase<DerivedS>& sigma, const Eigen::MatrixBase<F1>& xi,
    const Eigen::MatrixBase<F2>& pi, const Eigen::MatrixBase<F3>& xj,
    const Eigen::MatrixBase<F4>& pj) {
  using Scalar = typename DerivedS::Scalar;
  const Scalar xx = linear_form_covariance(sigma, xi, xj);
  const Scalar pp = linear_form_covariance(sigma, pi, pj);
  const Scalar xp = linear_form_covariance(sigma, xi, pj);
  const Scalar px = linear_form_covariance(sigma, pi, xj);
  return {(xx - pp) / Scalar(2), (xp + px) / Scalar(2)};
}

template <typename DerivedS>
[[nodiscard]] std::complex<typename DerivedS::Scalar> anomalous_correlator(
    const Eigen::MatrixBase<DerivedS>& sigma, Mode i, Mode j) {
  using Scalar = typename DerivedS::Scalar;
  return anomalous_correlator(sigma, unit_form<Scalar>(i, Quad::x),
                              unit_form<Scalar>(i, Quad::p),
                              unit_form<Scalar>(j, Quad::x),
                              unit_form<Scalar>(j, Quad::p));
}

}  // namespace cvoml
