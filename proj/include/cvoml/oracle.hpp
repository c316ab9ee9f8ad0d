#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "cvoml/model.hpp"
#include "cvoml/types.hpp"

// Independent numerical check of the analytic input-output map. Instead of
// the closed-form transfer matrix, each output operator is represented
// directly from the Heisenberg solutions of the intracavity dynamics: a
// discrete part over the initial mirror/atom operators plus continuous noise
// kernels on the input field, with all time integrals done by Simpson
// quadrature. Nothing here touches transfer_matrix(); agreement between the
// two paths is evidence for both.

namespace cvoml {

struct QuadratureGrid {
  int steps = 1024;               // Simpson subintervals; must be even, >= 2
  double convergence_tol = 1e-8;  // allowed entry drift between steps and 2*steps
};

// Raised when grid refinement does not settle within convergence_tol.
struct accuracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// An output-mode operator decomposed as
//   O = d . (B, B^+, C, C^+) + Int f(t) a_in(t) dt + Int g(t) a_in^+(t) dt
// with the kernels sampled on a uniform grid over the pulse.
template <typename Scalar>
struct OperatorRep {
  using Complex = std::complex<Scalar>;
  Eigen::Matrix<Complex, 4, 1> d = Eigen::Matrix<Complex, 4, 1>::Zero();
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> f;  // kernel on a_in
  Eigen::Matrix<Complex, Eigen::Dynamic, 1> g;  // kernel on a_in^+

  OperatorRep() = default;
  explicit OperatorRep(int samples)
      : f(Eigen::Matrix<Complex, Eigen::Dynamic, 1>::Zero(samples)),
        g(Eigen::Matrix<Complex, Eigen::Dynamic, 1>::Zero(samples)) {}

  [[nodiscard]] OperatorRep dagger() const {
    OperatorRep out;
    out.d.resize(4);
    // (B, B^+, C, C^+) -> conjugate and swap each operator with its adjoint.
    out.d(0) = std::conj(d(1));
    out.d(1) = std::conj(d(0));
    out.d(2) = std::conj(d(3));
    out.d(3) = std::conj(d(2));
    out.f = g.conjugate();
    out.g = f.conjugate();
    return out;
  }

  friend OperatorRep operator+(const OperatorRep& lhs, const OperatorRep& rhs) {
    OperatorRep out;
    out.d = lhs.d + rhs.d;
    out.f = lhs.f + rhs.f;
    out.g = lhs.g + rhs.g;
    return out;
  }

  friend OperatorRep operator*(Complex scale, const OperatorRep& rep) {
    OperatorRep out;
    out.d = scale * rep.d;
    out.f = scale * rep.f;
    out.g = scale * rep.g;
    return out;
  }
};

// Simpson weights (scaled by the grid step) for n subintervals, n even.
template <typename Scalar>
[[nodiscard]] Eigen::Matrix<Scalar, Eigen::Dynamic, 1> simpson_weights(int n, Scalar h) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w(n + 1);
  w(0) = w(n) = h / Scalar(3);
  for (int i = 1; i < n; ++i) {
    w(i) = (i % 2 == 1 ? Scalar(4) : Scalar(2)) * h / Scalar(3);
  }
  return w;
}

}  // namespace detail

// Output covariance on a fixed quadrature grid, without the convergence
// check. Exposed so callers can measure grid drift themselves.
template <typename Scalar = double>
[[nodiscard]] Covariance<Scalar> numeric_output_covariance_raw(const SystemParams<Scalar>& p,
                                                               int steps) {
  using std::abs;
  using std::exp;
  using std::expm1;
  using std::isfinite;
  using std::max;
  using std::sqrt;
  using Complex = std::complex<Scalar>;
  using Rep = detail::OperatorRep<Scalar>;

  if (steps < 2 || steps % 2 != 0) {
    throw std::invalid_argument("numeric_output_covariance: steps must be even and >= 2");
  }
  if (!(p.G > Scalar(0)) || !isfinite(p.G) || !(p.Ga >= Scalar(0)) || !isfinite(p.Ga)) {
    throw std::invalid_argument("numeric_output_covariance: invalid couplings");
  }
  if (!(p.n0 >= Scalar(0)) || !isfinite(p.n0) || !(p.r >= Scalar(0)) || !isfinite(p.r)) {
    throw std::invalid_argument("numeric_output_covariance: invalid n0 or r");
  }
  if (abs(p.G - p.Ga) <= Scalar(kDegeneracyCutoff) * max(p.G, p.Ga)) {
    throw std::invalid_argument("degenerate coupling G = Ga");
  }

  // Work in units G = 1: pulse duration tau = r, coupling ratio lambda.
  const Scalar lambda = p.Ga / p.G;
  const Scalar tau = p.r;
  const bool amplifier = p.G > p.Ga;
  const Scalar eps = amplifier ? Scalar(1) - lambda : lambda - Scalar(1);
  if (eps * tau > Scalar(kMaxSqueezeExponent)) {
    throw std::range_error("numeric_output_covariance: exponent eps*tau exceeds double range");
  }
  if (tau == Scalar(0)) {
    return make_input_covariance(p.n0);  // no interaction; integrals are empty
  }

  const Scalar alpha =
      amplifier ? sqrt(Scalar(1) / (Scalar(1) - lambda)) : sqrt(lambda / (lambda - Scalar(1)));
  const Scalar beta =
      amplifier ? sqrt(lambda / (Scalar(1) - lambda)) : sqrt(Scalar(1) / (lambda - Scalar(1)));

  const int n = steps;
  const Scalar h = tau / Scalar(n);
  const auto weights = detail::simpson_weights<Scalar>(n, h);

  // Initial superposition modes: w couples to the pulse, u stays constant.
  Rep w0(n + 1), u0(n + 1);
  if (amplifier) {
    w0.d << Complex(alpha), Complex(0), Complex(0), Complex(beta);
    u0.d << Complex(beta), Complex(0), Complex(0), Complex(alpha);
  } else {
    w0.d << Complex(beta), Complex(0), Complex(0), Complex(alpha);
    u0.d << Complex(alpha), Complex(0), Complex(0), Complex(beta);
  }

  // Heisenberg solution for w at the end of the pulse: exponential evolution
  // of the initial value plus an accumulated input-noise kernel.
  Rep wt(n + 1);
  const Scalar root2eps = sqrt(Scalar(2) * eps);
  if (amplifier) {
    wt.d = exp(eps * tau) * w0.d;
    for (int k = 0; k <= n; ++k) {
      const Scalar t = Scalar(k) * h;
      wt.g(k) = Complex(0, root2eps * exp(eps * (tau - t)));
    }
  } else {
    wt.d = exp(-eps * tau) * w0.d;
    for (int k = 0; k <= n; ++k) {
      const Scalar t = Scalar(k) * h;
      wt.g(k) = Complex(0, -root2eps * exp(-eps * (tau - t)));
    }
  }

  // Output mirror and atom modes are regime-dependent rotations of (u0, wt).
  Rep b_out, c_out;
  if (amplifier) {
    b_out = Complex(-beta) * u0 + Complex(alpha) * wt;
    c_out = (Complex(alpha) * u0 + Complex(-beta) * wt).dagger();
  } else {
    b_out = Complex(alpha) * u0 + Complex(-beta) * wt;
    c_out = (Complex(-beta) * u0 + Complex(alpha) * wt).dagger();
  }

  // Cavity output temporal mode: normalized integral of the output field
  // against the mode function. The discrete part picks up the conjugate of
  // w0; the continuous kernel combines the direct reflection with the field
  // radiated by w, the latter entering through a nested time integral.
  const Scalar exp_sign = amplifier ? Scalar(2) : Scalar(-2);
  Scalar i2 = Scalar(0);  // Int_0^tau e^{±2 eps t} dt
  for (int k = 0; k <= n; ++k) {
    i2 += weights(k) * exp(exp_sign * eps * Scalar(k) * h);
  }
  const Scalar norm_sq =
      amplifier ? expm1(Scalar(2) * eps * tau) : -expm1(Scalar(-2) * eps * tau);
  const Scalar nrm = sqrt(Scalar(2) * eps / norm_sq);

  Rep a_out(n + 1);
  {
    // d part: -i sqrt(2 eps) N I2 conj(w0^+)
    Rep w0dag = w0.dagger();
    a_out.d = Complex(0, -root2eps * nrm * i2) * w0dag.d;
    // f part: direct reflection -N e^{±eps t} plus the radiated component
    // -(±) 2 eps N e^{∓eps t} K(t), K(t) = Int_t^tau e^{±2 eps s} ds.
    for (int k = 0; k <= n; ++k) {
      const Scalar t = Scalar(k) * h;
      // Simpson over [t, tau] with the same number of subintervals.
      const Scalar hk = (tau - t) / Scalar(n);
      Scalar kint = Scalar(0);
      if (tau - t > Scalar(0)) {
        for (int j = 0; j <= n; ++j) {
          const Scalar s = t + Scalar(j) * hk;
          const Scalar wj = (j == 0 || j == n) ? hk / Scalar(3)
                                               : (j % 2 == 1 ? Scalar(4) : Scalar(2)) * hk / Scalar(3);
          kint += wj * exp(exp_sign * eps * s);
        }
      }
      if (amplifier) {
        a_out.f(k) = Complex(-nrm * exp(eps * t) - Scalar(2) * eps * nrm * exp(-eps * t) * kint);
      } else {
        a_out.f(k) = Complex(-nrm * exp(-eps * t) + Scalar(2) * eps * nrm * exp(eps * t) * kint);
      }
    }
  }

  // Input-state second moments over (B, B^+, C, C^+): thermal mirror,
  // vacuum atoms, vacuum input field (handled by the f.g kernel overlap).
  Eigen::Matrix<Complex, 4, 4> moments = Eigen::Matrix<Complex, 4, 4>::Zero();
  moments(0, 1) = Complex(p.n0 + Scalar(1));
  moments(1, 0) = Complex(p.n0);
  moments(2, 3) = Complex(1);

  const auto mom = [&](const Rep& lhs, const Rep& rhs) -> Complex {
    Complex discrete = lhs.d.transpose() * moments * rhs.d;
    Complex field(0);
    for (int k = 0; k <= n; ++k) {
      field += weights(k) * lhs.f(k) * rhs.g(k);  // <a_in(t) a_in^+(t')> = delta(t - t')
    }
    return discrete + field;
  };

  // Quadratures of the three output modes, ordered (X_a, P_a, X_m, P_m, X_c, P_c).
  const Scalar inv_sqrt2 = Scalar(1) / sqrt(Scalar(2));
  const auto x_of = [&](const Rep& o) { return Complex(inv_sqrt2) * (o + o.dagger()); };
  const auto p_of = [&](const Rep& o) {
    return Complex(0, -inv_sqrt2) * (o + Complex(-1) * o.dagger());
  };
  const Rep quads[kNumQuads] = {x_of(a_out), p_of(a_out), x_of(b_out),
                                p_of(b_out), x_of(c_out), p_of(c_out)};

  Covariance<Scalar> sigma;
  for (int i = 0; i < kNumQuads; ++i) {
    for (int j = i; j < kNumQuads; ++j) {
      const Complex sym =
          (mom(quads[i], quads[j]) + mom(quads[j], quads[i])) * Complex(Scalar(0.5));
      sigma(i, j) = sigma(j, i) = sym.real();
    }
  }
  return sigma;
}

// Output covariance with a built-in convergence check: the grid is doubled
// and the finer result returned; if any entry moves by more than
// convergence_tol between the two grids, the result is not trusted.
template <typename Scalar = double>
[[nodiscard]] Covariance<Scalar> numeric_output_covariance(const SystemParams<Scalar>& p,
                                                           const QuadratureGrid& grid = {}) {
  const Covariance<Scalar> coarse = numeric_output_covariance_raw(p, grid.steps);
  const Covariance<Scalar> fine = numeric_output_covariance_raw(p, 2 * grid.steps);
  const Scalar drift = (fine - coarse).cwiseAbs().maxCoeff();
  if (drift > Scalar(grid.convergence_tol)) {
    throw accuracy_error("numeric_output_covariance: grid drift " + std::to_string(drift) +
                         " exceeds tolerance " + std::to_string(grid.convergence_tol) +
                         " at steps=" + std::to_string(grid.steps));
  }
  return fine;
}

template <typename Scalar = double>
struct CovarianceComparison {
  Scalar max_abs{};
  Scalar max_rel{};
  int worst_row = 0;
  int worst_col = 0;
  bool pass = true;
};

// Entry-wise comparison with a relative error floored at abs_floor in the
// denominator, so near-zero entries are judged on absolute error.
template <typename Scalar>
[[nodiscard]] CovarianceComparison<Scalar> compare_covariances(
    const Covariance<Scalar>& actual, const Covariance<Scalar>& reference, Scalar rel_tol,
    Scalar abs_floor = Scalar(1)) {
  using std::abs;
  using std::max;
  CovarianceComparison<Scalar> cmp;
  for (int i = 0; i < kNumQuads; ++i) {
    for (int j = 0; j < kNumQuads; ++j) {
      const Scalar diff = abs(actual(i, j) - reference(i, j));
      const Scalar rel = diff / max(abs(reference(i, j)), abs_floor);
      cmp.max_abs = max(cmp.max_abs, diff);
      if (rel > cmp.max_rel) {
        cmp.max_rel = rel;
        cmp.worst_row = i;
        cmp.worst_col = j;
      }
    }
  }
  cmp.pass = cmp.max_rel <= rel_tol;
  return cmp;
}

}  // namespace cvoml
