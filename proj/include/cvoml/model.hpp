#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvoml/gaussian.hpp"
#include "cvoml/types.hpp"

namespace cvoml {

// Which coupling dominates. The mirror coupling G amplifies the cavity pulse
// (phase-insensitive gain); when the atomic coupling Ga dominates the pulse
// is attenuated instead.
enum class Regime { amplifier, attenuator };

[[nodiscard]] constexpr const char* to_string(Regime regime) noexcept {
  return regime == Regime::amplifier ? "amplifier" : "attenuator";
}

// Physical inputs. G and Ga are the effective cavity-mediated couplings to
// the mirror and to the atoms; only their ratio and the pulse area r = G*tau
// enter any observable.
template <typename Scalar = double>
struct SystemParams {
  Scalar G{1};
  Scalar Ga{0};
  Scalar n0{0};
  Scalar r{0};
};

// Relative |G - Ga| gap below which the two-coupling parametrization
// degenerates (alpha, beta diverge).
inline constexpr double kDegeneracyCutoff = 1e-9;

// Largest growing-exponential argument accepted before e^{2 r_eff} would
// leave double range. Only the amplifier has growing exponentials; the
// attenuator's e^{-r_eff} merely underflows to zero, which is benign, so the
// cap is not applied there.
inline constexpr double kMaxSqueezeExponent = 350.0;

template <typename Scalar = double>
struct DerivedParams {
  Regime regime{Regime::amplifier};
  Scalar lambda{};  // coupling ratio Ga / G
  Scalar alpha{};   // mixing coefficients, alpha^2 - beta^2 = 1 in both regimes
  Scalar beta{};
  Scalar r_eff{};   // effective squeeze/decay exponent: r/alpha^2 or r/beta^2
  Scalar s{};       // two-mode squeeze parameter artanh(sqrt(lambda)); amplifier only
  Scalar n0{};      // carried through for closed-form evaluations
  Scalar r{};
};

template <typename Scalar>
[[nodiscard]] DerivedParams<Scalar> derive(const SystemParams<Scalar>& p) {
  using std::abs;
  using std::atanh;
  using std::isfinite;
  using std::max;
  using std::sqrt;
  if (!(p.G > Scalar(0)) || !isfinite(p.G)) {
    throw std::invalid_argument("derive: G must be positive and finite");
  }
  if (!(p.Ga >= Scalar(0)) || !isfinite(p.Ga)) {
    throw std::invalid_argument("derive: Ga must be non-negative and finite");
  }
  if (!(p.n0 >= Scalar(0)) || !isfinite(p.n0)) {
    throw std::invalid_argument("derive: n0 must be non-negative and finite");
  }
  if (!(p.r >= Scalar(0)) || !isfinite(p.r)) {
    throw std::invalid_argument("derive: r must be non-negative and finite");
  }
  if (abs(p.G - p.Ga) <= Scalar(kDegeneracyCutoff) * max(p.G, p.Ga)) {
    throw std::invalid_argument("degenerate coupling G = Ga");
  }

  DerivedParams<Scalar> d;
  d.lambda = p.Ga / p.G;
  d.n0 = p.n0;
  d.r = p.r;
  if (p.G > p.Ga) {
    d.regime = Regime::amplifier;
    d.alpha = sqrt(p.G / (p.G - p.Ga));
    d.beta = sqrt(p.Ga / (p.G - p.Ga));
    d.r_eff = p.r / (d.alpha * d.alpha);
    d.s = atanh(sqrt(d.lambda));
    if (d.r_eff > Scalar(kMaxSqueezeExponent)) {
      throw std::range_error("derive: squeeze exponent r/alpha^2 exceeds double range");
    }
  } else {
    d.regime = Regime::attenuator;
    d.alpha = sqrt(p.Ga / (p.Ga - p.G));
    d.beta = sqrt(p.G / (p.Ga - p.G));
    d.r_eff = p.r / (d.beta * d.beta);
    d.s = Scalar(0);  // not defined in the attenuator regime
  }
  return d;
}

// Input-output map for the quadratures over one pulse. Both regimes mix the
// cavity quadrature with the opposite quadrature of a squeezed combination of
// mirror and atoms; the rows below are the closed-form matrix elements in the
// canonical ordering (X_a, P_a, X_m, P_m, X_c, P_c).
template <typename Scalar>
[[nodiscard]] Transfer<Scalar> transfer_matrix(const DerivedParams<Scalar>& d) {
  using std::exp;
  using std::expm1;
  using std::sqrt;
  constexpr int xa = quad_index(Mode::a, Quad::x);
  constexpr int pa = quad_index(Mode::a, Quad::p);
  constexpr int xm = quad_index(Mode::m, Quad::x);
  constexpr int pm = quad_index(Mode::m, Quad::p);
  constexpr int xc = quad_index(Mode::c, Quad::x);
  constexpr int pc = quad_index(Mode::c, Quad::p);

  const Scalar a = d.alpha;
  const Scalar b = d.beta;
  Transfer<Scalar> t = Transfer<Scalar>::Zero();

  if (d.regime == Regime::amplifier) {
    const Scalar e = exp(d.r_eff);
    const Scalar k = expm1(d.r_eff);          // e - 1, accurate near r = 0
    const Scalar rad = sqrt(k * (e + 1));     // sqrt(e^2 - 1) without cancellation

    t(xa, xa) = -e;
    t(xa, pm) = -a * rad;
    t(xa, pc) = b * rad;

    t(pa, pa) = -e;
    t(pa, xm) = -a * rad;
    t(pa, xc) = -b * rad;

    t(xm, xm) = a * a * k + Scalar(1);        // alpha^2 e - beta^2
    t(xm, xc) = a * b * k;
    t(xm, pa) = a * rad;

    t(pm, pm) = a * a * k + Scalar(1);
    t(pm, pc) = -a * b * k;
    t(pm, xa) = a * rad;

    t(xc, xc) = Scalar(1) - b * b * k;        // alpha^2 - beta^2 e
    t(xc, xm) = -a * b * k;
    t(xc, pa) = -b * rad;

    t(pc, pc) = Scalar(1) - b * b * k;
    t(pc, pm) = a * b * k;
    t(pc, xa) = b * rad;
  } else {
    const Scalar e = exp(-d.r_eff);
    const Scalar k = -expm1(-d.r_eff);        // 1 - e
    const Scalar rad = sqrt(k * (Scalar(1) + e));  // sqrt(1 - e^2)

    t(xa, xa) = -e;
    t(xa, pm) = -b * rad;
    t(xa, pc) = a * rad;

    t(pa, pa) = -e;
    t(pa, xm) = -b * rad;
    t(pa, xc) = -a * rad;

    t(xm, xm) = Scalar(1) + b * b * k;        // alpha^2 - beta^2 e
    t(xm, xc) = a * b * k;
    t(xm, pa) = b * rad;

    t(pm, pm) = Scalar(1) + b * b * k;
    t(pm, pc) = -a * b * k;
    t(pm, xa) = b * rad;

    t(xc, xc) = Scalar(1) - a * a * k;        // alpha^2 e - beta^2
    t(xc, xm) = -a * b * k;
    t(xc, pa) = -a * rad;

    t(pc, pc) = Scalar(1) - a * a * k;
    t(pc, pm) = a * b * k;
    t(pc, xa) = a * rad;
  }
  return t;
}

enum class SuperMode { w, u };

// Two-mode superpositions of mirror and atoms that diagonalize the dynamics.
// The w mode carries the squeezing interaction with the cavity; the u mode is
// a constant of motion. The x/p coefficient patterns differ (P has a relative
// sign on the atomic slot) because the atoms enter through their conjugate.
// Only one of the pair is a canonical mode in each regime: [X_w, P_w] = +i
// and [X_u, P_u] = -i in the amplifier, and vice versa in the attenuator,
// because the conjugate slot carries the larger coefficient in the other case.
template <typename Scalar>
struct SuperpositionMode {
  SuperMode which{SuperMode::w};
  LinearForm<Scalar> x_form;
  LinearForm<Scalar> p_form;
};

template <typename Scalar>
[[nodiscard]] SuperpositionMode<Scalar> superposition_mode(const DerivedParams<Scalar>& d,
                                                           SuperMode which) {
  // amplifier:  X_w = alpha X_m + beta X_c,  P_w = alpha P_m - beta P_c
  // attenuator: X_w = beta  X_m + alpha X_c, P_w = beta  P_m - alpha P_c
  // u swaps the two coefficients in either regime.
  const bool w = (which == SuperMode::w);
  const bool amp = (d.regime == Regime::amplifier);
  const Scalar cm = (w == amp) ? d.alpha : d.beta;  // coefficient on the mirror
  const Scalar cc = (w == amp) ? d.beta : d.alpha;  // coefficient on the atoms
  SuperpositionMode<Scalar> mode;
  mode.which = which;
  mode.x_form = cm * unit_form<Scalar>(Mode::m, Quad::x) +
                cc * unit_form<Scalar>(Mode::c, Quad::x);
  mode.p_form = cm * unit_form<Scalar>(Mode::m, Quad::p) -
                cc * unit_form<Scalar>(Mode::c, Quad::p);
  return mode;
}

template <typename Scalar>
[[nodiscard]] Covariance<Scalar> output_covariance(const DerivedParams<Scalar>& d) {
  return transform(transfer_matrix(d), make_input_covariance(d.n0));
}

template <typename Scalar>
struct PhotonNumbers {
  Scalar n_c;  // cavity output temporal mode
  Scalar n_w;  // superposition mode w
};

// Closed-form mean photon numbers. In the amplifier n_w - n_c is conserved;
// in the attenuator n_w + n_c is conserved (photon exchange with the pulse).
template <typename Scalar>
[[nodiscard]] PhotonNumbers<Scalar> photon_numbers(const DerivedParams<Scalar>& d) {
  using std::exp;
  using std::expm1;
  const Scalar occ = d.n0 + Scalar(1);
  if (d.regime == Regime::amplifier) {
    const Scalar a2 = d.alpha * d.alpha;
    const Scalar grow = expm1(Scalar(2) * d.r_eff);  // e^{2 r_eff} - 1
    return {a2 * occ * grow, a2 * occ * (grow + Scalar(1)) - Scalar(1)};
  }
  const Scalar b2 = d.beta * d.beta;
  const Scalar decay = exp(Scalar(-2) * d.r_eff);
  return {b2 * occ * (Scalar(1) - decay), b2 * occ * decay + Scalar(1)};
}

// Same quantities read off a covariance matrix. The cavity mode is canonical,
// so n_c = (Var X + Var P - 1)/2; the w quadratures obey [X_w, P_w] = +i in
// the amplifier but -i in the attenuator (swapping the coefficients inverts
// the commutator), so there the vacuum term enters with the opposite sign.
template <typename Scalar>
[[nodiscard]] PhotonNumbers<Scalar> photon_numbers_from_covariance(
    const Covariance<Scalar>& sigma, const DerivedParams<Scalar>& d) {
  const auto w = superposition_mode(d, SuperMode::w);
  const Scalar comm = d.regime == Regime::amplifier ? Scalar(1) : Scalar(-1);
  const Scalar n_w = (linear_form_variance(sigma, w.x_form) +
                      linear_form_variance(sigma, w.p_form) - comm) /
                     Scalar(2);
  return {photon_number(sigma, Mode::a), n_w};
}

// Cauchy-Schwarz ratio eta = |<a_c w>|^2 / (n_c n_w) between the cavity
// output and the w mode. Classical fields obey eta <= 1; the amplifier
// violates the bound (eta > 1), the attenuator never does (eta < 1).
template <typename Scalar>
[[nodiscard]] Scalar cauchy_schwarz_eta(const DerivedParams<Scalar>& d) {
  using std::exp;
  const Scalar occ = d.n0 + Scalar(1);
  if (d.regime == Regime::amplifier) {
    const Scalar x = d.alpha * d.alpha * occ * exp(Scalar(2) * d.r_eff);
    const Scalar denom = x - Scalar(1);
    if (!(denom > Scalar(0))) {
      return std::numeric_limits<Scalar>::infinity();  // n_c = 0 at r = 0, alpha = 1, n0 = 0
    }
    return x / denom;
  }
  const Scalar y = d.beta * d.beta * occ * exp(Scalar(-2) * d.r_eff);
  return y / (y + Scalar(1));
}

// Same ratio assembled from a covariance matrix: |<a_c w>| via the anomalous
// correlator and the photon numbers via the quadrature variances.
template <typename Scalar>
[[nodiscard]] Scalar eta_from_covariance(const Covariance<Scalar>& sigma,
                                         const DerivedParams<Scalar>& d) {
  const auto w = superposition_mode(d, SuperMode::w);
  const auto corr = anomalous_correlator(
      sigma, unit_form<Scalar>(Mode::a, Quad::x), unit_form<Scalar>(Mode::a, Quad::p),
      w.x_form, w.p_form);
  const auto n = photon_numbers_from_covariance(sigma, d);
  const Scalar denom = n.n_c * n.n_w;
  if (!(denom > Scalar(0))) {
    return std::numeric_limits<Scalar>::infinity();
  }
  return std::norm(corr) / denom;
}

// Pulse area at which the cavity/mirror pair becomes entangled in the
// amplifier regime (two-mode variance crosses the separability bound 2):
//   r0 = alpha^2 ln[(alpha^2 (n0+1) + 1) / (2 alpha sqrt(n0+1))].
template <typename Scalar>
[[nodiscard]] Scalar entanglement_onset_r0(const DerivedParams<Scalar>& d) {
  using std::log;
  using std::sqrt;
  if (d.regime != Regime::amplifier) {
    throw std::domain_error("entanglement_onset_r0: defined in the amplifier regime only");
  }
  const Scalar a2 = d.alpha * d.alpha;
  const Scalar occ = d.n0 + Scalar(1);
  return a2 * log((a2 * occ + Scalar(1)) / (Scalar(2) * d.alpha * sqrt(occ)));
}

}  // namespace cvoml
