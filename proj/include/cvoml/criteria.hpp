#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cvoml/model.hpp"

namespace cvoml {

// One evaluated witness. `violated` means value < bound, i.e. the state is
// flagged by this witness (entangled / steerable / genuinely tripartite,
// depending on the witness).
template <typename Scalar = double>
struct CriterionResult {
  std::string name;
  Scalar value{};
  Scalar bound{};
  bool violated{};
  std::vector<std::pair<std::string, Scalar>> gains;  // empty for fixed-gain variants
};

enum class Party { a, m, c, w };

[[nodiscard]] constexpr const char* to_string(Party party) noexcept {
  switch (party) {
    case Party::a: return "a";
    case Party::m: return "m";
    case Party::c: return "c";
    case Party::w: return "w";
  }
  return "?";
}

enum class PairKind { xp, xx };

struct PairSpec {
  Party first;
  Party second;
  PairKind kind = PairKind::xp;
};

enum class GainMode { symmetric, optimal };

[[nodiscard]] constexpr const char* to_string(GainMode mode) noexcept {
  return mode == GainMode::symmetric ? "symmetric" : "optimal";
}

namespace detail {

template <typename Scalar>
struct PartyForms {
  LinearForm<Scalar> x;
  LinearForm<Scalar> p;
};

// Quadrature forms of a party. The superposition party w needs the regime
// parameters to fix its mirror/atom coefficients.
template <typename Scalar>
[[nodiscard]] PartyForms<Scalar> party_forms(Party party, const DerivedParams<Scalar>* d) {
  switch (party) {
    case Party::a:
      return {unit_form<Scalar>(Mode::a, Quad::x), unit_form<Scalar>(Mode::a, Quad::p)};
    case Party::m:
      return {unit_form<Scalar>(Mode::m, Quad::x), unit_form<Scalar>(Mode::m, Quad::p)};
    case Party::c:
      return {unit_form<Scalar>(Mode::c, Quad::x), unit_form<Scalar>(Mode::c, Quad::p)};
    case Party::w:
      if (d == nullptr) {
        throw std::invalid_argument(
            "party 'w' is a regime-dependent superposition; derived parameters required");
      }
      {
        const auto w = superposition_mode(*d, SuperMode::w);
        return {w.x_form, w.p_form};
      }
  }
  throw std::invalid_argument("unknown party");
}

[[nodiscard]] inline std::string pair_name(const char* prefix, Party i, Party j) {
  return std::string(prefix) + "_" + to_string(i) + "_" + to_string(j);
}

}  // namespace detail

// Symmetric two-mode variance witness
//   min over s = +-1 of Var(X_i + s P_j) + Var(P_i + s X_j),
// separability bound 2. The X-P pairing matches the beam-splitter-free
// correlations this model builds; the sign is minimized out because the two
// regimes correlate opposite quadrature combinations.
template <typename Scalar>
[[nodiscard]] CriterionResult<Scalar> dgcz_symmetric(const Covariance<Scalar>& sigma,
                                                     PairSpec pair,
                                                     const DerivedParams<Scalar>* d = nullptr) {
  if (pair.first == pair.second) {
    throw std::invalid_argument("dgcz_symmetric: the two parties must differ");
  }
  if (pair.kind != PairKind::xp) {
    throw std::invalid_argument("dgcz_symmetric: X-P pairing required");
  }
  const auto fi = detail::party_forms(pair.first, d);
  const auto fj = detail::party_forms(pair.second, d);
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (const Scalar sign : {Scalar(1), Scalar(-1)}) {
    const Scalar v = linear_form_variance(sigma, (fi.x + sign * fj.p).eval()) +
                     linear_form_variance(sigma, (fi.p + sign * fj.x).eval());
    best = std::min(best, v);
  }
  CriterionResult<Scalar> result;
  result.name = detail::pair_name("dgcz", pair.first, pair.second);
  result.value = best;
  result.bound = Scalar(2);
  result.violated = result.value < result.bound;
  return result;
}

// Symmetric X-X / P-P witness for the mirror/atom pair:
//   Var(X_m + X_c) + Var(P_m - P_c), separability bound 2.
// This pairing suits the attenuator, where mirror and atoms end up two-mode
// squeezed with each other rather than with the pulse.
template <typename Scalar>
[[nodiscard]] CriterionResult<Scalar> upsilon_symmetric(const Covariance<Scalar>& sigma) {
  const auto xm = unit_form<Scalar>(Mode::m, Quad::x);
  const auto pm = unit_form<Scalar>(Mode::m, Quad::p);
  const auto xc = unit_form<Scalar>(Mode::c, Quad::x);
  const auto pc = unit_form<Scalar>(Mode::c, Quad::p);
  CriterionResult<Scalar> result;
  result.name = "upsilon_m_c";
  result.value = linear_form_variance(sigma, (xm + xc).eval()) +
                 linear_form_variance(sigma, (pm - pc).eval());
  result.bound = Scalar(2);
  result.violated = result.value < result.bound;
  return result;
}

// Gain-optimized two-mode witness, normalized so the separability bound is 1:
//   min over g of [ Var(q1 + g q2) + Var(q3 + g q4) ] / (1 + g^2)
// with (q1..q4) = (X_i, P_j, P_i, X_j) for X-P pairing and
// (X_i, X_j, P_i, -P_j) for X-X pairing. The minimizing gain solves the
// Rayleigh-quotient quadratic C g^2 + (A - B) g - C = 0.
template <typename Scalar>
[[nodiscard]] CriterionResult<Scalar> asymmetric_pair(const Covariance<Scalar>& sigma,
                                                      PairSpec pair,
                                                      const DerivedParams<Scalar>* d = nullptr) {
  using std::abs;
  using std::max;
  using std::sqrt;
  if (pair.first == pair.second) {
    throw std::invalid_argument("asymmetric_pair: the two parties must differ");
  }
  const auto fi = detail::party_forms(pair.first, d);
  const auto fj = detail::party_forms(pair.second, d);
  LinearForm<Scalar> q1, q2, q3, q4;
  if (pair.kind == PairKind::xp) {
    q1 = fi.x; q2 = fj.p; q3 = fi.p; q4 = fj.x;
  } else {
    q1 = fi.x; q2 = fj.x; q3 = fi.p; q4 = -fj.p;
  }
  const Scalar a = linear_form_variance(sigma, q1) + linear_form_variance(sigma, q3);
  const Scalar b = linear_form_variance(sigma, q2) + linear_form_variance(sigma, q4);
  const Scalar c = linear_form_covariance(sigma, q1, q2) +
                   linear_form_covariance(sigma, q3, q4);

  Scalar gain = Scalar(0);
  Scalar value = a;  // g = 0 leaves the first mode unconditioned
  if (abs(c) >= Scalar(1e-14) * max({a, b, Scalar(1)})) {
    const Scalar disc = sqrt((a - b) * (a - b) + Scalar(4) * c * c);
    for (const Scalar root : {(b - a + disc) / (Scalar(2) * c),
                              (b - a - disc) / (Scalar(2) * c)}) {
      const Scalar v = (a + Scalar(2) * root * c + root * root * b) /
                       (Scalar(1) + root * root);
      if (v < value) {
        value = v;
        gain = root;
      }
    }
  }
  CriterionResult<Scalar> result;
  result.name = detail::pair_name("asym", pair.first, pair.second);
  result.value = value;
  result.bound = Scalar(1);
  result.violated = result.value < result.bound;
  result.gains = {{"g", gain}};
  return result;
}

// Output-state identities tied to the X-P coupling structure: the only
// cavity/atom cross moments are the antisymmetric pair
// <X_a P_c> = -<P_a X_c>, and the mirror/atom X-P cross moments vanish.
template <typename Scalar = double>
struct CrossCorrelationReport {
  Scalar antisymmetry;    // <X_a P_c> + <P_a X_c>
  Scalar mirror_atom_xp;  // <X_m P_c>
  Scalar mirror_atom_px;  // <P_m X_c>

  [[nodiscard]] Scalar max_abs() const {
    using std::abs;
    return std::max({abs(antisymmetry), abs(mirror_atom_xp), abs(mirror_atom_px)});
  }
  [[nodiscard]] bool pass(Scalar tol = Scalar(1e-10)) const { return max_abs() <= tol; }
};

template <typename Scalar>
[[nodiscard]] CrossCorrelationReport<Scalar> cross_correlation_identities(
    const Covariance<Scalar>& sigma) {
  CrossCorrelationReport<Scalar> report;
  report.antisymmetry = sigma(quad_index(Mode::a, Quad::x), quad_index(Mode::c, Quad::p)) +
                        sigma(quad_index(Mode::a, Quad::p), quad_index(Mode::c, Quad::x));
  report.mirror_atom_xp = sigma(quad_index(Mode::m, Quad::x), quad_index(Mode::c, Quad::p));
  report.mirror_atom_px = sigma(quad_index(Mode::m, Quad::p), quad_index(Mode::c, Quad::x));
  return report;
}

namespace detail {

template <typename Scalar>
struct TripartiteCombo {
  const char* pair;        // which bipartition the combo probes: "am", "ac", "mc"
  const char* gain_label;  // name of the free-gain quadrature
  LinearForm<Scalar> u;    // first combination, fixed
  LinearForm<Scalar> v0;   // second combination before the free-gain term
  LinearForm<Scalar> free; // quadrature of the third party, weighted by g
};

// The three pairwise combinations used by the tripartite test. Each pins two
// parties with unit gains and leaves the third party's quadrature with a free
// gain g.
template <typename Scalar>
[[nodiscard]] std::array<TripartiteCombo<Scalar>, 3> tripartite_combos() {
  const auto xa = unit_form<Scalar>(Mode::a, Quad::x);
  const auto pa = unit_form<Scalar>(Mode::a, Quad::p);
  const auto xm = unit_form<Scalar>(Mode::m, Quad::x);
  const auto pm = unit_form<Scalar>(Mode::m, Quad::p);
  const auto xc = unit_form<Scalar>(Mode::c, Quad::x);
  const auto pc = unit_form<Scalar>(Mode::c, Quad::p);
  return {{
      {"am", "g_c", (xa + pm).eval(), (pa + xm).eval(), xc},
      {"ac", "g_m", (xa + pc).eval(), (pa + xc).eval(), xm},
      {"mc", "g_a", (xm + xc).eval(), (pm - pc).eval(), xa},
  }};
}

template <typename Scalar>
[[nodiscard]] Scalar tripartite_gain(const Covariance<Scalar>& sigma,
                                     const TripartiteCombo<Scalar>& combo, GainMode mode) {
  if (mode == GainMode::symmetric) {
    return Scalar(1);
  }
  const Scalar var_free = linear_form_variance(sigma, combo.free);
  if (var_free < Scalar(1e-14)) {
    return Scalar(0);
  }
  return -linear_form_covariance(sigma, combo.v0, combo.free) / var_free;
}

}  // namespace detail

// Pairwise two-mode variances with the third party folded in through a gain:
//   Delta_pair = Var(u) + Var(v0 + g free), separability bound 2 each.
template <typename Scalar>
[[nodiscard]] std::array<CriterionResult<Scalar>, 3> tripartite_sums(
    const Covariance<Scalar>& sigma, GainMode mode = GainMode::symmetric) {
  std::array<CriterionResult<Scalar>, 3> results;
  const auto combos = detail::tripartite_combos<Scalar>();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const auto& combo = combos[i];
    const Scalar g = detail::tripartite_gain(sigma, combo, mode);
    const Scalar value = linear_form_variance(sigma, combo.u) +
                         linear_form_variance(sigma, (combo.v0 + g * combo.free).eval());
    auto& r = results[i];
    r.name = std::string("vlf_") + combo.pair;
    r.value = value;
    r.bound = Scalar(2);
    r.violated = value < r.bound;
    if (mode == GainMode::optimal) {
      r.gains = {{combo.gain_label, g}};
    }
  }
  return results;
}

// Product form of the same combinations: sd(u) * sd(v0 + g free), bound 1.
// The product form is stronger than the sum at unequal variances.
template <typename Scalar>
[[nodiscard]] std::array<CriterionResult<Scalar>, 3> tripartite_products(
    const Covariance<Scalar>& sigma, GainMode mode = GainMode::symmetric) {
  using std::sqrt;
  std::array<CriterionResult<Scalar>, 3> results;
  const auto combos = detail::tripartite_combos<Scalar>();
  for (std::size_t i = 0; i < combos.size(); ++i) {
    const auto& combo = combos[i];
    const Scalar g = detail::tripartite_gain(sigma, combo, mode);
    const Scalar value =
        sqrt(linear_form_variance(sigma, combo.u)) *
        sqrt(linear_form_variance(sigma, (combo.v0 + g * combo.free).eval()));
    auto& r = results[i];
    r.name = std::string("tri_") + combo.pair;
    r.value = value;
    r.bound = Scalar(1);
    r.violated = value < r.bound;
    if (mode == GainMode::optimal) {
      r.gains = {{combo.gain_label, g}};
    }
  }
  return results;
}

// Sum of the three products. Below 2 no bipartition of the three parties can
// be separable, witnessing genuine tripartite entanglement.
template <typename Scalar>
[[nodiscard]] CriterionResult<Scalar> genuine_sum(const Covariance<Scalar>& sigma,
                                                  GainMode mode = GainMode::symmetric) {
  const auto products = tripartite_products(sigma, mode);
  CriterionResult<Scalar> result;
  result.name = "tri_sum";
  result.value = Scalar(0);
  for (const auto& p : products) {
    result.value += p.value;
    for (const auto& g : p.gains) {
      result.gains.push_back(g);
    }
  }
  result.bound = Scalar(2);
  result.violated = result.value < result.bound;
  return result;
}

// At least two of the three pairwise product witnesses below 1 rules out
// full separability of the tripartite state.
template <typename Scalar>
[[nodiscard]] bool fully_inseparable(const std::array<CriterionResult<Scalar>, 3>& products) {
  int violated = 0;
  for (const auto& p : products) {
    violated += p.violated ? 1 : 0;
  }
  return violated >= 2;
}

struct SteeringOptions {
  // false: condition each steered quadrature on the best single steerer
  //        quadrature (the product form used throughout);
  // true:  condition on both steerer quadratures at once (Schur complement).
  bool full_conditioning = false;
};

namespace detail {

template <typename Scalar>
[[nodiscard]] Scalar schur_conditional_variance(const Covariance<Scalar>& sigma,
                                                const LinearForm<Scalar>& target,
                                                const LinearForm<Scalar>& o1,
                                                const LinearForm<Scalar>& o2) {
  using std::abs;
  using std::max;
  const Scalar var_t = linear_form_variance(sigma, target);
  Eigen::Matrix<Scalar, 2, 2> m;
  m(0, 0) = linear_form_variance(sigma, o1);
  m(1, 1) = linear_form_variance(sigma, o2);
  m(0, 1) = m(1, 0) = linear_form_covariance(sigma, o1, o2);
  Eigen::Matrix<Scalar, 2, 1> c;
  c(0) = linear_form_covariance(sigma, target, o1);
  c(1) = linear_form_covariance(sigma, target, o2);
  const Scalar det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (det < Scalar(1e-14) * max(m(0, 0) * m(1, 1), Scalar(1))) {
    // Degenerate pair of observables: fall back to the better single one.
    const Scalar r1 = conditional_sd(sigma, target, o1).sd;
    const Scalar r2 = conditional_sd(sigma, target, o2).sd;
    return std::min(r1 * r1, r2 * r2);
  }
  const Scalar reduction = c.dot(m.inverse() * c);
  return max(var_t - reduction, Scalar(0));
}

}  // namespace detail

// Conditional-variance steering parameter
//   E_{steered|steerer} = min_sd(X_steered | steerer) * min_sd(P_steered | steerer),
// where each factor is minimized over the steerer quadrature used and over
// the linear gain. Values below 1/2 certify steering of `steered` by
// `steerer` (a conditional-state uncertainty below the vacuum limit).
template <typename Scalar>
[[nodiscard]] CriterionResult<Scalar> steering(const Covariance<Scalar>& sigma,
                                               Party steered, Party steerer,
                                               const DerivedParams<Scalar>* d = nullptr,
                                               SteeringOptions options = {}) {
  using std::sqrt;
  if (steered == steerer) {
    throw std::invalid_argument("steering: steered and steerer must differ");
  }
  const auto target = detail::party_forms(steered, d);
  const auto probe = detail::party_forms(steerer, d);

  CriterionResult<Scalar> result;
  result.name = std::string("steering_") + to_string(steered) + "_given_" + to_string(steerer);
  result.bound = Scalar(0.5);

  if (options.full_conditioning) {
    const Scalar vx = detail::schur_conditional_variance(sigma, target.x, probe.x, probe.p);
    const Scalar vp = detail::schur_conditional_variance(sigma, target.p, probe.x, probe.p);
    result.value = sqrt(vx) * sqrt(vp);
  } else {
    const char* quad_letter[2] = {"X", "P"};
    const LinearForm<Scalar>* probes[2] = {&probe.x, &probe.p};
    const LinearForm<Scalar>* targets[2] = {&target.x, &target.p};
    const char* target_letter[2] = {"g_x", "g_p"};
    Scalar sds[2];
    for (int tq = 0; tq < 2; ++tq) {
      Scalar best_sd = std::numeric_limits<Scalar>::infinity();
      Scalar best_gain = Scalar(0);
      int best_probe = 0;
      for (int oq = 0; oq < 2; ++oq) {
        const auto cond = conditional_sd(sigma, *targets[tq], *probes[oq]);
        if (cond.sd < best_sd) {
          best_sd = cond.sd;
          best_gain = cond.gain;
          best_probe = oq;
        }
      }
      sds[tq] = best_sd;
      result.gains.emplace_back(std::string(target_letter[tq]) + ":" +
                                    quad_letter[best_probe] + "_" + to_string(steerer),
                                best_gain);
    }
    result.value = sds[0] * sds[1];
  }
  result.violated = result.value < result.bound;
  return result;
}

// Steering monogamy across the amplifier's natural partitions. The product
// and sum inequalities bound how strongly the pulse can be steered by the
// mirror and atoms separately, given its steering by their joint mode w; the
// collusion bound says two parties cannot both steer the same target.
template <typename Scalar = double>
struct MonogamyReport {
  Scalar e_a_given_m, e_a_given_c, e_a_given_w;
  Scalar e_m_given_a, e_m_given_c;
  bool product_inequality;      // E_{a|m} E_{a|c} >= E_{a|w}^2
  bool sum_inequality;          // E_{a|m} + E_{a|c} >= 2 E_{a|w}
  bool collusion_free;          // not both E_{m|a} < 1/2 and E_{m|c} < 1/2
  bool single_pair_dominates;   // E_{a|m} >= E_{a|w}; informational, fails at small r
};

template <typename Scalar>
[[nodiscard]] MonogamyReport<Scalar> monogamy_report(const Covariance<Scalar>& sigma,
                                                     const DerivedParams<Scalar>& d) {
  constexpr Scalar slack = Scalar(1e-12);  // round-off headroom on the comparisons
  MonogamyReport<Scalar> rep;
  rep.e_a_given_m = steering(sigma, Party::a, Party::m, &d).value;
  rep.e_a_given_c = steering(sigma, Party::a, Party::c, &d).value;
  rep.e_a_given_w = steering(sigma, Party::a, Party::w, &d).value;
  rep.e_m_given_a = steering(sigma, Party::m, Party::a, &d).value;
  rep.e_m_given_c = steering(sigma, Party::m, Party::c, &d).value;
  rep.product_inequality =
      rep.e_a_given_m * rep.e_a_given_c >= rep.e_a_given_w * rep.e_a_given_w - slack;
  rep.sum_inequality =
      rep.e_a_given_m + rep.e_a_given_c >= Scalar(2) * rep.e_a_given_w - slack;
  rep.collusion_free =
      !(rep.e_m_given_a < Scalar(0.5) - slack && rep.e_m_given_c < Scalar(0.5) - slack);
  rep.single_pair_dominates = rep.e_a_given_m >= rep.e_a_given_w - slack;
  return rep;
}

// ---------------------------------------------------------------------------
// Closed-form values of the witnesses above, for cross-checking the
// covariance pipeline. All take the derived parameters; E is the growing
// (amplifier) or decaying (attenuator) exponential of r_eff.
// ---------------------------------------------------------------------------
namespace closed_form {

template <typename Scalar>
[[nodiscard]] Scalar dgcz_a_c(const DerivedParams<Scalar>& d) {
  using std::exp;
  using std::expm1;
  const Scalar occ = d.n0 + Scalar(1);
  if (d.regime == Regime::amplifier) {
    const Scalar k = expm1(d.r_eff);
    const Scalar grow = expm1(Scalar(2) * d.r_eff);
    return Scalar(2) +
           Scalar(2) * d.alpha * d.alpha * occ * (grow + d.beta * d.beta * k * k);
  }
  const Scalar e = exp(-d.r_eff);
  const Scalar k = -expm1(-d.r_eff);
  return Scalar(2) + Scalar(2) * d.beta * d.beta * occ *
                         (Scalar(1) - e * e + d.alpha * d.alpha * k * k);
}

template <typename Scalar>
[[nodiscard]] Scalar dgcz_m_c(const DerivedParams<Scalar>& d) {
  using std::expm1;
  const Scalar occ = d.n0 + Scalar(1);
  Scalar diag, k;
  if (d.regime == Regime::amplifier) {
    k = expm1(d.r_eff);
    diag = d.alpha * d.alpha * k + Scalar(1);  // alpha^2 e - beta^2
  } else {
    k = -expm1(-d.r_eff);
    diag = Scalar(1) + d.beta * d.beta * k;    // alpha^2 - beta^2 e
  }
  return Scalar(2) * occ * (diag * diag + d.alpha * d.alpha * d.beta * d.beta * k * k);
}

template <typename Scalar>
[[nodiscard]] Scalar dgcz_a_m(const DerivedParams<Scalar>& d) {
  using std::exp;
  using std::expm1;
  using std::sqrt;
  const Scalar occ = d.n0 + Scalar(1);
  if (d.regime == Regime::amplifier) {
    const Scalar e = exp(d.r_eff);
    const Scalar rad = sqrt(expm1(d.r_eff) * (e + Scalar(1)));
    const Scalar inner = d.alpha * (d.alpha * e - rad) - d.beta * d.beta;
    return Scalar(2) * occ * inner * inner;
  }
  const Scalar e = exp(-d.r_eff);
  const Scalar rad = sqrt(-expm1(-d.r_eff) * (Scalar(1) + e));
  const Scalar inner = d.alpha * d.alpha - d.beta * (d.beta * e + rad);
  return Scalar(2) * occ * inner * inner;
}

template <typename Scalar>
[[nodiscard]] Scalar dgcz_a_w(const DerivedParams<Scalar>& d) {
  using std::exp;
  using std::expm1;
  using std::sqrt;
  const Scalar occ = d.n0 + Scalar(1);
  if (d.regime == Regime::amplifier) {
    const Scalar e = exp(d.r_eff);
    const Scalar rad = sqrt(expm1(d.r_eff) * (e + Scalar(1)));
    const Scalar diff = e - rad;
    return Scalar(2) * d.alpha * d.alpha * occ * diff * diff;
  }
  // Minimized sign branch; the opposite sign gives (e + rad)^2 and is never
  // the smaller of the two. Both branches stay at or above the bound 2.
  const Scalar e = exp(-d.r_eff);
  const Scalar rad = sqrt(-expm1(-d.r_eff) * (Scalar(1) + e));
  const Scalar diff = e - rad;
  return Scalar(2) + Scalar(2) * d.beta * d.beta * occ * diff * diff;
}

template <typename Scalar>
[[nodiscard]] Scalar upsilon_m_c(const DerivedParams<Scalar>& d) {
  using std::expm1;
  if (d.regime != Regime::attenuator) {
    throw std::domain_error("closed_form::upsilon_m_c: attenuator regime only");
  }
  const Scalar occ = d.n0 + Scalar(1);
  const Scalar k = -expm1(-d.r_eff);
  const Scalar inner = Scalar(1) - d.beta * k / (d.alpha + d.beta);
  return Scalar(2) * occ * inner * inner;
}

// r -> infinity limit of upsilon_m_c: 2 (n0+1) [alpha / (alpha + beta)]^2.
template <typename Scalar>
[[nodiscard]] Scalar upsilon_m_c_limit(const DerivedParams<Scalar>& d) {
  if (d.regime != Regime::attenuator) {
    throw std::domain_error("closed_form::upsilon_m_c_limit: attenuator regime only");
  }
  const Scalar occ = d.n0 + Scalar(1);
  const Scalar frac = d.alpha / (d.alpha + d.beta);
  return Scalar(2) * occ * frac * frac;
}

}  // namespace closed_form

}  // namespace cvoml
