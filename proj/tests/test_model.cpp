#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cvoml/model.hpp"

using namespace cvoml;

namespace {

SystemParams<double> amplifier(double alpha, double n0, double r) {
  return {1.0, 1.0 - 1.0 / (alpha * alpha), n0, r};
}

SystemParams<double> attenuator(double alpha_prime, double n0, double r) {
  const double a2 = alpha_prime * alpha_prime;
  return {1.0, a2 / (a2 - 1.0), n0, r};
}

}  // namespace

TEST_CASE("derive classifies regimes and keeps alpha^2 - beta^2 = 1") {
  const auto amp = derive(SystemParams<double>{1.0, 0.75, 0.0, 1.0});
  CHECK(amp.regime == Regime::amplifier);
  CHECK(amp.lambda == doctest::Approx(0.75));
  CHECK(amp.alpha == doctest::Approx(2.0));
  CHECK(amp.beta == doctest::Approx(std::sqrt(3.0)));
  CHECK(amp.r_eff == doctest::Approx(0.25));
  CHECK(amp.s == doctest::Approx(std::atanh(std::sqrt(0.75))));

  const auto att = derive(SystemParams<double>{1.0, 4.0 / 3.0, 0.0, 1.0});
  CHECK(att.regime == Regime::attenuator);
  CHECK(att.alpha == doctest::Approx(2.0));
  CHECK(att.beta == doctest::Approx(std::sqrt(3.0)));
  CHECK(att.r_eff == doctest::Approx(1.0 / 3.0));
  CHECK(att.s == 0.0);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double lambda = unit(rng) < 0.5 ? 0.99 * unit(rng) : 1.01 + 19.0 * unit(rng);
    const auto d = derive(SystemParams<double>{1.0, lambda, 0.0, 0.5});
    CHECK(d.alpha * d.alpha - d.beta * d.beta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.alpha >= 1.0);
    CHECK(d.beta >= 0.0);
  }
}

TEST_CASE("derive rejects bad parameters") {
  CHECK_THROWS_AS((void)derive(SystemParams<double>{0.0, 1.0, 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)derive(SystemParams<double>{1.0, -0.1, 0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)derive(SystemParams<double>{1.0, 0.5, -1.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)derive(SystemParams<double>{1.0, 0.5, 0.0, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS((void)derive(SystemParams<double>{1.0, 1.0, 0.0, 1.0}),
                       "degenerate coupling G = Ga", std::invalid_argument);
  CHECK_THROWS_AS((void)derive(SystemParams<double>{1.0, 1.0 + 1e-12, 0.0, 1.0}),
                  std::invalid_argument);

  // The growing exponential is capped in the amplifier ...
  CHECK_THROWS_AS((void)derive(amplifier(1.0, 0.0, 351.0)), std::range_error);
  // ... but the attenuator only has decaying exponentials, so huge effective
  // exponents are allowed (they underflow harmlessly).
  const auto att = derive(attenuator(1.0 + 1e-12, 0.0, 5.0));
  CHECK(att.r_eff > 1e11);
  CHECK_NOTHROW((void)transfer_matrix(att));
}

TEST_CASE("transfer matrix is symplectic in both regimes") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = unit(rng) < 0.5 ? 0.99 * unit(rng) : 1.01 + 19.0 * unit(rng);
    SystemParams<double> p{1.0, lambda, 100.0 * unit(rng), 5.0 * unit(rng)};
    worst = std::max(worst, symplectic_residual(transfer_matrix(derive(p))));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("zero pulse area leaves the state untouched (up to the A-mode sign)") {
  for (const auto& p : {amplifier(1.7, 2.0, 0.0), attenuator(1.7, 2.0, 0.0)}) {
    const auto t = transfer_matrix(derive(p));
    // X_a, P_a flip sign on reflection; the rest is the identity.
    Transfer<double> expected = Transfer<double>::Identity();
    expected(0, 0) = expected(1, 1) = -1.0;
    CHECK((t - expected).cwiseAbs().maxCoeff() < 1e-14);
    const auto sigma = output_covariance(derive(p));
    CHECK((sigma - make_input_covariance(2.0)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("output covariance stays physical") {
  for (const auto& p : {amplifier(1.0, 0.0, 1.0), amplifier(2.0, 5.0, 3.0),
                        attenuator(1.2, 0.0, 1.0), attenuator(5.0, 5.0, 3.0)}) {
    CHECK(is_physical(output_covariance(derive(p)), 1e-9));
  }
}

TEST_CASE("superposition modes: w carries the interaction, u is conserved") {
  for (const auto& p : {amplifier(2.0, 5.0, 1.3), attenuator(2.0, 5.0, 1.3),
                        amplifier(1.5, 0.0, 4.0), attenuator(1.2, 2.0, 2.4)}) {
    const auto d = derive(p);
    const auto w = superposition_mode(d, SuperMode::w);
    const auto u = superposition_mode(d, SuperMode::u);

    // Exactly one of the pair is canonical in each regime: the commutator
    // [X, P]/i = cm^2 - cc^2 is +1 when the mirror carries the larger
    // coefficient and -1 when the conjugate (atomic) slot does. In the
    // amplifier that makes w canonical and u inverted; in the attenuator
    // the coefficient swap reverses both signs.
    const auto omega = symplectic_form<double>();
    const double sign = d.regime == Regime::amplifier ? 1.0 : -1.0;
    CHECK(w.x_form.dot(omega * w.p_form) == doctest::Approx(sign).epsilon(1e-12));
    CHECK(u.x_form.dot(omega * u.p_form) == doctest::Approx(-sign).epsilon(1e-12));

    // u is a constant of motion: all its second moments match the input.
    const auto sigma = output_covariance(d);
    const auto input = make_input_covariance(p.n0);
    CHECK(linear_form_variance(sigma, u.x_form) ==
          doctest::Approx(linear_form_variance(input, u.x_form)).epsilon(1e-10));
    CHECK(linear_form_variance(sigma, u.p_form) ==
          doctest::Approx(linear_form_variance(input, u.p_form)).epsilon(1e-10));
    CHECK(linear_form_covariance(sigma, u.x_form, u.p_form) ==
          doctest::Approx(linear_form_covariance(input, u.x_form, u.p_form))
              .epsilon(1e-10));
  }
}

TEST_CASE("photon numbers: closed forms, covariance path, and conservation laws") {
  // Amplifier: n_c grows from zero; n_w - n_c is conserved.
  {
    const auto d = derive(amplifier(2.0, 0.0, 1.0));
    const auto n = photon_numbers(d);
    CHECK(n.n_c == doctest::Approx(2.5948850828005128).epsilon(1e-13));
    CHECK(n.n_w - n.n_c == doctest::Approx(3.0).epsilon(1e-12));  // alpha^2 (n0+1) - 1

    const auto from_cov = photon_numbers_from_covariance(output_covariance(d), d);
    CHECK(from_cov.n_c == doctest::Approx(n.n_c).epsilon(1e-12));
    CHECK(from_cov.n_w == doctest::Approx(n.n_w).epsilon(1e-12));

    for (const double r : {0.0, 0.5, 2.0, 5.0}) {
      const auto nr = photon_numbers(derive(amplifier(2.0, 0.0, r)));
      CHECK(nr.n_w - nr.n_c == doctest::Approx(3.0).epsilon(1e-12));
    }
  }
  // Attenuator: photons flow from w into the pulse; n_w + n_c is conserved.
  {
    for (const double r : {0.0, 0.5, 2.0, 5.0}) {
      const auto d = derive(attenuator(2.0, 0.0, r));
      const auto n = photon_numbers(d);
      CHECK(n.n_c + n.n_w == doctest::Approx(4.0).epsilon(1e-12));  // beta'^2 (n0+1) + 1
      const auto from_cov = photon_numbers_from_covariance(output_covariance(d), d);
      CHECK(from_cov.n_c == doctest::Approx(n.n_c).epsilon(1e-11));
      CHECK(from_cov.n_w == doctest::Approx(n.n_w).epsilon(1e-11));
    }
  }
}

TEST_CASE("Cauchy-Schwarz ratio: frozen value, covariance path, and the regime dichotomy") {
  const auto d = derive(amplifier(2.0, 0.0, 1.0));
  CHECK(cauchy_schwarz_eta(d) == doctest::Approx(1.1787346809095596).epsilon(1e-12));
  CHECK(eta_from_covariance(output_covariance(d), d) ==
        doctest::Approx(1.1787346809095596).epsilon(1e-10));

  for (const double r : {0.3, 1.0, 3.0}) {
    for (const double n0 : {0.0, 5.0}) {
      const auto da = derive(amplifier(1.5, n0, r));
      CHECK(cauchy_schwarz_eta(da) > 1.0);
      CHECK(eta_from_covariance(output_covariance(da), da) > 1.0);
      const auto dt = derive(attenuator(1.5, n0, r));
      CHECK(cauchy_schwarz_eta(dt) < 1.0);
      CHECK(eta_from_covariance(output_covariance(dt), dt) < 1.0);
    }
  }

  // Degenerate corner: at alpha = 1, n0 = 0, r = 0 the output pulse is vacuum
  // and the ratio is reported as infinite.
  CHECK(std::isinf(cauchy_schwarz_eta(derive(amplifier(1.0, 0.0, 0.0)))));
}

TEST_CASE("entanglement onset r0: frozen values and the defining property") {
  const auto d1 = derive(amplifier(1.0, 5.0, 0.0));
  CHECK(entanglement_onset_r0(d1) == doctest::Approx(0.35688323388134).epsilon(1e-10));
  const auto d2 = derive(amplifier(1.5, 5.0, 0.0));
  CHECK(entanglement_onset_r0(d2) == doctest::Approx(1.52922740882488).epsilon(1e-10));
  CHECK(entanglement_onset_r0(derive(amplifier(1.0, 0.0, 0.0))) == doctest::Approx(0.0));

  CHECK_THROWS_AS((void)entanglement_onset_r0(derive(attenuator(2.0, 0.0, 1.0))),
                  std::domain_error);
}
