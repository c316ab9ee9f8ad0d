#include "cvoml/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

namespace cvoml {

namespace {

Party party_from_letter(char letter) {
  switch (letter) {
    case 'a': return Party::a;
    case 'm': return Party::m;
    case 'c': return Party::c;
    case 'w': return Party::w;
  }
  throw std::invalid_argument(std::string("unknown party letter '") + letter + "'");
}

// "1.5" -> "1p5" so curve labels stay filesystem-friendly.
std::string num_label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  std::string label(buf);
  std::replace(label.begin(), label.end(), '.', 'p');
  return label;
}

SystemParams<double> amplifier_params(double alpha, double n0) {
  // alpha = sqrt(G / (G - Ga)) with G = 1  =>  Ga = 1 - 1/alpha^2.
  return {1.0, 1.0 - 1.0 / (alpha * alpha), n0, 0.0};
}

SystemParams<double> attenuator_params(double alpha_prime, double n0) {
  // alpha' = sqrt(Ga / (Ga - G)) with G = 1  =>  Ga = alpha'^2 / (alpha'^2 - 1).
  const double a2 = alpha_prime * alpha_prime;
  return {1.0, a2 / (a2 - 1.0), n0, 0.0};
}

std::string params_comment(const SystemParams<double>& p, const DerivedParams<double>& d) {
  std::string line = "G=" + format_value(p.G) + " Ga=" + format_value(p.Ga) +
                     " n0=" + format_value(p.n0) + " regime=" + to_string(d.regime) +
                     " lambda=" + format_value(d.lambda) + " alpha=" + format_value(d.alpha) +
                     " beta=" + format_value(d.beta);
  return line;
}

}  // namespace

// ---- named witness registry -------------------------------------------------

const std::vector<std::string>& witness_names() {
  static const std::vector<std::string> names = {
      "dgcz_a_m",  "dgcz_a_c",  "dgcz_a_w",  "dgcz_m_c",  "upsilon_m_c",
      "asym_a_m",  "asym_m_c",
      "vlf_am",    "vlf_ac",    "vlf_mc",
      "tri_am",    "tri_ac",    "tri_mc",    "tri_sum",
      "steering_a_given_m", "steering_m_given_a",
      "steering_a_given_c", "steering_c_given_a",
      "steering_m_given_c", "steering_c_given_m",
      "steering_a_given_w", "steering_w_given_a",
      "steering_m_given_w", "steering_w_given_m",
      "steering_c_given_w", "steering_w_given_c",
  };
  return names;
}

bool is_witness_name(const std::string& name) {
  const auto& names = witness_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CriterionResult<double> evaluate_witness(const std::string& name,
                                         const Covariance<double>& sigma,
                                         const DerivedParams<double>& derived,
                                         GainMode gains) {
  if (!is_witness_name(name)) {
    throw std::invalid_argument("unknown criterion: " + name);
  }
  if (name == "upsilon_m_c") {
    return upsilon_symmetric(sigma);
  }
  if (name == "asym_a_m") {
    return asymmetric_pair(sigma, {Party::a, Party::m, PairKind::xp}, &derived);
  }
  if (name == "asym_m_c") {
    return asymmetric_pair(sigma, {Party::m, Party::c, PairKind::xx}, &derived);
  }
  if (name == "tri_sum") {
    return genuine_sum(sigma, gains);
  }
  if (name.rfind("dgcz_", 0) == 0) {
    // dgcz_<i>_<j>
    return dgcz_symmetric(sigma, {party_from_letter(name[5]), party_from_letter(name[7])},
                          &derived);
  }
  const auto pair_index = [](const std::string& suffix) -> std::size_t {
    if (suffix == "am") return 0;
    if (suffix == "ac") return 1;
    return 2;  // "mc"
  };
  if (name.rfind("vlf_", 0) == 0) {
    return tripartite_sums(sigma, gains)[pair_index(name.substr(4))];
  }
  if (name.rfind("tri_", 0) == 0) {
    return tripartite_products(sigma, gains)[pair_index(name.substr(4))];
  }
  // steering_<steered>_given_<steerer>
  const char steered = name[9];
  const char steerer = name.back();
  return steering(sigma, party_from_letter(steered), party_from_letter(steerer), &derived);
}

// ---- sweeps -------------------------------------------------------------------

DataTable run_sweep(const SweepSpec& spec) {
  if (spec.steps < 1) {
    throw std::invalid_argument("sweep: steps must be >= 1");
  }
  if (!(spec.r_min >= 0.0) || !(spec.r_max >= spec.r_min)) {
    throw std::invalid_argument("sweep: need 0 <= r_min <= r_max");
  }
  std::vector<std::string> criteria = spec.criteria;
  if (criteria.empty()) {
    criteria = {"dgcz_a_m", "dgcz_a_c", "dgcz_a_w", "dgcz_m_c", "upsilon_m_c"};
  }
  for (const auto& name : criteria) {
    if (!is_witness_name(name)) {
      throw std::invalid_argument("unknown criterion: " + name);
    }
  }

  SystemParams<double> probe = spec.base;
  probe.r = spec.r_min;
  const auto d0 = derive(probe);

  DataTable table;
  table.comments.push_back("generated by cvoml sweep");
  table.comments.push_back(params_comment(spec.base, d0));
  table.comments.push_back("r grid: [" + format_value(spec.r_min) + ", " +
                           format_value(spec.r_max) + "], " +
                           std::to_string(spec.steps + 1) + " points");
  table.comments.push_back(std::string("gains=") + to_string(spec.gains));

  table.columns.push_back("r");
  for (const auto& name : criteria) {
    table.columns.push_back(name);
    table.columns.push_back(name + "_bound");
    table.columns.push_back(name + "_violated");
  }

  table.rows.reserve(static_cast<std::size_t>(spec.steps) + 1);
  for (int i = 0; i <= spec.steps; ++i) {
    SystemParams<double> p = spec.base;
    p.r = spec.r_min + (spec.r_max - spec.r_min) * static_cast<double>(i) /
                           static_cast<double>(spec.steps);
    const auto d = derive(p);
    const auto sigma = output_covariance(d);
    std::vector<double> row;
    row.reserve(table.columns.size());
    row.push_back(p.r);
    for (const auto& name : criteria) {
      const auto res = evaluate_witness(name, sigma, d, spec.gains);
      row.push_back(res.value);
      row.push_back(res.bound);
      row.push_back(res.violated ? 1.0 : 0.0);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_value(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const DataTable& table) {
  for (const auto& comment : table.comments) {
    out << "# " << comment << "\n";
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i == 0 ? "" : ",") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i == 0 ? "" : ",") << format_value(row[i]);
    }
    out << "\n";
  }
}

nlohmann::ordered_json table_to_json(const DataTable& table) {
  nlohmann::ordered_json j;
  j["comments"] = table.comments;
  nlohmann::ordered_json data = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      const auto& col = table.columns[i];
      if (col.size() > 9 && col.compare(col.size() - 9, 9, "_violated") == 0) {
        obj[col] = row[i] != 0.0;
      } else {
        obj[col] = row[i];
      }
    }
    data.push_back(std::move(obj));
  }
  j["data"] = std::move(data);
  return j;
}

// ---- figure curve sets ----------------------------------------------------------

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig2", "fig3", "fig4",  "fig5", "fig6",
                                               "fig7", "fig8", "fig9", "fig10"};
  return ids;
}

std::vector<FigureCurve> figure_curves(const std::string& figure_id) {
  std::vector<FigureCurve> curves;
  const auto add = [&curves](std::string stem, SystemParams<double> base,
                             std::vector<std::string> criteria, GainMode gains,
                             std::vector<std::string> notes) {
    FigureCurve curve;
    curve.file_stem = std::move(stem);
    curve.spec.base = base;
    curve.spec.criteria = std::move(criteria);
    curve.spec.gains = gains;
    curve.extra_comments = std::move(notes);
    curves.push_back(std::move(curve));
  };

  if (figure_id == "fig2") {
    // Pulse/mirror entanglement in the amplifier at zero mirror temperature.
    for (const double alpha : {1.0, 2.0, 10.0}) {
      add("fig2_alpha" + num_label(alpha), amplifier_params(alpha, 0.0), {"dgcz_a_m"},
          GainMode::symmetric, {"amplifier, alpha=" + num_label(alpha) + ", n0=0"});
    }
  } else if (figure_id == "fig3") {
    // Pulse vs the joint mirror/atom mode w: thermal robustness.
    for (const double alpha : {1.0, 1.5}) {
      for (const double n0 : {0.0, 5.0}) {
        add("fig3_alpha" + num_label(alpha) + "_n0_" + num_label(n0),
            amplifier_params(alpha, n0), {"dgcz_a_w"}, GainMode::symmetric,
            {"amplifier, alpha=" + num_label(alpha) + ", n0=" + num_label(n0)});
      }
    }
  } else if (figure_id == "fig4") {
    // Pulse/mirror entanglement in the attenuator.
    for (const double ap : {1.2, 1.5, 5.0}) {
      add("fig4_alphap" + num_label(ap), attenuator_params(ap, 0.0), {"dgcz_a_m"},
          GainMode::symmetric, {"attenuator, alpha_prime=" + num_label(ap) + ", n0=0"});
    }
  } else if (figure_id == "fig5") {
    // Mirror/atom entanglement in the attenuator. alpha_prime = 1 requires
    // G = 0 exactly, so that curve is represented by alpha_prime = 1 + 1e-12;
    // the witness is flat at 2(n0+1) to within ~1e-5 over this range.
    for (const double ap : {1.0, 5.0, 10.0}) {
      const double effective = (ap == 1.0) ? 1.0 + 1e-12 : ap;
      std::vector<std::string> notes = {"attenuator, alpha_prime=" + num_label(ap) +
                                        ", n0=0"};
      if (ap == 1.0) {
        notes.push_back("alpha_prime=1 evaluated at 1+1e-12 (exact value needs G=0)");
      }
      add("fig5_alphap" + num_label(ap), attenuator_params(effective, 0.0), {"upsilon_m_c"},
          GainMode::symmetric, std::move(notes));
    }
  } else if (figure_id == "fig6") {
    // Gain-optimized pair witnesses, both regimes, cold and hot mirror.
    for (const double n0 : {0.0, 100.0}) {
      for (const char* crit : {"asym_a_m", "asym_m_c"}) {
        add(std::string("fig6a_") + crit + "_n0_" + num_label(n0), amplifier_params(2.0, n0),
            {crit}, GainMode::symmetric,
            {std::string("amplifier, alpha=2, n0=") + num_label(n0)});
        add(std::string("fig6b_") + crit + "_n0_" + num_label(n0),
            attenuator_params(2.0, n0), {crit}, GainMode::symmetric,
            {std::string("attenuator, alpha_prime=2, n0=") + num_label(n0)});
      }
    }
  } else if (figure_id == "fig7" || figure_id == "fig8") {
    // Tripartite witnesses; frame a = unit gains, frame b = optimized gains.
    const bool amplifier = figure_id == "fig7";
    const SystemParams<double> base =
        amplifier ? amplifier_params(2.0, 0.0) : attenuator_params(2.0, 0.0);
    const std::string note =
        amplifier ? "amplifier, alpha=2, n0=0" : "attenuator, alpha_prime=2, n0=0";
    for (const auto& [frame, gains] :
         {std::pair<const char*, GainMode>{"a", GainMode::symmetric},
          std::pair<const char*, GainMode>{"b", GainMode::optimal}}) {
      for (const char* crit : {"tri_am", "tri_ac", "tri_mc", "tri_sum"}) {
        add(figure_id + frame + "_" + crit, base, {crit}, gains,
            {note + std::string(", gains=") +
             to_string(gains)});
      }
    }
  } else if (figure_id == "fig9") {
    for (const char* crit :
         {"steering_a_given_m", "steering_m_given_c", "steering_a_given_w",
          "steering_m_given_a", "steering_c_given_m", "steering_w_given_a"}) {
      add(std::string("fig9_") + crit, amplifier_params(2.0, 0.0), {crit},
          GainMode::symmetric, {"amplifier, alpha=2, n0=0"});
    }
  } else if (figure_id == "fig10") {
    for (const char* crit : {"steering_a_given_m", "steering_m_given_a",
                             "steering_m_given_c", "steering_c_given_m"}) {
      add(std::string("fig10_") + crit, attenuator_params(2.0, 0.0), {crit},
          GainMode::symmetric, {"attenuator, alpha_prime=2, n0=0"});
    }
  } else {
    throw std::invalid_argument("unknown figure id: " + figure_id);
  }
  return curves;
}

// ---- single-point report ---------------------------------------------------------

namespace {

nlohmann::ordered_json finite_or_null(double value) {
  if (std::isfinite(value)) {
    return value;
  }
  return nullptr;
}

}  // namespace

nlohmann::ordered_json make_report(const SystemParams<double>& params, GainMode gains) {
  const auto d = derive(params);
  const auto sigma = output_covariance(d);

  nlohmann::ordered_json j;
  j["params"] = {{"G", params.G}, {"Ga", params.Ga}, {"n0", params.n0}, {"r", params.r}};
  j["derived"] = {{"regime", to_string(d.regime)}, {"lambda", d.lambda},
                  {"alpha", d.alpha},              {"beta", d.beta},
                  {"r_eff", d.r_eff}};
  if (d.regime == Regime::amplifier) {
    j["derived"]["s"] = d.s;
  }

  const auto closed = photon_numbers(d);
  const auto from_cov = photon_numbers_from_covariance(sigma, d);
  j["photons"] = {{"closed_form", {{"n_c", closed.n_c}, {"n_w", closed.n_w}}},
                  {"covariance", {{"n_c", from_cov.n_c}, {"n_w", from_cov.n_w}}}};
  j["eta"] = {{"closed_form", finite_or_null(cauchy_schwarz_eta(d))},
              {"covariance", finite_or_null(eta_from_covariance(sigma, d))}};
  if (d.regime == Regime::amplifier) {
    j["r0"] = entanglement_onset_r0(d);
  }

  j["gains_mode"] = to_string(gains);
  nlohmann::ordered_json criteria = nlohmann::ordered_json::array();
  for (const auto& name : witness_names()) {
    const auto res = evaluate_witness(name, sigma, d, gains);
    nlohmann::ordered_json entry;
    entry["name"] = res.name;
    entry["value"] = res.value;
    entry["bound"] = res.bound;
    entry["violated"] = res.violated;
    if (!res.gains.empty()) {
      nlohmann::ordered_json g;
      for (const auto& [label, value] : res.gains) {
        g[label] = value;
      }
      entry["gains"] = std::move(g);
    }
    criteria.push_back(std::move(entry));
  }
  j["criteria"] = std::move(criteria);

  const auto mono = monogamy_report(sigma, d);
  j["monogamy"] = {{"e_a_given_m", mono.e_a_given_m},
                   {"e_a_given_c", mono.e_a_given_c},
                   {"e_a_given_w", mono.e_a_given_w},
                   {"e_m_given_a", mono.e_m_given_a},
                   {"e_m_given_c", mono.e_m_given_c},
                   {"product_inequality", mono.product_inequality},
                   {"sum_inequality", mono.sum_inequality},
                   {"collusion_free", mono.collusion_free},
                   {"single_pair_dominates", mono.single_pair_dominates}};

  const auto xcorr = cross_correlation_identities(sigma);
  j["cross_correlations"] = {{"antisymmetry", xcorr.antisymmetry},
                             {"mirror_atom_xp", xcorr.mirror_atom_xp},
                             {"mirror_atom_px", xcorr.mirror_atom_px},
                             {"pass", xcorr.pass()}};
  return j;
}

void write_report_text(std::ostream& out, const nlohmann::ordered_json& report) {
  const auto num = [](const nlohmann::ordered_json& v) -> std::string {
    if (v.is_null()) {
      return "inf";
    }
    return format_value(v.get<double>());
  };
  const auto& p = report["params"];
  const auto& d = report["derived"];
  out << "parameters  G=" << num(p["G"]) << " Ga=" << num(p["Ga"]) << " n0=" << num(p["n0"])
      << " r=" << num(p["r"]) << "\n";
  out << "derived     regime=" << d["regime"].get<std::string>()
      << " lambda=" << num(d["lambda"]) << " alpha=" << num(d["alpha"])
      << " beta=" << num(d["beta"]) << " r_eff=" << num(d["r_eff"]);
  if (d.contains("s")) {
    out << " s=" << num(d["s"]);
  }
  out << "\n";
  const auto& ph = report["photons"];
  out << "photons     closed form: n_c=" << num(ph["closed_form"]["n_c"])
      << " n_w=" << num(ph["closed_form"]["n_w"]) << "\n";
  out << "            covariance:  n_c=" << num(ph["covariance"]["n_c"])
      << " n_w=" << num(ph["covariance"]["n_w"]) << "\n";
  out << "eta         closed form: " << num(report["eta"]["closed_form"])
      << "  covariance: " << num(report["eta"]["covariance"]) << "\n";
  if (report.contains("r0")) {
    out << "onset       r0=" << num(report["r0"]) << "\n";
  }
  out << "criteria    gains=" << report["gains_mode"].get<std::string>() << "\n";
  for (const auto& entry : report["criteria"]) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-22s %24s  bound=%-4s %s",
                  entry["name"].get<std::string>().c_str(), num(entry["value"]).c_str(),
                  num(entry["bound"]).c_str(),
                  entry["violated"].get<bool>() ? "violated" : "-");
    out << line;
    if (entry.contains("gains")) {
      out << "  [";
      bool first = true;
      for (const auto& [label, value] : entry["gains"].items()) {
        out << (first ? "" : "; ") << label << "=" << num(value);
        first = false;
      }
      out << "]";
    }
    out << "\n";
  }
  const auto& mono = report["monogamy"];
  out << "monogamy    E_a|m=" << num(mono["e_a_given_m"]) << " E_a|c=" << num(mono["e_a_given_c"])
      << " E_a|w=" << num(mono["e_a_given_w"]) << " E_m|a=" << num(mono["e_m_given_a"])
      << " E_m|c=" << num(mono["e_m_given_c"]) << "\n";
  out << "            product_inequality="
      << (mono["product_inequality"].get<bool>() ? "holds" : "violated")
      << " sum_inequality=" << (mono["sum_inequality"].get<bool>() ? "holds" : "violated")
      << " collusion_free=" << (mono["collusion_free"].get<bool>() ? "holds" : "violated")
      << " single_pair_dominates="
      << (mono["single_pair_dominates"].get<bool>() ? "holds" : "violated (informational)")
      << "\n";
  const auto& xc = report["cross_correlations"];
  out << "identities  antisymmetry=" << num(xc["antisymmetry"])
      << " mirror_atom_xp=" << num(xc["mirror_atom_xp"])
      << " mirror_atom_px=" << num(xc["mirror_atom_px"])
      << " pass=" << (xc["pass"].get<bool>() ? "yes" : "no") << "\n";
}

// ---- oracle validation -------------------------------------------------------------

std::vector<ValidationCheck> run_validation(const ValidationOptions& options) {
  if (options.steps < 2 || options.steps % 2 != 0) {
    throw std::invalid_argument("validation: steps must be even and >= 2");
  }

  std::vector<ValidationCheck> checks;

  struct Config {
    Regime regime;
    double coeff;  // alpha (amplifier) or alpha_prime (attenuator)
  };
  const std::vector<Config> configs = {
      {Regime::amplifier, 1.0},  {Regime::amplifier, std::sqrt(2.0)},
      {Regime::amplifier, 2.0},  {Regime::attenuator, 1.2},
      {Regime::attenuator, 2.0}, {Regime::attenuator, 5.0},
  };
  const std::vector<double> r_values = {0.1, 1.0, 3.0};
  const std::vector<double> n0_values =
      options.n0 ? std::vector<double>{*options.n0} : std::vector<double>{0.0, 5.0};

  double worst_physicality = 0.0;  // most negative min eigenvalue seen
  double worst_constancy = 0.0;    // largest drift of the conserved u mode

  for (const auto& config : configs) {
    if (options.regime && *options.regime != config.regime) {
      continue;
    }
    for (const double r : r_values) {
      for (const double n0 : n0_values) {
        SystemParams<double> p = config.regime == Regime::amplifier
                                     ? amplifier_params(config.coeff, n0)
                                     : attenuator_params(config.coeff, n0);
        p.r = r;
        const std::string tag = std::string(to_string(config.regime)) +
                                " alpha=" + num_label(config.coeff) + " r=" + num_label(r) +
                                " n0=" + num_label(n0);

        const auto d = derive(p);
        const auto analytic = output_covariance(d);
        const auto coarse = numeric_output_covariance_raw(p, options.steps);
        const auto fine = numeric_output_covariance_raw(p, 2 * options.steps);

        const double drift = (fine - coarse).cwiseAbs().maxCoeff();
        checks.push_back({"convergence " + tag, drift, 1e-8, drift <= 1e-8});

        const auto cmp = compare_covariances(analytic, fine, 1e-6, 1.0);
        checks.push_back({"oracle " + tag, cmp.max_rel, 1e-6, cmp.pass});

        worst_physicality =
            std::min({worst_physicality, physicality_min_eigenvalue(analytic),
                      physicality_min_eigenvalue(fine)});

        // The u superposition mode is a constant of motion: its second
        // moments in the oracle output must equal the input-state values.
        const auto u = superposition_mode(d, SuperMode::u);
        const auto input = make_input_covariance(p.n0);
        const double drift_u = std::max(
            {std::abs(linear_form_variance(fine, u.x_form) -
                      linear_form_variance(input, u.x_form)),
             std::abs(linear_form_variance(fine, u.p_form) -
                      linear_form_variance(input, u.p_form)),
             std::abs(linear_form_covariance(fine, u.x_form, u.p_form) -
                      linear_form_covariance(input, u.x_form, u.p_form))});
        worst_constancy = std::max(worst_constancy, drift_u);
      }
    }
  }

  checks.push_back({"physicality (analytic and oracle outputs)", -worst_physicality, 1e-10,
                    worst_physicality >= -1e-10});
  checks.push_back(
      {"conserved-mode constancy (oracle output)", worst_constancy, 1e-6,
       worst_constancy <= 1e-6});

  // Symplectic property of the analytic transfer matrix over random
  // parameters from both regimes.
  {
    std::mt19937 rng(20240801u);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double pick = unit(rng);
      const double lambda =
          pick < 0.5 ? 0.99 * unit(rng) : 1.01 + (20.0 - 1.01) * unit(rng);
      SystemParams<double> p;
      p.G = 1.0;
      p.Ga = lambda;
      p.n0 = 100.0 * unit(rng);
      p.r = 5.0 * unit(rng);
      worst = std::max(worst, symplectic_residual(transfer_matrix(derive(p))));
    }
    checks.push_back({"symplectic transfer (200 random parameter draws)", worst, 1e-10,
                      worst <= 1e-10});
  }

  return checks;
}

void write_validation_text(std::ostream& out, const std::vector<ValidationCheck>& checks) {
  std::size_t failed = 0;
  for (const auto& check : checks) {
    char line[200];
    std::snprintf(line, sizeof line, "%s  %-55s residual=%.3e tol=%.0e\n",
                  check.pass ? "PASS" : "FAIL", check.name.c_str(), check.residual,
                  check.tol);
    out << line;
    failed += check.pass ? 0 : 1;
  }
  if (failed == 0) {
    out << "all " << checks.size() << " checks passed\n";
  } else {
    out << failed << " of " << checks.size() << " checks FAILED\n";
  }
}

}  // namespace cvoml
