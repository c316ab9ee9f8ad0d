// Command-line front end: single-point reports, pulse-area sweeps, canned
// figure curve sets, and the oracle self-check.
//
// Exit codes: 0 success, 1 validation/accuracy failure, 2 invalid arguments,
// 3 I/O error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cvoml/cvoml.hpp"

namespace {

struct CommonOptions {
  std::optional<double> G, Ga, alpha, alpha_prime, n0, r, r_min, r_max;
  std::optional<int> steps;
  std::optional<std::string> regime, gains, format, out, config, criteria;
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--G", o.G, "mirror coupling rate (default 1)");
  cmd->add_option("--Ga", o.Ga, "atomic coupling rate");
  cmd->add_option("--alpha", o.alpha,
                  "amplifier mixing coefficient alpha >= 1 (alternative to --Ga)");
  cmd->add_option("--alpha-prime", o.alpha_prime,
                  "attenuator mixing coefficient alpha' > 1 (alternative to --Ga)");
  cmd->add_option("--regime", o.regime, "expected regime: amplifier | attenuator");
  cmd->add_option("--n0", o.n0, "mirror thermal occupation (default 0)");
  cmd->add_option("--r", o.r, "pulse area G*tau");
  cmd->add_option("--r-min", o.r_min, "sweep start (default 0)");
  cmd->add_option("--r-max", o.r_max, "sweep end (default 5)");
  cmd->add_option("--steps", o.steps, "sweep intervals / oracle grid subintervals");
  cmd->add_option("--criteria", o.criteria, "comma-separated witness names");
  cmd->add_option("--gains", o.gains, "tripartite gain mode: symmetric | optimal");
  cmd->add_option("--format", o.format, "output format");
  cmd->add_option("--out", o.out, "output file (directory for figure)");
  cmd->add_option("--config", o.config, "JSON config file; explicit flags win");
}

[[noreturn]] void fail_args(const std::string& message) {
  throw std::invalid_argument(message);
}

// Fills unset options from a JSON config file. Flags given on the command
// line keep their values.
void apply_config(CommonOptions& o) {
  if (!o.config) {
    return;
  }
  std::ifstream in(*o.config);
  if (!in) {
    throw std::ios_base::failure("cannot open config file: " + *o.config);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    fail_args("config: " + std::string(e.what()));
  }
  if (!j.is_object()) {
    fail_args("config: top-level JSON object expected");
  }

  const auto fill_num = [&](std::optional<double>& slot, std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
      if (j.contains(key)) {
        if (!slot) {
          slot = j[key].get<double>();
        }
        return;
      }
    }
  };
  const auto fill_str = [&](std::optional<std::string>& slot,
                            std::initializer_list<const char*> keys) {
    for (const char* key : keys) {
      if (j.contains(key)) {
        if (!slot) {
          slot = j[key].get<std::string>();
        }
        return;
      }
    }
  };

  static const std::vector<std::string> known = {
      "G",     "Ga",    "alpha", "alpha-prime", "alpha_prime", "regime", "n0",
      "r",     "r-min", "r_min", "r-max",       "r_max",       "steps",  "criteria",
      "gains", "format", "out"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail_args("config: unknown key \"" + key + "\"");
    }
  }

  try {
    fill_num(o.G, {"G"});
    fill_num(o.Ga, {"Ga"});
    fill_num(o.alpha, {"alpha"});
    fill_num(o.alpha_prime, {"alpha-prime", "alpha_prime"});
    fill_num(o.n0, {"n0"});
    fill_num(o.r, {"r"});
    fill_num(o.r_min, {"r-min", "r_min"});
    fill_num(o.r_max, {"r-max", "r_max"});
    if (!o.steps && j.contains("steps")) {
      o.steps = j["steps"].get<int>();
    }
    fill_str(o.regime, {"regime"});
    fill_str(o.gains, {"gains"});
    fill_str(o.format, {"format"});
    fill_str(o.out, {"out"});
    if (!o.criteria && j.contains("criteria")) {
      if (j["criteria"].is_array()) {
        std::string joined;
        for (const auto& item : j["criteria"]) {
          joined += (joined.empty() ? "" : ",") + item.get<std::string>();
        }
        o.criteria = joined;
      } else {
        o.criteria = j["criteria"].get<std::string>();
      }
    }
  } catch (const nlohmann::json::type_error& e) {
    fail_args("config: " + std::string(e.what()));
  }
}

cvoml::SystemParams<double> resolve_params(const CommonOptions& o, bool require_r) {
  const int picked =
      (o.Ga.has_value() ? 1 : 0) + (o.alpha.has_value() ? 1 : 0) + (o.alpha_prime ? 1 : 0);
  if (picked == 0) {
    fail_args("one of --Ga, --alpha, --alpha-prime is required");
  }
  if (picked > 1) {
    fail_args("--Ga, --alpha and --alpha-prime are mutually exclusive");
  }
  const double G = o.G.value_or(1.0);
  if (!(G > 0.0)) {
    fail_args("G must be positive");
  }
  double Ga = 0.0;
  if (o.Ga) {
    Ga = *o.Ga;
  } else if (o.alpha) {
    if (!(*o.alpha >= 1.0)) {
      fail_args("alpha must be >= 1");
    }
    Ga = G * (1.0 - 1.0 / (*o.alpha * *o.alpha));
  } else {
    if (!(*o.alpha_prime > 1.0)) {
      fail_args("alpha-prime must be > 1 (the value 1 corresponds to G = 0)");
    }
    const double a2 = *o.alpha_prime * *o.alpha_prime;
    Ga = G * a2 / (a2 - 1.0);
  }
  if (o.regime) {
    if (*o.regime != "amplifier" && *o.regime != "attenuator") {
      fail_args("regime must be amplifier or attenuator");
    }
    if ((*o.regime == "amplifier") != (G > Ga)) {
      fail_args("requested regime " + *o.regime + " is inconsistent with G=" +
                cvoml::format_value(G) + ", Ga=" + cvoml::format_value(Ga));
    }
  }
  if (require_r && !o.r) {
    fail_args("--r is required");
  }
  return {G, Ga, o.n0.value_or(0.0), o.r.value_or(0.0)};
}

cvoml::GainMode resolve_gains(const CommonOptions& o) {
  const std::string gains = o.gains.value_or("symmetric");
  if (gains == "symmetric") {
    return cvoml::GainMode::symmetric;
  }
  if (gains == "optimal") {
    return cvoml::GainMode::optimal;
  }
  fail_args("gains must be symmetric or optimal");
}

std::string resolve_format(const CommonOptions& o, const std::string& fallback,
                           std::initializer_list<const char*> allowed) {
  const std::string format = o.format.value_or(fallback);
  for (const char* candidate : allowed) {
    if (format == candidate) {
      return format;
    }
  }
  std::string list;
  for (const char* candidate : allowed) {
    list += (list.empty() ? "" : " | ") + std::string(candidate);
  }
  fail_args("format must be one of: " + list);
}

std::vector<std::string> parse_criteria(const std::string& csv) {
  std::vector<std::string> names;
  std::string current;
  for (const char ch : csv + ",") {
    if (ch == ',') {
      while (!current.empty() && current.front() == ' ') current.erase(current.begin());
      while (!current.empty() && current.back() == ' ') current.pop_back();
      if (current.empty()) {
        fail_args("criteria: empty name in list");
      }
      names.push_back(current);
      current.clear();
    } else {
      current += ch;
    }
  }
  return names;
}

void write_to(const std::optional<std::string>& out,
              const std::function<void(std::ostream&)>& writer) {
  if (!out || *out == "-") {
    writer(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream file(*out, std::ios::binary);
  if (!file) {
    throw std::ios_base::failure("cannot open output file: " + *out);
  }
  writer(file);
  file.flush();
  if (!file) {
    throw std::ios_base::failure("write failed: " + *out);
  }
}

int run_report(CommonOptions& o) {
  apply_config(o);
  const auto params = resolve_params(o, /*require_r=*/true);
  const auto gains = resolve_gains(o);
  const std::string format = resolve_format(o, "text", {"text", "json", "csv"});
  const auto report = cvoml::make_report(params, gains);
  write_to(o.out, [&](std::ostream& out) {
    if (format == "json") {
      out << report.dump(2) << "\n";
    } else if (format == "csv") {
      out << "# generated by cvoml report\n";
      out << "# G=" << cvoml::format_value(params.G)
          << " Ga=" << cvoml::format_value(params.Ga)
          << " n0=" << cvoml::format_value(params.n0)
          << " r=" << cvoml::format_value(params.r)
          << " gains=" << report["gains_mode"].get<std::string>() << "\n";
      out << "name,value,bound,violated\n";
      for (const auto& entry : report["criteria"]) {
        out << entry["name"].get<std::string>() << ","
            << cvoml::format_value(entry["value"].get<double>()) << ","
            << cvoml::format_value(entry["bound"].get<double>()) << ","
            << (entry["violated"].get<bool>() ? 1 : 0) << "\n";
      }
    } else {
      cvoml::write_report_text(out, report);
    }
  });
  return 0;
}

int run_sweep_cmd(CommonOptions& o) {
  apply_config(o);
  cvoml::SweepSpec spec;
  spec.base = resolve_params(o, /*require_r=*/false);
  spec.r_min = o.r_min.value_or(0.0);
  spec.r_max = o.r_max.value_or(5.0);
  spec.steps = o.steps.value_or(499);
  spec.gains = resolve_gains(o);
  if (o.criteria) {
    spec.criteria = parse_criteria(*o.criteria);
  }
  const std::string format = resolve_format(o, "csv", {"csv", "json"});
  const auto table = cvoml::run_sweep(spec);
  write_to(o.out, [&](std::ostream& out) {
    if (format == "json") {
      out << cvoml::table_to_json(table).dump(2) << "\n";
    } else {
      cvoml::write_csv(out, table);
    }
  });
  return 0;
}

int run_figure(CommonOptions& o, const std::string& figure_id) {
  apply_config(o);
  const std::string format = resolve_format(o, "csv", {"csv", "json"});
  const auto curves = cvoml::figure_curves(figure_id);

  const std::filesystem::path dir = o.out.value_or(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) {
    throw std::ios_base::failure("cannot create output directory: " + dir.string());
  }

  for (const auto& curve : curves) {
    auto spec = curve.spec;
    if (o.steps) {
      spec.steps = *o.steps;  // coarser or finer r grid than the canned default
    }
    auto table = cvoml::run_sweep(spec);
    table.comments[0] = "generated by cvoml figure " + figure_id;
    table.comments.insert(table.comments.begin() + 1, curve.extra_comments.begin(),
                          curve.extra_comments.end());
    const auto path = dir / (curve.file_stem + (format == "json" ? ".json" : ".csv"));
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      throw std::ios_base::failure("cannot open output file: " + path.string());
    }
    if (format == "json") {
      file << cvoml::table_to_json(table).dump(2) << "\n";
    } else {
      cvoml::write_csv(file, table);
    }
    file.flush();
    if (!file) {
      throw std::ios_base::failure("write failed: " + path.string());
    }
    std::cout << path.string() << "\n";
  }
  return 0;
}

int run_validate(CommonOptions& o) {
  apply_config(o);
  cvoml::ValidationOptions options;
  options.steps = o.steps.value_or(cvoml::ValidationOptions{}.steps);
  if (options.steps < 2 || options.steps % 2 != 0) {
    fail_args("--steps must be even and >= 2");
  }
  if (o.regime) {
    if (*o.regime == "amplifier") {
      options.regime = cvoml::Regime::amplifier;
    } else if (*o.regime == "attenuator") {
      options.regime = cvoml::Regime::attenuator;
    } else {
      fail_args("regime must be amplifier or attenuator");
    }
  }
  options.n0 = o.n0;
  const std::string format = resolve_format(o, "text", {"text", "json"});

  const auto checks = cvoml::run_validation(options);
  write_to(o.out, [&](std::ostream& out) {
    if (format == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& check : checks) {
        j.push_back({{"name", check.name},
                     {"residual", check.residual},
                     {"tol", check.tol},
                     {"pass", check.pass}});
      }
      out << j.dump(2) << "\n";
    } else {
      cvoml::write_validation_text(out, checks);
    }
  });
  const bool all_pass =
      std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian input-output model of a pulsed cavity coupled to a mirror and an "
               "atomic ensemble"};
  app.require_subcommand(1);

  CommonOptions report_opts, sweep_opts, figure_opts, validate_opts;
  std::string figure_id;

  auto* report = app.add_subcommand("report", "evaluate every witness at one operating point");
  add_common_options(report, report_opts);

  auto* sweep = app.add_subcommand("sweep", "tabulate witnesses over a pulse-area grid");
  add_common_options(sweep, sweep_opts);

  auto* figure = app.add_subcommand("figure", "emit the canned curve set for a figure id");
  figure->add_option("id", figure_id, "figure identifier (fig2 .. fig10)")->required();
  add_common_options(figure, figure_opts);

  auto* validate =
      app.add_subcommand("validate", "compare the analytic map against the numerical oracle");
  add_common_options(validate, validate_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto guarded = [](const std::function<int()>& fn) -> int {
    try {
      return fn();
    } catch (const cvoml::accuracy_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    } catch (const std::ios_base::failure& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    } catch (const std::filesystem::filesystem_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 3;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::range_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  };

  if (report->parsed()) {
    return guarded([&] { return run_report(report_opts); });
  }
  if (sweep->parsed()) {
    return guarded([&] { return run_sweep_cmd(sweep_opts); });
  }
  if (figure->parsed()) {
    return guarded([&] { return run_figure(figure_opts, figure_id); });
  }
  return guarded([&] { return run_validate(validate_opts); });
}
