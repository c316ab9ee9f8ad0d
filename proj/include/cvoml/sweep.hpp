#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvoml/criteria.hpp"
#include "cvoml/oracle.hpp"

// Batch evaluation machinery shared by the command-line tool and the tests:
// the named-witness registry, parameter sweeps over the pulse area, the
// pre-baked figure curve sets, the single-point report, and the self-check
// run comparing the analytic pipeline against the numerical oracle.

namespace cvoml {

// ---- named witness registry -----------------------------------------------

// Canonical names of every witness the sweep and report commands can
// evaluate: the four symmetric variance witnesses, the X-X variant, the two
// gain-optimized pair witnesses, the tripartite sums/products/total, and the
// twelve ordered steering pairs.
[[nodiscard]] const std::vector<std::string>& witness_names();
[[nodiscard]] bool is_witness_name(const std::string& name);

[[nodiscard]] CriterionResult<double> evaluate_witness(const std::string& name,
                                                       const Covariance<double>& sigma,
                                                       const DerivedParams<double>& derived,
                                                       GainMode gains);

// ---- sweeps ----------------------------------------------------------------

struct SweepSpec {
  SystemParams<double> base;          // r is overridden by the grid
  double r_min = 0.0;
  double r_max = 5.0;
  int steps = 499;                    // number of intervals; rows = steps + 1
  std::vector<std::string> criteria;  // defaults to the symmetric variance set
  GainMode gains = GainMode::symmetric;
};

// A rectangular result table: provenance comment lines, column names, and
// numeric rows (booleans stored as 0/1).
struct DataTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

[[nodiscard]] DataTable run_sweep(const SweepSpec& spec);

// CSV with '#'-prefixed provenance comments before the header; 17 significant
// digits, '\n' line endings.
void write_csv(std::ostream& out, const DataTable& table);

[[nodiscard]] nlohmann::ordered_json table_to_json(const DataTable& table);

// Shortest decimal string that round-trips a double (printf %.17g).
[[nodiscard]] std::string format_value(double value);

// ---- figure curve sets ------------------------------------------------------

struct FigureCurve {
  std::string file_stem;  // output file name without extension
  SweepSpec spec;
  std::vector<std::string> extra_comments;
};

[[nodiscard]] const std::vector<std::string>& figure_ids();
[[nodiscard]] std::vector<FigureCurve> figure_curves(const std::string& figure_id);

// ---- single-point report ----------------------------------------------------

[[nodiscard]] nlohmann::ordered_json make_report(const SystemParams<double>& params, GainMode gains);
void write_report_text(std::ostream& out, const nlohmann::ordered_json& report);

// ---- oracle validation ------------------------------------------------------

struct ValidationCheck {
  std::string name;
  double residual;
  double tol;
  bool pass;
};

struct ValidationOptions {
  // Simpson subintervals. The default clears the 1e-8 convergence gate on the
  // hardest grid point (alpha = 1, r = 3, n0 = 5, where the covariance grows
  // like e^{2r}); 1024 lands just above it there.
  int steps = 2048;
  std::optional<Regime> regime;  // restrict the parameter grid to one regime
  std::optional<double> n0;      // override the mirror occupation grid
};

// Compares the analytic output covariance against the numerical oracle over
// a fixed parameter grid, checks grid convergence, and runs the symplectic,
// physicality and conserved-mode invariant suites.
[[nodiscard]] std::vector<ValidationCheck> run_validation(const ValidationOptions& options);

void write_validation_text(std::ostream& out, const std::vector<ValidationCheck>& checks);

}  // namespace cvoml
