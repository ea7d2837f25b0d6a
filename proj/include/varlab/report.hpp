#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "varlab/comonotone.hpp"
#include "varlab/distribution.hpp"
#include "varlab/elliptic.hpp"
#include "varlab/theorem_lab.hpp"

namespace varlab {

inline constexpr const char* kToolVersion = "0.1.0";

struct MarginalSummary {
    std::string name;
    std::size_t atoms = 0;
    Rational mean;
};

struct VarRow {
    /// Left end of the breakpoint interval the row stands for; absent when
    /// the row was requested at an explicit level.
    std::optional<Rational> alpha_lo;
    Rational alpha;
    std::vector<Rational> column_vars;
    Rational var_sum;
    Rational sum_of_vars;
    Relation relation = Relation::Equal;
};

struct AnalysisReport {
    std::string input_digest;
    std::vector<MarginalSummary> marginals_summary;
    std::vector<VarRow> var_table;
    bool comonotonic = false;
    std::optional<std::pair<Point, Point>> witness;
    bool subadditive_everywhere = false;
    bool additive_everywhere = false;
    std::string tool_version = kToolVersion;
};

/// FNV-1a 64 over the canonical CSV dump, as "fnv1a64:<16 hex digits>".
std::string input_digest(const JointDiscreteDistribution& joint);

/// VaR table at the given levels (each in (0,1)), or at every critical level
/// when `alphas` is empty. Theorem flags always cover all levels.
AnalysisReport run_report(const JointDiscreteDistribution& joint, const std::vector<Rational>& alphas = {},
                          const std::vector<std::string>& column_names = {});

/// Deterministic JSON: sorted keys, rationals as "num/den".
nlohmann::json to_json(const AnalysisReport& report);

/// var_table as CSV with reals at 12 significant digits, for plotting.
void write_var_table_csv(const AnalysisReport& report, std::ostream& out);

/// Round to 12 significant digits, the precision used for reals in reports.
double round_sig12(double x);

/// Per-level Gaussian VaRs, gap and the degeneracy condition.
nlohmann::json elliptic_report(const gaussian::GaussianSpec& spec, const std::vector<double>& alphas);

gaussian::GaussianSpec gaussian_spec_from_json(const nlohmann::json& j);

}  // namespace varlab
