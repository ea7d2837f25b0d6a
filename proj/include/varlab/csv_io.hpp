#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "varlab/distribution.hpp"

namespace varlab {

struct CsvOptions {
    /// Unset: the first row is a header iff some cell is not a number.
    std::optional<bool> has_header;
    /// Name of the weight column; only honoured when a header is present.
    std::string weight_column = "weight";
};

/// Parsed numeric table: loss columns plus optional per-row weights.
struct CsvTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> weights;  // one per row; all 1 without a weight column
};

/// Cells are decimals ("0.25", "-1e3") or exact fractions ("1/3"); both are
/// converted to rationals without going through binary floating point.
/// Throws InputError naming the 1-based line and column on bad input.
CsvTable read_csv_table(std::istream& in, const CsvOptions& options = {});
CsvTable read_csv_table(const std::filesystem::path& path, const CsvOptions& options = {});

/// One support point per row, weighted; duplicates merged and normalized.
JointDiscreteDistribution joint_from_table(const CsvTable& table);

JointDiscreteDistribution ingest_csv(const std::filesystem::path& path, const CsvOptions& options = {});
JointDiscreteDistribution ingest_csv(std::istream& in, const CsvOptions& options = {});

/// Each column as its own (weighted empirical) law, ignoring row pairing.
std::vector<DiscreteDistribution> column_laws(const CsvTable& table);

/// Header x1..xn,weight; one row per point, probabilities as exact "num/den".
void dump_csv(const JointDiscreteDistribution& joint, std::ostream& out,
              const std::vector<std::string>& column_names = {});
std::string dump_csv(const JointDiscreteDistribution& joint);

}  // namespace varlab
