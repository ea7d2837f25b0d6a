#include "varlab/csv_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "varlab/errors.hpp"

namespace varlab {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

bool parses(const std::string& cell) {
    try {
        (void)Rational::parse(cell);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

}  // namespace

CsvTable read_csv_table(std::istream& in, const CsvOptions& options) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (trim(line).empty()) continue;
        lines.emplace_back(number, split_row(line));
    }
    if (lines.empty()) throw InputError("CSV input has no rows");

    const std::size_t width = lines.front().second.size();
    bool header = false;
    if (options.has_header) {
        header = *options.has_header;
    } else {
        for (const auto& cell : lines.front().second) header = header || !parses(cell);
    }

    CsvTable table;
    std::optional<std::size_t> weight_index;
    if (header) {
        const auto& names = lines.front().second;
        for (std::size_t c = 0; c < names.size(); ++c) {
            const std::string name = unquote(names[c]);
            if (name == options.weight_column) {
                weight_index = c;
            } else {
                table.column_names.push_back(name);
            }
        }
    } else {
        for (std::size_t c = 0; c < width; ++c) table.column_names.push_back("x" + std::to_string(c + 1));
    }
    if (table.column_names.empty()) throw InputError("CSV has no loss columns");

    for (std::size_t r = header ? 1 : 0; r < lines.size(); ++r) {
        const auto& [number, cells] = lines[r];
        if (cells.size() != width) {
            throw InputError("row " + std::to_string(number) + " has " + std::to_string(cells.size()) +
                             " cells, expected " + std::to_string(width));
        }
        std::vector<Rational> values;
        values.reserve(width);
        Rational weight(1);
        for (std::size_t c = 0; c < width; ++c) {
            Rational v;
            try {
                v = Rational::parse(cells[c]);
            } catch (const std::invalid_argument&) {
                throw InputError("row " + std::to_string(number) + ", column " + std::to_string(c + 1) +
                                 ": not a number '" + cells[c] + "'");
            }
            if (weight_index && c == *weight_index) {
                if (v.sign() <= 0) {
                    throw InputError("row " + std::to_string(number) + ": weight must be positive");
                }
                weight = std::move(v);
            } else {
                values.push_back(std::move(v));
            }
        }
        table.rows.push_back(std::move(values));
        table.weights.push_back(std::move(weight));
    }
    if (table.rows.empty()) throw InputError("CSV input has no data rows");
    return table;
}

CsvTable read_csv_table(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    return read_csv_table(in, options);
}

JointDiscreteDistribution joint_from_table(const CsvTable& table) {
    std::vector<WeightedPoint> points;
    points.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) points.push_back({table.rows[r], table.weights[r]});
    return JointDiscreteDistribution::from_weighted_points(std::move(points));
}

JointDiscreteDistribution ingest_csv(const std::filesystem::path& path, const CsvOptions& options) {
    return joint_from_table(read_csv_table(path, options));
}

JointDiscreteDistribution ingest_csv(std::istream& in, const CsvOptions& options) {
    return joint_from_table(read_csv_table(in, options));
}

std::vector<DiscreteDistribution> column_laws(const CsvTable& table) {
    std::vector<DiscreteDistribution> laws;
    const std::size_t n = table.column_names.size();
    laws.reserve(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<WeightedValue> pairs;
        pairs.reserve(table.rows.size());
        for (std::size_t r = 0; r < table.rows.size(); ++r) pairs.push_back({table.rows[r][c], table.weights[r]});
        laws.push_back(DiscreteDistribution::from_weighted_values(pairs));
    }
    return laws;
}

void dump_csv(const JointDiscreteDistribution& joint, std::ostream& out,
              const std::vector<std::string>& column_names) {
    for (std::size_t i = 0; i < joint.dimension(); ++i) {
        out << (i < column_names.size() ? column_names[i] : "x" + std::to_string(i + 1)) << ',';
    }
    out << "weight\n";
    for (const auto& p : joint.points()) {
        for (const auto& c : p.coords) out << c.to_decimal_or_fraction() << ',';
        out << p.prob.to_string() << '\n';
    }
}

std::string dump_csv(const JointDiscreteDistribution& joint) {
    std::ostringstream out;
    dump_csv(joint, out);
    return out.str();
}

}  // namespace varlab
