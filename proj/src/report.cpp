#include "varlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "varlab/csv_io.hpp"
#include "varlab/errors.hpp"

namespace varlab {

namespace {

nlohmann::json point_json(const Point& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p) arr.push_back(c.to_string());
    return arr;
}

std::string sig12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

double round_sig12(double x) { return std::strtod(sig12(x).c_str(), nullptr); }

std::string input_digest(const JointDiscreteDistribution& joint) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : dump_csv(joint)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

AnalysisReport run_report(const JointDiscreteDistribution& joint, const std::vector<Rational>& alphas,
                          const std::vector<std::string>& column_names) {
    for (const auto& a : alphas) {
        if (a.sign() <= 0 || a >= Rational(1)) throw InputError("alpha must lie in (0,1), got " + a.to_string());
    }

    AnalysisReport report;
    report.input_digest = input_digest(joint);

    const auto laws = marginals(joint);
    const auto total = sum_distribution(joint);
    for (std::size_t i = 0; i < laws.size(); ++i) {
        report.marginals_summary.push_back(
            {i < column_names.size() ? column_names[i] : "x" + std::to_string(i + 1), laws[i].size(), laws[i].mean()});
    }

    const auto sub = check_subadditivity_all_alpha(joint);
    report.subadditive_everywhere = sub.subadditive_everywhere;
    report.additive_everywhere = sub.additive_everywhere;

    const auto verdict = is_comonotonic(joint);
    report.comonotonic = verdict.comonotonic;
    report.witness = verdict.witness;

    auto make_row = [&](const Rational& alpha) {
        VarRow row;
        row.alpha = alpha;
        for (const auto& d : laws) {
            row.column_vars.push_back(d.quantile_closed(alpha));
            row.sum_of_vars += row.column_vars.back();
        }
        row.var_sum = total.quantile_closed(alpha);
        row.relation = compare(row.var_sum, row.sum_of_vars);
        return row;
    };

    if (alphas.empty()) {
        for (const auto& v : sub.verdicts) {
            auto row = make_row(v.alpha_star);
            row.alpha_lo = v.alpha_lo;
            report.var_table.push_back(std::move(row));
        }
    } else {
        for (const auto& a : alphas) report.var_table.push_back(make_row(a));
    }
    return report;
}

nlohmann::json to_json(const AnalysisReport& report) {
    using nlohmann::json;
    json j;
    j["input_digest"] = report.input_digest;
    j["tool_version"] = report.tool_version;
    j["comonotonic"] = report.comonotonic;
    j["witness"] = report.witness ? json::array({point_json(report.witness->first), point_json(report.witness->second)})
                                  : json(nullptr);
    j["theorem_flags"] = {{"subadditive_everywhere", report.subadditive_everywhere},
                          {"additive_everywhere", report.additive_everywhere}};

    auto summary = json::array();
    for (const auto& m : report.marginals_summary) {
        summary.push_back({{"name", m.name}, {"atoms", m.atoms}, {"mean", m.mean.to_string()}});
    }
    j["marginals_summary"] = std::move(summary);

    auto table = json::array();
    for (const auto& row : report.var_table) {
        json r;
        r["alpha"] = row.alpha.to_string();
        if (row.alpha_lo) r["alpha_lo"] = row.alpha_lo->to_string();
        auto vars = json::array();
        for (const auto& v : row.column_vars) vars.push_back(v.to_string());
        r["column_vars"] = std::move(vars);
        r["var_sum"] = row.var_sum.to_string();
        r["sum_of_vars"] = row.sum_of_vars.to_string();
        r["relation"] = std::string(to_symbol(row.relation));
        table.push_back(std::move(r));
    }
    j["var_table"] = std::move(table);
    return j;
}

void write_var_table_csv(const AnalysisReport& report, std::ostream& out) {
    out << "alpha_lo,alpha";
    for (const auto& m : report.marginals_summary) out << ",var_" << m.name;
    out << ",var_sum,sum_of_vars,relation\n";
    for (const auto& row : report.var_table) {
        out << (row.alpha_lo ? sig12(row.alpha_lo->to_double()) : "") << ',' << sig12(row.alpha.to_double());
        for (const auto& v : row.column_vars) out << ',' << sig12(v.to_double());
        out << ',' << sig12(row.var_sum.to_double()) << ',' << sig12(row.sum_of_vars.to_double()) << ','
            << to_symbol(row.relation) << '\n';
    }
}

nlohmann::json elliptic_report(const gaussian::GaussianSpec& spec, const std::vector<double>& alphas) {
    using nlohmann::json;
    json j;
    j["tool_version"] = kToolVersion;
    j["dimension"] = spec.dimension();
    auto sigma = json::array();
    for (double s : spec.sigma()) sigma.push_back(round_sig12(s));
    j["sigma"] = std::move(sigma);
    j["portfolio_sigma"] = round_sig12(spec.portfolio_sigma());
    j["comonotone_condition"] = gaussian::gaussian_comonotone_condition(spec);

    auto rows = json::array();
    for (double a : alphas) {
        json r;
        r["alpha"] = round_sig12(a);
        auto vars = json::array();
        double sum_of_vars = 0.0;
        for (std::size_t i = 0; i < spec.dimension(); ++i) {
            const double v = gaussian::gaussian_var(spec.mean()[i], spec.sigma()[i], a);
            sum_of_vars += v;
            vars.push_back(round_sig12(v));
        }
        r["column_vars"] = std::move(vars);
        r["sum_of_vars"] = round_sig12(sum_of_vars);
        r["var_sum"] = round_sig12(gaussian::gaussian_portfolio_var(spec, a));
        r["gap"] = round_sig12(gaussian::gaussian_subadditivity_gap(spec, a));
        rows.push_back(std::move(r));
    }
    j["levels"] = std::move(rows);
    return j;
}

gaussian::GaussianSpec gaussian_spec_from_json(const nlohmann::json& j) {
    try {
        return gaussian::GaussianSpec(j.at("mean").get<std::vector<double>>(),
                                      j.at("covariance").get<std::vector<std::vector<double>>>());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad Gaussian spec JSON: ") + e.what());
    }
}

}  // namespace varlab
