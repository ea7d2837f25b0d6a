// varlab: exact VaR subadditivity / comonotonicity analyses from the shell.
//
// Exit codes: 0 success, 2 input validation failure, 3 internal invariant
// breach (a theorem consistency check failed), 1 anything else.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "varlab/comonotone.hpp"
#include "varlab/csv_io.hpp"
#include "varlab/elliptic.hpp"
#include "varlab/errors.hpp"
#include "varlab/report.hpp"
#include "varlab/risk_measures.hpp"
#include "varlab/theorem_lab.hpp"

namespace {

using namespace varlab;

constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct CsvFlags {
    bool header = false;
    bool no_header = false;

    CsvOptions options() const {
        CsvOptions o;
        if (header) o.has_header = true;
        if (no_header) o.has_header = false;
        return o;
    }
};

void add_csv_flags(CLI::App* cmd, CsvFlags& flags) {
    auto* h = cmd->add_flag("--header", flags.header, "First row is a header");
    auto* nh = cmd->add_flag("--no-header", flags.no_header, "First row is data");
    h->excludes(nh);
}

std::vector<std::string> collect_alpha_text(const std::vector<std::string>& inline_alphas, const std::string& file) {
    std::vector<std::string> out = inline_alphas;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw InputError("cannot read alphas file " + file);
        std::string tok;
        while (in >> tok) {
            std::istringstream split(tok);
            std::string piece;
            while (std::getline(split, piece, ',')) {
                if (!piece.empty()) out.push_back(piece);
            }
        }
    }
    return out;
}

std::vector<Rational> parse_rational_alphas(const std::vector<std::string>& text) {
    std::vector<Rational> out;
    for (const auto& t : text) {
        const auto a = Rational::parse(t);
        if (a.sign() <= 0 || a >= Rational(1)) throw InputError("alpha must lie in (0,1), got " + t);
        out.push_back(a);
    }
    return out;
}

void require_output(const std::string& output) {
    if (output != "json" && output != "csv") throw InputError("--output must be json or csv");
}

int cmd_var(const std::string& path, const CsvFlags& flags, const std::vector<std::string>& alpha_text,
            const std::string& alphas_file, const std::string& output) {
    require_output(output);
    const auto alphas = parse_rational_alphas(collect_alpha_text(alpha_text, alphas_file));
    if (alphas.empty()) throw InputError("var needs at least one --alpha or --alphas-file");
    const auto table = read_csv_table(path, flags.options());
    const auto laws = column_laws(table);

    if (output == "csv") {
        std::cout << "alpha";
        for (const auto& name : table.column_names) std::cout << ',' << name;
        std::cout << '\n';
        for (const auto& a : alphas) {
            std::cout << a.to_string();
            for (const auto& d : laws) std::cout << ',' << value_at_risk(d, a).to_string();
            std::cout << '\n';
        }
        return 0;
    }
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["columns"] = table.column_names;
    auto rows = nlohmann::json::array();
    for (const auto& a : alphas) {
        auto vars = nlohmann::json::array();
        for (const auto& d : laws) vars.push_back(value_at_risk(d, a).to_string());
        rows.push_back({{"alpha", a.to_string()}, {"var", std::move(vars)}});
    }
    j["levels"] = std::move(rows);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_report(const std::string& path, const CsvFlags& flags, const std::vector<std::string>& alpha_text,
               const std::string& alphas_file, const std::string& output) {
    require_output(output);
    const auto alphas = parse_rational_alphas(collect_alpha_text(alpha_text, alphas_file));
    const auto table = read_csv_table(path, flags.options());
    const auto joint = joint_from_table(table);
    const auto report = run_report(joint, alphas, table.column_names);

    if (output == "csv") {
        write_var_table_csv(report, std::cout);
    } else {
        std::cout << to_json(report).dump(2) << '\n';
    }
    if (report.comonotonic != report.subadditive_everywhere ||
        report.subadditive_everywhere != report.additive_everywhere) {
        throw InvariantBreach("comonotonicity and all-level subadditivity disagree");
    }
    return 0;
}

int cmd_couple(const std::vector<std::string>& paths, const CsvFlags& flags, const std::string& output) {
    require_output(output);
    std::vector<DiscreteDistribution> laws;
    std::vector<std::string> names;
    for (const auto& p : paths) {
        const auto table = read_csv_table(p, flags.options());
        auto cols = column_laws(table);
        laws.insert(laws.end(), cols.begin(), cols.end());
        names.insert(names.end(), table.column_names.begin(), table.column_names.end());
    }
    const auto joint = comonotonic_coupling(laws);
    if (output == "csv") {
        dump_csv(joint, std::cout, names);
        return 0;
    }
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["columns"] = names;
    auto pts = nlohmann::json::array();
    for (const auto& p : joint.points()) {
        auto coords = nlohmann::json::array();
        for (const auto& c : p.coords) coords.push_back(c.to_string());
        pts.push_back({{"coords", std::move(coords)}, {"prob", p.prob.to_string()}});
    }
    j["points"] = std::move(pts);
    std::cout << j.dump(2) << '\n';
    return 0;
}

nlohmann::json summary_json(const SimulationSummary& s) {
    return {{"trials", s.trials},           {"comonotonic", s.comonotonic}, {"subadditive", s.subadditive},
            {"additive", s.additive},       {"consistent", s.consistent},   {"inconsistent_seeds", s.inconsistent_seeds}};
}

int cmd_simulate(SimulationConfig config, const std::string& kind) {
    if (kind != "comonotonic" && kind != "coupling" && kind != "both") {
        throw InputError("--kind must be comonotonic, coupling or both");
    }
    if (config.trials == 0) throw InputError("--trials must be positive");
    nlohmann::json j;
    j["tool_version"] = kToolVersion;
    j["seed"] = config.seed;
    bool ok = true;
    for (const auto& [name, k] : {std::pair{"comonotonic", TrialKind::Comonotonic}, std::pair{"coupling", TrialKind::Coupling}}) {
        if (kind != "both" && kind != name) continue;
        const auto s = run_simulation(config, k);
        ok = ok && s.consistent == s.trials;
        j[name] = summary_json(s);
    }
    std::cout << j.dump(2) << '\n';
    if (!ok) throw InvariantBreach("theorem equivalence trial came back inconsistent");
    return 0;
}

int cmd_elliptic(const std::string& path, const std::vector<std::string>& alpha_text, const std::string& alphas_file) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    nlohmann::json spec_json;
    try {
        spec_json = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    const auto spec = gaussian_spec_from_json(spec_json);

    std::vector<double> alphas;
    for (const auto& t : collect_alpha_text(alpha_text, alphas_file)) {
        alphas.push_back(Rational::parse(t).to_double());
        if (!(alphas.back() > 0.0 && alphas.back() < 1.0)) throw InputError("alpha must lie in (0,1), got " + t);
    }
    if (alphas.empty()) alphas = {0.01, 0.05, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};
    std::cout << elliptic_report(spec, alphas).dump(2) << '\n';
    return 0;
}

int cmd_bernoulli(const std::string& p, const std::string& q, const std::string& alpha) {
    const auto r = bernoulli_counterexample(Rational::parse(p), Rational::parse(q), Rational::parse(alpha));
    nlohmann::json j{{"precondition", r.precondition},
                     {"var_x", r.var_x.to_string()},
                     {"var_y", r.var_y.to_string()},
                     {"var_sum", r.var_sum.to_string()},
                     {"superadditive", r.superadditive}};
    std::cout << j.dump(2) << '\n';
    if (r.precondition && !r.superadditive) throw InvariantBreach("precondition holds but no superadditivity");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact VaR subadditivity and comonotonicity analyses"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::vector<std::string> alphas;
    std::string alphas_file;
    std::string output = "json";
    CsvFlags csv;

    std::string var_path;
    auto* var = app.add_subcommand("var", "Per-column VaR at given levels");
    var->add_option("csv", var_path, "Loss CSV, one column per variable")->required()->check(CLI::ExistingFile);
    var->add_option("--alpha", alphas, "Confidence level in (0,1); repeatable");
    var->add_option("--alphas-file", alphas_file, "File of levels, whitespace or comma separated");
    var->add_option("--output", output, "json or csv");
    add_csv_flags(var, csv);

    std::string report_path;
    auto* report = app.add_subcommand("report", "Full subadditivity/comonotonicity analysis");
    report->add_option("csv", report_path, "Loss CSV; rows are joint outcomes")->required()->check(CLI::ExistingFile);
    report->add_option("--alpha", alphas, "Level for the VaR table; default is every critical level");
    report->add_option("--alphas-file", alphas_file, "File of levels");
    report->add_option("--output", output, "json or csv (VaR table only)");
    add_csv_flags(report, csv);

    std::vector<std::string> couple_paths;
    auto* couple = app.add_subcommand("couple", "Comonotonic coupling of per-column marginals");
    couple->add_option("csv", couple_paths, "One or more CSVs; every column is a marginal")
        ->required()
        ->check(CLI::ExistingFile);
    couple->add_option("--output", output, "csv or json");
    add_csv_flags(couple, csv);

    SimulationConfig sim;
    sim.threads = std::max(1U, std::thread::hardware_concurrency());
    std::string kind = "both";
    auto* simulate = app.add_subcommand("simulate", "Random theorem equivalence trials");
    simulate->add_option("--seed", sim.seed, "Base seed");
    simulate->add_option("--trials", sim.trials, "Trials per generator");
    simulate->add_option("--kind", kind, "comonotonic, coupling or both");
    simulate->add_option("--max-dim", sim.max_dimension, "Largest dimension n")->check(CLI::Range(1, 16));
    simulate->add_option("--max-atoms", sim.generator.max_atoms, "Largest atom count per marginal")->check(CLI::PositiveNumber);
    simulate->add_option("--denom-bound", sim.generator.denom_bound, "Largest probability denominator")->check(CLI::PositiveNumber);
    simulate->add_option("--threads", sim.threads, "Worker threads")->check(CLI::PositiveNumber);
    simulate->add_option("--output", output, "json");

    std::string spec_path;
    auto* elliptic = app.add_subcommand("elliptic", "Gaussian VaR checks from a JSON spec");
    elliptic->add_option("spec", spec_path, "{\"mean\": [...], \"covariance\": [[...], ...]}")
        ->required()
        ->check(CLI::ExistingFile);
    elliptic->add_option("--alpha", alphas, "Level in (0,1); repeatable");
    elliptic->add_option("--alphas-file", alphas_file, "File of levels");
    elliptic->add_option("--output", output, "json");

    std::string bp, bq, balpha;
    auto* bern = app.add_subcommand("bernoulli", "Independent Bernoulli superadditivity example");
    bern->add_option("--p", bp, "Success probability of X")->required();
    bern->add_option("--q", bq, "Success probability of Y")->required();
    bern->add_option("--alpha", balpha, "Level in (0,1)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*var) return cmd_var(var_path, csv, alphas, alphas_file, output);
        if (*report) return cmd_report(report_path, csv, alphas, alphas_file, output);
        if (*couple) return cmd_couple(couple_paths, csv, output == "json" && couple->count("--output") == 0 ? "csv" : output);
        if ((*simulate || *elliptic) && output != "json") throw InputError("--output must be json");
        if (*simulate) return cmd_simulate(sim, kind);
        if (*elliptic) return cmd_elliptic(spec_path, alphas, alphas_file);
        if (*bern) return cmd_bernoulli(bp, bq, balpha);
    } catch (const InvariantBreach& e) {
        std::cerr << "invariant breach: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
