#include "persym/cli.hpp"

#include "persym/closed_forms.hpp"
#include "persym/exact_fit.hpp"
#include "persym/system_oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace persym::cli {

using json = nlohmann::ordered_json;

namespace {

json checks_json(const std::vector<IdentityCheck>& checks) {
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back({{"anchor", c.anchor},
                       {"description", c.description},
                       {"lhs", to_string(c.lhs)},
                       {"rhs", to_string(c.rhs)},
                       {"ok", c.ok}});
    }
    return arr;
}

bool all_ok(const std::vector<IdentityCheck>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.ok; });
}

bool all_ok(const json& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const json& c) { return c.at("ok").get<bool>(); });
}

json poly_check(const std::string& anchor, const std::string& description, const YPoly& lhs, const YPoly& rhs) {
    return {{"anchor", anchor},
            {"description", description},
            {"lhs", lhs.to_string()},
            {"rhs", rhs.to_string()},
            {"ok", lhs == rhs}};
}

json poly_json(const YPoly& p) {
    json coeffs = json::object();
    for (int e = p.degree(); e >= 0; --e) {
        if (p.coeff(e) != 0) {
            coeffs[std::to_string(e)] = to_string(p.coeff(e));
        }
    }
    return {{"text", p.to_string()}, {"coefficients", coeffs}};
}

json solve_json(const SolveReport& r) {
    return {{"status", to_string(r.status)},
            {"equations", r.rows},
            {"unknowns", r.cols},
            {"rank", r.rank},
            {"free_dimension", r.nullspace.size()}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    f << text;
}

RankDistribution load_distribution(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw StructuralError("cannot open " + path);
    }
    return distribution_from_report(json::parse(f));
}

// Checks the census against every covered closed form, then every moment identity.
std::vector<IdentityCheck> verification_checks(const RankDistribution& dist) {
    std::vector<IdentityCheck> checks;
    for (int i = 0; i <= dist.max_rank(); ++i) {
        if (!has_closed_form(i, dist.k)) {
            continue;
        }
        const RankPolynomial p = gamma_poly(i, dist.k);
        const Rational closed = p.poly.at_n(dist.n);
        const Rational counted(dist.count(i));
        checks.push_back({"closed-form-rank-" + std::to_string(i), p.source + ": " + p.poly.to_string(), counted,
                          closed, counted == closed});
    }
    auto identities = check_moment_identities(dist);
    checks.insert(checks.end(), identities.begin(), identities.end());
    return checks;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

std::vector<Rational> parse_roots(const std::string& text) {
    std::vector<Rational> roots;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            roots.push_back(parse_rational(item));
        }
    }
    return roots;
}

}  // namespace

json census_report(const RankDistribution& dist, std::uint64_t shard_count, std::uint64_t shard_index) {
    json gamma = json::array();
    for (const auto& g : dist.gamma) {
        gamma.push_back(g.str());
    }
    const ShardRange range = shard_range(dist.n, dist.k, shard_count, shard_index);
    return {{"command", "census"},
            {"params", {{"n", dist.n}, {"k", dist.k}}},
            {"gamma", gamma},
            {"tuples_scanned", dist.tuples_scanned.str()},
            {"complete", dist.complete()},
            {"shards",
             {{"count", shard_count},
              {"index", shard_index},
              {"begin", std::to_string(range.begin)},
              {"end", std::to_string(range.end)}}}};
}

RankDistribution distribution_from_report(const json& report) {
    try {
        RankDistribution dist = RankDistribution::empty(report.at("params").at("n").get<int>(),
                                                        report.at("params").at("k").get<int>());
        const auto& gamma = report.at("gamma");
        if (gamma.size() != dist.gamma.size()) {
            throw StructuralError("gamma has " + std::to_string(gamma.size()) + " entries, expected " +
                                  std::to_string(dist.gamma.size()));
        }
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            dist.gamma[i] = BigInt(gamma[i].get<std::string>());
        }
        dist.tuples_scanned = BigInt(report.at("tuples_scanned").get<std::string>());
        return dist;
    } catch (const json::exception& e) {
        throw StructuralError(std::string("malformed census report: ") + e.what());
    }
}

std::string gamma_csv(const RankDistribution& dist) {
    std::string out = "i,gamma\n";
    for (std::size_t i = 0; i < dist.gamma.size(); ++i) {
        out += std::to_string(i) + "," + dist.gamma[i].str() + "\n";
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rank census and closed-form verification for n-times persymmetric matrices over F2"};
    app.require_subcommand(1);

    int n = 0;
    int k = 1;
    int q = 1;
    int rank_index = 0;
    std::uint64_t shards = 1;
    std::uint64_t shard_index = 0;
    std::uint64_t budget = std::uint64_t{1} << 32;
    unsigned threads = 0;
    std::string out_path;
    std::string csv_path;
    std::string input_path;
    std::string method = "incremental";
    std::string rq_method = "kernel";
    std::string dist_source = "census";
    std::vector<std::string> merge_inputs;
    int max_n = 0;
    int degree = -1;
    std::string roots_text;
    std::string leading_text;

    auto* census_cmd = app.add_subcommand("census", "rank histogram over one shard of all tuples");
    census_cmd->add_option("--n", n, "block count")->required();
    census_cmd->add_option("--k", k, "column count")->required();
    census_cmd->add_option("--shards", shards, "number of contiguous shards");
    census_cmd->add_option("--shard-index", shard_index, "shard to count");
    census_cmd->add_option("--out", out_path, "also write the JSON report here");
    census_cmd->add_option("--csv", csv_path, "write gamma as CSV here");
    census_cmd->add_option("--method", method, "baseline or incremental")
        ->check(CLI::IsMember({"baseline", "incremental"}));
    census_cmd->add_option("--budget", budget, "maximum tuples per invocation");
    census_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    auto* merge_cmd = app.add_subcommand("merge", "add shard reports into one distribution");
    merge_cmd->add_option("inputs", merge_inputs, "census reports")->required();
    merge_cmd->add_option("--out", out_path, "also write the JSON report here");

    auto* formula_cmd = app.add_subcommand("formula", "closed-form Gamma_i at (n, k)");
    formula_cmd->add_option("--i", rank_index, "rank")->required();
    formula_cmd->add_option("--n", n, "block count")->required();
    formula_cmd->add_option("--k", k, "column count")->required();

    auto* verify_cmd = app.add_subcommand("verify", "census against closed forms and moment identities");
    verify_cmd->add_option("--n", n, "block count");
    verify_cmd->add_option("--k", k, "column count");
    verify_cmd->add_option("--input", input_path, "census report to verify instead of counting");
    verify_cmd->add_option("--budget", budget, "maximum tuples for the census");
    verify_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    auto* rq_cmd = app.add_subcommand("rqnk", "number of solutions of the bilinear system");
    rq_cmd->add_option("--q", q, "number of unknown polynomials")->required();
    rq_cmd->add_option("--n", n, "number of equations")->required();
    rq_cmd->add_option("--k", k, "degree bound plus one")->required();
    rq_cmd->add_option("--method", rq_method, "formula, kernel or naive")
        ->check(CLI::IsMember({"formula", "kernel", "naive"}));
    rq_cmd->add_option("--dist", dist_source, "rank distribution source for --method formula")
        ->check(CLI::IsMember({"census", "closed"}));
    rq_cmd->add_option("--budget", budget, "maximum census tuples for --method formula");
    rq_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    auto* fit_cmd = app.add_subcommand("fit", "exact polynomial fits");
    fit_cmd->require_subcommand(1);
    auto* moments_cmd = fit_cmd->add_subcommand("moments", "solve the moment system for the top ranks");
    moments_cmd->add_option("--k", k, "column count")->required();
    auto* samples_cmd = fit_cmd->add_subcommand("samples", "fit Gamma_i(Y) through census samples");
    samples_cmd->add_option("--i", rank_index, "rank")->required();
    samples_cmd->add_option("--k", k, "column count")->required();
    samples_cmd->add_option("--max-n", max_n, "census samples at n = 0..max-n")->required();
    samples_cmd->add_option("--roots", roots_text, "forced roots in Y, comma separated");
    samples_cmd->add_option("--degree", degree, "degree bound (default: i, or k+1 for the top rank)");
    samples_cmd->add_option("--leading", leading_text, "fixed coefficient of Y^degree");
    samples_cmd->add_option("--budget", budget, "maximum tuples per census");
    samples_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

    std::vector<const char*> argv{"persym"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    const Timer timer;
    json report;
    int status = ok;
    try {
        CensusOptions census_options;
        census_options.budget = budget;
        census_options.threads = threads;

        if (census_cmd->parsed()) {
            census_options.method = method == "baseline" ? CensusMethod::baseline : CensusMethod::incremental;
            const RankDistribution dist = census(n, k, shards, shard_index, census_options);
            report = census_report(dist, shards, shard_index);
            report["params"]["method"] = method;
            if (!csv_path.empty()) {
                write_file(csv_path, gamma_csv(dist));
            }
        } else if (merge_cmd->parsed()) {
            RankDistribution total = load_distribution(merge_inputs.front());
            for (std::size_t i = 1; i < merge_inputs.size(); ++i) {
                total += load_distribution(merge_inputs[i]);
            }
            report = census_report(total, 1, 0);
            report["command"] = "merge";
            report["shards"] = {{"merged", merge_inputs.size()}};
        } else if (formula_cmd->parsed()) {
            const RankPolynomial p = gamma_poly(rank_index, k);
            report = {{"command", "formula"},
                      {"params", {{"i", rank_index}, {"n", n}, {"k", k}}},
                      {"value", p.evaluate(n).str()},
                      {"source", p.source},
                      {"valid_from_k", p.valid_from_k},
                      {"polynomial", poly_json(p.poly)}};
        } else if (verify_cmd->parsed()) {
            RankDistribution dist;
            if (!input_path.empty()) {
                dist = load_distribution(input_path);
            } else {
                dist = census(n, k, 1, 0, census_options);
            }
            const auto checks = verification_checks(dist);
            json gamma = json::array();
            for (const auto& g : dist.gamma) {
                gamma.push_back(g.str());
            }
            report = {{"command", "verify"},
                      {"params", {{"n", dist.n}, {"k", dist.k}}},
                      {"gamma", gamma},
                      {"checks", checks_json(checks)},
                      {"all_ok", all_ok(checks)}};
            status = all_ok(checks) ? ok : mismatch;
        } else if (rq_cmd->parsed()) {
            const SystemInstance inst{q, n, k};
            BigInt value;
            if (rq_method == "kernel") {
                value = count_kernel(inst, OracleOptions{.threads = threads});
            } else if (rq_method == "naive") {
                value = count_naive(inst, OracleOptions{.threads = threads});
            } else {
                const RankDistribution dist =
                    dist_source == "closed" ? closed_distribution(n, k) : census(n, k, 1, 0, census_options);
                value = r_formula(q, n, k, dist);
            }
            report = {{"command", "rqnk"},
                      {"params", {{"q", q}, {"n", n}, {"k", k}, {"method", rq_method}}},
                      {"value", value.str()}};
            if (rq_method == "formula") {
                report["params"]["dist"] = dist_source;
            }
        } else if (moments_cmd->parsed()) {
            const MomentSystemSolution sol = solve_moment_system(k);
            json coeffs = json::array();
            for (const auto& [key, value] : sol.coefficients) {
                coeffs.push_back({{"rank", key.first}, {"power", key.second}, {"value", to_string(value)}});
            }
            json checks = json::array();
            json polys = json::array();
            if (sol.unique) {
                YPoly total;
                for (const auto& p : sol.polynomials) {
                    total += p;
                    polys.push_back(p.to_string());
                }
                checks.push_back(poly_check("total-count", "sum of all rank polynomials", total, YPoly::monomial(k + 1)));
                for (int j = sol.first_unknown_rank; j <= k; ++j) {
                    if (has_closed_form(j, k)) {
                        const RankPolynomial table = gamma_poly(j, k);
                        checks.push_back(poly_check("table-rank-" + std::to_string(j), "solved rank polynomial vs " + table.source,
                                                    sol.polynomials[static_cast<std::size_t>(j)], table.poly));
                    }
                }
            }
            report = {{"command", "fit moments"},
                      {"params", {{"k", k}}},
                      {"system", solve_json(sol.report)},
                      {"consistent", sol.consistent},
                      {"unique", sol.unique},
                      {"coefficients", coeffs},
                      {"polynomials", polys},
                      {"checks", checks}};
            if (k == 9 && sol.unique) {
                report["resolved"] = {{"rank8_y3", to_string(sol.coefficient(8, 3))},
                                      {"rank9_y9", to_string(sol.coefficient(9, 9))}};
            }
            status = sol.unique && all_ok(checks) ? ok : mismatch;
        } else if (samples_cmd->parsed()) {
            const int deg = degree >= 0 ? degree : (rank_index == k ? k + 1 : rank_index);
            std::vector<FitSample> samples;
            for (int m = 0; m <= max_n; ++m) {
                const RankDistribution dist = census(m, k, 1, 0, census_options);
                samples.push_back({m, Rational(dist.count(rank_index))});
            }
            const std::vector<Rational> roots = parse_roots(roots_text);
            std::optional<Rational> leading;
            if (!leading_text.empty()) {
                leading = parse_rational(leading_text);
            }
            const FitResult fit = fit_rank_polynomial(samples, deg, roots, leading);
            json sample_json = json::array();
            for (const auto& s : samples) {
                sample_json.push_back({{"n", s.n}, {"value", to_string(s.value)}});
            }
            json checks = json::array();
            if (fit.poly && has_closed_form(rank_index, k)) {
                const RankPolynomial p = gamma_poly(rank_index, k);
                checks.push_back(poly_check("closed-form-rank-" + std::to_string(rank_index), "fitted polynomial vs " + p.source,
                                            *fit.poly, p.poly));
            }
            report = {{"command", "fit samples"},
                      {"params", {{"i", rank_index}, {"k", k}, {"max_n", max_n}, {"degree", deg}, {"roots", roots_text}}},
                      {"samples", sample_json},
                      {"system", solve_json(fit.report)},
                      {"polynomial", fit.poly ? poly_json(*fit.poly) : json(nullptr)},
                      {"checks", checks}};
            status = fit.poly && all_ok(checks) ? ok : mismatch;
        }
    } catch (const BudgetExceeded& e) {
        err << e.what() << "\n";
        out << json({{"error", "budget"},
                     {"message", e.what()},
                     {"cost", {{"assignments", e.cost().assignment_count.str()},
                               {"strategy", to_string(e.cost().strategy)},
                               {"budget", e.cost().budget.str()}}}})
                   .dump(2)
            << "\n";
        return budget_refused;
    } catch (const NoClosedForm& e) {
        err << e.what() << "\n";
        out << json({{"error", "no_closed_form"}, {"message", e.what()}}).dump(2) << "\n";
        return no_closed_form;
    } catch (const ConsistencyError& e) {
        err << e.what() << "\n";
        return mismatch;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }

    report["elapsed_ms"] = timer.ms();
    const std::string text = report.dump(2) + "\n";
    out << text;
    if (!out_path.empty()) {
        write_file(out_path, text);
    }
    return status;
}

}  // namespace persym::cli
