#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "thetanf/errors.hpp"
#include "thetanf/pipeline.hpp"

namespace {

using namespace thetanf;

struct CorpusArgs {
    std::string in_path;
    RunConfig config;
};

void add_config_options(CLI::App* cmd, CorpusArgs& args, bool with_precision = true) {
    cmd->add_option("--in", args.in_path, "corpus file (JSON Lines)")->required();
    if (with_precision)
        cmd->add_option("--precision", args.config.precision, "q-expansion bound B (>= 30)");
    cmd->add_flag("--require-fundamental,!--no-require-fundamental",
                  args.config.require_fundamental,
                  "skip fields whose discriminant is not fundamental");
    cmd->add_flag("--require-coprime,!--no-require-coprime", args.config.require_coprime,
                  "skip fields with gcd(n, d) > 1");
}

struct AnalyzedCorpus {
    std::vector<FieldResult> results;
    int parse_issues = 0;
};

AnalyzedCorpus analyze_corpus(const CorpusArgs& args) {
    args.config.validate();
    LoadResult loaded = load_corpus(args.in_path, args.config);
    for (const LoadIssue& issue : loaded.issues)
        std::cerr << args.in_path << ":" << issue.line << ": " << issue.reason << "\n";

    AnalyzedCorpus out;
    out.parse_issues = static_cast<int>(loaded.issues.size());
    for (const FieldRecord& rec : loaded.records) {
        ValidationOutcome v = validate_field(rec, args.config);
        if (!v.accepted) {
            std::cerr << "skip " << rec.display_name() << ":";
            for (const auto& r : v.reasons) std::cerr << " " << r << ";";
            std::cerr << "\n";
            continue;
        }
        out.results.push_back(analyze_field(rec, args.config));
    }
    return out;
}

int cmd_analyze(const CorpusArgs& args, const std::string& out_dir, const std::string& format) {
    RunConfig config = args.config;
    config.format = format == "text" ? RunConfig::Format::text : RunConfig::Format::json;
    AnalyzedCorpus corpus = analyze_corpus(args);
    std::vector<GroupReport> groups = group_and_report(corpus.results, config);
    if (!out_dir.empty()) {
        EmittedReports paths = emit_reports(corpus.results, groups, config, out_dir);
        std::cerr << "wrote " << paths.json_path << " and " << paths.text_path << "\n";
    } else if (config.format == RunConfig::Format::text) {
        std::cout << render_text(corpus.results, groups, config);
    } else {
        std::cout << render_json(corpus.results, groups, config);
    }
    return corpus.parse_issues == 0 ? 0 : 1;
}

int cmd_independence(const CorpusArgs& args) {
    AnalyzedCorpus corpus = analyze_corpus(args);
    std::vector<GroupReport> groups = group_and_report(corpus.results, args.config);
    for (const GroupReport& g : groups) {
        std::cout << "d = " << g.disc.get_str() << ": ";
        if (g.independence.independent)
            std::cout << "independent_at(" << g.independence.precision << ")";
        else
            std::cout << "undetermined(rank " << g.independence.rank << ", B = "
                      << g.independence.precision << ")";
        std::cout << " [" << g.labels.size() << " field" << (g.labels.size() == 1 ? "" : "s")
                  << "]\n";
    }
    return corpus.parse_issues == 0 ? 0 : 1;
}

int cmd_collisions(const CorpusArgs& args) {
    AnalyzedCorpus corpus = analyze_corpus(args);
    std::vector<GroupReport> groups = group_and_report(corpus.results, args.config);
    for (const GroupReport& g : groups) {
        for (const Collision& c : g.collisions)
            std::cout << "d = " << g.disc.get_str() << ": " << g.labels[c.first] << " ~ "
                      << g.labels[c.second] << " share "
                      << (c.kind == "shared_prime" ? "prime " : "minimum ") << c.value.get_str()
                      << "\n";
    }
    return corpus.parse_issues == 0 ? 0 : 1;
}

int cmd_dimbound(const std::string& disc, const std::string& mode) {
    DimBound b = dim_lower_bound(Int(disc),
                                 mode == "exact" ? DimBoundMode::exact_terms : DimBoundMode::paper);
    std::cout << "d = " << b.d.get_str() << ", N = " << b.N.get_str() << "\n";
    std::cout << "main term   = " << b.main_term.get_str() << "\n";
    std::cout << "lambda prod = " << b.lambda_product.get_str() << "\n";
    std::cout << "x^2+1 sols  = " << b.sol_count.get_str() << "\n";
    std::cout << "lower bound = " << b.lower_bound.get_str() << " (" << to_string(b.mode)
              << " mode" << (b.heuristic ? ", heuristic" : "") << ")\n";
    return 0;
}

int cmd_theta(const std::string& coeff_list, const RunConfig& base_config) {
    RunConfig config = base_config;
    config.validate();
    std::vector<Int> coeffs;
    std::stringstream ss(coeff_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos)
            throw Error("theta: empty coefficient in --poly");
        coeffs.emplace_back(tok);
    }
    FieldRecord rec;
    rec.poly = Polynomial(std::move(coeffs));
    if (!rec.poly.is_monic()) throw NonMonic("theta: polynomial must be monic");

    ValidationOutcome v = validate_field(rec, config);
    if (!v.accepted) {
        std::cerr << "field rejected:";
        for (const auto& r : v.reasons) std::cerr << " " << r << ";";
        std::cerr << "\n";
        return 1;
    }
    FieldResult res = analyze_field(rec, config);
    std::cout << "poly   = " << res.record.poly.to_string() << "\n";
    std::cout << "disc   = " << res.order.disc.get_str() << ", m = " << res.lattice.m.get_str()
              << "\n";
    std::cout << "form   : det " << res.invariants.det.get_str() << ", disc "
              << res.invariants.disc.get_str() << ", level " << res.invariants.level.get_str()
              << ", min " << res.invariants.minimum.get_str() << "\n";
    std::cout << "space  : weight " << res.metadata.weight.get_str() << ", level "
              << res.metadata.level.get_str() << ", character disc "
              << res.metadata.character_disc.get_str() << "\n";
    std::cout << "theta  = " << theta_display(res.theta, res.theta.precision + 1) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace-zero quadratic forms and theta series of totally real number fields"};
    app.require_subcommand(1);

    CorpusArgs analyze_args;
    std::string out_dir;
    std::string format = "json";
    CLI::App* analyze = app.add_subcommand("analyze", "analyze a corpus and emit reports");
    add_config_options(analyze, analyze_args);
    analyze->add_option("--out", out_dir, "output directory for report.json / report.txt");
    analyze->add_option("--format", format, "stdout format when --out is absent")
        ->check(CLI::IsMember({"json", "text"}));
    analyze->add_option("--display-bound", analyze_args.config.display_bound,
                        "q-expansion display cutoff for text output");

    CorpusArgs indep_args;
    CLI::App* indep = app.add_subcommand("independence", "per-discriminant independence verdicts");
    add_config_options(indep, indep_args);

    CorpusArgs coll_args;
    CLI::App* coll = app.add_subcommand("collisions", "shared primes and minima per group");
    add_config_options(coll, coll_args);

    std::string disc;
    std::string mode = "paper";
    CLI::App* dim = app.add_subcommand("dimbound", "dimension lower bound for 2d");
    dim->add_option("--disc", disc, "odd squarefree discriminant d > 1")->required();
    dim->add_option("--mode", mode, "bound mode")->check(CLI::IsMember({"paper", "exact"}));

    std::string poly;
    RunConfig theta_config;
    CLI::App* theta = app.add_subcommand("theta", "theta series of a single field");
    theta->add_option("--poly", poly, "comma-separated coefficients, constant term first")
        ->required();
    theta->add_option("--precision", theta_config.precision, "q-expansion bound B (>= 30)");
    theta->add_flag("--require-fundamental,!--no-require-fundamental",
                    theta_config.require_fundamental,
                    "reject fields whose discriminant is not fundamental");
    theta->add_flag("--require-coprime,!--no-require-coprime", theta_config.require_coprime,
                    "reject fields with gcd(n, d) > 1");

    try {
        app.parse(argc, argv);
        if (*analyze) return cmd_analyze(analyze_args, out_dir, format);
        if (*indep) return cmd_independence(indep_args);
        if (*coll) return cmd_collisions(coll_args);
        if (*dim) return cmd_dimbound(disc, mode);
        if (*theta) return cmd_theta(poly, theta_config);
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const thetanf::InvariantViolation& e) {
        std::cerr << "invariant violation (bug): " << e.what() << "\n";
        return 2;
    } catch (const thetanf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        // malformed numeric literals in options land here
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
