#include "thetanf/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "thetanf/errors.hpp"

namespace thetanf {

using ordered_json = nlohmann::ordered_json;

void RunConfig::validate() const {
    if (precision < 30)
        throw Unsupported("RunConfig: precision must be at least 30");
    if (min_degree < kMinDegree || max_degree > kMaxDegree || min_degree > max_degree)
        throw Unsupported("RunConfig: degree range outside supported [2, 7]");
    if (lll_delta <= Rat(1, 4) || lll_delta > 1)
        throw Unsupported("RunConfig: lll delta outside (1/4, 1]");
}

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "flag";
    }
}

namespace {

Int int_from_json(const ordered_json& v, const char* what) {
    if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
    if (v.is_string()) return Int(v.get<std::string>());
    throw Error(std::string(what) + ": expected integer or decimal string");
}

Rat rat_from_json(const ordered_json& v, const char* what) {
    if (v.is_number_integer()) return Rat(Int(static_cast<long>(v.get<long long>())));
    if (v.is_string()) {
        Rat r(v.get<std::string>());
        if (r.get_den() == 0) throw Error(std::string(what) + ": zero denominator");
        r.canonicalize();
        return r;
    }
    if (v.is_array() && v.size() == 2) {
        Int num = int_from_json(v[0], what);
        Int den = int_from_json(v[1], what);
        if (den == 0) throw Error(std::string(what) + ": zero denominator");
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    throw Error(std::string(what) + ": expected number, \"p/q\" string or [num, den] pair");
}

}  // namespace

FieldRecord parse_record(const std::string& line, long line_number, const RunConfig& config) {
    ordered_json obj;
    try {
        obj = ordered_json::parse(line);
    } catch (const std::exception& e) {
        throw ParseError(line_number, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_number, "expected a JSON object");
    if (!obj.contains("poly") || !obj["poly"].is_array())
        throw ParseError(line_number, "missing \"poly\" array");

    FieldRecord rec;
    std::vector<Int> coeffs;
    try {
        for (const auto& c : obj["poly"]) coeffs.push_back(int_from_json(c, "poly"));
    } catch (const Error& e) {
        throw ParseError(line_number, e.what());
    }
    rec.poly = Polynomial(std::move(coeffs));
    if (rec.poly.degree() < 1 || !rec.poly.is_monic())
        throw NonMonic("line " + std::to_string(line_number) +
                       ": polynomial must be monic (leading coefficient 1)");
    if (rec.poly.degree() < config.min_degree || rec.poly.degree() > config.max_degree)
        throw DegreeOutOfRange("line " + std::to_string(line_number) + ": degree " +
                               std::to_string(rec.poly.degree()) + " outside [" +
                               std::to_string(config.min_degree) + ", " +
                               std::to_string(config.max_degree) + "]");

    try {
        if (obj.contains("label")) rec.label = obj["label"].get<std::string>();
        if (obj.contains("galois")) rec.galois_group = obj["galois"].get<std::string>();
        if (obj.contains("disc")) rec.claimed_disc = int_from_json(obj["disc"], "disc");
        if (obj.contains("basis")) {
            const auto& rows = obj["basis"];
            const std::size_t n = static_cast<std::size_t>(rec.poly.degree());
            if (!rows.is_array() || rows.size() != n)
                throw Error("basis must have one row per degree");
            RatMatrix b(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!rows[i].is_array() || rows[i].size() != n)
                    throw Error("basis rows must have n entries");
                for (std::size_t j = 0; j < n; ++j) b(i, j) = rat_from_json(rows[i][j], "basis");
            }
            rec.basis = std::move(b);
        }
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(line_number, e.what());
    }
    return rec;
}

LoadResult load_corpus(const std::string& path, const RunConfig& config) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path);
    LoadResult out;
    std::string line;
    long line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.records.push_back(parse_record(line, line_number, config));
        } catch (const Error& e) {
            out.issues.push_back({line_number, e.what()});
        }
    }
    return out;
}

ValidationOutcome validate_field(const FieldRecord& rec, const RunConfig& config) {
    std::vector<std::string> reasons;
    const long n = rec.poly.degree();
    if (!rec.poly.is_monic()) reasons.push_back("polynomial is not monic");
    if (n < config.min_degree || n > config.max_degree)
        reasons.push_back("degree " + std::to_string(n) + " out of configured range");
    if (!reasons.empty()) return {false, reasons};

    // Galois filtering is metadata-driven (no group computation here);
    // quartic records tagged with a group other than S4 are excluded
    if (rec.galois_group && n == 4 && *rec.galois_group != "S4")
        reasons.push_back("galois group " + *rec.galois_group + " != S4");

    try {
        if (count_real_roots(rec.poly) != n) reasons.push_back("not totally real");
    } catch (const NotSeparable&) {
        reasons.push_back("polynomial is not squarefree");
        return {false, reasons};
    }
    if (!reasons.empty()) return {false, reasons};

    try {
        OrderBasis order = make_order(rec);
        if (config.require_fundamental && !is_fundamental_disc(order.disc))
            reasons.push_back("discriminant " + order.disc.get_str() + " is not fundamental");
        if (config.require_coprime && gcd(Int(n), order.disc) != 1)
            reasons.push_back("gcd(n, d) = " + gcd(Int(n), order.disc).get_str() + " > 1");
    } catch (const Error& e) {
        reasons.push_back(e.what());
    }
    return {reasons.empty(), reasons};
}

namespace {

void add_check(FieldResult& res, std::string name, bool ok, bool hard, std::string detail) {
    CheckStatus st = ok ? CheckStatus::pass : (hard ? CheckStatus::fail : CheckStatus::flag);
    res.checks.push_back({std::move(name), st, std::move(detail)});
    if (!ok && hard)
        throw InvariantViolation(res.checks.back().name + " failed: " + res.checks.back().detail);
}

void run_checks(FieldResult& res) {
    const long n = res.record.poly.degree();
    const Int& d = res.order.disc;
    const Int& m = res.lattice.m;

    Int expected_abs = Int(n) * d / (m * m);
    int sign = ((n - 1) * (n - 2) / 2) % 2 != 0 ? -1 : 1;
    Int expected_disc = sign < 0 ? Int(-expected_abs) : expected_abs;
    add_check(res, "lemma_det", res.invariants.disc == expected_disc, /*hard=*/true,
              "form disc " + res.invariants.disc.get_str() + ", lemma gives " +
                  expected_disc.get_str());

    bool even = true;
    for (std::size_t i = 0; i < res.lattice.gram.rows(); ++i)
        if (res.lattice.gram(i, i) % 2 != 0) even = false;
    add_check(res, "even_diagonal", even, /*hard=*/true, "Gram diagonal must lie in 2Z");

    Int two_nd = 2 * Int(n) * d;
    add_check(res, "level_divides_2nd", two_nd % res.invariants.level == 0, /*hard=*/false,
              "level " + res.invariants.level.get_str() + " vs 2nd = " + two_nd.get_str());

    Int g = gcd(Int(n), d);
    add_check(res, "coprimality", g == 1, /*hard=*/false, "gcd(n, d) = " + g.get_str());

    add_check(res, "fundamental_disc", is_fundamental_disc(d), /*hard=*/false,
              "d = " + d.get_str());

    if (!res.record.galois_group)
        res.notes.push_back("galois group untagged; metadata filter not applied");
}

}  // namespace

FieldResult analyze_field(const FieldRecord& rec, const RunConfig& config) {
    config.validate();
    try {
        FieldResult res;
        res.record = rec;
        res.order = make_order(rec);
        res.lattice = trace_zero_lattice(res.order);
        QuadraticForm form(res.lattice.gram);
        res.invariants = form_invariants(form);
        res.theta = theta_series(form, config.precision, config.lll_delta);
        res.metadata = theta_metadata(rec.poly.degree(), res.order.disc);
        run_checks(res);
        return res;
    } catch (const InvariantViolation& e) {
        throw InvariantViolation(rec.display_name() + ": " + e.what());
    } catch (const Error& e) {
        throw Error(rec.display_name() + ": " + e.what());
    }
}

std::vector<GroupReport> group_and_report(const std::vector<FieldResult>& results,
                                          const RunConfig& config) {
    config.validate();
    std::map<Int, std::vector<std::size_t>> by_disc;
    for (std::size_t i = 0; i < results.size(); ++i)
        by_disc[results[i].order.disc].push_back(i);

    std::vector<GroupReport> out;
    for (const auto& [disc, members] : by_disc) {
        GroupReport g;
        g.disc = disc;
        for (std::size_t i : members) g.labels.push_back(results[i].name());

        const long b = config.precision;
        IntMatrix coeffs(members.size(), static_cast<std::size_t>(b) + 1);
        for (std::size_t r = 0; r < members.size(); ++r) {
            const ThetaSeries& t = results[members[r]].theta;
            if (t.precision < b)
                throw Unsupported("group_and_report: field analyzed below config precision");
            for (long c = 0; c <= b; ++c)
                coeffs(r, static_cast<std::size_t>(c)) = t.coeff(c);
        }
        g.independence.rank = linalg::rank_exact(coeffs);
        g.independence.precision = b;
        g.independence.independent = g.independence.rank == members.size();

        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const FieldResult& fi = results[members[i]];
                const FieldResult& fj = results[members[j]];
                auto pi = smallest_represented_prime(fi.theta);
                auto pj = smallest_represented_prime(fj.theta);
                if (pi && pj && *pi == *pj)
                    g.collisions.push_back({"shared_prime", i, j, *pi});
                if (fi.invariants.minimum == fj.invariants.minimum)
                    g.collisions.push_back({"shared_minimum", i, j, fi.invariants.minimum});
            }
        }

        if (disc > 1 && mpz_odd_p(disc.get_mpz_t()) && is_squarefree(disc))
            g.dim_bound = dim_lower_bound(disc, DimBoundMode::paper);
        out.push_back(std::move(g));
    }
    return out;
}

bool theta_equal(const FieldResult& a, const FieldResult& b, long precision) {
    if (a.theta.precision < precision || b.theta.precision < precision)
        throw Unsupported("theta_equal: results analyzed below requested precision");
    for (long t = 0; t <= precision; ++t)
        if (a.theta.coeff(t) != b.theta.coeff(t)) return false;
    return true;
}

ThetaComparison theta_compare(const FieldResult& a, const FieldResult& b, long precision) {
    ThetaComparison cmp;
    cmp.precision = precision;
    cmp.equal = theta_equal(a, b, precision);
    if (!cmp.equal) return cmp;
    const std::size_t rank = a.lattice.gram.rows();
    if (rank == b.lattice.gram.rows() && rank <= 4) {
        cmp.witness = isometry(QuadraticForm(a.lattice.gram), QuadraticForm(b.lattice.gram));
        // equal ternary theta truncations should come with an isometry
        if (!cmp.witness && rank == 3 && precision >= 200) cmp.suspected_bug = true;
    }
    return cmp;
}

std::string theta_display(const ThetaSeries& theta, long bound) {
    long cut = std::min(bound, theta.precision + 1);
    std::ostringstream os;
    os << "1";
    for (long t = 1; t < cut; ++t) {
        const Int& c = theta.coeff(t);
        if (c == 0) continue;
        os << " + ";
        if (c != 1) os << c.get_str();
        os << "q^" << t;
    }
    os << " + O(q^" << cut << ")";
    return os.str();
}

namespace {

ordered_json json_of_theta(const ThetaSeries& theta) {
    ordered_json terms = ordered_json::array();
    for (long t = 1; t <= theta.precision; ++t)
        if (theta.coeff(t) != 0)
            terms.push_back(ordered_json::array({t, theta.coeff(t).get_str()}));
    return ordered_json{{"precision", theta.precision}, {"terms", std::move(terms)}};
}

ordered_json json_of_gram(const IntMatrix& g) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < g.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(g(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json json_of_field(const FieldResult& r) {
    ordered_json coeffs = ordered_json::array();
    for (const Int& c : r.record.poly.coeffs()) coeffs.push_back(c.get_str());
    ordered_json checks = ordered_json::array();
    for (const Check& c : r.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    ordered_json notes = ordered_json::array();
    for (const std::string& n : r.notes) notes.push_back(n);

    return ordered_json{
        {"label", r.name()},
        {"poly", r.record.poly.to_string()},
        {"coefficients", std::move(coeffs)},
        {"degree", r.record.poly.degree()},
        {"disc", r.order.disc.get_str()},
        {"m", r.lattice.m.get_str()},
        {"gram", json_of_gram(r.lattice.gram)},
        {"invariants",
         {{"det", r.invariants.det.get_str()},
          {"disc", r.invariants.disc.get_str()},
          {"level", r.invariants.level.get_str()},
          {"minimum", r.invariants.minimum.get_str()},
          {"character_disc", r.invariants.character_disc.get_str()}}},
        {"metadata",
         {{"weight", r.metadata.weight.get_str()},
          {"level", r.metadata.level.get_str()},
          {"character_disc", r.metadata.character_disc.get_str()}}},
        {"theta", json_of_theta(r.theta)},
        {"checks", std::move(checks)},
        {"notes", std::move(notes)},
    };
}

ordered_json json_of_group(const GroupReport& g) {
    ordered_json collisions = ordered_json::array();
    for (const Collision& c : g.collisions)
        collisions.push_back({{"kind", c.kind},
                              {"fields", ordered_json::array({g.labels[c.first], g.labels[c.second]})},
                              {"value", c.value.get_str()}});
    ordered_json j{
        {"disc", g.disc.get_str()},
        {"labels", g.labels},
        {"independence",
         {{"status", g.independence.independent ? "independent" : "undetermined"},
          {"rank", g.independence.rank},
          {"precision", g.independence.precision}}},
        {"collisions", std::move(collisions)},
    };
    if (g.dim_bound) {
        const DimBound& b = *g.dim_bound;
        j["dim_bound"] = ordered_json{{"d", b.d.get_str()},
                                      {"N", b.N.get_str()},
                                      {"main_term", b.main_term.get_str()},
                                      {"lambda_product", b.lambda_product.get_str()},
                                      {"sol_count", b.sol_count.get_str()},
                                      {"lower_bound", b.lower_bound.get_str()},
                                      {"mode", to_string(b.mode)},
                                      {"heuristic", b.heuristic}};
    } else {
        j["dim_bound"] = nullptr;
    }
    return j;
}

}  // namespace

std::string render_json(const std::vector<FieldResult>& results,
                        const std::vector<GroupReport>& groups, const RunConfig& config) {
    ordered_json j;
    j["schema"] = 1;
    j["generator"] = "thetanf";
    j["precision"] = config.precision;
    j["config"] = ordered_json{{"require_fundamental", config.require_fundamental},
                               {"require_coprime", config.require_coprime},
                               {"display_bound", config.display_bound}};
    ordered_json fields = ordered_json::array();
    for (const FieldResult& r : results) fields.push_back(json_of_field(r));
    j["fields"] = std::move(fields);
    ordered_json gs = ordered_json::array();
    for (const GroupReport& g : groups) gs.push_back(json_of_group(g));
    j["groups"] = std::move(gs);
    return j.dump(2) + "\n";
}

namespace {

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string render_text(const std::vector<FieldResult>& results,
                        const std::vector<GroupReport>& groups, const RunConfig& config) {
    std::ostringstream os;
    os << "thetanf report (schema 1)\n";
    os << "precision B = " << config.precision << "\n\n";

    std::vector<std::array<std::string, 6>> rows;
    rows.push_back({"polynomial", "disc", "m", "level", "min", "theta"});
    for (const FieldResult& r : results) {
        rows.push_back({r.record.poly.to_string(), r.order.disc.get_str(), r.lattice.m.get_str(),
                        r.invariants.level.get_str(), r.invariants.minimum.get_str(),
                        theta_display(r.theta, config.display_bound)});
    }
    std::array<std::size_t, 6> width{};
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << " | ";
            os << (c + 1 == row.size() ? row[c] : pad(row[c], width[c]));
        }
        os << "\n";
    }

    os << "\ngroups by discriminant\n";
    for (const GroupReport& g : groups) {
        os << "d = " << g.disc.get_str() << ": " << g.labels.size() << " field"
           << (g.labels.size() == 1 ? "" : "s");
        os << "; "
           << (g.independence.independent
                   ? "independent at B = " + std::to_string(g.independence.precision)
                   : "undetermined (rank " + std::to_string(g.independence.rank) + " at B = " +
                         std::to_string(g.independence.precision) + ")");
        if (g.collisions.empty()) {
            os << "; no collisions";
        } else {
            for (const Collision& c : g.collisions)
                os << "; " << g.labels[c.first] << " ~ " << g.labels[c.second] << " share "
                   << (c.kind == "shared_prime" ? "prime " : "minimum ") << c.value.get_str();
        }
        if (g.dim_bound)
            os << "; dim bound main term " << g.dim_bound->main_term.get_str() << ", lower bound "
               << g.dim_bound->lower_bound.get_str();
        os << "\n";
    }
    return os.str();
}

EmittedReports emit_reports(const std::vector<FieldResult>& results,
                            const std::vector<GroupReport>& groups, const RunConfig& config,
                            const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory " + out_dir + ": " + ec.message());

    EmittedReports paths;
    paths.json_path = (fs::path(out_dir) / "report.json").string();
    paths.text_path = (fs::path(out_dir) / "report.txt").string();
    for (auto [path, content] :
         {std::pair{paths.json_path, render_json(results, groups, config)},
          std::pair{paths.text_path, render_text(results, groups, config)}}) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + path + " for writing");
        out << content;
        if (!out) throw Error("write failed for " + path);
    }
    return paths;
}

}  // namespace thetanf
