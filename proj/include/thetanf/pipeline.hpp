#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thetanf/modular.hpp"
#include "thetanf/numfield.hpp"
#include "thetanf/qform.hpp"

namespace thetanf {

struct RunConfig {
    long precision = 200;  // q-expansion bound B, >= 30
    long min_degree = kMinDegree;
    long max_degree = kMaxDegree;
    Rat lll_delta = Rat(3, 4);
    bool require_fundamental = true;  // skip fields with non-fundamental disc
    bool require_coprime = true;      // skip fields with gcd(n, d) > 1
    long display_bound = 30;          // text-report q-expansion cutoff

    enum class Format { json, text };
    Format format = Format::json;

    void validate() const;  // throws Unsupported on out-of-range settings
};

enum class CheckStatus { pass, fail, flag };

const char* to_string(CheckStatus s);

struct Check {
    std::string name;
    CheckStatus status;
    std::string detail;
};

/// Full invariant bundle computed for one accepted field.
struct FieldResult {
    FieldRecord record;
    OrderBasis order;
    TraceZeroLattice lattice;
    FormInvariants invariants;
    ThetaSeries theta;
    ThetaMetadata metadata;
    std::vector<Check> checks;       // lemma_det, level_divides_2nd, even_diagonal,
                                     // coprimality, fundamental_disc
    std::vector<std::string> notes;  // non-check annotations (untagged Galois group, ...)

    std::string name() const { return record.display_name(); }
};

struct Independence {
    bool independent = false;  // full rank at the given precision
    std::size_t rank = 0;
    long precision = 0;
};

struct Collision {
    std::string kind;  // "shared_prime" or "shared_minimum"
    std::size_t first;
    std::size_t second;  // indices into the group's field list
    Int value;
};

struct GroupReport {
    Int disc;
    std::vector<std::string> labels;
    Independence independence;
    std::vector<Collision> collisions;
    std::optional<DimBound> dim_bound;  // present for odd squarefree d > 1
};

struct LoadIssue {
    long line;
    std::string reason;
};

struct LoadResult {
    std::vector<FieldRecord> records;
    std::vector<LoadIssue> issues;
};

/// Parse one JSON-Lines corpus object. Throws ParseError / NonMonic /
/// DegreeOutOfRange.
FieldRecord parse_record(const std::string& line, long line_number, const RunConfig& config);

/// Load a JSON-Lines corpus; malformed lines are collected as issues with
/// their line numbers, well-formed records are returned in file order.
LoadResult load_corpus(const std::string& path, const RunConfig& config);

struct ValidationOutcome {
    bool accepted = false;
    std::vector<std::string> reasons;  // skip reasons when not accepted
};

/// Acceptance filter: totally real, constructible order, and the configured
/// discriminant conditions. Skips are data, not errors.
ValidationOutcome validate_field(const FieldRecord& rec, const RunConfig& config);

/// Full analysis of a validated record.
FieldResult analyze_field(const FieldRecord& rec, const RunConfig& config);

/// Group results by discriminant (ascending) and run the independence and
/// collision experiments per group.
std::vector<GroupReport> group_and_report(const std::vector<FieldResult>& results,
                                          const RunConfig& config);

/// Coefficient-wise theta equality up to the given precision.
bool theta_equal(const FieldResult& a, const FieldResult& b, long precision);

struct ThetaComparison {
    bool equal = false;
    long precision = 0;
    std::optional<IntMatrix> witness;  // isometry when equality holds at rank <= 4
    /// Equal ternary truncations with no isometry found contradict
    /// Schiemann's theorem morally; surfaced as a suspected bug.
    bool suspected_bug = false;
};

ThetaComparison theta_compare(const FieldResult& a, const FieldResult& b, long precision);

std::string render_json(const std::vector<FieldResult>& results,
                        const std::vector<GroupReport>& groups, const RunConfig& config);

std::string render_text(const std::vector<FieldResult>& results,
                        const std::vector<GroupReport>& groups, const RunConfig& config);

/// Theta q-expansion display string, e.g. "1 + 2q^23 + 2q^27 + O(q^30)".
std::string theta_display(const ThetaSeries& theta, long bound);

struct EmittedReports {
    std::string json_path;
    std::string text_path;
};

/// Write report.json and report.txt into out_dir (created if missing).
EmittedReports emit_reports(const std::vector<FieldResult>& results,
                            const std::vector<GroupReport>& groups, const RunConfig& config,
                            const std::string& out_dir);

}  // namespace thetanf
