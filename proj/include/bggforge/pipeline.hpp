#pragma once

#include "bggforge/bgg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bggforge {

/// (i, phi, psi): T = phi in degree i, U = psi in degree 0.
struct CandidateTriple {
    int i = -1;
    int phi = 0;
    int psi = 0;
    BggSpaceSpec spec() const { return {phi, i, psi, 0}; }
    friend bool operator==(const CandidateTriple&, const CandidateTriple&) = default;
};

enum class Status { not_singleton, not_mono, failed_necessary, bundle, inconclusive };
std::string status_name(Status s);

struct EscalationOptions {
    int depth_left = 1;
    int depth_right = 1;
    /// Extra resolution terms allowed after the initial window, one per retry,
    /// always on the side whose last term is smaller. The step-4 budget is
    /// retries + 1 windows; retries = -1 gives budget 0.
    int retries = 12;
    int budget() const { return retries + 1; }
};

struct PipelineRecord {
    CandidateTriple triple;
    Status status = Status::not_singleton;
    std::size_t hom_dim = 0;
    std::optional<ChernData> chern;
    std::optional<RootSequence> roots;
    long rank = 0;
    int depth_left = -1, depth_right = -1;
    double ms = 0;
    GradedRep kernel_series;
    std::optional<bool> subtraction_agrees;
    std::optional<CohomologyTable> table;
    std::optional<SparseMatch> sparse;
    long twist = 0;
};

/// The 4 x 5 x 5 grid i in {-4..-1}, in report order (psi, i, phi).
std::vector<CandidateTriple> candidate_grid();
/// Grid triples with a one-point BGG space.
std::vector<CandidateTriple> step2_enumerate(const ExteriorContext& ctx);

/// Steps 2-3 for one triple; kernel_out receives ker(phi-hat) when it exists.
PipelineRecord step3_filter(const ExteriorContext& ctx, const CandidateTriple& t, ModulePtr* kernel_out = nullptr);

/// Step 4: at most `budget` windows are examined, starting from the initial
/// depths and growing one term per retry. budget 0 leaves the record inconclusive.
void step4_verify(const ExteriorContext& ctx, PipelineRecord& rec, ModulePtr kernel, const EscalationOptions& opt, int budget);

/// Kernel character series against the positive part of
/// char(E (x) T) - char(E (x) U), degreewise.
bool character_subtraction_check(const ExteriorContext& ctx, const CandidateTriple& t, const GradedRep& kernel_series);

/// Steps 2-4 for one triple.
PipelineRecord process_triple(const ExteriorContext& ctx, const CandidateTriple& t, const EscalationOptions& opt);

struct ReportOptions {
    EscalationOptions escalation;
    std::optional<int> only_psi;
    bool timing = true;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct Report {
    std::vector<PipelineRecord> records;  // sorted by psi, i, phi
    std::vector<PipelineRecord> bundles() const;
};

Report run_report(const ExteriorContext& ctx, const ReportOptions& opt);

std::string report_text(const Report& r);
std::string report_json(const Report& r, bool timing);
std::string report_csv(const Report& r, bool timing);
std::string record_text(const PipelineRecord& rec);

/// Internal invariant violations found in a report (empty when clean).
std::vector<std::string> report_violations(const Report& r);

}  // namespace bggforge
