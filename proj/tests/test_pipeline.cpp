#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bggforge/pipeline.hpp"
#include "ext_support.hpp"
#include "published.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

using namespace bggforge;
using testsupport::exterior;

namespace {

using namespace testsupport;
using Row = PublishedRow;

bool contains(const std::vector<CandidateTriple>& v, CandidateTriple t) {
    return std::find(v.begin(), v.end(), t) != v.end();
}

const Report& chi1_report() {
    static const Report r = [] {
        ReportOptions o;
        o.only_psi = X1;
        o.timing = false;
        return run_report(exterior(), o);
    }();
    return r;
}

const Report& step3_report(unsigned threads) {
    static std::map<unsigned, Report> cache;
    auto it = cache.find(threads);
    if (it != cache.end()) return it->second;
    ReportOptions o;
    o.escalation.retries = -1;
    o.timing = false;
    o.threads = threads;
    return cache.emplace(threads, run_report(exterior(), o)).first->second;
}

}  // namespace

TEST_CASE("grid order and size") {
    auto g = candidate_grid();
    CHECK(g.size() == 100);
    for (const auto& t : g) CHECK((t.i >= -4 && t.i <= -1));
    CHECK(g.front() == CandidateTriple{-4, X1, X1});
    CHECK(g[5] == CandidateTriple{-3, X1, X1});
    CHECK(g[20] == CandidateTriple{-4, X1, X3});
}

TEST_CASE("step 2: one-point spaces") {
    auto s = step2_enumerate(exterior());
    CHECK(s.size() == 50);
    CHECK(contains(s, {-2, X3, X1}));
    CHECK(contains(s, {-2, X4, X1}));
    for (const auto& r : published()) CHECK(contains(s, {r.i, r.phi, r.psi}));
    for (const auto& t : s) {
        CHECK(t.i != -5);
        CHECK(t.i != 0);
        CHECK(hom_space_dimension(testsupport::fixture(), t.spec()) == 1);
    }
}

TEST_CASE("step 3 statuses") {
    const auto& ctx = exterior();
    CHECK(step3_filter(ctx, {-3, X1, X1}).status == Status::not_singleton);
    auto fail = step3_filter(ctx, {-2, X4, X1});
    CHECK(fail.status == Status::failed_necessary);
    REQUIRE(fail.chern);
    CHECK(fail.chern->abs_rank() == 2);
    ModulePtr k;
    auto pass = step3_filter(ctx, {-2, X3, X1}, &k);
    CHECK(pass.status == Status::inconclusive);
    REQUIRE(k);
    CHECK(pass.chern->abs_rank() == 3);
    CHECK(pass.subtraction_agrees == std::optional<bool>(true));
}

TEST_CASE("subtraction check agrees on every published triple") {
    for (const auto& r : published()) {
        auto rec = step3_filter(exterior(), {r.i, r.phi, r.psi});
        CAPTURE(r.psi);
        CAPTURE(r.i);
        CAPTURE(r.phi);
        CHECK(rec.status == Status::inconclusive);
        CHECK(rec.subtraction_agrees == std::optional<bool>(true));
        CHECK(character_subtraction_check(exterior(), rec.triple, rec.kernel_series));
        REQUIRE(rec.chern);
        CHECK(rec.chern->abs_rank() == r.rank);
    }
}

TEST_CASE("subtraction check rejects a wrong series") {
    auto rec = step3_filter(exterior(), {-2, X4, X1});
    GradedRep bad = rec.kernel_series;
    bad[0][X1] += 1;
    CHECK_FALSE(character_subtraction_check(exterior(), rec.triple, bad));
}

TEST_CASE("step 4 on single triples") {
    EscalationOptions opt;
    auto a = process_triple(exterior(), {-2, X3, X1}, opt);
    CHECK(a.status == Status::bundle);
    REQUIRE(a.roots);
    CHECK(*a.roots == RootSequence{0, -1, -3, -6});
    CHECK(a.rank == 3);

    auto b = process_triple(exterior(), {-1, X4, X4}, opt);
    CHECK(b.status == Status::bundle);
    REQUIRE(b.roots);
    CHECK(*b.roots == RootSequence{0, -1, -4, -5});
    CHECK(b.rank == 8);
}

TEST_CASE("budget 0 stays inconclusive") {
    ModulePtr k;
    auto rec = step3_filter(exterior(), {-2, X3, X1}, &k);
    step4_verify(exterior(), rec, k, EscalationOptions{}, 0);
    CHECK(rec.status == Status::inconclusive);
    CHECK_FALSE(rec.roots);
    CHECK(rec.depth_left == -1);
}

TEST_CASE("budget monotonicity") {
    // a certified triple stays certified, with the same answer, under a larger budget
    ModulePtr k;
    const CandidateTriple t{-1, X5, X1};
    std::optional<RootSequence> prev;
    bool seen = false;
    for (int budget = 1; budget <= 8; ++budget) {
        auto rec = step3_filter(exterior(), t, &k);
        step4_verify(exterior(), rec, k, EscalationOptions{}, budget);
        if (seen) {
            CHECK(rec.status == Status::bundle);
            CHECK(rec.roots == prev);
        }
        if (rec.status == Status::bundle) {
            seen = true;
            prev = rec.roots;
        }
    }
    CHECK(seen);
    CHECK(prev == std::optional<RootSequence>(RootSequence{0, -1, -2, -3}));
}

TEST_CASE("psi = chi1 block") {
    const auto& r = chi1_report();
    CHECK(r.records.size() == 20);
    auto b = r.bundles();
    REQUIRE(b.size() == 4);
    for (std::size_t n = 0; n < 4; ++n) {
        const Row& want = published()[n];
        CHECK(b[n].triple == CandidateTriple{want.i, want.phi, want.psi});
        REQUIRE(b[n].roots);
        CHECK(*b[n].roots == RootSequence(want.roots.begin(), want.roots.end()));
        CHECK(b[n].rank == want.rank);
    }
    CHECK(report_violations(r).empty());
}

TEST_CASE("retries -1 finds no bundles") {
    const auto& r = step3_report(1);
    CHECK(r.records.size() == 100);
    CHECK(r.bundles().empty());
    long inconclusive = 0;
    for (const auto& rec : r.records) inconclusive += rec.status == Status::inconclusive;
    CHECK(inconclusive == 21);
    CHECK(report_violations(r).empty());
}

TEST_CASE("json is identical across thread counts and runs") {
    const std::string one = report_json(step3_report(1), false);
    CHECK(one == report_json(step3_report(3), false));
    ReportOptions o;
    o.escalation.retries = -1;
    o.timing = false;
    CHECK(one == report_json(run_report(exterior(), o), false));
}

TEST_CASE("json shape") {
    auto j = nlohmann::json::parse(report_json(chi1_report(), false));
    REQUIRE(j.contains("triples"));
    REQUIRE(j["triples"].size() == 20);
    for (const auto& t : j["triples"]) {
        for (const char* k : {"psi", "i", "phi", "status", "rank", "roots", "chern", "depths", "ms"}) CHECK(t.contains(k));
        CHECK(t["ms"] == 0);
        if (t["status"] == "bundle") {
            CHECK(t["roots"].size() == 4);
            CHECK(t["chern"].size() == 5);
            CHECK(t["depths"].size() == 2);
            CHECK(t["roots"][0] == 0);
        }
    }
    const auto& first = j["triples"][4];
    CHECK(first["psi"] == "chi1");
    CHECK(first["i"] == -4);
    CHECK(first["phi"] == "chi5");
    CHECK(first["rank"] == 4);
}

TEST_CASE("csv shape") {
    std::istringstream in(report_csv(chi1_report(), false));
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("psi,i,phi,status,rank,roots", 0) == 0);
    const auto cols = std::count(line.begin(), line.end(), ',');
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        CHECK(std::count(line.begin(), line.end(), ',') == cols);
    }
    CHECK(n == 20);
}

TEST_CASE("text report") {
    const std::string s = report_text(chi1_report());
    CHECK(s.find("[0,-1,-3,-6]") != std::string::npos);
    CHECK(s.find("i = -5") != std::string::npos);
}

TEST_CASE("violations are reported") {
    Report r = chi1_report();
    auto it = std::find_if(r.records.begin(), r.records.end(), [](const auto& x) { return x.status == Status::bundle; });
    REQUIRE(it != r.records.end());
    it->roots = RootSequence{1, -1, -3, -6};
    CHECK_FALSE(report_violations(r).empty());
    Report r2 = chi1_report();
    for (auto& x : r2.records)
        if (x.status == Status::bundle) x.rank = 0;
    CHECK_FALSE(report_violations(r2).empty());
}
