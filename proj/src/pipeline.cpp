#include "bggforge/pipeline.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <thread>

namespace bggforge {

std::string status_name(Status s) {
    switch (s) {
        case Status::not_singleton: return "not_singleton";
        case Status::not_mono: return "not_mono";
        case Status::failed_necessary: return "failed_necessary";
        case Status::bundle: return "bundle";
        case Status::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<CandidateTriple> candidate_grid() {
    std::vector<CandidateTriple> out;
    for (int psi = 0; psi < kNumIrreps; ++psi)
        for (int i = -4; i <= -1; ++i)
            for (int phi = 0; phi < kNumIrreps; ++phi) out.push_back({i, phi, psi});
    return out;
}

std::vector<CandidateTriple> step2_enumerate(const ExteriorContext& ctx) {
    std::vector<CandidateTriple> out;
    for (const auto& t : candidate_grid())
        if (hom_space_dimension(*ctx.rep().fixture, t.spec()) == 1) out.push_back(t);
    return out;
}

PipelineRecord step3_filter(const ExteriorContext& ctx, const CandidateTriple& t, ModulePtr* kernel_out) {
    PipelineRecord rec;
    rec.triple = t;
    rec.hom_dim = hom_space_dimension(*ctx.rep().fixture, t.spec());
    BggPoint pt;
    try {
        pt = bgg_point(ctx, t.spec());
    } catch (const NotSingleton&) {
        rec.status = Status::not_singleton;
        return rec;
    } catch (const NotMono&) {
        rec.status = Status::not_mono;
        return rec;
    }
    KernelModule k = kernel_module(ctx, pt.phi_hat);
    rec.kernel_series = k.module->character_series();
    rec.chern = rank_and_chern(*k.module);
    rec.rank = rec.chern->abs_rank();
    rec.subtraction_agrees = character_subtraction_check(ctx, t, rec.kernel_series);
    rec.status = necessary_condition(*rec.chern) ? Status::inconclusive : Status::failed_necessary;
    if (kernel_out) *kernel_out = k.module;
    return rec;
}

void step4_verify(const ExteriorContext& ctx, PipelineRecord& rec, ModulePtr kernel, const EscalationOptions& opt, int budget) {
    rec.status = Status::inconclusive;
    if (budget <= 0) return;
    ProjectiveResolution p(ctx, kernel);
    ProjectiveResolution q(ctx, std::make_shared<GradedModule>(dual(ctx, *kernel)));
    for (int k = 0; k <= opt.depth_left; ++k) p.extend();
    for (int k = 0; k <= opt.depth_right; ++k) q.extend();
    for (int attempt = 0; attempt < budget; ++attempt) {
        TateWindow w = assemble_window(ctx, p, q, kernel, false);
        rec.depth_left = w.depth_left;
        rec.depth_right = w.depth_right;
        CohomologyTable table = table_from_window(w);
        rec.table = table;
        if (auto m = find_sparse_columns(table)) {
            rec.sparse = m;
            if (auto s = supernatural_match(table, *m, rec.rank)) {
                rec.status = Status::bundle;
                rec.roots = s->roots;
                rec.twist = s->twist;
                return;
            }
        }
        if (attempt + 1 == budget) break;
        const std::size_t cl = total_dimension(p.generators(p.length() - 1));
        const std::size_t cr = total_dimension(q.generators(q.length() - 1));
        if (cl <= cr) p.extend();
        else q.extend();
    }
}

bool character_subtraction_check(const ExteriorContext& ctx, const CandidateTriple& t, const GradedRep& kernel_series) {
    const BggSpaceSpec s = t.spec();
    GradedModule a = free_module(ctx, {{s.t + kProjectiveDim + 1, IsotypicObject::single(s.phi)}});
    GradedModule b = free_module(ctx, {{s.u + kProjectiveDim + 1, IsotypicObject::single(s.psi)}});
    GradedRep diff;
    for (const auto& [d, x] : a.components) {
        const IsotypicObject y = b.component(d);
        IsotypicObject pos;
        for (int l = 0; l < kNumIrreps; ++l) pos[l] = x[l] > y[l] ? x[l] - y[l] : 0;
        diff[d] = pos;
    }
    return normalized(diff) == normalized(kernel_series);
}

PipelineRecord process_triple(const ExteriorContext& ctx, const CandidateTriple& t, const EscalationOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    ModulePtr kernel;
    PipelineRecord rec = step3_filter(ctx, t, &kernel);
    if (rec.status == Status::inconclusive) step4_verify(ctx, rec, kernel, opt, opt.budget());
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<PipelineRecord> Report::bundles() const {
    std::vector<PipelineRecord> out;
    for (const auto& r : records)
        if (r.status == Status::bundle) out.push_back(r);
    return out;
}

Report run_report(const ExteriorContext& ctx, const ReportOptions& opt) {
    std::vector<CandidateTriple> grid;
    for (const auto& t : candidate_grid())
        if (!opt.only_psi || t.psi == *opt.only_psi) grid.push_back(t);
    std::vector<PipelineRecord> out(grid.size());
    // expensive triples first so the pool drains evenly; order of results is by index
    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::atomic<std::size_t> next{0};
    unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&](unsigned w) {
        try {
            for (std::size_t k = next++; k < order.size(); k = next++) out[order[k]] = process_triple(ctx, grid[order[k]], opt.escalation);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (n == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    if (!opt.timing)
        for (auto& r : out) r.ms = 0;
    return {std::move(out)};
}

namespace {

std::string roots_string(const RootSequence& z) {
    std::string s = "[";
    for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + std::to_string(z[i]);
    return s + "]";
}

std::vector<long> chern_longs(const PipelineRecord& r) {
    if (!r.chern) return {};
    return r.chern->chern.to_longs();
}

}  // namespace

std::string record_text(const PipelineRecord& r) {
    std::ostringstream os;
    os << "psi=" << irrep_label(r.triple.psi) << " i=" << r.triple.i << " phi=" << irrep_label(r.triple.phi) << " status=" << status_name(r.status)
       << " hom_dim=" << r.hom_dim;
    if (r.chern) os << " r=" << r.chern->r << " chern=" << r.chern->chern.to_string() << " twist=" << r.chern->shift;
    if (r.roots) os << " z=" << roots_string(*r.roots) << " rank=" << r.rank;
    if (r.depth_left >= 0) os << " depths=(" << r.depth_left << "," << r.depth_right << ")";
    if (r.subtraction_agrees) os << " subtraction=" << (*r.subtraction_agrees ? "agree" : "disagree");
    return os.str();
}

std::string report_text(const Report& rep) {
    std::ostringstream os;
    os << "strongly determined equivariant vector bundles\n";
    os << "psi          i  phi         z                  rank\n";
    for (const auto& r : rep.bundles()) {
        std::string z = roots_string(*r.roots);
        os << std::left << std::setw(12) << irrep_label(r.triple.psi) << std::right << std::setw(2) << r.triple.i << "  " << std::left << std::setw(12)
           << irrep_label(r.triple.phi) << std::setw(19) << z << std::right << r.rank << '\n';
    }
    os << "\nother one-point BGG spaces\n";
    std::size_t skipped = 0;
    for (const auto& r : rep.records) {
        if (r.status == Status::bundle) continue;
        if (r.status == Status::not_singleton) {
            ++skipped;
            continue;
        }
        os << "  " << record_text(r) << '\n';
    }
    os << "\n" << skipped << " grid triples have hom dimension != 1\n";
    os << "i = -5 is not enumerated: the BGG space gives the first syzygy of the trivial module, O (x) psi(-1)\n";
    return os.str();
}

std::string report_json(const Report& rep, bool timing) {
    nlohmann::ordered_json doc;
    doc["triples"] = nlohmann::ordered_json::array();
    for (const auto& r : rep.records) {
        nlohmann::ordered_json t;
        t["psi"] = irrep_label(r.triple.psi);
        t["i"] = r.triple.i;
        t["phi"] = irrep_label(r.triple.phi);
        t["status"] = status_name(r.status);
        t["rank"] = r.chern ? nlohmann::ordered_json(r.rank) : nlohmann::ordered_json(nullptr);
        t["roots"] = r.roots ? nlohmann::ordered_json(*r.roots) : nlohmann::ordered_json(nullptr);
        t["chern"] = chern_longs(r);
        t["depths"] = r.depth_left >= 0 ? nlohmann::ordered_json({r.depth_left, r.depth_right}) : nlohmann::ordered_json(nullptr);
        t["ms"] = timing ? std::llround(r.ms) : 0;
        doc["triples"].push_back(std::move(t));
    }
    return doc.dump(2) + "\n";
}

std::string report_csv(const Report& rep, bool timing) {
    std::ostringstream os;
    os << "psi,i,phi,status,rank,roots,c0,c1,c2,c3,c4,depth_left,depth_right,ms\n";
    for (const auto& r : rep.records) {
        os << irrep_label(r.triple.psi) << ',' << r.triple.i << ',' << irrep_label(r.triple.phi) << ',' << status_name(r.status) << ',';
        if (r.chern) os << r.rank;
        os << ',';
        if (r.roots) {
            for (std::size_t i = 0; i < r.roots->size(); ++i) os << (i ? " " : "") << (*r.roots)[i];
        }
        auto c = chern_longs(r);
        for (int k = 0; k <= kProjectiveDim; ++k) {
            os << ',';
            if (!c.empty()) os << c[static_cast<std::size_t>(k)];
        }
        os << ',';
        if (r.depth_left >= 0) os << r.depth_left;
        os << ',';
        if (r.depth_right >= 0) os << r.depth_right;
        os << ',' << (timing ? std::llround(r.ms) : 0) << '\n';
    }
    return os.str();
}

std::vector<std::string> report_violations(const Report& rep) {
    std::vector<std::string> v;
    for (const auto& r : rep.records) {
        const std::string tag = record_text(r);
        if (r.status == Status::bundle) {
            if (!r.roots || r.roots->size() != static_cast<std::size_t>(kProjectiveDim) || r.roots->front() != 0) v.push_back("bad root sequence: " + tag);
            if (r.rank <= 0) v.push_back("bundle without rank: " + tag);
            if (!r.table || !r.sparse) v.push_back("bundle without certified table: " + tag);
            else if (!supernatural_match(*r.table, *r.sparse, r.rank)) v.push_back("bundle table does not verify: " + tag);
        }
        if (r.table) {
            // placement: dim T at (1 - t, t) and dim U at (2 - u, u)
            const BggSpaceSpec s = r.triple.spec();
            const auto dt = static_cast<std::size_t>(kIrrepDims[static_cast<std::size_t>(s.phi)]);
            const auto du = static_cast<std::size_t>(kIrrepDims[static_cast<std::size_t>(s.psi)]);
            if (r.table->at(1 - s.t, s.t) != dt || r.table->column(1).size() != 1) v.push_back("hull placement: " + tag);
            if (r.table->at(2 - s.u, s.u) != du || r.table->column(2).size() != 1) v.push_back("second placement: " + tag);
        }
    }
    return v;
}

}  // namespace bggforge
