#include "bggforge/pipeline.hpp"
#include "bggforge/selfcheck.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <regex>

using namespace bggforge;

namespace {

struct Context {
    Fixture fx;
    std::unique_ptr<ExteriorContext> ext;
};

std::unique_ptr<Context> load(const std::string& fixture_path, const std::string& cache_dir) {
    auto c = std::make_unique<Context>();
    c->fx = load_fixture(fixture_path);
    TensorStructure ts = load_or_build_tensor_structure(c->fx, cache_dir);
    c->ext = std::make_unique<ExteriorContext>(ExteriorContext::build(c->fx, std::move(ts)));
    return c;
}

int label(const std::string& s) {
    auto l = parse_irrep_label(s);
    if (!l) throw CLI::ValidationError("unknown irreducible '" + s + "' (chi1, chi3, sigma_chi3, chi4, chi5)");
    return *l;
}

std::pair<int, int> parse_window(const std::string& s) {
    static const std::regex re(R"(^\s*(-?\d+)\.\.(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw CLI::ValidationError("--window expects A..B");
    const int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (a > b) throw CLI::ValidationError("--window: empty range");
    return {a, b};
}

void print_chern(const ChernData& c) {
    std::cout << "r = " << c.r << ", |r| = " << c.abs_rank() << ", e = " << c.e << "\n";
    std::cout << "chern = " << c.chern.to_string() << "  (twist " << c.shift << ", raw " << c.raw_chern.to_string() << ")\n";
    std::cout << "necessary condition: " << (necessary_condition(c) ? "holds" : "fails") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equivariant BGG correspondence over A5: Tate resolutions, cohomology tables, vector bundle search"};
    app.require_subcommand(1);
    std::string fixture_path = default_fixture_path();
    std::string cache_dir;
    app.add_option("--fixture", fixture_path, "fixture file")->check(CLI::ExistingFile);

    // enumerate
    auto* en = app.add_subcommand("enumerate", "steps 2-4 over the whole grid; prints the bundle table");
    EscalationOptions esc;
    std::string format = "text", only;
    bool no_timing = false;
    unsigned threads = 0;
    en->add_option("--depth-left", esc.depth_left, "initial projective depth")->check(CLI::NonNegativeNumber);
    en->add_option("--depth-right", esc.depth_right, "initial injective depth")->check(CLI::NonNegativeNumber);
    en->add_option("--retries", esc.retries, "extra resolution terms per triple (-1: skip step 4)")->check(CLI::Range(-1, 1000));
    en->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    en->add_option("--cache-dir", cache_dir, "tensor-structure cache directory");
    en->add_option("--only", only, "restrict to psi=LABEL");
    en->add_flag("--no-timing", no_timing, "write ms as 0 for byte-stable output");
    en->add_option("--threads", threads, "worker threads (0: all cores)");

    // single-triple commands
    int i = 0;
    std::string phi, psi, window;
    int dl = 2, dr = 3;
    auto triple_opts = [&](CLI::App* s) {
        s->add_option("--i", i, "degree of T")->required();
        s->add_option("--phi", phi, "irreducible T")->required();
        s->add_option("--psi", psi, "irreducible U")->required();
        s->add_option("--cache-dir", cache_dir, "tensor-structure cache directory");
    };
    auto* hd = app.add_subcommand("hom-dim", "dimension of the equivariant Hom space");
    triple_opts(hd);
    auto* ct = app.add_subcommand("cohomology-table", "cohomology excerpt of ker(phi-hat)");
    triple_opts(ct);
    ct->add_option("--window", window, "display columns A..B");
    ct->add_option("--depth-left", dl, "projective depth")->check(CLI::NonNegativeNumber);
    ct->add_option("--depth-right", dr, "injective depth")->check(CLI::NonNegativeNumber);
    auto* cb = app.add_subcommand("check-bundle", "steps 3-4 for one triple");
    triple_opts(cb);
    auto* sc = app.add_subcommand("selfcheck", "fixture, tensor structure and oracle checks");
    int trials = 50;
    sc->add_option("--trials", trials, "random morphisms in the oracle suite");
    sc->add_option("--cache-dir", cache_dir, "tensor-structure cache directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc) {
            Fixture fx = load_fixture(fixture_path);
            bool rebuilt = false;
            TensorStructure ts = load_or_build_tensor_structure(fx, cache_dir, &rebuilt);
            bool ok = true;
            for (const auto& c : selfcheck(fx, ts, trials)) {
                std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
                ok = ok && c.ok;
            }
            if (!cache_dir.empty()) std::cout << "cache: " << (rebuilt ? "rebuilt" : "loaded") << "\n";
            return ok ? 0 : 1;
        }
        if (*hd) {
            Fixture fx = load_fixture(fixture_path);
            std::cout << hom_space_dimension(fx, {label(phi), i, label(psi), 0}) << "\n";
            return 0;
        }
        auto ctx = load(fixture_path, cache_dir);
        const ExteriorContext& ext = *ctx->ext;
        if (*en) {
            ReportOptions opt;
            opt.escalation = esc;
            opt.timing = !no_timing;
            opt.threads = threads;
            if (!only.empty()) {
                const auto eq = only.find('=');
                if (eq == std::string::npos || only.substr(0, eq) != "psi") throw CLI::ValidationError("--only expects psi=LABEL");
                opt.only_psi = label(only.substr(eq + 1));
            }
            Report rep = run_report(ext, opt);
            if (format == "json") std::cout << report_json(rep, opt.timing);
            else if (format == "csv") std::cout << report_csv(rep, opt.timing);
            else std::cout << report_text(rep);
            auto v = report_violations(rep);
            for (const auto& s : v) std::cerr << "invariant violation: " << s << "\n";
            return v.empty() ? 0 : 1;
        }
        const CandidateTriple t{i, label(phi), label(psi)};
        if (*ct) {
            ModulePtr k;
            PipelineRecord rec = step3_filter(ext, t, &k);
            if (!k) {
                std::cerr << "no morphism: " << status_name(rec.status) << " (hom dimension " << rec.hom_dim << ")\n";
                return 2;
            }
            print_chern(*rec.chern);
            CohomologyTable tab = cohomology_excerpt(ext, k, dl, dr);
            auto [a, b] = window.empty() ? std::pair{tab.position_min, tab.position_max} : parse_window(window);
            std::cout << render_table(tab, a, b);
            return 0;
        }
        if (*cb) {
            PipelineRecord rec = process_triple(ext, t, esc);
            std::cout << record_text(rec) << "\n";
            if (rec.chern) print_chern(*rec.chern);
            if (rec.table) std::cout << render_table(*rec.table, rec.table->position_min, rec.table->position_max);
            auto v = report_violations(Report{{rec}});
            for (const auto& s : v) std::cerr << "invariant violation: " << s << "\n";
            return v.empty() ? 0 : 1;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
