// loopforge: command-line front end for the cocycle, module, correlator,
// witness and suite commands.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "loopforge/cocycle.hpp"
#include "loopforge/correlator.hpp"
#include "loopforge/io.hpp"
#include "loopforge/suite.hpp"
#include "loopforge/vacuum_module.hpp"
#include "loopforge/witness.hpp"

using namespace loopforge;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

struct Outcome {
    json config = json::object();
    json results = json::object();
    std::string verdict;
    int code = kOk;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::vector<std::string> text;
};

struct Globals {
    std::uint64_t seed = 0;
    std::vector<std::string> tolerances;
    std::string format = "json";
    bool no_meta = false;
    std::size_t basis_cap = 20000;
    std::size_t trace_cap = 200000;
    std::map<std::string, double> tol;

    double tolerance(const std::string& name, double fallback) const {
        auto it = tol.find(name);
        return it == tol.end() ? fallback : it->second;
    }
};

const std::vector<std::string> kToleranceNames{"verify", "classify", "induction", "agreement", "translation"};

void parse_tolerances(Globals& g) {
    for (const auto& t : g.tolerances) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ValidationError("--tolerance expects name=value, got '" + t + "'");
        const std::string name = t.substr(0, eq);
        if (std::find(kToleranceNames.begin(), kToleranceNames.end(), name) == kToleranceNames.end())
            throw ValidationError("unknown tolerance '" + name + "'");
        double v = 0.0;
        try {
            v = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
            throw ValidationError("tolerance '" + name + "' is not a number");
        }
        if (!(v > 0.0)) throw ValidationError("tolerance '" + name + "' must be positive");
        g.tol[name] = v;
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void emit(const std::string& command, const Globals& g, const Outcome& o, double elapsed_ms) {
    if (g.format == "csv") {
        for (std::size_t i = 0; i < o.csv_header.size(); ++i) std::cout << (i ? "," : "") << csv_escape(o.csv_header[i]);
        std::cout << "\n";
        for (const auto& row : o.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << csv_escape(row[i]);
            std::cout << "\n";
        }
        return;
    }
    if (g.format == "text") {
        std::cout << command << " (seed " << g.seed << ")\n";
        for (const auto& line : o.text) std::cout << "  " << line << "\n";
        std::cout << "verdict: " << o.verdict << "\n";
        return;
    }
    json env{{"command", command}, {"seed", g.seed}, {"config", o.config}, {"results", o.results}, {"verdict", o.verdict}};
    if (!g.no_meta) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        env["meta"] = {{"timestamp", buf}, {"elapsed_ms", elapsed_ms}, {"tool", "loopforge"}};
    }
    std::cout << env.dump(2) << "\n";
}

SamplingConfig sampling(const Globals& g, int samples, const std::string& dp) {
    SamplingConfig cfg;
    cfg.seed = g.seed;
    cfg.samples = samples;
    cfg.dp = parse_rational(dp);
    if (sgn(cfg.dp) <= 0) throw ValidationError("--dp must be positive");
    cfg.tolerance = g.tolerance("verify", cfg.tolerance);
    cfg.classify_tolerance = g.tolerance("classify", cfg.classify_tolerance);
    return cfg;
}

TestFunction parse_function(const std::string& arg) {
    const auto colon = arg.find(':');
    if (colon == std::string::npos) throw ValidationError("function must be kind:center,width");
    const std::string kind = arg.substr(0, colon);
    std::stringstream ss(arg.substr(colon + 1));
    std::string a, b;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    double center = 0.0, width = 0.0;
    try {
        center = std::stod(a);
        width = std::stod(b);
    } catch (const std::exception&) {
        throw ValidationError("function '" + arg + "' needs numeric center and width");
    }
    TestFunction f = kind == "gaussian"  ? TestFunction::gaussian(center, width)
                     : kind == "compact" ? TestFunction::compact(center, width)
                                         : throw ValidationError("function kind must be gaussian or compact");
    f.validate();
    return f;
}

json parse_json_arg(const std::string& arg, const std::string& what) {
    try {
        return json::parse(read_text_or_inline(arg));
    } catch (const json::parse_error& e) {
        throw ValidationError(what + " is not valid JSON: " + e.what());
    }
}

// --- commands ------------------------------------------------------------------

struct CocycleArgs {
    std::string candidate = "canonical";
    std::string realization = "frequency";
    std::string algebra = "sl2";
    int samples = 200;
    std::string dp = "1/4";
    std::string function = "compact:0,1";
    int kmax = 8;
    double period = 4.0;
};

Outcome cocycle_verify(const Globals& g, const CocycleArgs& a) {
    Outcome o;
    const auto cand = parse_candidate(a.candidate);
    const auto alg = load_algebra(a.algebra);
    const auto cfg = sampling(g, a.samples, a.dp);
    const auto rep = verify(cand, parse_realization(a.realization), alg, cfg);
    o.config = {{"candidate", to_json(cand)}, {"realization", a.realization}, {"algebra", alg->name()},
                {"samples", a.samples}, {"dp", a.dp}, {"tolerance", cfg.tolerance}};
    o.results = to_json(rep);
    o.verdict = rep.all_ok() ? "cocycle axioms hold on all probes" : "cocycle axiom violated";
    o.code = rep.all_ok() ? kOk : kNegative;
    o.csv_header = {"check", "ok", "max_residual", "probes"};
    for (const CheckResult* c : rep.checks()) {
        o.csv_rows.push_back({c->name, c->ok ? "true" : "false", num(c->max_residual), std::to_string(c->probes)});
        o.text.push_back(c->name + ": " + (c->ok ? "ok" : "FAILED") + " (max residual " + num(c->max_residual) + ")");
    }
    return o;
}

Outcome cocycle_classify(const Globals& g, const CocycleArgs& a) {
    Outcome o;
    const auto cand = parse_candidate(a.candidate);
    const auto alg = load_algebra(a.algebra);
    const auto cfg = sampling(g, a.samples, a.dp);
    const auto res = classify(cand, alg, cfg);
    o.config = {{"candidate", to_json(cand)}, {"algebra", alg->name()}, {"samples", a.samples}, {"dp", a.dp},
                {"classify_tolerance", cfg.classify_tolerance}};
    o.results = to_json(res);
    o.verdict = res.proportional ? "proportional to the canonical cocycle, level " + complex_str(res.level)
                                 : "not proportional to the canonical cocycle";
    o.code = res.proportional ? kOk : kNegative;
    o.csv_header = {"proportional", "level_re", "level_im", "residual", "scale"};
    o.csv_rows.push_back({res.proportional ? "true" : "false", num(res.level.real()), num(res.level.imag()),
                          num(res.residual), num(res.scale)});
    o.text.push_back("level " + complex_str(res.level) + ", residual " + num(res.residual));
    return o;
}

Outcome cocycle_induction(const Globals& g, const CocycleArgs& a) {
    Outcome o;
    const TestFunction f = parse_function(a.function);
    const auto res = induction_check(f, a.kmax, a.period);
    const double tol = g.tolerance("induction", 1e-8);
    o.config = {{"function", f.describe()}, {"k_max", a.kmax}, {"period", a.period}, {"tolerance", tol}};
    o.results = to_json(res);
    const bool ok = res.max_residual < tol;
    o.verdict = ok ? "recursion holds" : "recursion residual above tolerance";
    o.code = ok ? kOk : kNegative;
    o.csv_header = {"k", "residual"};
    for (std::size_t k = 0; k < res.residuals.size(); ++k) {
        o.csv_rows.push_back({std::to_string(k + 1), num(res.residuals[k])});
        o.text.push_back("k=" + std::to_string(k + 1) + ": " + num(res.residuals[k]));
    }
    return o;
}

struct ModuleArgs {
    std::string algebra = "sl2";
    std::string level = "1";
    int cutoff = 2;
    std::string out;
    std::string gram_csv;
    std::string input;
};

void fill_verdict(Outcome& o, const UnitarityVerdict& v) {
    o.results["verdict"] = to_json(v);
    o.code = v.psd ? kOk : kNegative;
    o.verdict = v.psd ? "positive semidefinite up to grade " + std::to_string(v.checked_up_to)
                      : "negative vector found at grade " + std::to_string(*v.negative_grade);
    if (!v.consistent) o.verdict += " (contradicts admissibility: build bug)";
    o.csv_header = {"grade", "status", "detail"};
    for (std::size_t d = 0; d < v.grade_ranks.size(); ++d)
        o.csv_rows.push_back({std::to_string(d), "psd", "rank " + std::to_string(v.grade_ranks[d])});
    if (v.negative_grade) {
        std::string vec;
        for (std::size_t i = 0; i < v.negative_vector.size(); ++i)
            if (!v.negative_vector[i].is_zero())
                vec += (vec.empty() ? "" : " + ") + ("(" + v.negative_vector[i].str() + ")") + v.vector_labels[i];
        o.csv_rows.push_back({std::to_string(*v.negative_grade), "negative", vec + " ; norm " + rational_str(v.negative_value)});
        o.text.push_back("negative vector: " + vec + ", <v,v> = " + rational_str(v.negative_value));
    }
    o.text.push_back(std::string("admissible: ") + (v.admissibility.admissible ? "yes" : "no, " + v.admissibility.witness));
}

Outcome module_build(const Globals& g, const ModuleArgs& a) {
    Outcome o;
    ModuleOptions opts;
    opts.basis_cap = g.basis_cap;
    const auto alg = load_algebra(a.algebra);
    const auto m = VacuumModule::build(AffineWeight::vacuum(alg, parse_gaussian(a.level)), a.cutoff, opts);
    o.config = {{"algebra", alg->name()}, {"level", m.level().str()}, {"cutoff", a.cutoff}, {"basis_cap", g.basis_cap}};
    json sizes = json::array();
    for (int d = 0; d <= a.cutoff; ++d) sizes.push_back(m.grade_range(d).second);
    o.results = {{"basis_size", m.size()}, {"grade_sizes", sizes}, {"admissibility", to_json(admissible(m.weight()))}};
    if (!a.out.empty()) {
        std::ofstream(a.out) << module_to_json(m).dump(1) << "\n";
        o.results["module_file"] = a.out;
    }
    if (!a.gram_csv.empty()) {
        std::ofstream(a.gram_csv) << gram_csv(m);
        o.results["gram_csv"] = a.gram_csv;
    }
    o.verdict = "built " + std::to_string(m.size()) + " basis vectors";
    o.csv_header = {"grade", "size"};
    for (int d = 0; d <= a.cutoff; ++d)
        o.csv_rows.push_back({std::to_string(d), std::to_string(m.grade_range(d).second)});
    o.text.push_back("basis size " + std::to_string(m.size()));
    return o;
}

Outcome module_verdict(const Globals&, const ModuleArgs& a) {
    Outcome o;
    const auto m = module_from_json(parse_json_arg(a.input, "module file"));
    o.config = {{"module", a.input}, {"algebra", m.algebra()->name()}, {"level", m.level().str()}, {"cutoff", m.cutoff()}};
    fill_verdict(o, unitarity_verdict(m));
    return o;
}

struct CorrelatorArgs {
    std::string level = "1";
    std::string factors;
    std::string trace;
    bool oracle = false;
};

Outcome correlator_eval(const Globals& g, const CorrelatorArgs& a) {
    Outcome o;
    const json fj = parse_json_arg(a.factors, "factors");
    if (!fj.is_array()) throw ValidationError("factors must be a JSON list of elements");
    std::vector<ParsedElement> parsed;
    AlgebraPtr hint;
    for (const auto& e : fj) {
        parsed.push_back(element_from_json(e, hint));
        hint = parsed.back().laurent ? parsed.back().laurent->algebra() : parsed.back().band->algebra();
    }
    const bool modes = parsed.empty() || parsed.front().realization == Realization::Modes;
    for (const auto& p : parsed)
        if ((p.realization == Realization::Modes) != modes) throw ValidationError("factors mix realizations");
    const Gaussian level = parse_gaussian(a.level);
    o.config = {{"level", level.str()}, {"factors", fj.size()}, {"realization", modes ? "modes" : "frequency"}};
    if (modes) {
        std::vector<LaurentElement> q;
        for (auto& p : parsed) q.push_back(*p.laurent);
        ReductionTrace trace;
        trace.cap = g.trace_cap;
        const Gaussian v = npoint(level, q, a.trace.empty() ? nullptr : &trace);
        o.results["value"] = v.str();
        o.text.push_back("value " + v.str());
        o.csv_header = {"value", "oracle", "match"};
        std::vector<std::string> row{v.str(), "", ""};
        o.verdict = "evaluated";
        if (!a.trace.empty()) {
            std::ofstream(a.trace) << trace.to_json().dump(1) << "\n";
            o.results["trace_file"] = a.trace;
            o.results["trace_nodes"] = trace.nodes.size();
        }
        if (a.oracle) {
            if (q.empty() || !q.front().algebra()) throw ValidationError("oracle needs at least one factor");
            ModuleOptions opts;
            opts.basis_cap = g.basis_cap;
            OracleCache cache(q.front().algebra(), opts);
            const Gaussian ov = cache.eval(level, q);
            o.results["oracle"] = {{"value", ov.str()}, {"cutoff", required_cutoff(q)}, {"match", ov == v}};
            row[1] = ov.str();
            row[2] = ov == v ? "true" : "false";
            o.text.push_back("oracle " + ov.str() + (ov == v ? " (match)" : " (MISMATCH)"));
            o.verdict = ov == v ? "oracle agrees" : "oracle disagrees";
            o.code = ov == v ? kOk : kNegative;
        }
        o.csv_rows.push_back(row);
    } else {
        if (a.oracle) throw ValidationError("--oracle needs mode-realization factors");
        std::vector<BandLimitedElement> q;
        for (auto& p : parsed) q.push_back(*p.band);
        const Complex v = npoint(level.to_complex(), q);
        o.results["value"] = {v.real(), v.imag()};
        o.verdict = "evaluated";
        o.csv_header = {"value_re", "value_im"};
        o.csv_rows.push_back({num(v.real()), num(v.imag())});
        o.text.push_back("value " + complex_str(v));
    }
    return o;
}

struct WitnessArgs {
    std::string algebra = "sl2";
    std::string psi0 = "{}";
    double level = 1.0;
};

Outcome groundstate_witness(const Globals& g, const WitnessArgs& a) {
    Outcome o;
    const auto alg = load_algebra(a.algebra);
    const auto psi = OnePointFunctional::from_json(alg, parse_json_arg(a.psi0, "psi0"));
    if (!(a.level > 0.0)) throw ValidationError("--level must be positive");
    WitnessOptions opts;
    opts.agreement = g.tolerance("agreement", opts.agreement);
    const auto rep = consistency_report(psi, a.level, opts);
    json vals = json::object();
    for (int i = 0; i < alg->dim(); ++i)
        if (!psi.values[i].is_zero()) vals[alg->basis_labels()[i]] = psi.values[i].str();
    o.config = {{"algebra", alg->name()}, {"psi0", vals}, {"level", a.level}, {"agreement", opts.agreement}};
    o.results = to_json(rep);
    o.verdict = rep.conclusion;
    o.code = rep.status == "excluded" || rep.status == "not_self_adjoint" ? kNegative : kOk;
    o.csv_header = {"status", "root", "branch", "epsilon", "norm_squared", "i0", "i1", "resolution_gap"};
    if (rep.witness) {
        const auto& w = *rep.witness;
        o.csv_rows.push_back({rep.status, w.root, w.branch, num(w.epsilon), num(w.norm_squared()), num(w.fine.i0),
                              num(w.fine.i1), num(w.resolution_gap)});
        o.text.push_back("root " + w.root + ", branch " + w.branch + ", eps " + num(w.epsilon) + ", norm^2 " +
                         num(w.norm_squared()));
    } else {
        o.csv_rows.push_back({rep.status, "", "", "", "", "", "", ""});
    }
    o.text.push_back(std::string("self-adjoint: ") + (rep.self_adjoint ? "yes" : "no"));
    return o;
}

struct SuiteArgs {
    bool all = false;
    std::vector<std::string> suites;
    std::string out;
};

Outcome suite_run(const Globals& g, const SuiteArgs& a) {
    Outcome o;
    if (!a.all && a.suites.empty()) throw ValidationError("suite run needs --all or --suite NAME");
    const auto names = a.all ? suite_names() : a.suites;
    const auto cases = run_suites(names, g.seed);
    o.config = {{"suites", names}};
    o.results = suite_report(cases);
    int failed = 0;
    o.csv_header = {"id", "criterion", "passed"};
    for (const auto& c : cases) {
        failed += !c.passed;
        o.csv_rows.push_back({c.id, std::to_string(c.criterion), c.passed ? "true" : "false"});
        o.text.push_back((c.passed ? "PASS " : "FAIL ") + c.id);
    }
    o.verdict = failed == 0 ? "all " + std::to_string(cases.size()) + " cases passed"
                            : std::to_string(failed) + " of " + std::to_string(cases.size()) + " cases failed";
    o.code = failed == 0 ? kOk : kNegative;
    if (!a.out.empty()) std::ofstream(a.out) << o.results.dump(2) << "\n";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loopforge: loop-algebra cocycles, vacuum modules, correlators and ground-state witnesses"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for all random probes")->capture_default_str();
    app.add_option("--tolerance", g.tolerances, "name=value (verify, classify, induction, agreement, translation)");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    app.add_flag("--no-meta", g.no_meta, "Omit timestamps and timing from JSON reports");
    app.add_option("--basis-cap", g.basis_cap, "Largest module basis allowed")->capture_default_str();
    app.add_option("--trace-cap", g.trace_cap, "Largest reduction trace allowed")->capture_default_str();

    std::string command;
    std::function<Outcome()> action;

    CocycleArgs ca;
    auto* cocycle = app.add_subcommand("cocycle", "Cocycle verification and classification");
    cocycle->require_subcommand(1);
    auto* cv = cocycle->add_subcommand("verify", "Check the cocycle axioms on random probes");
    auto* cc = cocycle->add_subcommand("classify", "Compare a candidate with the canonical cocycle");
    auto* ci = cocycle->add_subcommand("induction", "Check the Fourier-mode recursion");
    for (auto* s : {cv, cc}) {
        s->add_option("--candidate", ca.candidate, "canonical | scaled:<c> | kernel:<a0>,<a1>,... | JSON")->capture_default_str();
        s->add_option("--algebra", ca.algebra, "sl2, sl3, slN or a descriptor")->capture_default_str();
        s->add_option("--samples", ca.samples)->check(CLI::PositiveNumber)->capture_default_str();
        s->add_option("--dp", ca.dp, "Grid spacing")->capture_default_str();
    }
    cv->add_option("--realization", ca.realization, "frequency | modes | time")->capture_default_str();
    ci->add_option("--function", ca.function, "gaussian:c,w or compact:c,w")->capture_default_str();
    ci->add_option("--kmax", ca.kmax)->check(CLI::PositiveNumber)->capture_default_str();
    ci->add_option("--period", ca.period)->check(CLI::PositiveNumber)->capture_default_str();
    cv->callback([&] { command = "cocycle verify"; action = [&] { return cocycle_verify(g, ca); }; });
    cc->callback([&] { command = "cocycle classify"; action = [&] { return cocycle_classify(g, ca); }; });
    ci->callback([&] { command = "cocycle induction"; action = [&] { return cocycle_induction(g, ca); }; });

    ModuleArgs ma;
    auto* module = app.add_subcommand("module", "Truncated vacuum modules");
    module->require_subcommand(1);
    auto* mb = module->add_subcommand("build", "Build a module and its Gram matrices");
    mb->add_option("--algebra", ma.algebra)->capture_default_str();
    mb->add_option("--level", ma.level, "Exact level c")->capture_default_str();
    mb->add_option("--cutoff", ma.cutoff, "Largest grade N")->check(CLI::NonNegativeNumber)->capture_default_str();
    mb->add_option("--out", ma.out, "Write the module JSON here");
    mb->add_option("--gram-csv", ma.gram_csv, "Write the exact Gram entries as CSV here");
    auto* mv = module->add_subcommand("verdict", "Exact unitarity verdict for a stored module");
    mv->add_option("module", ma.input, "Module JSON file")->required();
    mb->callback([&] { command = "module build"; action = [&] { return module_build(g, ma); }; });
    mv->callback([&] { command = "module verdict"; action = [&] { return module_verdict(g, ma); }; });

    CorrelatorArgs cra;
    auto* corr = app.add_subcommand("correlator", "Vacuum n-point functions");
    corr->require_subcommand(1);
    auto* ce = corr->add_subcommand("eval", "Evaluate a correlator");
    ce->add_option("--level", cra.level)->capture_default_str();
    ce->add_option("--factors", cra.factors, "JSON list of elements (file or inline)")->required();
    ce->add_option("--trace", cra.trace, "Write the reduction trace here");
    ce->add_flag("--oracle", cra.oracle, "Cross-check with the module matrix oracle");
    ce->callback([&] { command = "correlator eval"; action = [&] { return correlator_eval(g, cra); }; });

    WitnessArgs wa;
    auto* gs = app.add_subcommand("groundstate", "Ground-state one-point functionals");
    gs->require_subcommand(1);
    auto* gw = gs->add_subcommand("witness", "Search for a negative-norm witness");
    gw->add_option("--algebra", wa.algebra)->capture_default_str();
    gw->add_option("--psi0", wa.psi0, "JSON object of basis label -> value")->capture_default_str();
    gw->add_option("--level", wa.level)->capture_default_str();
    gw->callback([&] { command = "groundstate witness"; action = [&] { return groundstate_witness(g, wa); }; });

    SuiteArgs sa;
    auto* suite = app.add_subcommand("suite", "Property suites");
    suite->require_subcommand(1);
    auto* sr = suite->add_subcommand("run", "Run property suites");
    sr->add_flag("--all", sa.all, "Run every suite");
    sr->add_option("--suite", sa.suites, "Suite name (repeatable)");
    sr->add_option("--out", sa.out, "Also write the report here");
    sr->callback([&] { command = "suite run"; action = [&] { return suite_run(g, sa); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        parse_tolerances(g);
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = action();
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        o.config["tolerances"] = g.tol;
        emit(command, g, o, ms);
        return o.code;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed input: " << e.what() << "\n";
        return kUsage;
    }
}
