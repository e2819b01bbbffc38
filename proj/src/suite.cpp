#include "loopforge/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "loopforge/cocycle.hpp"
#include "loopforge/correlator.hpp"
#include "loopforge/io.hpp"
#include "loopforge/random.hpp"
#include "loopforge/vacuum_module.hpp"
#include "loopforge/witness.hpp"

namespace loopforge {

std::uint64_t stable_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

using Cases = std::vector<CaseResult>;

std::uint64_t case_seed(std::uint64_t seed, const std::string& id) { return stable_hash(id) ^ (seed * 0x9E3779B97F4A7C15ULL); }

CaseResult make_case(std::string id, int criterion, bool passed, json details) {
    return {std::move(id), criterion, passed, std::move(details)};
}

// --- cocycle -----------------------------------------------------------------

void suite_cocycle(std::uint64_t seed, Cases& out) {
    for (const char* alg : {"sl2", "sl3"}) {
        const AlgebraPtr g = load_algebra(alg);
        for (Realization r : {Realization::Frequency, Realization::Modes, Realization::Time}) {
            const std::string id = std::string("cocycle.axioms.") + to_string(r) + "." + alg;
            SamplingConfig cfg;
            cfg.seed = case_seed(seed, id);
            cfg.samples = 200;
            const CocycleReport rep = verify(CocycleCandidate::canonical(), r, g, cfg);
            double worst = 0.0;
            for (const CheckResult* c : rep.checks()) worst = std::max(worst, c->max_residual);
            const bool ok = rep.all_ok() && worst < 1e-9 && (r != Realization::Modes || worst == 0.0);
            out.push_back(make_case(id, 1, ok, to_json(rep)));
        }
    }
    {
        const std::string id = "cocycle.functions.jacobi";
        Rng rng(case_seed(seed, id));
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const auto f = TestFunction::gaussian(rng.uniform(-1, 1), rng.uniform(0.5, 1.5));
            const auto g = TestFunction::compact(rng.uniform(-1, 1), rng.uniform(0.8, 2.0));
            const auto h = TestFunction::gaussian(rng.uniform(-1, 1), rng.uniform(0.5, 1.5));
            worst = std::max(worst, std::abs(jacobi_functions_residual(f, g, h)));
        }
        out.push_back(make_case(id, 0, worst < 1e-9, {{"max_residual", worst}, {"probes", 20}}));
    }
}

void suite_classify(std::uint64_t seed, Cases& out) {
    const AlgebraPtr g = make_sln(2);
    for (const char* c : {"1", "2", "5", "-3", "i"}) {
        const std::string id = std::string("classify.scaled.") + c;
        SamplingConfig cfg;
        cfg.seed = case_seed(seed, id);
        const Gaussian level = parse_gaussian(c);
        const ClassifyResult res = classify(CocycleCandidate::scaled(level), g, cfg);
        const bool ok = res.proportional && res.residual < 1e-9 && std::abs(res.level - level.to_complex()) < 1e-9;
        json d = to_json(res);
        d["expected"] = level.str();
        out.push_back(make_case(id, 2, ok, d));
    }
    // K(p) = 1 breaks antisymmetry; K(p) = p + p^3/10 breaks proportionality.
    const std::vector<std::pair<std::string, CocycleCandidate>> rejects{
        {"classify.reject.constant", CocycleCandidate::polynomial({Gaussian(1)}, "K=1")},
        {"classify.reject.cubic",
         CocycleCandidate::polynomial({Gaussian(0), Gaussian(1), Gaussian(0), Gaussian(Rational(1, 10))}, "K=p+p^3/10")}};
    for (const auto& [id, cand] : rejects) {
        SamplingConfig cfg;
        cfg.seed = case_seed(seed, id);
        const CocycleReport rep = verify(cand, Realization::Frequency, g, cfg);
        const ClassifyResult cls = classify(cand, g, cfg);
        const bool ok = id == "classify.reject.constant" ? !rep.antisymmetry.ok && !cls.proportional
                                                         : !rep.jacobi.ok || !cls.proportional;
        out.push_back(make_case(id, 2, ok, {{"verify", to_json(rep)}, {"classify", to_json(cls)}}));
    }
}

void suite_induction(std::uint64_t, Cases& out) {
    const std::vector<std::pair<std::string, TestFunction>> bumps{
        {"centered", TestFunction::compact(0.0, 1.0)}, {"offset", TestFunction::compact(0.3, 0.8)}};
    for (const auto& [name, f] : bumps)
        for (double period : {2.5, 6.0}) {
            const std::string id = "induction." + name + ".a" + (period == 2.5 ? std::string("2.5") : std::string("6"));
            const InductionResult res = induction_check(f, 8, period);
            json d = to_json(res);
            d["function"] = f.describe();
            d["period"] = period;
            out.push_back(make_case(id, 3, res.max_residual < 1e-8, d));
        }
}

// --- vacuum module -----------------------------------------------------------

void suite_module(std::uint64_t seed, Cases& out) {
    const AlgebraPtr g = make_sln(2);
    for (int c = 0; c <= 3; ++c) {
        const std::string id = "module.psd.c" + std::to_string(c);
        const auto m = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(c)), 4);
        const auto v = unitarity_verdict(m);
        out.push_back(make_case(id, 4, v.psd && v.checked_up_to == 4 && v.consistent, to_json(v)));
    }
    {
        const std::string id = "module.negative.c-1/2";
        const auto m = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(Rational(-1, 2))), 1);
        const auto v = unitarity_verdict(m);
        // The certificate must verify directly against the Gram block.
        bool cert = false;
        if (v.negative_grade) {
            const auto& gram = m.gram(*v.negative_grade);
            Gaussian q(0);
            for (std::size_t i = 0; i < gram.size(); ++i)
                for (std::size_t j = 0; j < gram.size(); ++j)
                    q += v.negative_vector[i] * v.negative_vector[j].conj() * gram[i][j];
            cert = q.is_real() && sgn(q.re()) < 0;
        }
        out.push_back(make_case(id, 4, !v.psd && v.negative_grade == 1 && cert, to_json(v)));
    }
    {
        const std::string id = "module.first-negative.c1/2";
        const auto m = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(Rational(1, 2))), 4);
        const auto v = unitarity_verdict(m);
        json d = to_json(v);
        d["frozen_grade"] = kHalfLevelFirstNegativeGrade;
        out.push_back(make_case(id, 4, !v.psd && v.negative_grade == kHalfLevelFirstNegativeGrade, d));
    }
    {
        const std::string id = "module.null.c0";
        const auto m = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(0)), 1);
        bool zero = true;
        for (const auto& row : m.gram(1))
            for (const auto& x : row) zero = zero && x.is_zero();
        out.push_back(make_case(id, 0, zero, {{"grade1_zero", zero}}));
    }
    // Contravariance and commutation on the truncation-safe block.
    for (int c : {1, 2}) {
        const std::string id = "module.contravariance.c" + std::to_string(c);
        Rng rng(case_seed(seed, id));
        const int N = 3;
        const auto m = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(c)), N);
        int checked = 0, bad = 0;
        for (int t = 0; t < 30; ++t) {
            const ExactVec x = random_exact_vec(rng, g->dim());
            const int k = rng.integer(-2, 2);
            const auto op = m.mode_matrix(x, k);
            const auto adj = m.mode_matrix(g->star(x), -k);
            for (int i = 0; i < m.size(); ++i)
                for (int j = 0; j < m.size(); ++j) {
                    const int gi = grade_of(m.basis()[i]), gj = grade_of(m.basis()[j]);
                    if (gi > N - std::abs(k) || gj > N - std::abs(k)) continue;
                    ExactVec ei(m.size(), Gaussian(0)), ej(m.size(), Gaussian(0));
                    ei[i] = 1;
                    ej[j] = 1;
                    ++checked;
                    if (m.inner(op.apply(ei), ej) != m.inner(ei, adj.apply(ej))) ++bad;
                }
        }
        out.push_back(make_case(id, 0, bad == 0 && checked > 0, {{"pairs", checked}, {"mismatches", bad}}));
    }
    for (int c : {1, 2}) {
        const std::string id = "module.commutation.c" + std::to_string(c);
        Rng rng(case_seed(seed, id));
        const int N = 4;
        const auto m = VacuumModule::build(AffineWeight::vacuum(g, Gaussian(c)), N);
        int checked = 0, bad = 0;
        for (int t = 0; t < 30; ++t) {
            const ExactVec x = random_exact_vec(rng, g->dim()), y = random_exact_vec(rng, g->dim());
            const int k = rng.integer(-2, 2), l = rng.integer(-2, 2);
            const auto xk = m.mode_matrix(x, k), yl = m.mode_matrix(y, l);
            const auto br = m.mode_matrix(g->bracket(x, y), k + l);
            const Gaussian central = k + l == 0 ? Gaussian(c) * Gaussian(k) * g->form(x, y) : Gaussian(0);
            const int safe = N - std::abs(k) - std::abs(l);
            for (int j = 0; j < m.size(); ++j) {
                if (grade_of(m.basis()[j]) > safe) continue;
                ExactVec ej(m.size(), Gaussian(0));
                ej[j] = 1;
                const ExactVec lhs1 = xk.apply(yl.apply(ej)), lhs2 = yl.apply(xk.apply(ej));
                ExactVec rhs = br.apply(ej);
                rhs[j] += central;
                ++checked;
                for (int i = 0; i < m.size(); ++i)
                    if (lhs1[i] - lhs2[i] != rhs[i]) {
                        ++bad;
                        break;
                    }
            }
        }
        out.push_back(make_case(id, 0, bad == 0 && checked > 0, {{"columns", checked}, {"mismatches", bad}}));
    }
    {
        const std::string id = "module.admissible.examples";
        const auto a = admissible(AffineWeight::vacuum(g, Gaussian(2)));
        const auto b = admissible(AffineWeight::vacuum(g, Gaussian(Rational(1, 2))));
        AffineWeight w = AffineWeight::vacuum(g, Gaussian(2));
        w.lambda_h[0] = Gaussian(-3);
        const auto c = admissible(w);
        const bool ok = a.admissible && !b.admissible && b.witness == "c ∉ ℤ" && !c.admissible &&
                        c.witness.find("upper bound") != std::string::npos;
        out.push_back(make_case(id, 0, ok, {{"c=2", to_json(a)}, {"c=1/2", to_json(b)}, {"lambda=-3,c=2", to_json(c)}}));
    }
}

// --- correlator ----------------------------------------------------------------

void suite_correlator(std::uint64_t seed, Cases& out) {
    const AlgebraPtr g = make_sln(2);
    const int E = g->index_of("E"), F = g->index_of("F");
    {
        const std::string id = "correlator.oracle.random";
        Rng rng(case_seed(seed, id));
        OracleCache oracle(g);
        int mism = 0, nonzero = 0;
        const int queries = 120;
        for (int t = 0; t < queries; ++t) {
            const int n = rng.integer(0, 4);
            std::vector<LaurentElement> q;
            for (int i = 0; i < n; ++i) q.push_back(random_laurent(rng, g, 2, 2));
            const Gaussian c(rng.integer(1, 2));
            const Gaussian a = npoint(c, q), b = oracle.eval(c, q);
            if (a != b) ++mism;
            if (!a.is_zero()) ++nonzero;
        }
        out.push_back(make_case(id, 5, mism == 0, {{"queries", queries}, {"mismatches", mism}, {"nonzero_values", nonzero}}));
    }
    {
        const std::string id = "correlator.two-point.closed-form";
        bool ok = true;
        json vals = json::object();
        OracleCache oracle(g);
        for (int c : {1, 2, 3}) {
            const std::vector<LaurentElement> q{LaurentElement::basis_mode(g, F, 1), LaurentElement::basis_mode(g, E, -1)};
            const Gaussian v = npoint(Gaussian(c), q);
            ok = ok && v == Gaussian(c) && oracle.eval(Gaussian(c), q) == Gaussian(c);
            vals[std::to_string(c)] = v.str();
        }
        out.push_back(make_case(id, 5, ok, {{"values", vals}}));
    }
    {
        const std::string id = "correlator.four-point.frozen";
        const std::vector<LaurentElement> q{LaurentElement::basis_mode(g, F, 1), LaurentElement::basis_mode(g, F, 1),
                                            LaurentElement::basis_mode(g, E, -1), LaurentElement::basis_mode(g, E, -1)};
        const Gaussian v = npoint(Gaussian(1), q);
        OracleCache oracle(g);
        const Gaussian o = oracle.eval(Gaussian(1), q);
        out.push_back(make_case(id, 5, v == Gaussian(kFourPointLevelOne) && o == v,
                                {{"value", v.str()}, {"oracle", o.str()}, {"oracle_cutoff", required_cutoff(q)}}));
    }
    {
        const std::string id = "correlator.one-point.zero";
        Rng rng(case_seed(seed, id));
        bool ok = true;
        NPointEngine<Gaussian> engine(Gaussian(1));
        for (int t = 0; t < 100; ++t) {
            const auto xi = random_laurent(rng, g, 3, 3);
            ok = ok && npoint(Gaussian(rng.integer(1, 3)), {xi}).is_zero() && engine.one_point(xi).is_zero();
        }
        ok = ok && npoint(Gaussian(1), {LaurentElement(g)}).is_zero();
        out.push_back(make_case(id, 6, ok, {{"probes", 101}}));
    }
    {
        const std::string id = "correlator.hermiticity";
        Rng rng(case_seed(seed, id));
        int bad = 0;
        for (int t = 0; t < 100; ++t) {
            const auto xi = random_laurent(rng, g, 2, 3), eta = random_laurent(rng, g, 2, 3);
            const Gaussian c(rng.integer(1, 3));
            if (npoint(c, {xi, eta}) != npoint(c, {star_element(eta), star_element(xi)}).conj()) ++bad;
        }
        out.push_back(make_case(id, 6, bad == 0, {{"probes", 100}, {"failures", bad}}));
    }
    {
        const std::string id = "correlator.creation-positivity";
        Rng rng(case_seed(seed, id));
        int bad = 0;
        Rational smallest(-1);
        for (int t = 0; t < 100; ++t) {
            LaurentElement xi(g);
            for (int n = rng.integer(1, 3); n > 0; --n) xi.add(-rng.integer(1, 3), random_exact_vec(rng, g->dim()));
            const Gaussian c(rng.integer(1, 3));
            const Gaussian v = npoint(c, {star_element(xi), xi});
            if (!v.is_real() || sgn(v.re()) < 0) ++bad;
            if (smallest < 0 || v.re() < smallest) smallest = v.re();
        }
        out.push_back(make_case(id, 6, bad == 0, {{"probes", 100}, {"failures", bad}, {"smallest", rational_str(smallest)}}));
    }
    {
        const std::string id = "correlator.linearity";
        Rng rng(case_seed(seed, id));
        int bad = 0;
        for (int t = 0; t < 50; ++t) {
            const int n = rng.integer(1, 3);
            std::vector<LaurentElement> q;
            for (int i = 0; i < n; ++i) q.push_back(random_laurent(rng, g, 2, 2));
            const int slot = rng.integer(0, n - 1);
            const auto other = random_laurent(rng, g, 2, 2);
            const Gaussian s(Rational(rng.integer(-5, 5)), Rational(rng.integer(-5, 5)));
            const Gaussian c(rng.integer(1, 3));
            auto q2 = q;
            q2[slot] = other;
            auto q3 = q;
            q3[slot] = q[slot] + s * other;
            if (npoint(c, q3) != npoint(c, q) + s * npoint(c, q2)) ++bad;
        }
        out.push_back(make_case(id, 0, bad == 0, {{"probes", 50}, {"failures", bad}}));
    }
    {
        const std::string id = "correlator.translation";
        Rng rng(case_seed(seed, id));
        double worst = 0.0;
        const Rational dp(1, 4);
        for (int t = 0; t < 50; ++t) {
            const int n = rng.integer(2, 3);
            std::vector<BandLimitedElement> q, qs;
            const double shift = rng.uniform(-3, 3);
            for (int i = 0; i < n; ++i) {
                BandLimitedElement xi(g, dp);
                for (int m = rng.integer(1, 2); m > 0; --m) xi.add(rng.integer(-2, 2), random_complex_vec(rng, g->dim()));
                qs.push_back(translate(xi, shift));
                q.push_back(std::move(xi));
            }
            const Complex c(rng.integer(1, 3), 0.0);
            worst = std::max(worst, std::abs(npoint(c, q) - npoint(c, qs)));
        }
        out.push_back(make_case(id, 0, worst < 1e-9, {{"probes", 50}, {"max_residual", worst}}));
    }
}

// --- witness -------------------------------------------------------------------

void suite_witness(std::uint64_t, Cases& out) {
    const AlgebraPtr g = make_sln(2);
    for (int sign : {1, -1})
        for (int c : {1, 2, 3}) {
            const std::string id = std::string("witness.psi0H") + (sign > 0 ? "+1" : "-1") + ".c" + std::to_string(c);
            OnePointFunctional psi = OnePointFunctional::zero(g);
            psi.values[g->index_of("H")] = Gaussian(sign);
            const auto w = find_witness(psi, c);
            bool ok = w.has_value() && w->norm_squared() < 0.0 && w->resolution_gap < 1e-8 && w->bump.hi < 0.0 &&
                      w->branch == (sign > 0 ? "E" : "F");
            json d = w ? to_json(*w) : json(nullptr);
            if (w) {
                // Closed form for the smoothstep bump: I0 = (13/35) L A^2, I1 = midpoint * I0.
                const double L = w->bump.hi - w->bump.lo, mid = 0.5 * (w->bump.hi + w->bump.lo);
                const double i0 = 13.0 / 35.0 * L;
                const double gap = std::max(std::abs(w->fine.i0 - i0), std::abs(w->fine.i1 - mid * i0));
                d["closed_form_gap"] = gap;
                ok = ok && gap < 1e-12;
            }
            out.push_back(make_case(id, 7, ok, d));
        }
    {
        const std::string id = "witness.psi0-zero";
        const auto w = find_witness(OnePointFunctional::zero(g), 1.0);
        const auto rep = consistency_report(OnePointFunctional::zero(g), 1.0);
        out.push_back(make_case(id, 7, !w && rep.status == "consistent", to_json(rep)));
    }
    {
        const std::string id = "witness.off-cartan";
        OnePointFunctional psi = OnePointFunctional::zero(g);
        psi.values[g->index_of("E")] = 1;
        psi.values[g->index_of("F")] = 1;
        const auto rep = consistency_report(psi, 1.0);
        out.push_back(make_case(id, 0, rep.status == "no_witness_of_this_form", to_json(rep)));
    }
    {
        const std::string id = "witness.ratio-shrinks";
        const Root& alpha = *g->positive_roots().front();
        double prev = 1e300;
        bool ok = true;
        json ratios = json::array();
        for (double eps = 1.0; eps > 1e-3; eps *= 0.5) {
            const auto n = norm_squared(1.0, 1.0, alpha, *g, BumpSpec::family(eps));
            const double r = std::abs(n.i1) / n.i0;
            ok = ok && r < prev;
            prev = r;
            ratios.push_back(r);
        }
        out.push_back(make_case(id, 0, ok, {{"ratios", ratios}}));
    }
}

const std::map<std::string, std::function<void(std::uint64_t, Cases&)>>& registry() {
    static const std::map<std::string, std::function<void(std::uint64_t, Cases&)>> r{
        {"cocycle", suite_cocycle},       {"classify", suite_classify}, {"induction", suite_induction},
        {"module", suite_module},         {"correlator", suite_correlator}, {"witness", suite_witness}};
    return r;
}

}  // namespace

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

std::vector<CaseResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed) {
    Cases out;
    const auto chosen = names.empty() ? suite_names() : names;
    for (const auto& n : chosen) {
        auto it = registry().find(n);
        if (it == registry().end()) throw ValidationError("unknown suite '" + n + "'");
        try {
            it->second(seed, out);
        } catch (const Error& e) {
            out.push_back(make_case(n + ".error", 0, false, {{"error", e.what()}}));
        }
    }
    std::sort(out.begin(), out.end(), [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
    return out;
}

json suite_report(const std::vector<CaseResult>& cases) {
    json list = json::array();
    std::map<int, std::pair<int, int>> by;
    int passed = 0;
    for (const auto& c : cases) {
        list.push_back({{"id", c.id}, {"criterion", c.criterion}, {"passed", c.passed}, {"details", c.details}});
        passed += c.passed;
        auto& [p, t] = by[c.criterion];
        p += c.passed;
        ++t;
    }
    json crit = json::object();
    for (const auto& [k, pt] : by)
        crit[std::to_string(k)] = {{"passed", pt.first}, {"total", pt.second}};
    return {{"cases", list},
            {"summary", {{"total", cases.size()}, {"passed", passed}, {"failed", static_cast<int>(cases.size()) - passed}, {"by_criterion", crit}}}};
}

}  // namespace loopforge
