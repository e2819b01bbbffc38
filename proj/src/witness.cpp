#include "loopforge/witness.hpp"

#include <cmath>

#include "loopforge/test_function.hpp"

namespace loopforge {

OnePointFunctional OnePointFunctional::zero(AlgebraPtr g) {
    OnePointFunctional p;
    p.values = g->zero();
    p.algebra = std::move(g);
    return p;
}

OnePointFunctional OnePointFunctional::from_json(AlgebraPtr g, const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("psi0 must be an object mapping basis labels to scalars");
    OnePointFunctional p = zero(std::move(g));
    for (const auto& [label, v] : j.items()) {
        const int idx = p.algebra->index_of(label);
        if (idx < 0) throw ValidationError("psi0: unknown basis label '" + label + "'");
        if (v.is_string())
            p.values[idx] = parse_gaussian(v.get<std::string>());
        else if (v.is_number_integer())
            p.values[idx] = Gaussian(v.get<long>());
        else
            throw ValidationError("psi0: value for '" + label + "' must be a string or integer");
    }
    return p;
}

Gaussian OnePointFunctional::operator()(const ExactVec& x) const {
    Gaussian acc(0);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!x[i].is_zero()) acc += values[i] * x[i];
    return acc;
}

bool OnePointFunctional::self_adjoint() const {
    for (int i = 0; i < algebra->dim(); ++i)
        if ((*this)(algebra->star(algebra->basis_vector(i))) != values[i].conj()) return false;
    return true;
}

BumpSpec BumpSpec::family(double eps, double amplitude) { return {-eps, -eps / 4.0, amplitude}; }

double BumpSpec::operator()(double p) const {
    if (p <= lo || p >= hi) return 0.0;
    const double u = (p - lo) / (hi - lo);
    const double v = u <= 0.5 ? 2.0 * u : 2.0 - 2.0 * u;
    return amplitude * v * v * (3.0 - 2.0 * v);
}

namespace {

NormCertificate certificate(double first, double c, double form, const BumpSpec& bump, int panels) {
    if (!(bump.hi > bump.lo)) throw ParameterError("bump support is empty");
    if (bump.hi > 0.0) throw ParameterError("bump support intersects p > 0; the annihilation sign needs p <= 0");
    const double mid = 0.5 * (bump.lo + bump.hi);
    auto sq = [&](double p) { return Complex(bump(p) * bump(p), 0.0); };
    auto psq = [&](double p) { return Complex(p * bump(p) * bump(p), 0.0); };
    // Panels aligned with the breakpoint at the midpoint: the rule is exact on each polynomial piece.
    NormCertificate out;
    out.i0 = (integrate_panels(sq, bump.lo, mid, panels) + integrate_panels(sq, mid, bump.hi, panels)).real();
    out.i1 = (integrate_panels(psq, bump.lo, mid, panels) + integrate_panels(psq, mid, bump.hi, panels)).real();
    out.form_value = form;
    out.norm_squared = first * out.i0 - c * form * out.i1;
    return out;
}

double form_of(const LieAlgebra& g, const ExactVec& a, const ExactVec& b) { return g.form(a, b).to_complex().real(); }

}  // namespace

NormCertificate norm_squared(double psi0_h, double c, const Root& alpha, const LieAlgebra& g, const BumpSpec& bump,
                             int panels) {
    return certificate(-psi0_h, c, form_of(g, alpha.f, alpha.e), bump, panels);
}

NormCertificate norm_squared_f(double psi0_h, double c, const Root& alpha, const LieAlgebra& g, const BumpSpec& bump,
                               int panels) {
    return certificate(psi0_h, c, form_of(g, alpha.e, alpha.f), bump, panels);
}

std::optional<WitnessResult> find_witness(const OnePointFunctional& psi0, double c, const WitnessOptions& opts) {
    if (!(c > 0.0)) throw ParameterError("level must be positive");
    if (!psi0.self_adjoint()) throw ParameterError("psi0 is not self-adjoint");
    const auto& g = *psi0.algebra;
    for (const Root* r : g.positive_roots()) {
        const Gaussian v = psi0(r->h);
        if (v.is_zero()) continue;
        WitnessResult w;
        w.root = r->label;
        w.psi0_h = v.to_complex().real();
        w.branch = w.psi0_h > 0.0 ? "E" : "F";
        auto eval = [&](const BumpSpec& b, int panels) {
            return w.branch == "E" ? norm_squared(w.psi0_h, c, *r, g, b, panels)
                                   : norm_squared_f(w.psi0_h, c, *r, g, b, panels);
        };
        double eps = 1.0;
        for (int step = 0; step <= opts.max_halvings; ++step, eps *= 0.5) {
            const BumpSpec b = BumpSpec::family(eps);
            const NormCertificate coarse = eval(b, opts.panels);
            if (!(coarse.norm_squared < 0.0)) continue;
            const NormCertificate fine = eval(b, 2 * opts.panels);
            const double gap = std::abs(fine.norm_squared - coarse.norm_squared);
            if (fine.norm_squared < 0.0 && gap < opts.agreement) {
                w.epsilon = eps;
                w.bump = b;
                w.halvings = step;
                w.coarse = coarse;
                w.fine = fine;
                w.resolution_gap = gap;
                return w;
            }
        }
        throw SearchFailure("no negative norm within " + std::to_string(opts.max_halvings) + " halvings for root " +
                            r->label);
    }
    return std::nullopt;
}

ConsistencyReport consistency_report(const OnePointFunctional& psi0, double c, const WitnessOptions& opts) {
    ConsistencyReport rep;
    rep.self_adjoint = psi0.self_adjoint();
    for (const Root* r : psi0.algebra->positive_roots())
        if (!psi0(r->h).is_zero()) rep.nonzero_coroots.push_back(r->label);
    if (!rep.self_adjoint) {
        rep.status = "not_self_adjoint";
        rep.conclusion = "excluded: psi0 is not self-adjoint, so it is not the one-point function of a unitary ground state";
        return rep;
    }
    rep.witness = find_witness(psi0, c, opts);
    if (rep.witness) {
        rep.status = "excluded";
        rep.conclusion = "excluded by negative-norm witness: no unitary ground state with this psi0";
    } else if (is_zero_vec(psi0.values)) {
        rep.status = "consistent";
        rep.conclusion = "consistent with unitarity, psi0 ≡ 0 on coroots";
    } else {
        rep.status = "no_witness_of_this_form";
        rep.conclusion = "no witness of this form: psi0 vanishes on every coroot but not on root vectors";
    }
    return rep;
}

nlohmann::json to_json(const WitnessResult& w) {
    auto cert = [](const NormCertificate& n) {
        return nlohmann::json{{"norm_squared", n.norm_squared}, {"i0", n.i0}, {"i1", n.i1}, {"form", n.form_value}};
    };
    return {{"root", w.root},
            {"branch", w.branch},
            {"psi0_H", w.psi0_h},
            {"epsilon", w.epsilon},
            {"bump", {{"shape", w.bump.shape()}, {"lo", w.bump.lo}, {"hi", w.bump.hi}, {"amplitude", w.bump.amplitude}}},
            {"halvings", w.halvings},
            {"norm_squared", w.norm_squared()},
            {"certificate", cert(w.fine)},
            {"coarse", cert(w.coarse)},
            {"resolution_gap", w.resolution_gap}};
}

nlohmann::json to_json(const ConsistencyReport& r) {
    nlohmann::json j{{"self_adjoint", r.self_adjoint},
                     {"nonzero_coroots", r.nonzero_coroots},
                     {"status", r.status},
                     {"conclusion", r.conclusion}};
    j["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
    return j;
}

}  // namespace loopforge
