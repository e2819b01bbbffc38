#include "loopforge/correlator.hpp"

#include <algorithm>
#include <cstdio>

#include "loopforge/cocycle.hpp"

namespace loopforge {

namespace {

std::string scalar_text(const Gaussian& g) { return g.str(); }
std::string scalar_text(const Complex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

template <class S>
std::string factor_key(const BasicLaurent<S>& xi) {
    std::string s;
    for (const auto& [k, v] : xi.modes()) {
        s += std::to_string(k) + ":";
        for (const auto& c : v) s += scalar_key(c) + ",";
        s += ";";
    }
    return s;
}

}  // namespace

Annihilation annihilates(const BandLimitedElement& xi) {
    if (xi.is_zero()) return {true, true};
    const int lo = xi.samples().begin()->first;
    return {lo >= 1, lo >= 0};
}

template <class S>
std::string element_str(const BasicLaurent<S>& xi) {
    if (xi.is_zero()) return "0";
    const auto& labels = xi.algebra()->basis_labels();
    std::string s;
    for (const auto& [k, v] : xi.modes())
        for (std::size_t a = 0; a < v.size(); ++a) {
            if (is_zero(v[a])) continue;
            if (!s.empty()) s += " + ";
            if (v[a] != S(1)) s += "(" + scalar_text(v[a]) + ")";
            s += labels[a] + "⊗t^" + std::to_string(k);
        }
    return s;
}

template std::string element_str(const BasicLaurent<Gaussian>&);
template std::string element_str(const BasicLaurent<Complex>&);

nlohmann::json ReductionTrace::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& n = nodes[i];
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : n.terms) {
            nlohmann::json tj{{"kind", t.kind}, {"scalar", t.scalar}};
            if (t.child >= 0) tj["child"] = t.child;
            terms.push_back(tj);
        }
        nlohmann::json nj{{"id", i}, {"factors", n.factors}, {"value", n.value}};
        if (n.memo_hit) {
            nj["memo_hit"] = true;
        } else if (!n.factors.empty()) {
            nj["plus"] = n.plus;
            nj["minus"] = n.minus;
            nj["terms"] = terms;
        }
        out.push_back(nj);
    }
    return nlohmann::json{{"root", nodes.empty() ? -1 : 0}, {"nodes", out}};
}

template <class S>
NPointEngine<S>::NPointEngine(S level, std::optional<Vec<S>> psi0) : level_(std::move(level)), psi0_(std::move(psi0)) {}

template <class S>
S NPointEngine<S>::one_point(const BasicLaurent<S>& xi) const {
    if (!psi0_ || xi.is_zero()) return S(0);
    const Vec<S> x0 = xi.at(0);
    S acc(0);
    for (std::size_t a = 0; a < x0.size() && a < psi0_->size(); ++a) acc += (*psi0_)[a] * x0[a];
    return acc;
}

template <class S>
S NPointEngine<S>::eval(const std::vector<BasicLaurent<S>>& factors, ReductionTrace* trace) {
    for (std::size_t i = 1; i < factors.size(); ++i) factors[0].same_algebra(factors[i]);
    int node = -1;
    return eval_rec(factors, trace, &node);
}

template <class S>
S NPointEngine<S>::eval_rec(const std::vector<BasicLaurent<S>>& factors, ReductionTrace* trace, int* node) {
    if (trace) {
        if (trace->nodes.size() >= trace->cap)
            throw ResourceError("reduction trace exceeds the cap of " + std::to_string(trace->cap) + " nodes");
        *node = static_cast<int>(trace->nodes.size());
        trace->nodes.emplace_back();
        for (const auto& f : factors) trace->nodes.back().factors.push_back(element_str(f));
    }
    auto finish = [&](const S& v) {
        if (trace) trace->nodes[*node].value = scalar_text(v);
        return v;
    };
    if (factors.empty()) return finish(S(1));
    for (const auto& f : factors)
        if (f.is_zero()) return finish(S(0));

    std::string key;
    for (const auto& f : factors) key += factor_key(f) + "|";
    if (auto it = memo_.find(key); it != memo_.end()) {
        if (trace) trace->nodes[*node].memo_hit = true;
        return finish(it->second);
    }

    const auto [plus, minus] = factors[0].split_positive();
    const std::vector<BasicLaurent<S>> rest(factors.begin() + 1, factors.end());
    if (trace) {
        trace->nodes[*node].plus = element_str(plus);
        trace->nodes[*node].minus = element_str(minus);
    }
    auto record = [&](std::string kind, const S& scalar, int child) {
        if (trace) trace->nodes[*node].terms.push_back({std::move(kind), scalar_text(scalar), child});
    };

    S total(0);
    // Head term: <pi(xi_-) Y Omega, Omega> = <Y Omega, pi(xi_-*) Omega>; only zero modes survive.
    const S head = conj_of(one_point(star_element(minus)));
    if (!is_zero(head)) {
        int child = -1;
        total += head * eval_rec(rest, trace, &child);
        record("head", head, child);
    } else if (!minus.is_zero()) {
        record("annihilated", S(0), -1);
    }

    if (!plus.is_zero()) {
        for (std::size_t k = 0; k < rest.size(); ++k) {
            BasicLaurent<S> br = laurent_bracket(plus, rest[k]);
            if (!br.is_zero()) {
                std::vector<BasicLaurent<S>> next = rest;
                next[k] = std::move(br);
                int child = -1;
                total += eval_rec(next, trace, &child);
                record("commutator", S(1), child);
            }
            const S w = level_ * omega_modes(plus, rest[k]);
            if (!is_zero(w)) {
                std::vector<BasicLaurent<S>> next;
                for (std::size_t j = 0; j < rest.size(); ++j)
                    if (j != k) next.push_back(rest[j]);
                int child = -1;
                total += w * eval_rec(next, trace, &child);
                record("cocycle", w, child);
            }
        }
    }
    memo_.emplace(std::move(key), total);
    return finish(total);
}

template class NPointEngine<Gaussian>;
template class NPointEngine<Complex>;

Gaussian npoint(const Gaussian& level, const std::vector<LaurentElement>& factors, ReductionTrace* trace) {
    NPointEngine<Gaussian> engine(level);
    return engine.eval(factors, trace);
}

Complex npoint(Complex level, const std::vector<BandLimitedElement>& factors) {
    std::vector<BasicLaurent<Complex>> modes;
    for (const auto& f : factors) {
        if (!modes.empty()) factors.front().check_compatible(f);
        modes.push_back(to_modes(f));
    }
    NPointEngine<Complex> engine(level);
    return engine.eval(modes);
}

int required_cutoff(const std::vector<LaurentElement>& factors) {
    int need = 0;
    for (const auto& f : factors)
        if (!f.is_zero()) need = std::max({need, std::abs(f.min_mode()), std::abs(f.max_mode())});
    // After applying the suffix, components above grade N only matter if the prefix can lower them to 0.
    for (std::size_t s = 1; s < factors.size(); ++s) {
        int create = 0, annihilate = 0;
        for (std::size_t i = s; i < factors.size(); ++i) create += std::max(0, -factors[i].min_mode());
        for (std::size_t i = 0; i < s; ++i) annihilate += std::max(0, factors[i].max_mode());
        need = std::max(need, std::min(create, annihilate));
    }
    return need;
}

Gaussian npoint_oracle(const VacuumModule& module, const std::vector<LaurentElement>& factors) {
    for (const auto& f : factors)
        if (!f.is_zero() && f.algebra()->name() != module.algebra()->name())
            throw AlgebraMismatch("query algebra differs from the module algebra");
    const int need = required_cutoff(factors);
    if (need > module.cutoff())
        throw TruncationError("query needs cutoff " + std::to_string(need) + ", module has " +
                              std::to_string(module.cutoff()));
    ExactVec v = module.vacuum_vector();
    for (auto f = factors.rbegin(); f != factors.rend(); ++f) {
        ExactVec next(v.size(), Gaussian(0));
        for (const auto& [k, x] : f->modes()) {
            const ExactVec part = module.mode_matrix(x, k).apply(v);
            for (std::size_t i = 0; i < v.size(); ++i)
                if (!part[i].is_zero()) next[i] += part[i];
        }
        v = std::move(next);
    }
    return module.inner(v, module.vacuum_vector());
}

const VacuumModule& OracleCache::module(const Gaussian& level, int cutoff) {
    const auto key = std::make_pair(level.str(), cutoff);
    auto it = modules_.find(key);
    if (it == modules_.end())
        it = modules_.emplace(key, VacuumModule::build(AffineWeight::vacuum(algebra_, level), cutoff, opts_)).first;
    return it->second;
}

Gaussian OracleCache::eval(const Gaussian& level, const std::vector<LaurentElement>& factors) {
    return npoint_oracle(module(level, required_cutoff(factors)), factors);
}

}  // namespace loopforge
