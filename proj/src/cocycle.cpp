#include "loopforge/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace loopforge {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kInv2PiI = Complex(0.0, -1.0 / (2.0 * kPi));

Complex form_c(const LieAlgebra& g, const Vec<Complex>& x, const Vec<Complex>& y) {
    return g.form<Complex>(std::span<const Complex>(x), std::span<const Complex>(y));
}

void track(CheckResult& r, double residual, double tol) {
    ++r.probes;
    r.max_residual = std::max(r.max_residual, residual);
    if (!(residual <= tol)) r.ok = false;
}

void track_exact(CheckResult& r, const Gaussian& residual) {
    ++r.probes;
    r.max_residual = std::max(r.max_residual, std::abs(residual.to_complex()));
    if (!residual.is_zero()) r.ok = false;
}

// Exact unit-modulus Gaussian rational from a Pythagorean triple, times i^r.
Gaussian random_phase(Rng& rng) {
    const int m = rng.integer(1, 4), n = rng.integer(0, 3);
    const Rational d(m * m + n * n);
    Gaussian z(Rational(m * m - n * n) / d, Rational(2 * m * n) / d);
    for (int r = rng.integer(0, 3); r > 0; --r) z *= Gaussian::i();
    return z;
}

TimeElement ad_constant(const Vec<Complex>& delta, const TimeElement& a) {
    TimeElement out{a.algebra, {}};
    for (const auto& t : a.terms) {
        auto x = a.algebra->bracket<Complex>(std::span<const Complex>(delta), std::span<const Complex>(t.x));
        if (!is_zero_vec(x)) out.terms.push_back({std::move(x), t.f});
    }
    return out;
}

TimeElement time_sum(TimeElement a, const TimeElement& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
}

}  // namespace

// ---------------------------------------------------------------------------

Complex gamma_time(const FunctionProduct& f, const FunctionProduct& g) {
    const auto [a0, a1] = f.support();
    const auto [b0, b1] = g.support();
    const double lo = std::max(a0, b0), hi = std::min(a1, b1);
    if (!(lo < hi)) return {0.0, 0.0};
    return kInv2PiI * integrate([&](double t) { return f.value(t) * g.derivative(t); }, lo, hi);
}

Complex gamma_time(const TestFunction& f, const TestFunction& g) {
    return gamma_time(FunctionProduct{{f}}, FunctionProduct{{g}});
}

Complex omega1_time(const Vec<Complex>& x, const TestFunction& f, const Vec<Complex>& y, const TestFunction& g,
                    const LieAlgebra& alg) {
    const Complex xy = form_c(alg, x, y);
    if (xy == Complex(0)) return {0.0, 0.0};
    return xy * gamma_time(f, g);
}

Complex omega1_time(const TimeElement& a, const TimeElement& b) {
    if (a.algebra->name() != b.algebra->name()) throw AlgebraMismatch("time elements over different algebras");
    Complex acc(0.0, 0.0);
    for (const auto& s : a.terms)
        for (const auto& t : b.terms) {
            const Complex xy = form_c(*a.algebra, s.x, t.x);
            if (xy == Complex(0)) continue;
            acc += xy * gamma_time(s.f, t.f);
        }
    return acc;
}

Complex omega1_freq(const BandLimitedElement& a, const BandLimitedElement& b) {
    return CocycleCandidate::canonical().eval(a, b);
}

Gaussian omega_modes(const ExactVec& x, int k, const ExactVec& y, int l, const LieAlgebra& alg) {
    if (k + l != 0 || k == 0) return Gaussian(0);
    return Gaussian(k) * alg.form(x, y);
}

BandLimitedElement sample_fourier(AlgebraPtr g, const Vec<Complex>& x, const TestFunction& f, Rational dp,
                                  double pmax) {
    if (f.kind != TestFunction::Kind::GaussianBump)
        throw ParameterError("closed-form Fourier samples are available for Gaussian bumps only");
    BandLimitedElement out(g, dp);
    const int jmax = static_cast<int>(std::floor(pmax / out.dp()));
    const double w = f.width;
    for (int j = -jmax; j <= jmax; ++j) {
        const double p = j * out.dp();
        const double amp = w * std::sqrt(2 * kPi) * std::exp(-2 * kPi * kPi * w * w * p * p);
        if (amp == 0.0) continue;
        out.set(j, scaled(x, std::polar(amp, -2 * kPi * p * f.center)));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string to_string(Realization r) {
    switch (r) {
        case Realization::Frequency: return "frequency";
        case Realization::Modes: return "modes";
        case Realization::Time: return "time";
    }
    return "?";
}

CocycleCandidate CocycleCandidate::canonical() {
    CocycleCandidate c;
    c.kind = Kind::Canonical;
    c.label = "canonical";
    return c;
}

CocycleCandidate CocycleCandidate::scaled(Gaussian level) {
    CocycleCandidate c;
    c.kind = Kind::Scaled;
    c.label = "scaled(" + level.str() + ")";
    c.c = std::move(level);
    return c;
}

CocycleCandidate CocycleCandidate::polynomial(std::vector<Gaussian> coeffs, std::string label) {
    CocycleCandidate c;
    c.kind = Kind::Kernel;
    c.kernel = std::move(coeffs);
    c.label = std::move(label);
    return c;
}

std::vector<Gaussian> CocycleCandidate::coefficients() const {
    switch (kind) {
        case Kind::Canonical: return {Gaussian(0), Gaussian(1)};
        case Kind::Scaled: return {Gaussian(0), c};
        case Kind::Kernel: return kernel;
    }
    return {};
}

Complex CocycleCandidate::kernel_value(double p) const {
    const auto co = coefficients();
    Complex acc(0.0, 0.0);
    for (std::size_t n = co.size(); n-- > 0;) acc = acc * p + co[n].to_complex();
    return acc;
}

Complex CocycleCandidate::eval(const BandLimitedElement& a, const BandLimitedElement& b) const {
    a.check_compatible(b);
    const auto& g = *a.algebra();
    Complex acc(0.0, 0.0);
    for (const auto& [m, x] : a.samples()) {
        auto it = b.samples().find(-m);
        if (it == b.samples().end()) continue;
        const double p = -m * a.dp();  // a sits at -p, b at p
        const Complex k = kernel_value(p);
        if (k == Complex(0)) continue;
        acc += k * form_c(g, x, it->second);
    }
    return acc * a.dp();
}

Gaussian CocycleCandidate::eval(const LaurentElement& a, const LaurentElement& b) const {
    a.same_algebra(b);
    const auto co = coefficients();
    const auto& g = *a.algebra();
    Gaussian acc(0);
    for (const auto& [k, x] : a.modes()) {
        auto it = b.modes().find(-k);
        if (it == b.modes().end()) continue;
        Gaussian kv(0);
        for (std::size_t n = co.size(); n-- > 0;) kv = kv * Gaussian(k) + co[n];
        if (kv.is_zero()) continue;
        acc += kv * g.form(x, it->second);
    }
    return acc;
}

Complex CocycleCandidate::eval(const TimeElement& a, const TimeElement& b) const {
    switch (kind) {
        case Kind::Canonical: return omega1_time(a, b);
        case Kind::Scaled: return c.to_complex() * omega1_time(a, b);
        case Kind::Kernel: break;
    }
    throw ParameterError("kernel candidates are evaluated in the frequency and mode realizations only");
}

// ---------------------------------------------------------------------------
// Probes.

Vec<Complex> random_complex_vec(Rng& rng, int dim) {
    Vec<Complex> v(dim);
    for (auto& x : v) x = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return v;
}

ExactVec random_exact_vec(Rng& rng, int dim, int bound) {
    ExactVec v(dim);
    for (auto& x : v) {
        const int den = rng.integer(1, 2);
        x = Gaussian(Rational(rng.integer(-bound, bound), den), Rational(rng.integer(-bound, bound), den));
    }
    return v;
}

BandLimitedElement random_bandlimited(Rng& rng, const AlgebraPtr& g, const Rational& dp, int max_index) {
    BandLimitedElement e(g, dp);
    const int n = rng.integer(1, 4);
    for (int i = 0; i < n; ++i) e.add(rng.integer(-max_index, max_index), random_complex_vec(rng, g->dim()));
    return e;
}

LaurentElement random_laurent(Rng& rng, const AlgebraPtr& g, int max_mode, int max_terms) {
    LaurentElement e(g);
    const int n = rng.integer(1, max_terms);
    for (int i = 0; i < n; ++i) e.add(rng.integer(-max_mode, max_mode), random_exact_vec(rng, g->dim()));
    return e;
}

TimeElement random_time_element(Rng& rng, const AlgebraPtr& g) {
    TimeElement e{g, {}};
    const int n = rng.integer(1, 2);
    for (int i = 0; i < n; ++i) {
        const auto f = TestFunction::gaussian(rng.uniform(-1.5, 1.5), rng.uniform(0.6, 1.4));
        e.terms.push_back({random_complex_vec(rng, g->dim()), FunctionProduct{{f}}});
    }
    return e;
}

namespace {

// Locality probes in the frequency picture: either reflected-disjoint grid
// supports, or the sampled transforms of Gaussians 24 widths apart (overlap
// below 1e-60, aliasing below 1e-150 on the 1/64 grid).
std::pair<BandLimitedElement, BandLimitedElement> frequency_locality_pair(Rng& rng, const AlgebraPtr& g,
                                                                          const SamplingConfig& cfg, int i) {
    if (i % 2 == 0) {
        const int sgn = rng.coin() ? 1 : -1;
        BandLimitedElement a(g, cfg.dp), b(g, cfg.dp);
        for (int n = rng.integer(1, 3); n > 0; --n)
            a.add(sgn * rng.integer(1, cfg.max_index), random_complex_vec(rng, g->dim()));
        for (int n = rng.integer(1, 3); n > 0; --n)
            b.add(sgn * rng.integer(1, cfg.max_index), random_complex_vec(rng, g->dim()));
        return {a, b};
    }
    const double c0 = rng.uniform(-2, 2);
    const double sep = 24.0 + rng.uniform(0, 4);
    const auto f = TestFunction::gaussian(c0, 1.0);
    const auto h = TestFunction::gaussian(c0 + (rng.coin() ? sep : -sep), 1.0);
    const Rational fine(1, 64);
    return {sample_fourier(g, random_complex_vec(rng, g->dim()), f, fine, 4.0),
            sample_fourier(g, random_complex_vec(rng, g->dim()), h, fine, 4.0)};
}

template <class F>
auto with_context(const char* check, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw ParameterError(std::string("candidate evaluation failed during ") + check + ": " + e.what());
    }
}

void verify_frequency(const CocycleCandidate& cand, const AlgebraPtr& g, const SamplingConfig& cfg, CocycleReport& rep) {
    Rng rng(cfg.seed);
    const double tol = cfg.tolerance;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto a = random_bandlimited(rng, g, cfg.dp, cfg.max_index);
        const auto b = random_bandlimited(rng, g, cfg.dp, cfg.max_index);
        const auto c = random_bandlimited(rng, g, cfg.dp, cfg.max_index);
        with_context("antisymmetry", [&] {
            track(rep.antisymmetry, std::abs(cand.eval(a, b) + cand.eval(b, a)), tol);
            return 0;
        });
        with_context("jacobi", [&] {
            const Complex j = cand.eval(bl_bracket(a, b), c) + cand.eval(bl_bracket(b, c), a) +
                              cand.eval(bl_bracket(c, a), b);
            track(rep.jacobi, std::abs(j), tol);
            return 0;
        });
        with_context("translation", [&] {
            const double s = rng.uniform(-3, 3);
            track(rep.translation, std::abs(cand.eval(translate(a, s), translate(b, s)) - cand.eval(a, b)), tol);
            return 0;
        });
        with_context("g-invariance", [&] {
            const auto delta = constant_loop(g, cfg.dp, random_complex_vec(rng, g->dim()));
            const Complex r = cand.eval(bl_bracket(delta, a), b) + cand.eval(a, bl_bracket(delta, b));
            track(rep.g_invariance, std::abs(r), tol);
            return 0;
        });
        with_context("locality", [&] {
            const auto [p, q] = frequency_locality_pair(rng, g, cfg, i);
            track(rep.locality, std::abs(cand.eval(p, q)), tol);
            return 0;
        });
    }
}

void verify_modes(const CocycleCandidate& cand, const AlgebraPtr& g, const SamplingConfig& cfg, CocycleReport& rep) {
    Rng rng(cfg.seed);
    rep.exact = true;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto a = random_laurent(rng, g, cfg.max_mode);
        const auto b = random_laurent(rng, g, cfg.max_mode);
        const auto c = random_laurent(rng, g, cfg.max_mode);
        track_exact(rep.antisymmetry, cand.eval(a, b) + cand.eval(b, a));
        track_exact(rep.jacobi, cand.eval(laurent_bracket(a, b), c) + cand.eval(laurent_bracket(b, c), a) +
                                    cand.eval(laurent_bracket(c, a), b));
        const Gaussian phase = random_phase(rng);
        track_exact(rep.translation, cand.eval(rotate(a, phase), rotate(b, phase)) - cand.eval(a, b));
        const auto delta = LaurentElement::mode(g, random_exact_vec(rng, g->dim()), 0);
        track_exact(rep.g_invariance,
                    cand.eval(laurent_bracket(delta, a), b) + cand.eval(a, laurent_bracket(delta, b)));
        // Mode supports with A and -B disjoint: both strictly on one side.
        const int sgn = rng.coin() ? 1 : -1;
        LaurentElement p(g), q(g);
        for (int n = rng.integer(1, 3); n > 0; --n) p.add(sgn * rng.integer(1, cfg.max_mode), random_exact_vec(rng, g->dim()));
        for (int n = rng.integer(1, 3); n > 0; --n) q.add(sgn * rng.integer(0, cfg.max_mode), random_exact_vec(rng, g->dim()));
        track_exact(rep.locality, cand.eval(p, q));
    }
}

void verify_time(const CocycleCandidate& cand, const AlgebraPtr& g, const SamplingConfig& cfg, CocycleReport& rep) {
    Rng rng(cfg.seed);
    const double tol = cfg.tolerance;
    for (int i = 0; i < cfg.samples; ++i) {
        const auto a = random_time_element(rng, g);
        const auto b = random_time_element(rng, g);
        const auto c = random_time_element(rng, g);
        with_context("antisymmetry", [&] {
            track(rep.antisymmetry, std::abs(cand.eval(a, b) + cand.eval(b, a)), tol);
            return 0;
        });
        with_context("jacobi", [&] {
            const Complex j = cand.eval(time_bracket(a, b), c) + cand.eval(time_bracket(b, c), a) +
                              cand.eval(time_bracket(c, a), b);
            track(rep.jacobi, std::abs(j), tol);
            return 0;
        });
        with_context("translation", [&] {
            const double s = rng.uniform(-3, 3);
            track(rep.translation, std::abs(cand.eval(a.shifted(s), b.shifted(s)) - cand.eval(a, b)), tol);
            return 0;
        });
        with_context("g-invariance", [&] {
            const auto delta = random_complex_vec(rng, g->dim());
            const Complex r = cand.eval(ad_constant(delta, a), b) + cand.eval(a, ad_constant(delta, b));
            track(rep.g_invariance, std::abs(r), tol);
            return 0;
        });
        with_context("locality", [&] {
            // Compact bumps with disjoint supports, plus a far-away second term.
            const double c0 = rng.uniform(-2, 2), w1 = rng.uniform(0.3, 1.0), w2 = rng.uniform(0.3, 1.0);
            const double gap = rng.uniform(0.0, 0.5);
            const auto f = TestFunction::compact(c0, w1);
            const auto h = TestFunction::compact(c0 + w1 + w2 + gap, w2);
            TimeElement p = TimeElement::simple(g, random_complex_vec(rng, g->dim()), f);
            TimeElement q = TimeElement::simple(g, random_complex_vec(rng, g->dim()), h);
            q = time_sum(q, TimeElement::simple(g, random_complex_vec(rng, g->dim()),
                                                TestFunction::compact(c0 - w1 - 1.0 - gap, 0.9)));
            track(rep.locality, std::abs(cand.eval(p, q)), tol);
            return 0;
        });
    }
}

}  // namespace

CocycleReport verify(const CocycleCandidate& candidate, Realization realization, const AlgebraPtr& algebra,
                     const SamplingConfig& config) {
    if (config.samples <= 0) throw ParameterError("sample count must be positive");
    CocycleReport rep;
    rep.candidate = candidate.label;
    rep.algebra = algebra->name();
    rep.realization = realization;
    switch (realization) {
        case Realization::Frequency: verify_frequency(candidate, algebra, config, rep); break;
        case Realization::Modes: verify_modes(candidate, algebra, config, rep); break;
        case Realization::Time: verify_time(candidate, algebra, config, rep); break;
    }
    return rep;
}

ClassifyResult classify(const CocycleCandidate& candidate, const AlgebraPtr& algebra, const SamplingConfig& config) {
    Rng rng(config.seed);
    const auto& g = *algebra;
    ClassifyResult res;
    std::optional<Complex> level;
    // Fixed first probe: b_0 at -dp against star(b_0) at +dp.
    for (int attempt = 0; attempt < 10 && !level; ++attempt) {
        ++res.probe_attempts;
        BandLimitedElement xi(algebra, config.dp), eta(algebra, config.dp);
        if (attempt == 0) {
            const auto b0 = lift_vec<Complex>(g.basis_vector(0));
            xi.set(-1, b0);
            eta.set(1, g.star<Complex>(std::span<const Complex>(b0)));
        } else {
            xi = random_bandlimited(rng, algebra, config.dp, config.max_index);
            eta = random_bandlimited(rng, algebra, config.dp, config.max_index);
        }
        const Complex w = omega1_freq(xi, eta);
        if (std::abs(w) < 1e-12) continue;
        level = candidate.eval(xi, eta) / w;
    }
    if (!level) throw SearchFailure("classification probes were degenerate (omega1 = 0) on 10 attempts");
    res.level = *level;
    double scale = 1.0, residual = 0.0;
    for (int i = 0; i < config.samples; ++i) {
        const auto a = random_bandlimited(rng, algebra, config.dp, config.max_index);
        const auto b = random_bandlimited(rng, algebra, config.dp, config.max_index);
        const Complex ref = res.level * omega1_freq(a, b);
        scale = std::max(scale, std::abs(ref));
        residual = std::max(residual, std::abs(candidate.eval(a, b) - ref));
    }
    res.residual = residual;
    res.scale = scale;
    res.proportional = residual <= config.classify_tolerance * scale;
    return res;
}

InductionResult induction_check(const TestFunction& f, int k_max, double period) {
    f.validate();
    if (k_max < 1) throw ParameterError("k_max must be at least 1");
    if (!(period > 0)) throw ParameterError("period must be positive");
    const auto [lo, hi] = f.support();
    if (lo < -period / 2 || hi > period / 2)
        throw ParameterError("support of " + f.describe() + " is not inside [-a/2, a/2]");
    InductionResult res;
    res.gamma_e0 = gamma_time(f, TestFunction::exponential(0, period));
    const auto e1 = TestFunction::exponential(1, period);
    for (int k = 1; k <= k_max; ++k) {
        const Complex lhs = gamma_time(f, TestFunction::exponential(k, period));
        const Complex rhs = static_cast<double>(k) *
                            gamma_time(FunctionProduct{{f, TestFunction::exponential(k - 1, period)}}, FunctionProduct{{e1}});
        res.residuals.push_back(std::abs(lhs - rhs));
        res.max_residual = std::max(res.max_residual, res.residuals.back());
    }
    return res;
}

Complex jacobi_functions_residual(const TestFunction& f, const TestFunction& g, const TestFunction& h) {
    return gamma_time(FunctionProduct{{f, g}}, FunctionProduct{{h}}) +
           gamma_time(FunctionProduct{{g, h}}, FunctionProduct{{f}}) +
           gamma_time(FunctionProduct{{h, f}}, FunctionProduct{{g}});
}

}  // namespace loopforge
