#include "loopforge/vacuum_module.hpp"

#include <algorithm>

namespace loopforge {

AffineWeight AffineWeight::vacuum(AlgebraPtr g, Gaussian c) {
    AffineWeight w;
    w.lambda_h.assign(g->cartan_indices().size(), Gaussian(0));
    w.algebra = std::move(g);
    w.level = std::move(c);
    return w;
}

bool AffineWeight::is_vacuum() const {
    return std::all_of(lambda_h.begin(), lambda_h.end(), [](const Gaussian& x) { return x.is_zero(); });
}

Gaussian AffineWeight::evaluate(const ExactVec& h) const {
    const auto& cart = algebra->cartan_indices();
    Gaussian acc(0);
    for (std::size_t i = 0; i < cart.size() && i < lambda_h.size(); ++i) acc += lambda_h[i] * h[cart[i]];
    return acc;
}

Admissibility admissible(const AffineWeight& w) {
    Admissibility out;
    if (!w.level.is_integer()) {
        out.admissible = false;
        out.witness = "c ∉ ℤ";
        return out;
    }
    for (const Root* r : w.algebra->positive_roots()) {
        const Gaussian m = -w.evaluate(r->h);
        if (!m.is_integer()) {
            out = {false, "−λ(h_α) ∉ ℤ", r->label};
            return out;
        }
        if (sgn(m.re()) < 0) {
            out = {false, "lower bound 0 ≤ −λ(h_α) violated", r->label};
            return out;
        }
        if (m.re() > w.level.re() * r->coroot_norm / 2) {
            out = {false, "upper bound −λ(h_α) ≤ c‖h_α‖²/2 violated", r->label};
            return out;
        }
    }
    return out;
}

int grade_of(const Monomial& m) {
    int g = 0;
    for (const auto& f : m) g -= f.mode;
    return g;
}

ExactVec SparseMatrix::apply(const ExactVec& v) const {
    ExactVec out(static_cast<std::size_t>(size), Gaussian(0));
    for (int j = 0; j < size; ++j) {
        if (v[j].is_zero()) continue;
        for (const auto& [i, a] : cols[j]) out[i] += a * v[j];
    }
    return out;
}

Gaussian SparseMatrix::entry(int i, int j) const {
    for (const auto& [r, a] : cols[j])
        if (r == i) return a;
    return Gaussian(0);
}

namespace {

// Multisets of creation factors of total grade `remaining`, each factor >= factors[start].
void enumerate(const std::vector<ModeFactor>& factors, std::size_t start, int remaining, Monomial& cur,
               std::vector<Monomial>& out, std::size_t cap) {
    if (remaining == 0) {
        out.push_back(cur);
        if (out.size() > cap)
            throw ResourceError("module basis exceeds the cap of " + std::to_string(cap) + " vectors");
        return;
    }
    for (std::size_t i = start; i < factors.size(); ++i) {
        if (-factors[i].mode > remaining) continue;
        cur.push_back(factors[i]);
        enumerate(factors, i, remaining + factors[i].mode, cur, out, cap);
        cur.pop_back();
    }
}

}  // namespace

VacuumModule VacuumModule::build(const AffineWeight& weight, int cutoff, const ModuleOptions& opts) {
    if (!weight.algebra) throw ParameterError("weight has no algebra");
    if (cutoff < 0) throw ParameterError("cutoff must be non-negative");
    if (weight.lambda_h.size() != weight.algebra->cartan_indices().size())
        throw DimensionError("lowest weight needs one value per Cartan basis element");
    if (!weight.is_vacuum()) throw Unimplemented("only the vacuum weight (lambda = 0) is implemented");

    VacuumModule m;
    m.weight_ = weight;
    m.cutoff_ = cutoff;
    const int dim = weight.algebra->dim();
    std::vector<ModeFactor> factors;
    for (int k = cutoff; k >= 1; --k)
        for (int a = 0; a < dim; ++a) factors.push_back({-k, a});
    for (int d = 0; d <= cutoff; ++d) {
        const int first = static_cast<int>(m.basis_.size());
        Monomial cur;
        enumerate(factors, 0, d, cur, m.basis_, opts.basis_cap);
        m.grade_ranges_.emplace_back(first, static_cast<int>(m.basis_.size()) - first);
    }
    for (int i = 0; i < m.size(); ++i) m.index_[m.basis_[i]] = i;
    m.compute_gram();
    return m;
}

int VacuumModule::index_of(const Monomial& mono) const {
    auto it = index_.find(mono);
    return it == index_.end() ? -1 : it->second;
}

std::string VacuumModule::label(int i) const {
    std::string s;
    for (const auto& f : basis_.at(static_cast<std::size_t>(i)))
        s += algebra()->basis_labels()[f.index] + "_{" + std::to_string(f.mode) + "}";
    return s + "Ω";
}

std::vector<std::string> VacuumModule::labels() const {
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i) out.push_back(label(i));
    return out;
}

ExactVec VacuumModule::vacuum_vector() const {
    ExactVec v(static_cast<std::size_t>(size()), Gaussian(0));
    v[0] = 1;
    return v;
}

Gaussian VacuumModule::inner(const ExactVec& v, const ExactVec& w) const {
    if (v.size() != basis_.size() || w.size() != basis_.size())
        throw DimensionError("vector length does not match the module basis");
    Gaussian acc(0);
    for (int d = 0; d <= cutoff_; ++d) {
        const auto [first, n] = grade_ranges_[d];
        const auto& g = gram_[d];
        for (int i = 0; i < n; ++i) {
            if (v[first + i].is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!w[first + j].is_zero() && !g[i][j].is_zero())
                    acc += v[first + i] * w[first + j].conj() * g[i][j];
        }
    }
    return acc;
}

Gaussian VacuumModule::word_vev(const std::vector<ModeFactor>& word) const {
    if (word.empty()) return Gaussian(1);
    // Non-negative modes kill the vacuum on the right; non-positive ones on the left.
    if (word.back().mode >= 0 || word.front().mode <= 0) return Gaussian(0);
    auto& memo = cache_->vev;
    if (auto it = memo.find(word); it != memo.end()) return it->second;

    std::size_t p = word.size() - 1;
    while (word[p].mode <= 0) --p;
    const ModeFactor x = word[p];
    const ModeFactor y = word[p + 1];
    const auto& g = *algebra();

    std::vector<ModeFactor> swapped = word;
    std::swap(swapped[p], swapped[p + 1]);
    Gaussian acc = word_vev(swapped);

    std::vector<ModeFactor> shorter;
    shorter.reserve(word.size() - 1);
    for (const auto& t : g.terms(x.index, y.index)) {
        shorter.assign(word.begin(), word.begin() + static_cast<long>(p));
        shorter.push_back({x.mode + y.mode, t.k});
        shorter.insert(shorter.end(), word.begin() + static_cast<long>(p) + 2, word.end());
        acc += t.exact * word_vev(shorter);
    }
    if (x.mode + y.mode == 0 && !g.form_entry(x.index, y.index).is_zero()) {
        shorter.assign(word.begin(), word.begin() + static_cast<long>(p));
        shorter.insert(shorter.end(), word.begin() + static_cast<long>(p) + 2, word.end());
        acc += level() * Gaussian(x.mode) * g.form_entry(x.index, y.index) * word_vev(shorter);
    }
    memo.emplace(word, acc);
    return acc;
}

void VacuumModule::compute_gram() {
    const auto& g = *algebra();
    const int dim = g.dim();
    gram_.clear();
    for (int d = 0; d <= cutoff_; ++d) {
        const auto [first, n] = grade_ranges_[d];
        ExactMatrix block(n, ExactVec(n, Gaussian(0)));
        for (int j = 0; j < n; ++j) {
            // b_j^dagger as a combination of words: reversed factors, each x_m -> (x*)_{-m}.
            std::vector<std::pair<std::vector<ModeFactor>, Gaussian>> dagger{{{}, Gaussian(1)}};
            const Monomial& bj = basis_[first + j];
            for (auto f = bj.rbegin(); f != bj.rend(); ++f) {
                std::vector<std::pair<std::vector<ModeFactor>, Gaussian>> next;
                for (const auto& [w, c] : dagger)
                    for (int k = 0; k < dim; ++k) {
                        const Gaussian& s = g.star_entry(f->index, k);
                        if (s.is_zero()) continue;
                        auto w2 = w;
                        w2.push_back({-f->mode, k});
                        next.emplace_back(std::move(w2), c * s);
                    }
                dagger = std::move(next);
            }
            for (int i = 0; i < n; ++i) {
                const Monomial& bi = basis_[first + i];
                Gaussian acc(0);
                for (const auto& [w, c] : dagger) {
                    auto word = w;
                    word.insert(word.end(), bi.begin(), bi.end());
                    acc += c * word_vev(word);
                }
                block[i][j] = acc;
            }
        }
        gram_.push_back(std::move(block));
    }
}

void VacuumModule::set_gram(std::vector<ExactMatrix> blocks) {
    if (blocks.size() != gram_.size()) throw DimensionError("Gram block count does not match the cutoff");
    for (std::size_t d = 0; d < blocks.size(); ++d)
        if (blocks[d].size() != gram_[d].size()) throw DimensionError("Gram block size mismatch at grade " + std::to_string(d));
    gram_ = std::move(blocks);
}

const VacuumModule::Combination& VacuumModule::apply_factor(ModeFactor f, const Monomial& m) const {
    static const Combination empty;
    if (grade_of(m) - f.mode > cutoff_ || grade_of(m) - f.mode < 0) return empty;
    auto& memo = cache_->apply;
    const auto key = std::make_pair(f, m);
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    Combination out;
    auto add = [&out](const Monomial& mono, const Gaussian& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = out.emplace(mono, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    };

    if (m.empty()) {
        if (f.mode < 0) add(Monomial{f}, Gaussian(1));
    } else if (f.mode < 0 && f <= m.front()) {
        Monomial mono{f};
        mono.insert(mono.end(), m.begin(), m.end());
        add(mono, Gaussian(1));
    } else {
        // f g M' = g (f M') + [f,g] M' + c k delta <f,g> M'
        const ModeFactor gf = m.front();
        const Monomial rest(m.begin() + 1, m.end());
        const Combination inner = apply_factor(f, rest);
        for (const auto& [mono, c] : inner)
            for (const auto& [mono2, c2] : apply_factor(gf, mono)) add(mono2, c * c2);
        const auto& g = *algebra();
        for (const auto& t : g.terms(f.index, gf.index))
            for (const auto& [mono2, c2] : apply_factor({f.mode + gf.mode, t.k}, rest)) add(mono2, t.exact * c2);
        if (f.mode + gf.mode == 0) add(rest, level() * Gaussian(f.mode) * g.form_entry(f.index, gf.index));
    }
    return memo.emplace(key, std::move(out)).first->second;
}

const SparseMatrix& VacuumModule::basis_mode_matrix(int index, int k) const {
    const auto key = std::make_pair(index, k);
    if (auto it = cache_->ops.find(key); it != cache_->ops.end()) return it->second;
    SparseMatrix mat;
    mat.size = size();
    mat.cols.resize(basis_.size());
    for (int j = 0; j < size(); ++j)
        for (const auto& [mono, c] : apply_factor({k, index}, basis_[j])) {
            const int i = index_of(mono);
            if (i >= 0) mat.cols[j].emplace_back(i, c);
        }
    return cache_->ops.emplace(key, std::move(mat)).first->second;
}

SparseMatrix VacuumModule::mode_matrix(const ExactVec& x, int k) const {
    if (std::abs(k) > cutoff_)
        throw TruncationError("mode " + std::to_string(k) + " exceeds the module cutoff " + std::to_string(cutoff_));
    if (x.size() != static_cast<std::size_t>(algebra()->dim())) throw DimensionError("coefficient vector length");
    std::vector<std::map<int, Gaussian>> acc(basis_.size());
    for (int a = 0; a < algebra()->dim(); ++a) {
        if (x[a].is_zero()) continue;
        const SparseMatrix& op = basis_mode_matrix(a, k);
        for (int j = 0; j < size(); ++j)
            for (const auto& [i, c] : op.cols[j]) acc[j][i] += x[a] * c;
    }
    SparseMatrix out;
    out.size = size();
    out.cols.resize(basis_.size());
    for (int j = 0; j < size(); ++j)
        for (const auto& [i, c] : acc[j])
            if (!c.is_zero()) out.cols[j].emplace_back(i, c);
    return out;
}

UnitarityVerdict unitarity_verdict(const VacuumModule& m) {
    if (!m.level().is_real()) throw ParameterError("level must be real for the contravariant form to be Hermitian");
    UnitarityVerdict v;
    v.admissibility = admissible(m.weight());
    for (int d = 0; d <= m.cutoff(); ++d) {
        const ExactMatrix& g = m.gram(d);
        // <v,v> = sum v_i conj(v_j) G_ij = v^dagger G^T v.
        ExactMatrix t(g.size(), ExactVec(g.size()));
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) t[i][j] = g[j][i];
        const PsdDecision dec = decide_psd(t);
        v.checked_up_to = d;
        if (!dec.psd) {
            v.psd = false;
            v.negative_grade = d;
            v.negative_vector = *dec.witness;
            v.negative_value = dec.witness_value;
            const int first = m.grade_range(d).first;
            for (std::size_t i = 0; i < g.size(); ++i) v.vector_labels.push_back(m.label(first + static_cast<int>(i)));
            break;
        }
        v.grade_ranks.push_back(dec.rank);
    }
    v.consistent = !(v.admissibility.admissible && !v.psd);
    return v;
}

}  // namespace loopforge
