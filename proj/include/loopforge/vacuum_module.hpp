#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopforge/exact_psd.hpp"
#include "loopforge/lie_algebra.hpp"

namespace loopforge {

/// Lowest weight on the affine Cartan: lambda(H_i) on the Cartan basis and the level c = lambda(C).
struct AffineWeight {
    AlgebraPtr algebra;
    ExactVec lambda_h;  // one entry per Cartan basis element, in cartan_indices() order
    Gaussian level{0};

    static AffineWeight vacuum(AlgebraPtr g, Gaussian c);
    bool is_vacuum() const;
    /// lambda(h) for h in g_C (only the Cartan components contribute).
    Gaussian evaluate(const ExactVec& h) const;
};

struct Admissibility {
    bool admissible = true;
    std::string witness;  // empty when admissible
    std::string root;     // violating root label, if any
};

/// Dominant-integral test: c and -lambda(h_alpha) are integers and
/// 0 <= -lambda(h_alpha) <= c <h_alpha,h_alpha>/2 for every positive root.
Admissibility admissible(const AffineWeight& w);

/// One mode factor x_m with x a basis element.
struct ModeFactor {
    int mode;
    int index;
    friend auto operator<=>(const ModeFactor&, const ModeFactor&) = default;
};

/// PBW monomial x_{m1} x_{m2} ... applied to the vacuum, m_i < 0. Canonical
/// order: factors sorted by grade descending, then basis index ascending,
/// which is ascending (mode, index).
using Monomial = std::vector<ModeFactor>;

int grade_of(const Monomial& m);

/// Sparse matrix acting on the truncated basis: cols[j] lists (i, value) with op(b_j) = sum value b_i.
struct SparseMatrix {
    int size = 0;
    std::vector<std::vector<std::pair<int, Gaussian>>> cols;

    ExactVec apply(const ExactVec& v) const;
    Gaussian entry(int i, int j) const;
};

struct ModuleOptions {
    std::size_t basis_cap = 20000;
};

/// Truncated vacuum module of the affine algebra at level c.
///
/// Basis: canonical PBW monomials of grade <= N, grade by grade; inside a grade
/// monomials are listed lexicographically in the factor order. The Gram form is
/// computed from vacuum expectation values of words by commuting annihilators
/// to the right, independently of the mode-operator matrices.
class VacuumModule {
public:
    static VacuumModule build(const AffineWeight& weight, int cutoff, const ModuleOptions& opts = {});

    const AlgebraPtr& algebra() const { return weight_.algebra; }
    const AffineWeight& weight() const { return weight_; }
    const Gaussian& level() const { return weight_.level; }
    int cutoff() const { return cutoff_; }

    const std::vector<Monomial>& basis() const { return basis_; }
    int size() const { return static_cast<int>(basis_.size()); }
    /// Index of a canonical monomial, or -1 when above the cutoff.
    int index_of(const Monomial& m) const;
    std::string label(int i) const;
    std::vector<std::string> labels() const;

    /// First basis index of grade d and number of basis vectors in it.
    std::pair<int, int> grade_range(int d) const { return grade_ranges_.at(static_cast<std::size_t>(d)); }
    /// Gram block of grade d: gram(d)[i][j] = <b_i, b_j> (linear in the first slot).
    const ExactMatrix& gram(int d) const { return gram_.at(static_cast<std::size_t>(d)); }
    /// <v, w> for coefficient vectors over the full truncated basis.
    Gaussian inner(const ExactVec& v, const ExactVec& w) const;
    ExactVec vacuum_vector() const;

    /// Matrix of x_k on the truncated basis; image components above grade N are dropped.
    /// Throws TruncationError when |k| > N.
    SparseMatrix mode_matrix(const ExactVec& x, int k) const;

    /// Replaces the Gram blocks (used when loading a stored module).
    void set_gram(std::vector<ExactMatrix> blocks);

private:
    using Combination = std::map<Monomial, Gaussian>;

    const Combination& apply_factor(ModeFactor f, const Monomial& m) const;
    const SparseMatrix& basis_mode_matrix(int index, int k) const;
    Gaussian word_vev(const std::vector<ModeFactor>& word) const;
    void compute_gram();

    AffineWeight weight_;
    int cutoff_ = 0;
    std::vector<Monomial> basis_;
    std::map<Monomial, int> index_;
    std::vector<std::pair<int, int>> grade_ranges_;
    std::vector<ExactMatrix> gram_;

    // Memo tables; pure caches, so sharing them keeps copies cheap and consistent.
    struct Caches {
        std::map<std::pair<ModeFactor, Monomial>, Combination> apply;
        std::map<std::pair<int, int>, SparseMatrix> ops;
        std::map<std::vector<ModeFactor>, Gaussian> vev;
    };
    std::shared_ptr<Caches> cache_ = std::make_shared<Caches>();
};

struct UnitarityVerdict {
    bool psd = true;
    int checked_up_to = 0;
    std::optional<int> negative_grade;
    ExactVec negative_vector;               // coefficients over the basis of that grade
    std::vector<std::string> vector_labels;  // labels of that grade's basis
    Rational negative_value{0};             // <v,v> < 0
    std::vector<int> grade_ranks;           // rank of each PSD grade checked
    Admissibility admissibility;
    bool consistent = true;  // false iff admissible but a negative vector was found
};

/// Exact PSD decision on every grade up to the cutoff, stopping at the first failure.
/// Throws ParameterError when the level is not real (the form is then not Hermitian).
UnitarityVerdict unitarity_verdict(const VacuumModule& m);

}  // namespace loopforge
