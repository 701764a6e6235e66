#pragma once

// Concrete cusp forms (eta quotients), their pullbacks under integer
// matrices of positive determinant, Fricke eigenvalues measured numerically,
// and the polynomial transformation matrices of the z^{s-1}-twisted forms.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncmodsym/ncseries.hpp"
#include "ncmodsym/paths.hpp"
#include "ncmodsym/qexpansion.hpp"

namespace ncmodsym {

// A cusp form known through its exact integer q-expansion, together with the
// modular data needed to rewrite its pullbacks as q-expansions again.
// Supported levels: 1 (any weight) and prime N (weight 2 Fricke eigenforms);
// that covers every family the library constructs.
class CuspForm {
public:
    CuspForm(std::string name, int level, int weight2r,
             std::vector<long long> coeffs);

    static std::shared_ptr<const CuspForm> delta(int n_max = 256);
    // the weight-2 level-11 eta quotient eta(z)^2 eta(11z)^2
    static std::shared_ptr<const CuspForm> level11(int n_max = 720);
    static std::shared_ptr<const CuspForm> eta_product(
        std::string name, int level, const std::vector<std::pair<int, int>>& parts,
        int n_max);

    const std::string& name() const { return name_; }
    int level() const { return level_; }
    int weight() const { return weight2r_; }
    int weight_r() const { return weight2r_ / 2; }
    long long coeff(long long n) const {
        return (n >= 1 && n <= (long long)coeffs_.size()) ? coeffs_[n - 1] : 0;
    }
    long long n_max() const { return (long long)coeffs_.size(); }
    const std::vector<long long>& integer_coeffs() const { return coeffs_; }
    const FourierExpansion& expansion() const { return expansion_; }

    // measured eigenvalue of the Fricke involution at the form's own level;
    // cached after the first measurement
    int fricke_eigenvalue() const;

private:
    std::string name_;
    int level_;
    int weight2r_;
    std::vector<long long> coeffs_;
    FourierExpansion expansion_;
    mutable std::optional<int> fricke_;
};

// Measures the eigenvalue of f under z -> -1/(Nz) by comparing the weight-2r
// transform with +-f at off-fixed sample points; throws if neither sign fits.
int fricke_eigenvalue(const CuspForm& f, long long N, double tol = 1e-8);

// Weight-2r slash action (f|m)(z) = det(m)^r f(mz) (cz+d)^{-2r} realized as a
// q-expansion: m is split as (unimodular) * (upper triangular), the
// unimodular part is absorbed by the form's modular symmetry.
FourierExpansion slash_expansion(const CuspForm& f, const Mat2& m);

// (B, T) with m = B*T, B unimodular and T = (alpha, beta; 0, delta)
std::pair<Mat2, Mat2> hermite_split(const Mat2& m);

// --- forms of modular type -------------------------------------------------

// f(z) z^{s-1} dz; s is the Mellin argument (integer s whenever the form
// participates in a family or the series engine).
struct FormOfModularType {
    std::shared_ptr<const CuspForm> form;
    cxd mellin_s{1.0};

    bool integer_s() const;
    int s_int() const;
};

// Transformation of the twisted form under m with det m > 0 and f|m = chi*f:
// the matrix P with m^*(f z^{s-1} dz) = sum_t P[t-1][s-1] f z^{t-1} dz for
// s, t = 1..2r-1.  Entries come from exact integer expansion of
// (az+b)^{s-1} (cz+d)^{2r-1-s}, scaled by det^{1-r} chi.
std::vector<std::vector<cxd>> gamma_matrix(int weight2r, const Mat2& m,
                                           cxd chi = 1.0);

// Fricke pullback of a single twisted form: the scalar lambda with
// g_N^*(f z^{s-1} dz) = lambda * f z^{2r-1-s} dz, and the new argument.
// For integer s, lambda = eps (-1)^{s-1} N^{r-s}; the general-s branch factor
// is e^{i pi (s-1)} on the principal branch.
struct FrickePullback {
    cxd scalar;
    cxd new_s;
};
FrickePullback fricke_pullback(const CuspForm& f, cxd s, long long N);
FrickePullback fricke_pullback(const FormOfModularType& w, long long N);

// Hecke constituents of a weight-2 form at a prime p: the pullback under
// diag(p,1) followed by the p pullbacks under (1 b; 0 p), b = 0..p-1.
std::vector<FourierExpansion> hecke_constituents(const CuspForm& f, int p);

// max_z |lambda f(z) - p f(pz) - sum_b (1/p) f((z+b)/p)| over sample points;
// lambda defaults to the q-coefficient a_p
double hecke_pointwise_residual(const CuspForm& f, int p,
                                const std::vector<cxd>& samples,
                                std::optional<double> lambda = std::nullopt);

// --- evaluatable 1-forms and families --------------------------------------

// A finite sum  sum coef * (root | acc)(z) * z^{pow} dz  that stays closed
// under pullback by integer matrices of positive determinant.  Terms sharing
// the slashed expansion are grouped so each expansion is evaluated once per
// point.
class OneForm {
public:
    struct Block {
        std::shared_ptr<const CuspForm> root;
        Mat2 acc;  // accumulated slash matrix
        std::shared_ptr<const FourierExpansion> h;  // root | acc
        std::vector<std::pair<int, cxd>> zpoly;     // (z-power, coefficient)
    };

    OneForm() = default;
    static OneForm modular(const FormOfModularType& w);
    static OneForm from_expansion(cxd coef, std::shared_ptr<const CuspForm> root,
                                  const Mat2& acc, int zpow);

    cxd evaluate(cxd z) const;
    // evaluate with a per-point cache of expansion values shared across forms
    cxd evaluate_cached(
        cxd z, std::vector<std::pair<const FourierExpansion*, cxd>>& cache) const;
    OneForm pullback(const Mat2& m) const;
    OneForm scaled(cxd factor) const;
    friend OneForm operator+(const OneForm& a, const OneForm& b);

    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }

private:
    void add_term(cxd coef, const std::shared_ptr<const CuspForm>& root,
                  const Mat2& acc, int zpow);
    std::vector<Block> blocks_;
};

// memoized (f | m) expansions keyed by form identity and matrix
std::shared_ptr<const FourierExpansion> slash_expansion_cached(
    const std::shared_ptr<const CuspForm>& f, const Mat2& m);

// A family of twisted cusp forms indexed by an alphabet.
struct ModularFamily {
    Alphabet alphabet;
    std::vector<FormOfModularType> members;

    // the standard family f z^{s-1} dz over a list of Mellin arguments
    static ModularFamily twists(const std::shared_ptr<const CuspForm>& f,
                                const std::vector<int>& s_list);

    int size() const { return (int)members.size(); }
    long long level() const;
};

// Letter map realizing g_* for the family: requires the span of the family
// to be stable under m^* (checked; throws otherwise).  Supported m: matrices
// fixing the forms (level-1 families under SL2(Z)) and the Fricke matrix of
// the family's level for eigenform families with a symmetric argument set.
LetterMap family_letter_map(const ModularFamily& fam, const Mat2& m);

}  // namespace ncmodsym
