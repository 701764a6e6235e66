#include "ncmodsym/modforms.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <numbers>
#include <stdexcept>

namespace ncmodsym {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long mod_inverse(long long a, long long m) {
    long long t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
    while (newr != 0) {
        long long qq = r / newr;
        std::swap(t, newt);
        newt -= qq * t;
        std::swap(r, newr);
        newr -= qq * r;
    }
    if (r != 1) throw std::domain_error("mod_inverse: not invertible");
    return ((t % m) + m) % m;
}
}  // namespace

CuspForm::CuspForm(std::string name, int level, int weight2r,
                   std::vector<long long> coeffs)
    : name_(std::move(name)), level_(level), weight2r_(weight2r),
      coeffs_(std::move(coeffs)) {
    if (level_ < 1 || weight2r_ < 2 || weight2r_ % 2 != 0)
        throw std::invalid_argument("CuspForm: bad level/weight");
    if (coeffs_.empty()) throw std::invalid_argument("CuspForm: empty expansion");
    std::vector<cxd> c(coeffs_.begin(), coeffs_.end());
    expansion_ = FourierExpansion(1, std::move(c), 1.0);
}

std::shared_ptr<const CuspForm> CuspForm::delta(int n_max) {
    static std::map<int, std::shared_ptr<const CuspForm>> memo;
    auto it = memo.find(n_max);
    if (it != memo.end()) return it->second;
    auto f = std::make_shared<CuspForm>("delta", 1, 12, delta_coeffs(n_max));
    memo.emplace(n_max, f);
    return f;
}

std::shared_ptr<const CuspForm> CuspForm::level11(int n_max) {
    static std::map<int, std::shared_ptr<const CuspForm>> memo;
    auto it = memo.find(n_max);
    if (it != memo.end()) return it->second;
    auto f = eta_product("11a", 11, {{1, 2}, {11, 2}}, n_max);
    memo.emplace(n_max, f);
    return f;
}

std::shared_ptr<const CuspForm> CuspForm::eta_product(
    std::string name, int level, const std::vector<std::pair<int, int>>& parts,
    int n_max) {
    int e_total = 0;
    for (auto [d, e] : parts) e_total += e;
    if (e_total % 2 != 0)
        throw std::invalid_argument("eta_product: weight not an even integer");
    return std::make_shared<CuspForm>(std::move(name), level, e_total / 2,
                                      eta_product_coeffs(parts, n_max));
}

int CuspForm::fricke_eigenvalue() const {
    if (!fricke_) fricke_ = ncmodsym::fricke_eigenvalue(*this, level_);
    return *fricke_;
}

int fricke_eigenvalue(const CuspForm& f, long long N, double tol) {
    const int r = f.weight_r();
    const double sq = std::sqrt(double(N));
    // off-fixed samples; the fixed point i/sqrt(N) is useless when f vanishes
    // there, so it is never used
    const std::vector<cxd> samples = {cxd(0.0, 2.0 / sq), cxd(0.0, 1.37 / sq)};
    double res_plus = 0.0, res_minus = 0.0;
    for (cxd z : samples) {
        cxd img = -1.0 / (double(N) * z);
        cxd lhs = std::pow(double(N), r) * f.expansion().evaluate(img).value /
                  std::pow(double(N) * z, 2 * r);
        cxd rhs = f.expansion().evaluate(z).value;
        double scale = std::max(std::abs(rhs), 1e-30);
        res_plus = std::max(res_plus, std::abs(lhs - rhs) / scale);
        res_minus = std::max(res_minus, std::abs(lhs + rhs) / scale);
    }
    if (res_plus < tol) return +1;
    if (res_minus < tol) return -1;
    throw std::domain_error("fricke_eigenvalue: form is not an eigenform (residuals " +
                            std::to_string(res_plus) + ", " +
                            std::to_string(res_minus) + ")");
}

std::pair<Mat2, Mat2> hermite_split(const Mat2& m) {
    if (m.det() <= 0) throw std::invalid_argument("hermite_split: det <= 0");
    const long long a = m.a, c = m.c, D = m.det();
    long long g, x, y;
    {
        // extended gcd of (a, c): x a + y c = g > 0
        long long old_r = a, rr = c, old_s = 1, s = 0, old_t = 0, t = 1;
        while (rr != 0) {
            long long qq = old_r / rr;
            std::swap(old_r, rr);
            rr -= qq * old_r;
            std::swap(old_s, s);
            s -= qq * old_s;
            std::swap(old_t, t);
            t -= qq * old_t;
        }
        g = old_r;
        x = old_s;
        y = old_t;
        if (g < 0) {
            g = -g;
            x = -x;
            y = -y;
        }
    }
    if (g == 0) throw std::invalid_argument("hermite_split: zero first column");
    Mat2 Binv{x, y, -c / g, a / g};
    if (Binv.det() != 1) throw std::logic_error("hermite_split: Binv not unimodular");
    Mat2 T = Binv * m;
    if (T.c != 0 || T.a * T.d != D || T.a <= 0)
        throw std::logic_error("hermite_split: bad triangular factor");
    return {Binv.adj(), T};
}

namespace {

// f|B for unimodular B via the form's modular symmetry; returns the
// expansion.  Level 1: f|B = f.  Prime level N with c != 0 mod N:
// f|B = f|(sigma T^j) = eps N^{-r} f((z+j)/N), j = d/c mod N.
FourierExpansion slash_unimodular(const CuspForm& f, const Mat2& B) {
    if (B.det() != 1)
        throw std::invalid_argument("slash_unimodular: det != 1");
    if (f.level() == 1) return f.expansion();
    const long long N = f.level();
    if (!is_prime(N))
        throw std::invalid_argument("slash_unimodular: composite level unsupported");
    if (((B.c % N) + N) % N == 0) return f.expansion();
    const int r = f.weight_r();
    const long long j =
        (((B.d % N) + N) % N * mod_inverse(B.c, N)) % N;
    // expansion of eps N^{-r} f((z+j)/N)
    const double eps = f.fricke_eigenvalue();
    std::vector<cxd> coeffs(f.n_max());
    for (long long n = 1; n <= f.n_max(); ++n) {
        double arg = 2.0 * kPi * double(n) * double(j) / double(N);
        coeffs[n - 1] = double(f.coeff(n)) * std::polar(1.0, arg);
    }
    return FourierExpansion(N, std::move(coeffs),
                            eps * std::pow(double(N), -r));
}

// g|T for upper triangular T = (alpha, beta; 0, delta):
// det(T)^r g((alpha z + beta)/delta) delta^{-2r}
FourierExpansion slash_triangular(const FourierExpansion& g, int weight2r,
                                  const Mat2& T) {
    if (T.c != 0 || T.a <= 0 || T.d <= 0)
        throw std::invalid_argument("slash_triangular: not upper triangular");
    const long long alpha = T.a, beta = T.b, delta = T.d;
    const int r = weight2r / 2;
    const long long M2 = delta * g.period();
    std::vector<cxd> coeffs(static_cast<size_t>(alpha * g.n_max()), cxd(0.0));
    for (long long n = 1; n <= g.n_max(); ++n) {
        double arg = 2.0 * kPi * double(n) * double(beta) / double(M2);
        coeffs[n * alpha - 1] += g.coeff(n) * std::polar(1.0, arg);
    }
    cxd pref = g.prefactor() * std::pow(double(T.det()), r) /
               std::pow(double(delta), 2 * r);
    return FourierExpansion(M2, std::move(coeffs), pref);
}

}  // namespace

FourierExpansion slash_expansion(const CuspForm& f, const Mat2& m) {
    auto [B, T] = hermite_split(m);
    FourierExpansion base = slash_unimodular(f, B);
    if (T == Mat2::identity()) return base;
    return slash_triangular(base, f.weight(), T);
}

bool FormOfModularType::integer_s() const {
    return mellin_s.imag() == 0.0 &&
           mellin_s.real() == std::nearbyint(mellin_s.real());
}

int FormOfModularType::s_int() const {
    if (!integer_s())
        throw std::domain_error("FormOfModularType: Mellin argument not integer");
    return static_cast<int>(std::nearbyint(mellin_s.real()));
}

std::vector<std::vector<cxd>> gamma_matrix(int weight2r, const Mat2& m, cxd chi) {
    if (weight2r < 2 || weight2r % 2 != 0)
        throw std::invalid_argument("gamma_matrix: bad weight");
    const int r = weight2r / 2;
    const int dim = weight2r - 1;  // s, t in 1..2r-1
    const cxd scale = chi * std::pow(cxd(double(m.det())), 1 - r);
    std::vector<std::vector<cxd>> out(dim, std::vector<cxd>(dim, 0.0));
    for (int s = 1; s <= dim; ++s) {
        // exact integer coefficients of (a z + b)^{s-1} (c z + d)^{2r-1-s}
        std::vector<long long> p1{1}, p2{1};
        for (int i = 0; i < s - 1; ++i) {
            std::vector<long long> next(p1.size() + 1, 0);
            for (size_t k = 0; k < p1.size(); ++k) {
                next[k] += p1[k] * m.b;
                next[k + 1] += p1[k] * m.a;
            }
            p1 = std::move(next);
        }
        for (int i = 0; i < weight2r - 1 - s; ++i) {
            std::vector<long long> next(p2.size() + 1, 0);
            for (size_t k = 0; k < p2.size(); ++k) {
                next[k] += p2[k] * m.d;
                next[k + 1] += p2[k] * m.c;
            }
            p2 = std::move(next);
        }
        for (size_t i = 0; i < p1.size(); ++i)
            for (size_t j = 0; j < p2.size(); ++j) {
                const size_t t = i + j;  // power of z = t, row index t = (t+1)-1
                if (t < (size_t)dim && p1[i] != 0 && p2[j] != 0)
                    out[t][s - 1] += scale * (double(p1[i]) * double(p2[j]));
            }
    }
    return out;
}

FrickePullback fricke_pullback(const CuspForm& f, cxd s, long long N) {
    const int r = f.weight_r();
    const double eps = fricke_eigenvalue(f, N);
    cxd branch;
    if (s.imag() == 0.0 && s.real() == std::nearbyint(s.real())) {
        branch = (std::llround(s.real()) % 2 != 0) ? 1.0 : -1.0;  // (-1)^{s-1}
    } else {
        branch = std::exp(cxd(0.0, kPi) * (s - 1.0));
    }
    cxd scalar = eps * branch * std::pow(cxd(double(N)), cxd(double(r)) - s);
    return FrickePullback{scalar, 2.0 * double(r) - s};
}

FrickePullback fricke_pullback(const FormOfModularType& w, long long N) {
    return fricke_pullback(*w.form, w.mellin_s, N);
}

std::vector<FourierExpansion> hecke_constituents(const CuspForm& f, int p) {
    if (!is_prime(p)) throw std::invalid_argument("hecke_constituents: p not prime");
    if (f.weight() != 2)
        throw std::invalid_argument("hecke_constituents: weight-2 forms only");
    std::vector<FourierExpansion> out;
    out.push_back(slash_expansion(f, Mat2{p, 0, 0, 1}));
    for (int b = 0; b < p; ++b)
        out.push_back(slash_expansion(f, Mat2{1, b, 0, p}));
    return out;
}

double hecke_pointwise_residual(const CuspForm& f, int p,
                                const std::vector<cxd>& samples,
                                std::optional<double> lambda) {
    const double lam = lambda.value_or(double(f.coeff(p)));
    auto parts = hecke_constituents(f, p);
    double res = 0.0;
    for (cxd z : samples) {
        cxd total = lam * f.expansion().evaluate(z).value;
        total -= parts[0].evaluate(z).value;
        for (int b = 0; b < p; ++b) total -= parts[1 + b].evaluate(z).value;
        res = std::max(res, std::abs(total));
    }
    return res;
}

std::shared_ptr<const FourierExpansion> slash_expansion_cached(
    const std::shared_ptr<const CuspForm>& f, const Mat2& m) {
    static std::map<std::tuple<const CuspForm*, long long, long long, long long,
                               long long>,
                    std::shared_ptr<const FourierExpansion>>
        memo;
    auto key = std::make_tuple(f.get(), m.a, m.b, m.c, m.d);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto exp = std::make_shared<const FourierExpansion>(slash_expansion(*f, m));
    memo.emplace(key, exp);
    return exp;
}

void OneForm::add_term(cxd coef, const std::shared_ptr<const CuspForm>& root,
                       const Mat2& acc, int zpow) {
    for (Block& b : blocks_) {
        if (b.root == root && b.acc == acc) {
            for (auto& [p, c] : b.zpoly)
                if (p == zpow) {
                    c += coef;
                    return;
                }
            b.zpoly.emplace_back(zpow, coef);
            return;
        }
    }
    Block b{root, acc, slash_expansion_cached(root, acc), {{zpow, coef}}};
    blocks_.push_back(std::move(b));
}

OneForm OneForm::modular(const FormOfModularType& w) {
    return from_expansion(1.0, w.form, Mat2::identity(), w.s_int() - 1);
}

OneForm OneForm::from_expansion(cxd coef, std::shared_ptr<const CuspForm> root,
                                const Mat2& acc, int zpow) {
    OneForm f;
    f.add_term(coef, root, acc, zpow);
    return f;
}

cxd OneForm::evaluate(cxd z) const {
    cxd total = 0.0;
    for (const Block& b : blocks_) {
        cxd poly = 0.0;
        for (auto [p, c] : b.zpoly) poly += c * std::pow(z, p);
        total += poly * b.h->evaluate(z).value;
    }
    return total;
}

cxd OneForm::evaluate_cached(
    cxd z, std::vector<std::pair<const FourierExpansion*, cxd>>& cache) const {
    cxd total = 0.0;
    for (const Block& b : blocks_) {
        cxd hval;
        bool found = false;
        for (const auto& [ptr, val] : cache)
            if (ptr == b.h.get()) {
                hval = val;
                found = true;
                break;
            }
        if (!found) {
            hval = b.h->evaluate(z).value;
            cache.emplace_back(b.h.get(), hval);
        }
        cxd poly = 0.0;
        for (auto [p, c] : b.zpoly) poly += c * std::pow(z, p);
        total += poly * hval;
    }
    return total;
}

OneForm OneForm::pullback(const Mat2& g) const {
    if (g.det() <= 0) throw std::invalid_argument("OneForm::pullback: det <= 0");
    OneForm out;
    for (const Block& blk : blocks_) {
        const int weight2r = blk.root->weight();
        // g^*(h z^{s-1} dz) = det^{1-r} (h|g) (az+b)^{s-1} (cz+d)^{2r-1-s} dz
        auto P = gamma_matrix(weight2r, g, 1.0);
        Mat2 acc2 = blk.acc * g;
        for (auto [zpow, coef] : blk.zpoly) {
            const int s = zpow + 1;
            if (s < 1 || s > weight2r - 1)
                throw std::domain_error(
                    "OneForm::pullback: z-power outside the strip");
            for (int t = 1; t <= weight2r - 1; ++t) {
                cxd c2 = coef * P[t - 1][s - 1];
                if (c2 == cxd(0.0)) continue;
                out.add_term(c2, blk.root, acc2, t - 1);
            }
        }
    }
    return out;
}

OneForm OneForm::scaled(cxd factor) const {
    OneForm out = *this;
    for (auto& b : out.blocks_)
        for (auto& [p, c] : b.zpoly) c *= factor;
    return out;
}

OneForm operator+(const OneForm& a, const OneForm& b) {
    OneForm out = a;
    for (const auto& blk : b.blocks_)
        for (auto [p, c] : blk.zpoly) out.add_term(c, blk.root, blk.acc, p);
    return out;
}

ModularFamily ModularFamily::twists(const std::shared_ptr<const CuspForm>& f,
                                    const std::vector<int>& s_list) {
    ModularFamily fam;
    std::vector<std::string> labels;
    for (int s : s_list) {
        labels.push_back("A_{" + f->name() + "," + std::to_string(s) + "}");
        fam.members.push_back(FormOfModularType{f, cxd(double(s))});
    }
    fam.alphabet = Alphabet::from_labels(labels);
    return fam;
}

long long ModularFamily::level() const {
    long long N = 1;
    for (const auto& m : members) N = std::max<long long>(N, m.form->level());
    return N;
}

LetterMap family_letter_map(const ModularFamily& fam, const Mat2& m) {
    const int n = fam.size();
    std::vector<std::vector<cxd>> out(n, std::vector<cxd>(n, 0.0));
    // The substitution sends A_u to sum_v c_{vu} A_v where c_{vu} is the
    // coefficient of omega_u in m^*(omega_v); with that orientation the
    // substituted series reproduces the transport along the moved path.
    for (int v = 0; v < n; ++v) {
        const auto& w = fam.members[v];
        const int weight2r = w.form->weight();
        const int sv = w.s_int();
        // chi with f|m = chi f: identity-like matrices on level-1 forms, or
        // the family level's Fricke matrix on measured eigenforms
        cxd chi;
        if (w.form->level() == 1 && m.det() == 1) {
            chi = 1.0;
        } else if (m == Mat2::fricke(w.form->level())) {
            chi = double(w.form->fricke_eigenvalue());
        } else {
            throw std::domain_error(
                "family_letter_map: span not verifiably stable under " + m.str());
        }
        auto P = gamma_matrix(weight2r, m, chi);
        for (int t = 1; t <= weight2r - 1; ++t) {
            cxd entry = P[t - 1][sv - 1];
            if (entry == cxd(0.0)) continue;
            // locate the family member (same form, argument t)
            int u = -1;
            for (int k = 0; k < n; ++k)
                if (fam.members[k].form == w.form &&
                    fam.members[k].integer_s() && fam.members[k].s_int() == t) {
                    u = k;
                    break;
                }
            if (u < 0)
                throw std::domain_error(
                    "family_letter_map: image form (s=" + std::to_string(t) +
                    ") missing from the family");
            out[v][u] += entry;
        }
    }
    return LetterMap(fam.alphabet, fam.alphabet, std::move(out));
}

}  // namespace ncmodsym
