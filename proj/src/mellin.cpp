#include "ncmodsym/mellin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncmodsym {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool near_integer_ge1(cxd s) {
    return s.imag() == 0.0 && s.real() >= 1.0 &&
           s.real() == std::nearbyint(s.real());
}
}  // namespace

cxd mellin_ray_integral(const FourierExpansion& g, cxd s, cxd z0,
                        const IntOptions& opt) {
    if (z0.imag() <= 0.0)
        throw std::domain_error("mellin_ray_integral: Im z0 <= 0");
    if (near_integer_ge1(s)) {
        // int_{i inf}^{z0} e^{2 pi i n z / M} z^{s-1} dz =
        //   (M/(2 pi i n))^s e^{t0} Q_s(t0),  t0 = 2 pi i n z0 / M,
        // with Q_s = (1 + d/dt)^{-1} t^{s-1}
        const int si = (int)std::nearbyint(s.real());
        const double M = double(g.period());
        cxd total = 0.0;
        for (long long n = 1; n <= g.n_max(); ++n) {
            cxd c = g.coeff(n);
            if (c == cxd(0.0)) continue;
            cxd t0 = cxd(0.0, kTwoPi) * double(n) * z0 / M;
            // Q_s(t) = (1 + d/dt)^{-1} t^{s-1}: coefficients a_k of t^k
            // satisfy a_{s-1} = 1, a_{k-1} = -k a_k; evaluate by Horner
            std::vector<double> a(si);
            a[si - 1] = 1.0;
            for (int k = si - 1; k >= 1; --k) a[k - 1] = -double(k) * a[k];
            cxd q = a[si - 1];
            for (int k = si - 2; k >= 0; --k) q = q * t0 + a[k];
            cxd base = M / (cxd(0.0, kTwoPi) * double(n));
            cxd pw = 1.0;
            for (int i = 0; i < si; ++i) pw *= base;
            total += c * pw * std::exp(t0) * q;
        }
        return g.prefactor() * total;
    }
    // quadrature on the truncated vertical ray with the principal branch
    PathSpec path = geodesic_path(BoundaryPoint::infinity(),
                                  BoundaryPoint::interior(z0), opt.height_T);
    const auto& [xs, ws] = gauss_legendre_01(opt.gl_nodes);
    cxd total = 0.0;
    for (const Segment& seg : path.segments) {
        cxd dz = seg.to - seg.from;
        for (int i = 0; i < opt.gl_nodes; ++i) {
            cxd z = seg.from + xs[i] * dz;
            total += ws[i] * dz * g.evaluate(z).value *
                     std::exp((s - 1.0) * std::log(z));
        }
    }
    return total;
}

cxd classical_mellin(const CuspForm& f, cxd s, long long N,
                     const IntOptions& opt) {
    const cxd z0(0.0, 1.0 / std::sqrt(double(N)));
    auto pb = fricke_pullback(f, s, N);
    cxd a1 = mellin_ray_integral(f.expansion(), s, z0, opt);
    cxd a2 = mellin_ray_integral(f.expansion(), pb.new_s, z0, opt);
    return a1 - pb.scalar * a2;
}

NcSeries j_iinf_to_zero(const OmegaFamily& om, int depth, const IntOptions& opt,
                        long long splitN, double split_h) {
    const Mat2 g = Mat2::fricke(splitN);
    const cxd w(0.0, split_h);
    const cxd w2 = g.apply(w);  // i / (splitN * split_h)
    // J_{i inf}^{0} = J_w^0 . J_{i inf}^w and J_w^0 =
    // (J_{i inf}^{g w}(g^* omega))^{-1}
    NcSeries leg1 = total_j(om, geodesic_path(BoundaryPoint::infinity(),
                                              BoundaryPoint::interior(w),
                                              opt.height_T),
                            depth, opt);
    OmegaFamily pulled = om.pullback(g);
    NcSeries leg2 = total_j(pulled, geodesic_path(BoundaryPoint::infinity(),
                                                  BoundaryPoint::interior(w2),
                                                  opt.height_T),
                            depth, opt);
    return mul(inverse(leg2), leg1);
}

TotalMellin total_mellin(const ModularFamily& fam, int depth,
                         const IntOptions& opt, double split_h) {
    const long long N = fam.level();
    if (split_h <= 0.0) split_h = 1.0 / std::sqrt(double(N));
    OmegaFamily om =
        OmegaFamily::modular(fam, 0.5 / std::sqrt(double(N)) * (1.0 - 1e-9));
    TotalMellin tm;
    tm.series = j_iinf_to_zero(om, depth, opt, N, split_h);
    tm.family = fam;
    tm.N = N;
    return tm;
}

double check_functional_equation(const TotalMellin& tm) {
    LetterMap g = family_letter_map(tm.family, Mat2::fricke(tm.N));
    NcSeries prod = mul(apply_letter_map(g, tm.series), tm.series);
    prod -= NcSeries::one(tm.family.alphabet, tm.series.truncation());
    return prod.max_abs_coeff();
}

NcSeries j_iinf_to_cusp_cf(const ModularFamily& fam, const BoundaryPoint& c,
                           int depth, const IntOptions& opt) {
    if (!c.is_cusp())
        throw std::invalid_argument("j_iinf_to_cusp_cf: need a cusp");
    OmegaFamily om = OmegaFamily::modular(fam, 0.25);
    if (c.is_infinity()) return NcSeries::one(fam.alphabet, depth);
    NcSeries j0 = j_iinf_to_zero(om, depth, opt);
    if (c.q() == 0) return j0;
    NcSeries primitive = inverse(j0);  // J_0^{i inf}
    std::vector<Mat2> gammas = decompose_to_primitives(c.p(), c.q());
    if (gammas.size() == 1 && gammas[0] == Mat2::identity()) return j0;
    NcSeries out = NcSeries::one(fam.alphabet, depth);
    // leftmost factor is the one ending at the target convergent
    for (auto it = gammas.rbegin(); it != gammas.rend(); ++it)
        out = mul(out, apply_letter_map(family_letter_map(fam, *it), primitive));
    return out;
}

NcSeries cocycle(const ModularFamily& fam, const BoundaryPoint& a,
                 const Mat2& gamma, int depth, const IntOptions& opt) {
    BoundaryPoint ga = mobius(gamma, a);
    if (ga == a) return NcSeries::one(fam.alphabet, depth);
    // J^a_{gamma a} = J_{i inf}^a . (J_{i inf}^{gamma a})^{-1}
    NcSeries to_a = j_iinf_to_cusp_cf(fam, a, depth, opt);
    NcSeries to_ga = j_iinf_to_cusp_cf(fam, ga, depth, opt);
    return mul(to_a, inverse(to_ga));
}

double cocycle_law_residual(const ModularFamily& fam, const BoundaryPoint& a,
                            const Mat2& gamma, const Mat2& beta, int depth,
                            const IntOptions& opt) {
    NcSeries lhs = cocycle(fam, a, gamma * beta, depth, opt);
    NcSeries rhs = mul(cocycle(fam, a, gamma, depth, opt),
                       apply_letter_map(family_letter_map(fam, gamma),
                                        cocycle(fam, a, beta, depth, opt)));
    return (lhs - rhs).max_abs_coeff();
}

}  // namespace ncmodsym
