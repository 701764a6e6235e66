#pragma once

// Classical and total Mellin transforms, functional equations, and the
// noncommutative cocycle attached to a stable family.
//
// Convention table (shared by every module and test):
//   * transports J_a^z run FROM a TO z; products compose by
//     J_b^z = J_a^z . J_b^a, so the factor ending at the final endpoint is
//     leftmost;
//   * the coefficient of A_{v1}...A_{vn} is I(w_{v1},...,w_{vn}) with w_{v1}
//     outermost (nearest the upper limit);
//   * the Mellin path is oriented from i inf toward 0, and the depth-1
//     coefficient of the total transform is Lambda(f; s) = int_{i inf}^0
//     f(z) z^{s-1} dz with the principal branch of z^{s-1} on H.

#include "ncmodsym/itint.hpp"
#include "ncmodsym/modforms.hpp"

namespace ncmodsym {

// Lambda(f; s) through the fixed-point split: int_{i inf}^{i/sqrt N} of the
// form minus the same integral of its Fricke pullback.  Integer Mellin
// arguments integrate term by term (each term reduces to e^t times the
// polynomial (1+d/dt)^{-1} t^{s-1}); other arguments use panel quadrature.
cxd classical_mellin(const CuspForm& f, cxd s, long long N,
                     const IntOptions& opt = {});

// int_{i inf}^{z0} g(z) z^{s-1} dz for an expansion g, termwise (integer s)
// or by quadrature along the vertical ray
cxd mellin_ray_integral(const FourierExpansion& g, cxd s, cxd z0,
                        const IntOptions& opt = {});

// J_{i inf}^{0}(omega) via the split at w = i h: the leg from w to 0 is
// rewritten through the Fricke matrix of level splitN as a vertical-ray
// integral of the pulled-back family.
NcSeries j_iinf_to_zero(const OmegaFamily& om, int depth,
                        const IntOptions& opt = {}, long long splitN = 1,
                        double split_h = 1.0);

struct TotalMellin {
    NcSeries series;
    ModularFamily family;
    long long N = 1;
};

// Total Mellin transform of a stable eigenform family; split_h defaults to
// the fixed-point height 1/sqrt(N).
TotalMellin total_mellin(const ModularFamily& fam, int depth,
                         const IntOptions& opt = {}, double split_h = 0.0);

// residual of g_{N*}(TM) . TM = 1 with g_{N*} the measured letter map
double check_functional_equation(const TotalMellin& tm);

// J_{i inf}^{c} assembled from the continued-fraction primitives: the
// ordered product gamma_{n*}(J_0^{i inf}) ... gamma_{0*}(J_0^{i inf}) over
// the convergents of c.  Requires a family stable under all of SL2(Z).
NcSeries j_iinf_to_cusp_cf(const ModularFamily& fam, const BoundaryPoint& c,
                           int depth, const IntOptions& opt = {});

// the noncommutative cocycle zeta_a(gamma) = J^a_{gamma a}
NcSeries cocycle(const ModularFamily& fam, const BoundaryPoint& a,
                 const Mat2& gamma, int depth, const IntOptions& opt = {});

// residual of the cocycle law zeta_a(gamma beta) =
// zeta_a(gamma) . gamma_*(zeta_a(beta))
double cocycle_law_residual(const ModularFamily& fam, const BoundaryPoint& a,
                            const Mat2& gamma, const Mat2& beta, int depth,
                            const IntOptions& opt = {});

}  // namespace ncmodsym
