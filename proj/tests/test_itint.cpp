#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ncmodsym/itint.hpp"

using namespace ncmodsym;

namespace {

OmegaFamily delta_pair() {
    // two twists of delta, enough structure for depth-2 engine cross-checks
    return OmegaFamily::modular(
        ModularFamily::twists(CuspForm::delta(256), {12, 10}));
}

IntOptions fast_opts() {
    IntOptions o;
    o.steps_per_unit = 200;
    o.min_steps = 48;
    o.gl_nodes = 40;
    return o;
}

}  // namespace

TEST_CASE("empty path gives the unit series") {
    OmegaFamily om = delta_pair();
    NcSeries j = total_j(om, PathSpec{}, 3);
    CHECK((j - NcSeries::one(om.alphabet(), 3)).max_abs_coeff() == 0.0);
}

TEST_CASE("depth-1 transport equals line quadrature") {
    OmegaFamily om = delta_pair();
    PathSpec path = chord_path(cxd(0.0, 1.0), cxd(0.4, 2.0));
    NcSeries j = total_j(om, path, 1, fast_opts());
    for (int v = 0; v < om.size(); ++v) {
        cxd oracle = nested_integral({om.form(v)}, path, fast_opts());
        cxd got = j.coeff({om.alphabet().letter(v).id});
        CHECK(std::abs(got - oracle) < 1e-10 * (std::abs(oracle) + 1e-12));
    }
}

TEST_CASE("depth-2 transport matches nested quadrature") {
    OmegaFamily om = delta_pair();
    PathSpec path = geodesic_path(BoundaryPoint::infinity(),
                                  BoundaryPoint::interior(cxd(0.0, 1.0)));
    NcSeries j = total_j(om, path, 2, fast_opts());
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
            cxd oracle = nested_integral({om.form(u), om.form(v)}, path, fast_opts());
            cxd got = j.coeff({u, v});
            CHECK(std::abs(got - oracle) < 1e-8 * (std::abs(oracle) + 1e-10));
        }
}

TEST_CASE("shuffle identities for nested quadrature") {
    OmegaFamily om = delta_pair();
    PathSpec path = chord_path(cxd(-0.2, 0.9), cxd(0.3, 1.4));
    cxd i1 = nested_integral({om.form(0)}, path);
    cxd i11 = nested_integral({om.form(0), om.form(0)}, path);
    CHECK(std::abs(i11 - 0.5 * i1 * i1) < 1e-8 * (std::abs(i11) + 1e-12));

    cxd iu = nested_integral({om.form(0)}, path);
    cxd iv = nested_integral({om.form(1)}, path);
    cxd iuv = nested_integral({om.form(0), om.form(1)}, path);
    cxd ivu = nested_integral({om.form(1), om.form(0)}, path);
    CHECK(std::abs(iuv + ivu - iu * iv) < 1e-8 * (std::abs(iu * iv) + 1e-12));
}

TEST_CASE("transport output is group-like") {
    OmegaFamily om = delta_pair();
    PathSpec path = geodesic_path(BoundaryPoint::infinity(),
                                  BoundaryPoint::interior(cxd(0.0, 1.0)));
    NcSeries j = total_j(om, path, 4, fast_opts());
    auto rep = is_group_like(j, 1e-8);
    CHECK(rep.ok);
}

TEST_CASE("composition across an intermediate point") {
    OmegaFamily om = delta_pair();
    cxd a(0.0, 2.5), b(0.2, 1.0), z(-0.3, 1.2);
    NcSeries j_bz = total_j(om, chord_path(b, z), 3, fast_opts());
    NcSeries j_az = total_j(om, chord_path(a, z), 3, fast_opts());
    NcSeries j_ba = total_j(om, chord_path(b, a), 3, fast_opts());
    NcSeries diff = j_bz - mul(j_az, j_ba);
    CHECK(diff.max_abs_coeff() < 1e-8);
}

TEST_CASE("homotopy invariance at desk scale") {
    OmegaFamily om = delta_pair();
    cxd a(-0.4, 1.0), z(0.4, 1.1);
    NcSeries direct = total_j(om, chord_path(a, z), 2, fast_opts());
    PathSpec dogleg;
    cxd mid(0.1, 2.2);
    for (auto& seg : chord_path(a, mid).segments) dogleg.segments.push_back(seg);
    for (auto& seg : chord_path(mid, z).segments) dogleg.segments.push_back(seg);
    NcSeries other = total_j(om, dogleg, 2, fast_opts());
    CHECK((direct - other).max_abs_coeff() < 1e-9);
}

TEST_CASE("path refinement shows 4th-order convergence") {
    OmegaFamily om = delta_pair();
    PathSpec path = chord_path(cxd(0.0, 1.0), cxd(0.5, 2.0));
    auto run = [&](int steps) {
        IntOptions o;
        o.steps_per_unit = 1;
        o.min_steps = steps;
        return total_j(om, path, 2, o);
    };
    NcSeries ref = run(256);
    double e1 = (run(8) - ref).max_abs_coeff();
    double e2 = (run(16) - ref).max_abs_coeff();
    double ratio = e1 / e2;
    CHECK(ratio > 8.0);
    CHECK(ratio < 32.0);
    // doubling the step count moves coefficients by less than the coarse error
    CHECK((run(16) - run(8)).max_abs_coeff() <= 2.0 * e1);
}

TEST_CASE("cycle identity on a triangle of interior points") {
    OmegaFamily om = delta_pair();
    std::vector<cxd> tri = {cxd(0.0, 1.0), cxd(0.5, 1.5), cxd(-0.4, 2.0)};
    CHECK(cycle_check(om, tri, 3, fast_opts()) < 1e-8);
}

TEST_CASE("nonlinear connection: cycle identity and constant-term rejection") {
    auto delta = CuspForm::delta(256);
    Alphabet a = Alphabet::from_labels({"A0", "A1"});
    NonlinearOmega om;
    om.alphabet = a;
    om.terms[{0}] = OneForm::modular(FormOfModularType{delta, 12.0});
    om.terms[{1}] = OneForm::modular(FormOfModularType{delta, 10.0});
    om.terms[{0, 1}] = OneForm::modular(FormOfModularType{delta, 8.0});
    std::vector<cxd> tri = {cxd(0.0, 1.1), cxd(0.4, 1.6), cxd(-0.5, 1.9)};
    CHECK(cycle_check(om, tri, 3, fast_opts()) < 1e-8);

    NonlinearOmega bad = om;
    bad.terms[{}] = OneForm::modular(FormOfModularType{delta, 6.0});
    CHECK_THROWS(total_j(bad, chord_path(tri[0], tri[1]), 2));
}

TEST_CASE("multi lower limits degenerate to the one-point transport") {
    OmegaFamily om = delta_pair();
    cxd a(0.1, 1.0), z(-0.2, 1.6);
    auto lower_const = [&](int, int) { return a; };
    IntOptions o = fast_opts();
    NcSeries ml = total_j_multi_lower(om, lower_const, z, 2, o);
    NcSeries j = total_j(om, chord_path(a, z), 2, o);
    CHECK((ml - j).max_abs_coeff() < 1e-9);
}

TEST_CASE("multi lower limits compose through an intermediate point") {
    OmegaFamily om = delta_pair();
    cxd z(0.0, 1.3), a(0.25, 0.9);
    std::vector<std::vector<cxd>> pts = {
        {cxd(-0.1, 1.0), cxd(0.2, 1.5)},
        {cxd(0.3, 1.2), cxd(-0.3, 0.8)},
    };
    auto lower = [&](int i, int v) { return pts[i - 1][v]; };
    IntOptions o = fast_opts();
    NcSeries lhs = total_j_multi_lower(om, lower, z, 2, o);
    NcSeries rhs = mul(total_j(om, chord_path(a, z), 2, o),
                       total_j_multi_lower(om, lower, a, 2, o));
    CHECK((lhs - rhs).max_abs_coeff() < 1e-8);
}

TEST_CASE("multi lower limits transform functorially") {
    auto delta = CuspForm::delta(256);
    ModularFamily fam =
        ModularFamily::twists(delta, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
    OmegaFamily om = OmegaFamily::modular(fam);
    Mat2 g{1, 0, 1, 1};
    LetterMap gstar = family_letter_map(fam, g);

    // position-indexed lower limits: the functorial law moves the base
    // points with g while the letters are substituted, which requires the
    // slot assignment not to single out letters
    cxd z(0.05, 1.1);
    std::vector<cxd> pts = {cxd(-0.25, 1.0), cxd(0.3, 1.3)};
    auto lower = [&](int i, int) { return pts[i - 1]; };
    auto lower_g = [&](int i, int) { return g.apply(pts[i - 1]); };

    IntOptions o;
    o.gl_nodes = 32;
    NcSeries lhs = total_j_multi_lower(om, lower_g, g.apply(z), 2, o);
    NcSeries rhs = apply_letter_map(gstar, total_j_multi_lower(om, lower, z, 2, o));
    CHECK((lhs - rhs).max_abs_coeff() < 1e-6);
}

TEST_CASE("cusp transport: composition holds across the zero cusp") {
    // twists inside the critical strip: pullbacks stay in the polynomial span
    OmegaFamily om = OmegaFamily::modular(
        ModularFamily::twists(CuspForm::delta(256), {6, 10}));
    IntOptions o = fast_opts();
    BoundaryPoint zero = BoundaryPoint::cusp(0, 1);
    BoundaryPoint ii = BoundaryPoint::interior(cxd(0.0, 1.0));
    BoundaryPoint inf = BoundaryPoint::infinity();

    // J_{i}^{0} . J_{iinf}^{i} = J_{iinf}^{0}
    NcSeries a = total_j_path(om, ii, zero, 2, o);
    NcSeries b = total_j_path(om, inf, ii, 2, o);
    NcSeries c = total_j_path(om, inf, zero, 2, o);
    CHECK((mul(a, b) - c).max_abs_coeff() < 1e-8);

    // orientation reversal inverts
    NcSeries back = total_j_path(om, zero, ii, 2, o);
    CHECK((mul(a, back) - NcSeries::one(om.alphabet(), 2)).max_abs_coeff() < 1e-8);
}

TEST_CASE("cusp_to_infinity produces unimodular matrices hitting the cusp") {
    for (auto [p, q] : std::vector<std::pair<long long, long long>>{
             {0, 1}, {1, 1}, {3, 7}, {-2, 5}, {5, 3}}) {
        Mat2 m = cusp_to_infinity(BoundaryPoint::cusp(p, q));
        CHECK(m.det() == 1);
        CHECK(mobius(m, BoundaryPoint::infinity()) == BoundaryPoint::cusp(p, q));
    }
}

TEST_CASE("height guard rejects low evaluations") {
    OmegaFamily om = delta_pair().with_min_im(0.5);
    CHECK_THROWS(om.evaluate_all(cxd(0.0, 0.4)));
    CHECK_THROWS(total_j(om, chord_path(cxd(0.0, 0.3), cxd(0.0, 1.0)), 1));
    CHECK_NOTHROW(om.evaluate_all(cxd(0.0, 0.5)));
}
