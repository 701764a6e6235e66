#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncmodsym/paths.hpp"

using namespace ncmodsym;

TEST_CASE("boundary point parsing and normalization") {
    CHECK(BoundaryPoint::parse("inf").is_infinity());
    CHECK(BoundaryPoint::parse("3/7") == BoundaryPoint::cusp(3, 7));
    CHECK(BoundaryPoint::cusp(6, 14) == BoundaryPoint::cusp(3, 7));
    CHECK(BoundaryPoint::cusp(3, -7) == BoundaryPoint::cusp(-3, 7));
    CHECK(BoundaryPoint::parse("-2") == BoundaryPoint::cusp(-2, 1));
    CHECK(BoundaryPoint::parse("0.5+2i").point() == cxd(0.5, 2.0));
    CHECK_THROWS(BoundaryPoint::interior(cxd(0.0, -1.0)));
}

TEST_CASE("mobius action: identity, fricke, chain property") {
    BoundaryPoint inf = BoundaryPoint::infinity();
    BoundaryPoint zero = BoundaryPoint::cusp(0, 1);
    CHECK(mobius(Mat2::identity(), inf) == inf);

    Mat2 gN = Mat2::fricke(11);
    CHECK(mobius(gN, inf) == zero);
    CHECK(mobius(gN, zero) == inf);

    // fixed point i/sqrt(N)
    double s = 1.0 / std::sqrt(11.0);
    cxd fp(0.0, s);
    cxd moved = gN.apply(fp);
    CHECK(std::abs(moved - fp) < 1e-15);

    Mat2 g1{2, 1, 3, 2}, g2{1, -1, 1, 0};
    BoundaryPoint x = BoundaryPoint::cusp(5, 3);
    CHECK(mobius(g1 * g2, x) == mobius(g1, mobius(g2, x)));
    BoundaryPoint z = BoundaryPoint::interior(cxd(0.3, 0.9));
    CHECK(std::abs(mobius(g1 * g2, z).point() -
                   mobius(g1, mobius(g2, z)).point()) < 1e-14);
}

TEST_CASE("convergents of 3/7") {
    ConvergentChain c = convergents(3, 7);
    // chain 1/0, 0/1, 1/2, 3/7
    REQUIRE(c.p.size() == 4);
    CHECK(c.p[0] == 1);
    CHECK(c.q[0] == 0);
    CHECK(c.p[1] == 0);
    CHECK(c.q[1] == 1);
    CHECK(c.p[2] == 1);
    CHECK(c.q[2] == 2);
    CHECK(c.p[3] == 3);
    CHECK(c.q[3] == 7);
    for (const Mat2& g : c.g) CHECK(g.det() == 1);
    // g_k maps (i inf, 0) to (p_k/q_k, p_{k-1}/q_{k-1})
    for (size_t k = 0; k < c.g.size(); ++k) {
        CHECK(mobius(c.g[k], BoundaryPoint::infinity()) ==
              BoundaryPoint::cusp(c.p[k + 1], c.q[k + 1]));
        CHECK(mobius(c.g[k], BoundaryPoint::cusp(0, 1)) ==
              BoundaryPoint::cusp(c.p[k], c.q[k]));
    }
}

TEST_CASE("convergents of an integer") {
    ConvergentChain c = convergents(1, 1);
    REQUIRE(c.g.size() == 1);
    CHECK(c.g[0].det() == 1);
    CHECK(c.g[0] == Mat2{1, -1, 1, 0});
}

TEST_CASE("decompose_to_primitives") {
    CHECK(decompose_to_primitives(0, 1).size() == 1);
    CHECK(decompose_to_primitives(0, 1)[0] == Mat2::identity());
    auto d37 = decompose_to_primitives(3, 7);
    CHECK(d37.size() == 3);
    for (const Mat2& g : d37) CHECK(g.det() == 1);
    // endpoint chain: g_k(i inf) runs over the convergents, ending at 3/7
    CHECK(mobius(d37.back(), BoundaryPoint::infinity()) == BoundaryPoint::cusp(3, 7));
    // negative target through translation
    auto dm = decompose_to_primitives(-3, 7);
    CHECK(mobius(dm.back(), BoundaryPoint::infinity()) == BoundaryPoint::cusp(-3, 7));
    CHECK(mobius(dm.front(), BoundaryPoint::cusp(0, 1)) == BoundaryPoint::infinity());
}

TEST_CASE("geodesic paths") {
    PathSpec p = geodesic_path(BoundaryPoint::infinity(),
                               BoundaryPoint::interior(cxd(0.0, 1.0)), 12.0);
    REQUIRE(!p.segments.empty());
    CHECK(p.segments.front().from.imag() == doctest::Approx(12.0));
    CHECK(p.segments.back().to == cxd(0.0, 1.0));
    // segments concatenate head to tail
    for (size_t i = 0; i + 1 < p.segments.size(); ++i)
        CHECK(p.segments[i].to == p.segments[i + 1].from);

    PathSpec back = geodesic_path(BoundaryPoint::interior(cxd(0.0, 1.0)),
                                  BoundaryPoint::infinity(), 12.0);
    CHECK(back.segments.front().from == cxd(0.0, 1.0));
    CHECK(back.segments.back().to.imag() == doctest::Approx(12.0));

    CHECK_THROWS(geodesic_path(BoundaryPoint::cusp(3, 7),
                               BoundaryPoint::infinity(), 12.0));
    CHECK(geodesic_path(BoundaryPoint::infinity(), BoundaryPoint::infinity())
              .segments.empty());
}
