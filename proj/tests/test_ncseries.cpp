#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <complex>
#include <random>

#include "ncmodsym/ncseries.hpp"

using namespace ncmodsym;

namespace {

Alphabet two_letters() { return Alphabet::from_labels({"A0", "A1"}); }

NcSeries random_series(const Alphabet& a, int d, std::mt19937_64& rng,
                       bool unit_constant) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    NcSeries s(a, d);
    std::vector<Word> stack{Word{}};
    while (!stack.empty()) {
        Word w = stack.back();
        stack.pop_back();
        if (w.empty() && unit_constant)
            s.set_coeff(w, 1.0);
        else
            s.set_coeff(w, cxd(u(rng), u(rng)));
        if (static_cast<int>(w.size()) < d) {
            for (int i = 0; i < a.size(); ++i) {
                Word w2 = w;
                w2.push_back(a.letter(i).id);
                stack.push_back(w2);
            }
        }
    }
    return s;
}

// brute-force convolution oracle: coefficient of w in a*b as a sum over all
// prefix/suffix splittings of w
cxd convolve_at(const NcSeries& a, const NcSeries& b, const Word& w) {
    cxd total = 0.0;
    for (size_t k = 0; k <= w.size(); ++k) {
        Word u(w.begin(), w.begin() + k);
        Word v(w.begin() + k, w.end());
        total += a.coeff(u) * b.coeff(v);
    }
    return total;
}

}  // namespace

TEST_CASE("mul identity and geometric truncation") {
    Alphabet a = Alphabet::from_labels({"A0"});
    NcSeries one = NcSeries::one(a, 2);
    CHECK(mul(one, one).coeff({}) == cxd(1.0));

    NcSeries p(a, 2);  // 1 + A0
    p.set_coeff({}, 1.0);
    p.set_coeff({0}, 1.0);
    NcSeries q(a, 2);  // 1 - A0 + A0^2
    q.set_coeff({}, 1.0);
    q.set_coeff({0}, -1.0);
    q.set_coeff({0, 0}, 1.0);
    NcSeries prod = mul(p, q);
    CHECK(std::abs(prod.coeff({}) - cxd(1.0)) == 0.0);
    CHECK(std::abs(prod.coeff({0})) == 0.0);
    CHECK(std::abs(prod.coeff({0, 0})) == 0.0);
}

TEST_CASE("mul against brute-force convolution oracle") {
    std::mt19937_64 rng(20240501);
    Alphabet a = two_letters();
    for (int rep = 0; rep < 4; ++rep) {
        NcSeries x = random_series(a, 2, rng, false);
        NcSeries y = random_series(a, 2, rng, false);
        NcSeries p = mul(x, y);
        for (const Word& w : {Word{}, Word{0}, Word{1}, Word{0, 1}, Word{1, 1},
                              Word{0, 0}, Word{1, 0}}) {
            CHECK(std::abs(p.coeff(w) - convolve_at(x, y, w)) < 1e-14);
        }
    }
}

TEST_CASE("mul mismatched truncation throws") {
    Alphabet a = two_letters();
    CHECK_THROWS(mul(NcSeries::one(a, 2), NcSeries::one(a, 3)));
}

TEST_CASE("inverse: trivial, geometric, two-sided") {
    Alphabet a = Alphabet::from_labels({"A0"});
    NcSeries one = NcSeries::one(a, 3);
    NcSeries invone = inverse(one);
    CHECK(std::abs(invone.coeff({}) - cxd(1.0)) < 1e-15);

    NcSeries p(a, 3);
    p.set_coeff({}, 1.0);
    p.set_coeff({0}, 1.0);
    NcSeries ip = inverse(p);
    CHECK(std::abs(ip.coeff({0}) - cxd(-1.0)) < 1e-15);
    CHECK(std::abs(ip.coeff({0, 0}) - cxd(1.0)) < 1e-15);
    CHECK(std::abs(ip.coeff({0, 0, 0}) - cxd(-1.0)) < 1e-15);

    std::mt19937_64 rng(7);
    Alphabet b = two_letters();
    NcSeries x = random_series(b, 3, rng, true);
    NcSeries lhs = mul(x, inverse(x));
    NcSeries rhs = mul(inverse(x), x);
    lhs -= NcSeries::one(b, 3);
    rhs -= NcSeries::one(b, 3);
    CHECK(lhs.max_abs_coeff() < 1e-12);
    CHECK(rhs.max_abs_coeff() < 1e-12);
}

TEST_CASE("inverse of group-like series is antipode (reverse word, sign)") {
    // for group-like g, g^{-1}(w) = (-1)^{|w|} g(reverse(w)); built from
    // exp of a primitive element at D <= 3
    Alphabet a = two_letters();
    NcSeries prim(a, 3);
    prim.set_coeff({0}, cxd(0.3, 0.1));
    prim.set_coeff({1}, cxd(-0.2, 0.4));
    // a primitive Lie bracket term keeps the series group-like
    prim.add_coeff({0, 1}, cxd(0.05, -0.02));
    prim.add_coeff({1, 0}, cxd(-0.05, 0.02));
    NcSeries g = exp_series(prim);
    REQUIRE(is_group_like(g, 1e-12).ok);
    NcSeries gi = inverse(g);
    for (const auto& [w, c] : g.coeffs()) {
        Word r(w.rbegin(), w.rend());
        double sign = (w.size() % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(gi.coeff(r) - sign * c) < 1e-12);
    }
    CHECK_THROWS(inverse(NcSeries(a, 2)));
}

TEST_CASE("apply_letter_map: identity, diagonal, homomorphism") {
    Alphabet a = two_letters();
    std::mt19937_64 rng(99);
    NcSeries x = random_series(a, 3, rng, false);

    NcSeries same = apply_letter_map(LetterMap::identity(a), x);
    NcSeries diff = same - x;
    CHECK(diff.max_abs_coeff() < 1e-15);

    std::vector<cxd> c = {cxd(2.0, 1.0), cxd(0.0, -1.0)};
    NcSeries viamap = apply_letter_map(LetterMap::diagonal(a, c), x);
    NcSeries viascale = scale_letters(x, c);
    CHECK((viamap - viascale).max_abs_coeff() < 1e-15);
    CHECK(std::abs(viascale.coeff({0, 1}) - x.coeff({0, 1}) * c[0] * c[1]) < 1e-14);

    // ring homomorphism on random inputs
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<std::vector<cxd>> m(2, std::vector<cxd>(2));
    for (auto& row : m)
        for (auto& e : row) e = cxd(u(rng), u(rng));
    LetterMap g(a, a, m);
    NcSeries y = random_series(a, 3, rng, false);
    NcSeries lhs = apply_letter_map(g, mul(x, y));
    NcSeries rhs = mul(apply_letter_map(g, x), apply_letter_map(g, y));
    CHECK((lhs - rhs).max_abs_coeff() < 1e-12);
}

TEST_CASE("letter map of a matrix product is composition of maps") {
    Alphabet a = two_letters();
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rand_map = [&]() {
        std::vector<std::vector<cxd>> m(2, std::vector<cxd>(2));
        for (auto& row : m)
            for (auto& e : row) e = cxd(u(rng), u(rng));
        return LetterMap(a, a, m);
    };
    LetterMap g1 = rand_map(), g2 = rand_map();
    NcSeries x = random_series(a, 3, rng, false);
    NcSeries lhs = apply_letter_map(g1 * g2, x);
    NcSeries rhs = apply_letter_map(g1, apply_letter_map(g2, x));
    CHECK((lhs - rhs).max_abs_coeff() < 1e-12);
}

TEST_CASE("shuffle_words enumeration") {
    Word eps;
    Word v{1, 0};
    auto sh0 = shuffle_words(eps, v);
    REQUIRE(sh0.size() == 1);
    CHECK(sh0[0] == v);

    auto sh1 = shuffle_words(Word{0}, Word{1});
    REQUIRE(sh1.size() == 2);

    // sh(A0 A1, A0) = {A0A0A1 x2, A0A1A0}, cardinality binomial(3,1)
    auto sh2 = shuffle_words(Word{0, 1}, Word{0});
    REQUIRE(sh2.size() == 3);
    int count001 = 0, count010 = 0;
    for (const Word& w : sh2) {
        if (w == Word{0, 0, 1}) ++count001;
        if (w == Word{0, 1, 0}) ++count010;
    }
    CHECK(count001 == 2);
    CHECK(count010 == 1);
}

TEST_CASE("is_group_like detects failures and accepts exponentials") {
    Alphabet a = two_letters();
    NcSeries one = NcSeries::one(a, 3);
    CHECK(is_group_like(one, 1e-14).ok);

    NcSeries prim(a, 4);
    prim.set_coeff({0}, 0.7);
    NcSeries e = exp_series(prim);
    CHECK(is_group_like(e, 1e-12).ok);

    NcSeries bad = NcSeries::one(a, 2);
    bad.set_coeff({0, 1}, 1.0);
    auto rep = is_group_like(bad, 1e-10);
    CHECK(!rep.ok);
    CHECK(rep.max_residual == doctest::Approx(1.0));
}

TEST_CASE("group-like elements form a group") {
    Alphabet a = two_letters();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    auto rand_grouplike = [&]() {
        NcSeries prim(a, 4);
        prim.set_coeff({0}, cxd(u(rng), u(rng)));
        prim.set_coeff({1}, cxd(u(rng), u(rng)));
        cxd br(u(rng), u(rng));
        prim.add_coeff({0, 1}, br);
        prim.add_coeff({1, 0}, -br);
        return exp_series(prim);
    };
    const double tol = 1e-11;
    for (int rep = 0; rep < 3; ++rep) {
        NcSeries g = rand_grouplike(), h = rand_grouplike();
        CHECK(is_group_like(mul(g, h), 10 * tol).ok);
        CHECK(is_group_like(inverse(g), 10 * tol).ok);
    }
}

TEST_CASE("associativity on random triples") {
    Alphabet a = two_letters();
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 3; ++rep) {
        NcSeries x = random_series(a, 4, rng, false);
        NcSeries y = random_series(a, 4, rng, false);
        NcSeries z = random_series(a, 4, rng, false);
        NcSeries lhs = mul(mul(x, y), z);
        NcSeries rhs = mul(x, mul(y, z));
        CHECK((lhs - rhs).max_abs_coeff() < 1e-12);
    }
}

TEST_CASE("json serialization shape") {
    Alphabet a = two_letters();
    NcSeries s = NcSeries::one(a, 2);
    s.set_coeff({1, 0}, cxd(0.5, -0.25));
    std::string j = s.to_json();
    CHECK(j.find("\"alphabet\"") != std::string::npos);
    CHECK(j.find("\"D\":2") != std::string::npos);
    CHECK(j.find("\"word\":[1,0]") != std::string::npos);
}
