#pragma once

// Boundary points of the upper half-plane (cusps and interior points),
// integer 2x2 matrices acting by fractional linear transformations, and the
// continued-fraction decomposition of geodesics between cusps.

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncmodsym {

using cxd = std::complex<double>;

// Integer 2x2 matrix (a b; c d); the library only ever acts by matrices with
// positive determinant.
struct Mat2 {
    long long a = 1, b = 0, c = 0, d = 1;

    long long det() const { return a * d - b * c; }
    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                    m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    bool operator==(const Mat2& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    // adjugate; for det 1 this is the inverse
    Mat2 adj() const { return Mat2{d, -b, -c, a}; }
    static Mat2 identity() { return Mat2{}; }
    static Mat2 fricke(long long N) { return Mat2{0, -1, N, 0}; }
    static Mat2 translation(long long m) { return Mat2{1, m, 0, 1}; }

    cxd apply(cxd z) const {
        return (cxd(double(a)) * z + double(b)) / (cxd(double(c)) * z + double(d));
    }
    std::string str() const;
};

// A point of H together with the cusps Q u {i inf}; i inf is the cusp 1/0.
class BoundaryPoint {
public:
    BoundaryPoint() : is_cusp_(true), p_(1), q_(0) {}  // i inf
    static BoundaryPoint cusp(long long p, long long q);
    static BoundaryPoint infinity() { return BoundaryPoint(); }
    static BoundaryPoint interior(cxd z);
    // parses "p/q", integers, "inf"/"oo", or "x+yi" for interior points
    static BoundaryPoint parse(const std::string& text);

    bool is_cusp() const { return is_cusp_; }
    bool is_infinity() const { return is_cusp_ && q_ == 0; }
    long long p() const { return p_; }
    long long q() const { return q_; }
    cxd point() const;  // interior points only
    double rational() const { return double(p_) / double(q_); }
    bool operator==(const BoundaryPoint& o) const;
    std::string str() const;

private:
    bool is_cusp_ = false;
    long long p_ = 0, q_ = 1;
    cxd z_{0.0, 1.0};
};

// Fractional linear action; exact integer arithmetic on cusps.
BoundaryPoint mobius(const Mat2& g, const BoundaryPoint& x);

// Continued-fraction convergents p_k/q_k of a rational a = p/q > 0 together
// with the unimodular matrices g_k = (p_k, (-1)^{k-1} p_{k-1}; q_k,
// (-1)^{k-1} q_{k-1}).  The chain starts at p_{-1}/q_{-1} = 1/0.
struct ConvergentChain {
    std::vector<long long> p;  // p[k+1] holds p_k, k = -1..n
    std::vector<long long> q;
    std::vector<Mat2> g;       // g[k] holds g_k, k = 0..n
};

ConvergentChain convergents(long long num, long long den);

// Matrices gamma_k such that the transport from i inf to p/q factors as the
// ordered product, leftmost factor last in the chain,
//   J_{iinf}^{p/q} = gamma_{n*}(J_0^{iinf}) ... gamma_{0*}(J_0^{iinf}).
// Negative targets are shifted right by an integer translation first.
std::vector<Mat2> decompose_to_primitives(long long num, long long den);

// A path through H: straight segments; endpoints at cusps are represented by
// the vertical-ray truncation applied during construction.
struct Segment {
    cxd from, to;
};

struct PathSpec {
    std::vector<Segment> segments;
    // analytic bound on the dropped tail when a ray to i inf was truncated
    double truncation_bound = 0.0;

    double min_im() const;
};

// Path between two points of H u {i inf}; rays to i inf are truncated at
// height T.  Rational cusps are rejected here: transport them with a
// unimodular matrix first (see itint::total_j_path).
PathSpec geodesic_path(const BoundaryPoint& from, const BoundaryPoint& to,
                       double height_T = 12.0);

// chord of the path between two interior points, split to keep segments short
PathSpec chord_path(cxd from, cxd to);

}  // namespace ncmodsym
