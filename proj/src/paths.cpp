#include "ncmodsym/paths.hpp"

#include <cmath>
#include <sstream>

namespace ncmodsym {

std::string Mat2::str() const {
    std::ostringstream os;
    os << "[" << a << "," << b << ";" << c << "," << d << "]";
    return os.str();
}

BoundaryPoint BoundaryPoint::cusp(long long p, long long q) {
    if (p == 0 && q == 0) throw std::invalid_argument("cusp 0/0");
    long long g = std::gcd(std::abs(p), std::abs(q));
    p /= g;
    q /= g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
    if (q == 0) p = 1;  // all infinities identified
    BoundaryPoint x;
    x.is_cusp_ = true;
    x.p_ = p;
    x.q_ = q;
    return x;
}

BoundaryPoint BoundaryPoint::interior(cxd z) {
    if (z.imag() <= 0.0)
        throw std::invalid_argument("interior point must have Im z > 0");
    BoundaryPoint x;
    x.is_cusp_ = false;
    x.z_ = z;
    return x;
}

BoundaryPoint BoundaryPoint::parse(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "1/0")
        return BoundaryPoint::infinity();
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        long long p = std::stoll(text.substr(0, slash));
        long long q = std::stoll(text.substr(slash + 1));
        return BoundaryPoint::cusp(p, q);
    }
    auto ipos = text.find('i');
    if (ipos != std::string::npos) {
        // "x+yi" or "yi"
        std::string body = text.substr(0, ipos);
        auto sep = body.find_last_of("+-");
        double re = 0.0, im = 1.0;
        if (sep == std::string::npos || sep == 0) {
            if (!body.empty()) im = std::stod(body);
        } else {
            re = std::stod(body.substr(0, sep));
            im = std::stod(body.substr(sep));
        }
        return BoundaryPoint::interior(cxd(re, im));
    }
    return BoundaryPoint::cusp(std::stoll(text), 1);
}

cxd BoundaryPoint::point() const {
    if (is_cusp_) throw std::domain_error("point(): cusp has no interior value");
    return z_;
}

bool BoundaryPoint::operator==(const BoundaryPoint& o) const {
    if (is_cusp_ != o.is_cusp_) return false;
    if (is_cusp_) return p_ == o.p_ && q_ == o.q_;
    return z_ == o.z_;
}

std::string BoundaryPoint::str() const {
    std::ostringstream os;
    if (is_cusp_) {
        if (q_ == 0)
            os << "inf";
        else
            os << p_ << "/" << q_;
    } else {
        os << z_.real() << "+" << z_.imag() << "i";
    }
    return os.str();
}

BoundaryPoint mobius(const Mat2& g, const BoundaryPoint& x) {
    if (g.det() <= 0) throw std::invalid_argument("mobius: determinant <= 0");
    if (x.is_cusp()) {
        long long num = g.a * x.p() + g.b * x.q();
        long long den = g.c * x.p() + g.d * x.q();
        if (num == 0 && den == 0) throw std::domain_error("mobius: degenerate");
        return BoundaryPoint::cusp(num, den);
    }
    return BoundaryPoint::interior(g.apply(x.point()));
}

ConvergentChain convergents(long long num, long long den) {
    if (den <= 0 || num <= 0)
        throw std::invalid_argument("convergents: need a rational > 0");
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    // continued-fraction digits by the Euclidean algorithm
    std::vector<long long> digits;
    long long x = num, y = den;
    while (y != 0) {
        digits.push_back(x / y);
        long long r = x % y;
        x = y;
        y = r;
    }
    ConvergentChain chain;
    chain.p = {1};  // p_{-1}
    chain.q = {0};
    long long pk1 = 1, qk1 = 0;  // p_{k-1}, q_{k-1}
    long long pk2 = 0, qk2 = 1;  // p_{k-2}, q_{k-2}
    for (size_t k = 0; k < digits.size(); ++k) {
        long long pk = digits[k] * pk1 + pk2;
        long long qk = digits[k] * qk1 + qk2;
        chain.p.push_back(pk);
        chain.q.push_back(qk);
        long long sign = (k % 2 == 0) ? -1 : 1;  // (-1)^{k-1}
        Mat2 gk{pk, sign * pk1, qk, sign * qk1};
        if (gk.det() != 1) throw std::logic_error("convergents: det != 1");
        chain.g.push_back(gk);
        pk2 = pk1;
        qk2 = qk1;
        pk1 = pk;
        qk1 = qk;
    }
    return chain;
}

std::vector<Mat2> decompose_to_primitives(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("decompose: denominator <= 0");
    long long g = std::gcd(std::abs(num), den);
    num /= g;
    den /= g;
    if (num == 0) return {Mat2::identity()};
    // negative targets: shift right into the positive axis, conjugate back
    long long shift = 0;
    if (num < 0) {
        shift = (-num) / den + 1;
        num += shift * den;
        if (num == 0) {  // target was a negative integer
            std::vector<Mat2> out{Mat2::translation(-shift)};
            return out;
        }
    }
    ConvergentChain chain = convergents(num, den);
    std::vector<Mat2> out;
    out.reserve(chain.g.size());
    for (const Mat2& gk : chain.g) {
        if (shift != 0)
            out.push_back(Mat2::translation(-shift) * gk);
        else
            out.push_back(gk);
    }
    return out;
}

double PathSpec::min_im() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Segment& s : segments)
        m = std::min(m, std::min(s.from.imag(), s.to.imag()));
    return m;
}

PathSpec chord_path(cxd from, cxd to) {
    PathSpec p;
    if (from == to) return p;
    // split long chords so quadrature panels stay well resolved
    double len = std::abs(to - from);
    int pieces = std::max(1, static_cast<int>(std::ceil(len)));
    cxd prev = from;
    for (int i = 1; i <= pieces; ++i) {
        cxd next = from + (to - from) * (double(i) / pieces);
        p.segments.push_back({prev, next});
        prev = next;
    }
    return p;
}

PathSpec geodesic_path(const BoundaryPoint& from, const BoundaryPoint& to,
                       double height_T) {
    if ((from.is_cusp() && !from.is_infinity()) ||
        (to.is_cusp() && !to.is_infinity()))
        throw std::invalid_argument(
            "geodesic_path: rational cusps must be transported to i inf first");
    if (from.is_infinity() && to.is_infinity())
        return PathSpec{};
    if (from.is_infinity()) {
        cxd z = to.point();
        if (z.imag() >= height_T) return chord_path(cxd(z.real(), z.imag() + 1.0), z);
        PathSpec p;
        // vertical ray from the truncation height down to Im z, then nothing
        // else: the ray already ends at the target
        double y = height_T;
        double y_end = z.imag();
        cxd top(z.real(), y), bottom(z.real(), y_end);
        // geometric panelization keeps step counts balanced in log scale
        std::vector<double> cuts;
        double cur = y;
        while (cur > y_end * 1.5) {
            cuts.push_back(cur);
            cur /= 2.0;
        }
        cuts.push_back(y_end);
        for (size_t i = 0; i + 1 < cuts.size(); ++i)
            p.segments.push_back({cxd(z.real(), cuts[i]), cxd(z.real(), cuts[i + 1])});
        if (p.segments.empty()) p.segments.push_back({top, bottom});
        return p;
    }
    if (to.is_infinity()) {
        PathSpec rev = geodesic_path(to, from, height_T);
        PathSpec p;
        p.truncation_bound = rev.truncation_bound;
        for (auto it = rev.segments.rbegin(); it != rev.segments.rend(); ++it)
            p.segments.push_back({it->to, it->from});
        return p;
    }
    return chord_path(from.point(), to.point());
}

}  // namespace ncmodsym
