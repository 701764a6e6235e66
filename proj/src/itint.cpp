#include "ncmodsym/itint.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncmodsym {

namespace {

double hyperbolic_length(cxd a, cxd b) {
    double y1 = a.imag(), y2 = b.imag();
    if (y1 <= 0.0 || y2 <= 0.0) throw std::domain_error("segment leaves H");
    double t = 1.0 + std::norm(a - b) / (2.0 * y1 * y2);
    return std::acosh(t);
}

void check_guard(double min_im, cxd z) {
    if (min_im > 0.0 && z.imag() < min_im * (1.0 - 1e-12))
        throw std::domain_error("evaluation below the configured height guard");
}

}  // namespace

OmegaFamily::OmegaFamily(Alphabet alphabet, std::vector<OneForm> forms,
                         double min_im)
    : alphabet_(std::move(alphabet)), forms_(std::move(forms)), min_im_(min_im) {
    if ((int)forms_.size() != alphabet_.size())
        throw std::invalid_argument("OmegaFamily: size mismatch");
}

OmegaFamily OmegaFamily::modular(const ModularFamily& fam, double min_im) {
    std::vector<OneForm> forms;
    forms.reserve(fam.members.size());
    for (const auto& m : fam.members) forms.push_back(OneForm::modular(m));
    return OmegaFamily(fam.alphabet, std::move(forms), min_im);
}

OmegaFamily OmegaFamily::with_min_im(double h) const {
    OmegaFamily out = *this;
    out.min_im_ = h;
    return out;
}

std::vector<cxd> OmegaFamily::evaluate_all(cxd z) const {
    check_guard(min_im_, z);
    std::vector<std::pair<const FourierExpansion*, cxd>> cache;
    std::vector<cxd> out(forms_.size());
    for (size_t i = 0; i < forms_.size(); ++i)
        out[i] = forms_[i].evaluate_cached(z, cache);
    return out;
}

OmegaFamily OmegaFamily::pullback(const Mat2& m) const {
    std::vector<OneForm> forms;
    forms.reserve(forms_.size());
    for (const auto& f : forms_) forms.push_back(f.pullback(m));
    return OmegaFamily(alphabet_, std::move(forms), min_im_);
}

// --- transport engine --------------------------------------------------------

namespace {

// left-multiplication by the connection value B = sum_w w * b_w (no constant
// term): (B J)[w' = w . u] += b_w J[u]
NcSeries apply_connection(const std::vector<std::pair<Word, cxd>>& B,
                          const NcSeries& J) {
    NcSeries out(J.alphabet(), J.truncation());
    const int d = J.truncation();
    for (const auto& [w, bw] : B) {
        if (bw == cxd(0.0)) continue;
        const int lw = (int)w.size();
        for (const auto& [u, cu] : J.coeffs()) {
            if (lw + (int)u.size() > d) continue;
            Word wu = w;
            wu.insert(wu.end(), u.begin(), u.end());
            out.add_coeff(wu, bw * cu);
        }
    }
    return out;
}

// connection samples along one straight segment
class SegmentConnection {
public:
    virtual ~SegmentConnection() = default;
    // B(t) = Omega(z(t)) z'(t) at path parameter t in [0,1]
    virtual std::vector<std::pair<Word, cxd>> at(double t) const = 0;
};

class LinearConnection : public SegmentConnection {
public:
    LinearConnection(const OmegaFamily* om, Segment seg) : om_(om), seg_(seg) {}
    std::vector<std::pair<Word, cxd>> at(double t) const override {
        cxd z = seg_.from + t * (seg_.to - seg_.from);
        cxd dz = seg_.to - seg_.from;
        auto vals = om_->evaluate_all(z);
        std::vector<std::pair<Word, cxd>> out;
        out.reserve(vals.size());
        for (int v = 0; v < (int)vals.size(); ++v)
            out.emplace_back(Word{om_->alphabet().letter(v).id}, vals[v] * dz);
        return out;
    }

private:
    const OmegaFamily* om_;
    Segment seg_;
};

class NonlinearConnection : public SegmentConnection {
public:
    NonlinearConnection(const NonlinearOmega* om, Segment seg)
        : om_(om), seg_(seg) {}
    std::vector<std::pair<Word, cxd>> at(double t) const override {
        cxd z = seg_.from + t * (seg_.to - seg_.from);
        check_guard(om_->min_im, z);
        cxd dz = seg_.to - seg_.from;
        std::vector<std::pair<const FourierExpansion*, cxd>> cache;
        std::vector<std::pair<Word, cxd>> out;
        out.reserve(om_->terms.size());
        for (const auto& [w, form] : om_->terms)
            out.emplace_back(w, form.evaluate_cached(z, cache) * dz);
        return out;
    }

private:
    const NonlinearOmega* om_;
    Segment seg_;
};

// classical 4th-order stepping of dJ/dt = B(t) J across one segment,
// updating J in place
void advance_segment(const SegmentConnection& conn, int steps, NcSeries& J) {
    const double h = 1.0 / steps;
    // B is sampled at half-step resolution: t_j = j h / 2
    std::vector<std::pair<Word, cxd>> b0 = conn.at(0.0);
    for (int i = 0; i < steps; ++i) {
        auto bh = conn.at((i + 0.5) * h);
        auto b1 = conn.at((i + 1.0) * h);
        NcSeries k1 = apply_connection(b0, J);
        NcSeries j2 = J;
        {
            NcSeries t = k1;
            t *= 0.5 * h;
            j2 += t;
        }
        NcSeries k2 = apply_connection(bh, j2);
        NcSeries j3 = J;
        {
            NcSeries t = k2;
            t *= 0.5 * h;
            j3 += t;
        }
        NcSeries k3 = apply_connection(bh, j3);
        NcSeries j4 = J;
        {
            NcSeries t = k3;
            t *= h;
            j4 += t;
        }
        NcSeries k4 = apply_connection(b1, j4);
        k2 *= 2.0;
        k3 *= 2.0;
        k1 += k2;
        k1 += k3;
        k1 += k4;
        k1 *= h / 6.0;
        J += k1;
        b0 = std::move(b1);
    }
}

template <typename OmegaT, typename ConnT>
NcSeries total_j_impl(const OmegaT& om, const Alphabet& alphabet,
                      const PathSpec& path, int depth, const IntOptions& opt) {
    NcSeries J = NcSeries::one(alphabet, depth);
    for (const Segment& seg : path.segments) {
        if (seg.from == seg.to) continue;
        double len = hyperbolic_length(seg.from, seg.to);
        int steps = std::max(opt.min_steps,
                             (int)std::ceil(opt.steps_per_unit * len));
        ConnT conn(&om, seg);
        advance_segment(conn, steps, J);
    }
    return J;
}

}  // namespace

NcSeries total_j(const OmegaFamily& om, const PathSpec& path, int depth,
                 const IntOptions& opt) {
    return total_j_impl<OmegaFamily, LinearConnection>(om, om.alphabet(), path,
                                                       depth, opt);
}

NcSeries total_j(const NonlinearOmega& om, const PathSpec& path, int depth,
                 const IntOptions& opt) {
    for (const auto& [w, f] : om.terms)
        if (w.empty())
            throw std::invalid_argument("total_j: constant term in the connection");
    return total_j_impl<NonlinearOmega, NonlinearConnection>(
        om, om.alphabet, path, depth, opt);
}

Mat2 cusp_to_infinity(const BoundaryPoint& cusp) {
    if (!cusp.is_cusp() || cusp.is_infinity())
        throw std::invalid_argument("cusp_to_infinity: need a rational cusp");
    long long p = cusp.p(), q = cusp.q();
    // solve p y - q x = 1
    long long old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        long long quo = old_r / r;
        std::swap(old_r, r);
        r -= quo * old_r;
        std::swap(old_s, s);
        s -= quo * old_s;
        std::swap(old_t, t);
        t -= quo * old_t;
    }
    // old_s * p + old_t * q = old_r = +-1
    long long sign = old_r;  // +-1 since gcd(p, q) = 1
    long long y = old_s * sign, x = -old_t * sign;
    Mat2 m{p, x, q, y};
    if (m.det() != 1) throw std::logic_error("cusp_to_infinity: det != 1");
    return m;
}

NcSeries total_j_path(const OmegaFamily& om, const BoundaryPoint& from,
                      const BoundaryPoint& to, int depth,
                      const IntOptions& opt) {
    if (from == to) return NcSeries::one(om.alphabet(), depth);
    const bool from_rat = from.is_cusp() && !from.is_infinity();
    const bool to_rat = to.is_cusp() && !to.is_infinity();
    if (from.is_cusp() && to.is_cusp()) {
        // split at an interior point with balanced heights in both frames
        cxd w;
        if (from.is_infinity() || to.is_infinity()) {
            const BoundaryPoint& c = from.is_infinity() ? to : from;
            w = cxd(double(c.p()) / double(c.q()), 1.0 / double(c.q()));
        } else {
            double x1 = from.rational(), x2 = to.rational();
            w = cxd(0.5 * (x1 + x2), 0.5 * std::abs(x2 - x1));
        }
        BoundaryPoint mid = BoundaryPoint::interior(w);
        return mul(total_j_path(om, mid, to, depth, opt),
                   total_j_path(om, from, mid, depth, opt));
    }
    if (to_rat) {
        // J_a^c(om) = J_{B^{-1} a}^{i inf}(B^* om) with B(i inf) = c
        Mat2 B = cusp_to_infinity(to);
        BoundaryPoint a2 = mobius(B.adj(), from);
        return total_j_path(om.pullback(B), a2, BoundaryPoint::infinity(), depth,
                            opt);
    }
    if (from_rat) return inverse(total_j_path(om, to, from, depth, opt));
    PathSpec path = geodesic_path(from, to, opt.height_T);
    return total_j(om, path, depth, opt);
}

// --- nested quadrature -------------------------------------------------------

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre_01(
    int n) {
    static std::map<int, std::pair<std::vector<double>, std::vector<double>>>
        cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Newton iteration for the roots of P_n on [-1,1], then map to [0,1]
    std::vector<double> x(n), w(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = 0.5 * (1.0 - t);  // reversed order is irrelevant
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    return cache.emplace(n, std::make_pair(x, w)).first->second;
}

namespace {

// Nested quadrature along a fixed path: F_j(s, t) is the iterated integral of
// forms[j..] over the part of the path up to (segment s, local parameter t).
class NestedQuad {
public:
    NestedQuad(const std::vector<OneForm>* forms, const PathSpec* path, int nodes)
        : forms_(forms), path_(path), nodes_(nodes) {}

    cxd run() const {
        if (path_->segments.empty()) return forms_->empty() ? 1.0 : 0.0;
        return level(0, path_->segments.size() - 1, 1.0);
    }

private:
    cxd level(size_t j, size_t seg_last, double t_last) const {
        if (j == forms_->size()) return 1.0;
        const auto& [xs, ws] = gauss_legendre_01(nodes_);
        cxd total = 0.0;
        for (size_t s = 0; s <= seg_last; ++s) {
            const Segment& seg = path_->segments[s];
            const double t_end = (s == seg_last) ? t_last : 1.0;
            if (t_end == 0.0) continue;
            const cxd dz = seg.to - seg.from;
            for (int i = 0; i < nodes_; ++i) {
                double t = xs[i] * t_end;
                cxd z = seg.from + t * dz;
                cxd val = (*forms_)[j].evaluate(z) * dz * (t_end * ws[i]);
                if (val != cxd(0.0)) val *= level(j + 1, s, t);
                total += val;
            }
        }
        return total;
    }

    const std::vector<OneForm>* forms_;
    const PathSpec* path_;
    int nodes_;
};

}  // namespace

cxd nested_integral(const std::vector<OneForm>& forms, const PathSpec& path,
                    const IntOptions& opt) {
    if (forms.size() > 4)
        throw std::invalid_argument("nested_integral: depth > 4 not supported");
    return NestedQuad(&forms, &path, opt.gl_nodes).run();
}

namespace {

cxd nested_multi_level(const std::vector<OneForm>& forms,
                       const std::vector<cxd>& lower, size_t j, cxd upper,
                       int nodes) {
    if (j == forms.size()) return 1.0;
    const auto& [xs, ws] = gauss_legendre_01(nodes);
    const cxd a = lower[j];
    const cxd dz = upper - a;
    cxd total = 0.0;
    for (int i = 0; i < nodes; ++i) {
        cxd z = a + xs[i] * dz;
        total += ws[i] * forms[j].evaluate(z) * dz *
                 nested_multi_level(forms, lower, j + 1, z, nodes);
    }
    return total;
}

}  // namespace

cxd nested_integral_multi(const std::vector<OneForm>& forms,
                          const std::vector<cxd>& lower, cxd z,
                          const IntOptions& opt) {
    if (forms.size() != lower.size())
        throw std::invalid_argument("nested_integral_multi: size mismatch");
    if (forms.size() > 4)
        throw std::invalid_argument("nested_integral_multi: depth > 4");
    return nested_multi_level(forms, lower, 0, z, opt.gl_nodes);
}

NcSeries total_j_multi_lower(const OmegaFamily& om,
                             const std::function<cxd(int, int)>& lower, cxd z,
                             int depth, const IntOptions& opt) {
    if (depth > 3)
        throw std::invalid_argument("total_j_multi_lower: depth > 3");
    NcSeries out = NcSeries::one(om.alphabet(), depth);
    const int k = om.size();
    // iterate words of each length
    std::vector<int> idx;
    for (int len = 1; len <= depth; ++len) {
        idx.assign(len, 0);
        while (true) {
            std::vector<OneForm> forms;
            std::vector<cxd> lows;
            Word w;
            for (int i = 0; i < len; ++i) {
                forms.push_back(om.form(idx[i]));
                // slot positions count nesting from the innermost integral;
                // with that convention peeling the outermost form leaves the
                // remaining slots unchanged and the composition law holds
                lows.push_back(lower(len - i, idx[i]));
                w.push_back(om.alphabet().letter(idx[i]).id);
            }
            out.set_coeff(w, nested_integral_multi(forms, lows, z, opt));
            int pos = len;
            while (pos > 0) {
                if (++idx[pos - 1] < k) break;
                idx[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return out;
}

namespace {

template <typename OmegaT>
double cycle_check_impl(const OmegaT& om, const Alphabet& alphabet,
                        const std::vector<cxd>& points, int depth,
                        const IntOptions& opt) {
    if (points.size() < 2)
        throw std::invalid_argument("cycle_check: need at least 2 points");
    NcSeries prod = NcSeries::one(alphabet, depth);
    const size_t n = points.size();
    // J^{a1}_{a2} J^{a2}_{a3} ... J^{an}_{a1}: factor i runs from a_{i+1}
    // to a_i
    for (size_t i = 0; i < n; ++i) {
        cxd from = points[(i + 1) % n];
        cxd to = points[i];
        NcSeries leg = total_j(om, chord_path(from, to), depth, opt);
        prod = mul(prod, leg);
    }
    prod -= NcSeries::one(alphabet, depth);
    return prod.max_abs_coeff();
}

}  // namespace

double cycle_check(const OmegaFamily& om, const std::vector<cxd>& points,
                   int depth, const IntOptions& opt) {
    return cycle_check_impl(om, om.alphabet(), points, depth, opt);
}

double cycle_check(const NonlinearOmega& om, const std::vector<cxd>& points,
                   int depth, const IntOptions& opt) {
    return cycle_check_impl(om, om.alphabet, points, depth, opt);
}

}  // namespace ncmodsym
