#include "ncmodsym/qexpansion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncmodsym {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FourierExpansion::FourierExpansion(long long period, std::vector<cxd> coeffs,
                                   cxd prefactor)
    : period_(period), coeffs_(std::move(coeffs)), prefactor_(prefactor) {
    if (period_ <= 0) throw std::invalid_argument("FourierExpansion: period <= 0");
    if (coeffs_.empty()) throw std::invalid_argument("FourierExpansion: empty");
    // fit |c_n| <= K n^C over the stored range
    double C = 0.0;
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        double a = std::abs(coeffs_[i]);
        if (a > 1.0) C = std::max(C, std::log(a) / std::log(double(i + 1)));
    }
    double K = 0.0;
    for (size_t i = 0; i < coeffs_.size(); ++i)
        K = std::max(K, std::abs(coeffs_[i]) / std::pow(double(i + 1), C));
    growth_C_ = C;
    growth_K_ = std::max(K, 1e-300);
}

EvalResult FourierExpansion::evaluate(cxd z) const {
    if (z.imag() <= 0.0)
        throw std::domain_error("FourierExpansion::evaluate: Im z <= 0");
    const cxd q = std::exp(cxd(0.0, kTwoPi) * z / double(period_));
    const double r = std::abs(q);
    const double pref = std::abs(prefactor_);

    // |tail from n| <= K n^C r^n / (1 - rho) with rho = r (1+1/n)^C
    auto tail_from = [&](long long n) {
        double rho = r * std::pow(1.0 + 1.0 / double(n), growth_C_);
        if (rho >= 1.0) return std::numeric_limits<double>::infinity();
        return pref * growth_K_ * std::pow(double(n), growth_C_) *
               std::pow(r, double(n)) / (1.0 - rho);
    };

    cxd qn = 1.0;
    cxd sum = 0.0;
    long long n = 0;
    const long long N = n_max();
    const double floor_abs = 1e-300;
    double tail = tail_from(N + 1);
    for (n = 1; n <= N; ++n) {
        qn *= q;
        sum += coeffs_[n - 1] * qn;
        // early exit once everything remaining is provably negligible
        if ((n & 31) == 0) {
            double rem = tail_from(n + 1);
            if (rem < 1e-18 * std::max(1.0, std::abs(sum) * pref) ||
                rem < floor_abs) {
                tail = std::max(tail, rem);
                break;
            }
        }
    }
    return EvalResult{prefactor_ * sum, tail};
}

FourierExpansion FourierExpansion::scaled(cxd factor) const {
    return FourierExpansion(period_, coeffs_, prefactor_ * factor);
}

namespace {

// Euler product prod_{n>=1} (1 - q^{d n}) mod q^{n_max+1}, by the pentagonal
// number theorem (sparse +-1 series).
std::vector<long long> euler_factor(long long d, int n_max) {
    std::vector<long long> out(n_max + 1, 0);
    out[0] = 1;
    for (long long k = 1;; ++k) {
        long long e1 = d * k * (3 * k - 1) / 2;
        long long e2 = d * k * (3 * k + 1) / 2;
        if (e1 > n_max && e2 > n_max) break;
        long long sign = (k % 2 == 0) ? 1 : -1;
        if (e1 <= n_max) out[e1] += sign;
        if (e2 <= n_max) out[e2] += sign;
    }
    return out;
}

std::vector<long long> poly_mul(const std::vector<long long>& a,
                                const std::vector<long long>& b, int n_max) {
    std::vector<long long> out(n_max + 1, 0);
    for (int i = 0; i <= n_max && i < (int)a.size(); ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j + i <= n_max && j < (int)b.size(); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<long long> poly_pow(std::vector<long long> base, int e, int n_max) {
    std::vector<long long> out(n_max + 1, 0);
    out[0] = 1;
    while (e > 0) {
        if (e & 1) out = poly_mul(out, base, n_max);
        e >>= 1;
        if (e) base = poly_mul(base, base, n_max);
    }
    return out;
}

}  // namespace

std::vector<long long> eta_product_coeffs(
    const std::vector<std::pair<int, int>>& parts, int n_max) {
    if (n_max < 1) throw std::invalid_argument("eta_product: n_max < 1");
    long long weight24 = 0;
    for (auto [d, e] : parts) {
        if (d <= 0 || e <= 0)
            throw std::invalid_argument("eta_product: need d > 0, e > 0");
        weight24 += static_cast<long long>(d) * e;
    }
    if (weight24 % 24 != 0)
        throw std::invalid_argument("eta_product: sum d*e must be 0 mod 24");
    const long long h = weight24 / 24;  // leading q-power
    const int order = n_max - 1;        // orders of the product part needed
    std::vector<long long> prod(order + 1, 0);
    prod[0] = 1;
    for (auto [d, e] : parts)
        prod = poly_mul(prod, poly_pow(euler_factor(d, order), e, order), order);
    // a_n = coefficient of q^n in q^h * prod, for n = 1..n_max
    std::vector<long long> out(n_max, 0);
    for (int n = 1; n <= n_max; ++n) {
        long long k = n - h;
        if (k >= 0 && k <= order) out[n - 1] = prod[k];
    }
    return out;
}

std::vector<long long> delta_coeffs(int n_max) {
    return eta_product_coeffs({{1, 24}}, n_max);
}

}  // namespace ncmodsym
