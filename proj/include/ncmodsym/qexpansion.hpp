#pragma once

// q-expansions f(z) = prefactor * sum_{n>=1} c_n e^{2 pi i n z / M} with
// pointwise evaluation and honest truncation bounds.

#include <complex>
#include <vector>

namespace ncmodsym {

using cxd = std::complex<double>;

struct EvalResult {
    cxd value{0.0};
    double tail_bound = 0.0;  // bound on the dropped part of the sum
};

class FourierExpansion {
public:
    FourierExpansion() = default;
    FourierExpansion(long long period, std::vector<cxd> coeffs, cxd prefactor);

    long long period() const { return period_; }
    long long n_max() const { return static_cast<long long>(coeffs_.size()); }
    cxd prefactor() const { return prefactor_; }
    cxd coeff(long long n) const {  // 1-based index
        return (n >= 1 && n <= n_max()) ? coeffs_[n - 1] : cxd(0.0);
    }
    const std::vector<cxd>& coeffs() const { return coeffs_; }

    // fitted polynomial growth bound |c_n| <= K n^C of the stored coefficients
    double growth_K() const { return growth_K_; }
    double growth_C() const { return growth_C_; }

    // partial sum with a tail bound valid under the fitted growth; requires
    // Im z > 0.  Terms are added in increasing n; summation stops early once
    // the remaining tail is below an absolute floor.
    EvalResult evaluate(cxd z) const;

    FourierExpansion scaled(cxd factor) const;

private:
    long long period_ = 1;
    std::vector<cxd> coeffs_;
    cxd prefactor_{1.0};
    double growth_K_ = 0.0, growth_C_ = 0.0;
};

// Expansion of q^{sum d e / 24} * prod_d (prod_n (1 - q^{d n}))^{e_d} for
// positive exponents e_d; requires sum d*e == 0 mod 24 so the result is a
// series in integer powers of q.  Coefficients are exact integers.
std::vector<long long> eta_product_coeffs(
    const std::vector<std::pair<int, int>>& parts, int n_max);

// Ramanujan tau coefficients: eta_product_coeffs with the single part (1,24).
std::vector<long long> delta_coeffs(int n_max);

}  // namespace ncmodsym
