#include "ncmodsym/ncseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ncmodsym {

Alphabet::Alphabet(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].label.empty())
            throw std::invalid_argument("Alphabet: empty letter label");
        for (size_t j = 0; j < i; ++j)
            if (letters_[j].id == letters_[i].id)
                throw std::invalid_argument("Alphabet: duplicate letter id");
    }
}

Alphabet Alphabet::from_labels(const std::vector<std::string>& labels) {
    std::vector<Letter> ls;
    ls.reserve(labels.size());
    for (size_t i = 0; i < labels.size(); ++i)
        ls.push_back(Letter{static_cast<int>(i), labels[i]});
    return Alphabet(std::move(ls));
}

int Alphabet::index_of_id(int id) const {
    for (size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i].id == id) return static_cast<int>(i);
    throw std::invalid_argument("Alphabet: unknown letter id");
}

bool Alphabet::operator==(const Alphabet& other) const {
    if (letters_.size() != other.letters_.size()) return false;
    for (size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i].id != other.letters_[i].id ||
            letters_[i].label != other.letters_[i].label)
            return false;
    return true;
}

NcSeries::NcSeries(Alphabet alphabet, int truncation)
    : alphabet_(std::move(alphabet)), truncation_(truncation) {
    if (truncation < 0) throw std::invalid_argument("NcSeries: negative truncation");
}

NcSeries NcSeries::one(const Alphabet& alphabet, int truncation) {
    NcSeries s(alphabet, truncation);
    s.set_coeff({}, 1.0);
    return s;
}

cxd NcSeries::coeff(const Word& w) const {
    auto it = coeffs_.find(w);
    return it == coeffs_.end() ? cxd(0.0) : it->second;
}

void NcSeries::set_coeff(const Word& w, cxd value) {
    if (static_cast<int>(w.size()) > truncation_) return;
    if (value == cxd(0.0))
        coeffs_.erase(w);
    else
        coeffs_[w] = value;
}

void NcSeries::add_coeff(const Word& w, cxd value) {
    if (static_cast<int>(w.size()) > truncation_) return;
    coeffs_[w] += value;
}

void NcSeries::check_compatible(const NcSeries& other) const {
    if (alphabet_ != other.alphabet_)
        throw std::invalid_argument("NcSeries: alphabet mismatch");
    if (truncation_ != other.truncation_)
        throw std::invalid_argument("NcSeries: truncation mismatch");
}

NcSeries& NcSeries::operator+=(const NcSeries& other) {
    check_compatible(other);
    for (const auto& [w, c] : other.coeffs_) coeffs_[w] += c;
    return *this;
}

NcSeries& NcSeries::operator-=(const NcSeries& other) {
    check_compatible(other);
    for (const auto& [w, c] : other.coeffs_) coeffs_[w] -= c;
    return *this;
}

NcSeries& NcSeries::operator*=(cxd scalar) {
    for (auto& [w, c] : coeffs_) c *= scalar;
    return *this;
}

double NcSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [w, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
}

void NcSeries::drop_small(double threshold) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (std::abs(it->second) <= threshold)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

std::string NcSeries::to_json() const {
    nlohmann::ordered_json j;
    j["alphabet"] = nlohmann::ordered_json::array();
    for (int i = 0; i < alphabet_.size(); ++i) {
        const Letter& l = alphabet_.letter(i);
        j["alphabet"].push_back({{"id", l.id}, {"label", l.label}});
    }
    j["D"] = truncation_;
    j["coeffs"] = nlohmann::ordered_json::array();
    for (const auto& [w, c] : coeffs_) {  // std::map: lexicographic by word
        j["coeffs"].push_back(
            {{"word", w}, {"re", c.real()}, {"im", c.imag()}});
    }
    return j.dump();
}

NcSeries mul(const NcSeries& a, const NcSeries& b) {
    if (a.alphabet() != b.alphabet())
        throw std::invalid_argument("mul: alphabet mismatch");
    if (a.truncation() != b.truncation())
        throw std::invalid_argument("mul: truncation mismatch");
    NcSeries out(a.alphabet(), a.truncation());
    const int d = a.truncation();
    for (const auto& [u, cu] : a.coeffs()) {
        const int lu = static_cast<int>(u.size());
        for (const auto& [v, cv] : b.coeffs()) {
            if (lu + static_cast<int>(v.size()) > d) continue;
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            out.add_coeff(w, cu * cv);
        }
    }
    return out;
}

NcSeries inverse(const NcSeries& a) {
    const cxd c0 = a.coeff({});
    if (std::abs(c0) == 0.0)
        throw std::domain_error("inverse: zero constant term");
    // a = c0 (1 - x) with x free of constant term, so the Neumann series for
    // (1-x)^{-1} terminates at the truncation depth
    NcSeries x(a.alphabet(), a.truncation());
    for (const auto& [w, c] : a.coeffs()) {
        if (w.empty()) continue;
        x.set_coeff(w, -c / c0);
    }
    NcSeries result = NcSeries::one(a.alphabet(), a.truncation());
    NcSeries power = NcSeries::one(a.alphabet(), a.truncation());
    for (int k = 1; k <= a.truncation(); ++k) {
        power = mul(power, x);
        result += power;
    }
    result *= 1.0 / c0;
    return result;
}

NcSeries exp_series(const NcSeries& x) {
    if (std::abs(x.coeff({})) != 0.0)
        throw std::domain_error("exp_series: nonzero constant term");
    NcSeries result = NcSeries::one(x.alphabet(), x.truncation());
    NcSeries term = NcSeries::one(x.alphabet(), x.truncation());
    for (int k = 1; k <= x.truncation(); ++k) {
        term = mul(term, x);
        term *= 1.0 / static_cast<double>(k);
        result += term;
    }
    return result;
}

LetterMap::LetterMap(Alphabet source, Alphabet target,
                     std::vector<std::vector<cxd>> matrix)
    : source_(std::move(source)), target_(std::move(target)),
      matrix_(std::move(matrix)) {
    if (static_cast<int>(matrix_.size()) != target_.size())
        throw std::invalid_argument("LetterMap: row count mismatch");
    for (const auto& row : matrix_)
        if (static_cast<int>(row.size()) != source_.size())
            throw std::invalid_argument("LetterMap: column count mismatch");
}

LetterMap LetterMap::identity(const Alphabet& a) {
    std::vector<std::vector<cxd>> m(a.size(), std::vector<cxd>(a.size(), 0.0));
    for (int i = 0; i < a.size(); ++i) m[i][i] = 1.0;
    return LetterMap(a, a, std::move(m));
}

LetterMap LetterMap::diagonal(const Alphabet& a, const std::vector<cxd>& scalars) {
    if (static_cast<int>(scalars.size()) != a.size())
        throw std::invalid_argument("LetterMap::diagonal: size mismatch");
    std::vector<std::vector<cxd>> m(a.size(), std::vector<cxd>(a.size(), 0.0));
    for (int i = 0; i < a.size(); ++i) m[i][i] = scalars[i];
    return LetterMap(a, a, std::move(m));
}

LetterMap operator*(const LetterMap& a, const LetterMap& b) {
    if (a.source() != b.target())
        throw std::invalid_argument("LetterMap product: shape mismatch");
    const int rows = a.target().size();
    const int mid = a.source().size();
    const int cols = b.source().size();
    std::vector<std::vector<cxd>> m(rows, std::vector<cxd>(cols, 0.0));
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < mid; ++k) {
            const cxd aik = a.entry(i, k);
            if (aik == cxd(0.0)) continue;
            for (int j = 0; j < cols; ++j) m[i][j] += aik * b.entry(k, j);
        }
    return LetterMap(b.source(), a.target(), std::move(m));
}

NcSeries apply_letter_map(const LetterMap& g, const NcSeries& a) {
    if (g.source() != a.alphabet())
        throw std::invalid_argument("apply_letter_map: alphabet mismatch");
    const int nt = g.target().size();
    NcSeries out(g.target(), a.truncation());
    for (const auto& [w, c] : a.coeffs()) {
        // expand the product of letter images; depth-first over target letters
        Word img(w.size(), 0);
        std::vector<int> src(w.size());
        for (size_t i = 0; i < w.size(); ++i)
            src[i] = a.alphabet().index_of_id(w[i]);
        const size_t n = w.size();
        if (n == 0) {
            out.add_coeff({}, c);
            continue;
        }
        std::vector<int> idx(n, 0);
        while (true) {
            cxd factor = c;
            for (size_t i = 0; i < n; ++i) {
                factor *= g.entry(idx[i], src[i]);
                if (factor == cxd(0.0)) break;
            }
            if (factor != cxd(0.0)) {
                for (size_t i = 0; i < n; ++i)
                    img[i] = g.target().letter(idx[i]).id;
                out.add_coeff(img, factor);
            }
            size_t pos = n;
            while (pos > 0) {
                if (++idx[pos - 1] < nt) break;
                idx[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    return out;
}

NcSeries scale_letters(const NcSeries& a, const std::vector<cxd>& scalars) {
    if (static_cast<int>(scalars.size()) != a.alphabet().size())
        throw std::invalid_argument("scale_letters: size mismatch");
    NcSeries out(a.alphabet(), a.truncation());
    for (const auto& [w, c] : a.coeffs()) {
        cxd factor = 1.0;
        for (int id : w) factor *= scalars[a.alphabet().index_of_id(id)];
        out.set_coeff(w, c * factor);
    }
    return out;
}

namespace {
void shuffle_rec(const Word& u, size_t iu, const Word& v, size_t iv,
                 Word& acc, std::vector<Word>& out) {
    if (iu == u.size() && iv == v.size()) {
        out.push_back(acc);
        return;
    }
    if (iu < u.size()) {
        acc.push_back(u[iu]);
        shuffle_rec(u, iu + 1, v, iv, acc, out);
        acc.pop_back();
    }
    if (iv < v.size()) {
        acc.push_back(v[iv]);
        shuffle_rec(u, iu, v, iv + 1, acc, out);
        acc.pop_back();
    }
}

void enumerate_words(const Alphabet& a, int length, Word& acc,
                     std::vector<Word>& out) {
    if (length == 0) {
        out.push_back(acc);
        return;
    }
    for (int i = 0; i < a.size(); ++i) {
        acc.push_back(a.letter(i).id);
        enumerate_words(a, length - 1, acc, out);
        acc.pop_back();
    }
}
}  // namespace

std::vector<Word> shuffle_words(const Word& u, const Word& v) {
    std::vector<Word> out;
    Word acc;
    acc.reserve(u.size() + v.size());
    shuffle_rec(u, 0, v, 0, acc, out);
    return out;
}

GroupLikeReport is_group_like(const NcSeries& a, double tol) {
    GroupLikeReport report;
    if (std::abs(a.coeff({}) - cxd(1.0)) > tol) {
        report.ok = false;
        report.max_residual = std::abs(a.coeff({}) - cxd(1.0));
        return report;
    }
    const int d = a.truncation();
    for (int lu = 1; lu < d; ++lu) {
        for (int lv = 1; lu + lv <= d; ++lv) {
            std::vector<Word> us, vs;
            Word acc;
            enumerate_words(a.alphabet(), lu, acc, us);
            enumerate_words(a.alphabet(), lv, acc, vs);
            for (const Word& u : us) {
                for (const Word& v : vs) {
                    cxd lhs = a.coeff(u) * a.coeff(v);
                    cxd rhs = 0.0;
                    for (const Word& w : shuffle_words(u, v)) rhs += a.coeff(w);
                    report.max_residual =
                        std::max(report.max_residual, std::abs(lhs - rhs));
                }
            }
        }
    }
    report.ok = report.max_residual <= tol;
    return report;
}

}  // namespace ncmodsym
