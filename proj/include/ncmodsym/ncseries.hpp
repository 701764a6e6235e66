#pragma once

// Truncated formal series over a finite alphabet of noncommuting letters,
// with complex double coefficients indexed by words.  This is the carrier
// for all generating series in the library (path transports, Mellin
// transforms, scattering operators).

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ncmodsym {

using cxd = std::complex<double>;

struct Letter {
    int id = 0;
    std::string label;
};

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Letter> letters);
    // convenience: letters with ids 0..n-1
    static Alphabet from_labels(const std::vector<std::string>& labels);

    int size() const { return static_cast<int>(letters_.size()); }
    const Letter& letter(int index) const { return letters_.at(index); }
    int index_of_id(int id) const;
    bool operator==(const Alphabet& other) const;
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::vector<Letter> letters_;
};

// A word is a sequence of letter ids; the empty word is the unit monomial.
using Word = std::vector<int>;

class NcSeries {
public:
    NcSeries() = default;
    NcSeries(Alphabet alphabet, int truncation);
    static NcSeries one(const Alphabet& alphabet, int truncation);

    const Alphabet& alphabet() const { return alphabet_; }
    int truncation() const { return truncation_; }

    // absent word <=> coefficient 0; words longer than the truncation are
    // silently dropped on write
    cxd coeff(const Word& w) const;
    void set_coeff(const Word& w, cxd value);
    void add_coeff(const Word& w, cxd value);

    // iteration is in lexicographic word order, which fixes all summation
    // orders downstream
    const std::map<Word, cxd>& coeffs() const { return coeffs_; }

    NcSeries& operator+=(const NcSeries& other);
    NcSeries& operator-=(const NcSeries& other);
    NcSeries& operator*=(cxd scalar);
    friend NcSeries operator+(NcSeries a, const NcSeries& b) { return a += b; }
    friend NcSeries operator-(NcSeries a, const NcSeries& b) { return a -= b; }
    friend NcSeries operator*(NcSeries a, cxd scalar) { return a *= scalar; }
    friend NcSeries operator*(cxd scalar, NcSeries a) { return a *= scalar; }

    double max_abs_coeff() const;
    void drop_small(double threshold);

    std::string to_json() const;

private:
    void check_compatible(const NcSeries& other) const;

    Alphabet alphabet_;
    int truncation_ = 0;
    std::map<Word, cxd> coeffs_;
};

// Concatenation product; word splittings beyond the truncation are dropped.
NcSeries mul(const NcSeries& a, const NcSeries& b);

// Two-sided inverse of a series with nonzero constant term.
NcSeries inverse(const NcSeries& a);

// exp of a series without constant term (finite sum in the truncated algebra)
NcSeries exp_series(const NcSeries& x);

// A linear substitution on letters, A_u |-> sum_v m[v][u] A_v, possibly into
// a different alphabet.  Extended multiplicatively to words.
class LetterMap {
public:
    LetterMap() = default;
    LetterMap(Alphabet source, Alphabet target,
              std::vector<std::vector<cxd>> matrix);
    static LetterMap identity(const Alphabet& a);
    static LetterMap diagonal(const Alphabet& a, const std::vector<cxd>& scalars);

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }
    // entry(v, u): coefficient of target letter v in the image of source letter u
    cxd entry(int v, int u) const { return matrix_[v][u]; }

    // matrix composition: (a * b)(x) == a(b(x))
    friend LetterMap operator*(const LetterMap& a, const LetterMap& b);

private:
    Alphabet source_, target_;
    std::vector<std::vector<cxd>> matrix_;  // rows: target, cols: source
};

NcSeries apply_letter_map(const LetterMap& g, const NcSeries& a);

// diagonal special case: multiplies the coefficient of each word by the
// product of the per-letter scalars
NcSeries scale_letters(const NcSeries& a, const std::vector<cxd>& scalars);

// All interleavings of u and v preserving internal order (a multiset,
// returned as a list with repetitions).
std::vector<Word> shuffle_words(const Word& u, const Word& v);

struct GroupLikeReport {
    bool ok = false;
    double max_residual = 0.0;
};

// Checks the shuffle relations a(u) a(v) = sum_{w in sh(u,v)} a(w) for all
// word pairs with |u|+|v| <= truncation.  Requires constant term 1.
GroupLikeReport is_group_like(const NcSeries& a, double tol);

}  // namespace ncmodsym
