#pragma once

// Numerical engines for total iterated integrals: a classical 4th-order
// stepper for the flat-connection transport dJ = Omega J in the truncated
// free algebra (linear and nonlinear Omega, arbitrary paths), and an
// independent nested Gauss-Legendre engine for individual iterated
// integrals.  Paths ending in rational cusps are rewritten through
// unimodular transport onto vertical rays.

#include <functional>
#include <map>
#include <optional>

#include "ncmodsym/modforms.hpp"
#include "ncmodsym/ncseries.hpp"
#include "ncmodsym/paths.hpp"

namespace ncmodsym {

// One evaluatable 1-form per letter.
class OmegaFamily {
public:
    OmegaFamily() = default;
    OmegaFamily(Alphabet alphabet, std::vector<OneForm> forms,
                double min_im = 0.0);
    static OmegaFamily modular(const ModularFamily& fam, double min_im = 0.0);

    const Alphabet& alphabet() const { return alphabet_; }
    int size() const { return (int)forms_.size(); }
    const OneForm& form(int i) const { return forms_[i]; }
    double min_im() const { return min_im_; }
    OmegaFamily with_min_im(double h) const;

    // values of all letter forms at z (shared expansions evaluated once)
    std::vector<cxd> evaluate_all(cxd z) const;
    // the family of pullbacks m^* omega_v, letter by letter
    OmegaFamily pullback(const Mat2& m) const;

private:
    Alphabet alphabet_;
    std::vector<OneForm> forms_;
    double min_im_ = 0.0;
};

// A 1-form valued series without constant term: word -> form.
struct NonlinearOmega {
    Alphabet alphabet;
    std::map<Word, OneForm> terms;
    double min_im = 0.0;
};

struct IntOptions {
    int steps_per_unit = 400;  // 4th-order steps per unit hyperbolic length
    int min_steps = 64;
    int gl_nodes = 48;         // quadrature nodes per panel per nesting level
    double height_T = 12.0;    // truncation height for rays to i inf
};

// --- 4th-order transport engine ---------------------------------------------

NcSeries total_j(const OmegaFamily& om, const PathSpec& path, int depth,
                 const IntOptions& opt = {});
NcSeries total_j(const NonlinearOmega& om, const PathSpec& path, int depth,
                 const IntOptions& opt = {});

// transport along the path from one boundary point to another, rewriting
// rational-cusp endpoints through unimodular changes of frame
NcSeries total_j_path(const OmegaFamily& om, const BoundaryPoint& from,
                      const BoundaryPoint& to, int depth,
                      const IntOptions& opt = {});

// a matrix with m(i inf) = p/q, second column from the extended Euclid
Mat2 cusp_to_infinity(const BoundaryPoint& cusp);

// --- nested quadrature engine (independent oracle-grade path) ---------------

// I(w_1,...,w_k) along the path with the leftmost form outermost; depth <= 4
cxd nested_integral(const std::vector<OneForm>& forms, const PathSpec& path,
                    const IntOptions& opt = {});

// iterated integral with per-slot lower limits (interior points only):
// the slot-j integration runs along the chord from lower[j] to its upper
// point
cxd nested_integral_multi(const std::vector<OneForm>& forms,
                          const std::vector<cxd>& lower, cxd z,
                          const IntOptions& opt = {});

// total iterated integral with multiple lower limits: lower(i, v) is the
// base point of slot i (1-based) for letter index v
NcSeries total_j_multi_lower(const OmegaFamily& om,
                             const std::function<cxd(int, int)>& lower, cxd z,
                             int depth, const IntOptions& opt = {});

// --- identities -------------------------------------------------------------

// max-norm of J^{a1}_{a2} J^{a2}_{a3} ... J^{an}_{a1} - 1 over a closed
// contour of interior points
double cycle_check(const OmegaFamily& om, const std::vector<cxd>& points,
                   int depth, const IntOptions& opt = {});
double cycle_check(const NonlinearOmega& om, const std::vector<cxd>& points,
                   int depth, const IntOptions& opt = {});

// Gauss-Legendre nodes/weights on [0,1], cached per order
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre_01(
    int n);

}  // namespace ncmodsym
