#pragma once

// Rescaled Gegenbauer polynomials G_N^s, scalar and multilinear. The scalar
// polynomial collects the coefficient of t^N in (1 - x t + y t^2)^{-s},
// renormalized so that all coefficients are integer polynomials in s; the
// multilinear version replaces x by a linear form and y by a bilinear form
// and symmetrizes.

#include "omfq/rational.hpp"

#include <functional>
#include <map>
#include <vector>

namespace omfq {

// Coefficient of x^{n2} y^{n1} in G_N^s, where 2 n1 + n2 = N:
//   (-1)^{n1} N!/(n1! n2!) * rising_factorial(s + ceil(N/2), n1 + n2 - ceil(N/2)).
// Valid for every rational s.
Rational gegenbauer_coefficient(long N, long n1, const Rational& s);

// Same coefficient as an exact polynomial in s (index = power of s).
RatVec gegenbauer_coefficient_poly(long N, long n1);

// G_N^s(x, y).
Rational gegenbauer_eval(long N, const Rational& s, const Rational& x, const Rational& y);

// Unrescaled g_N^s(x, y) = Gamma(s)^{-1} sum ... ; used by generating-function checks.
Rational gegenbauer_eval_unrescaled(long N, const Rational& s, const Rational& x,
                                    const Rational& y);

// Symmetric multilinear N-form on a dim-dimensional rational space, stored as
// the full component map over all index tuples.
class TensorForm {
  public:
    TensorForm() : degree_(0), dim_(0) {}
    TensorForm(int degree, int dim) : degree_(degree), dim_(dim) {
        if (degree_ == 0) comp_[{}] = Rational(0);
    }

    int degree() const { return degree_; }
    int dim() const { return dim_; }
    const std::map<std::vector<int>, Rational>& components() const { return comp_; }

    Rational component(const std::vector<int>& idx) const {
        auto it = comp_.find(idx);
        return it == comp_.end() ? Rational(0) : it->second;
    }
    void set_component(const std::vector<int>& idx, const Rational& v) {
        if ((int)idx.size() != degree_) throw structural_error("tensor index arity mismatch");
        comp_[idx] = v;
    }

    Rational value(const std::vector<RatVec>& vectors) const;

    bool is_symmetric() const;
    bool is_zero() const;

    TensorForm& operator+=(const TensorForm& o);
    TensorForm scaled(const Rational& a) const;
    bool operator==(const TensorForm& o) const;
    bool operator!=(const TensorForm& o) const { return !(*this == o); }

    // All index tuples in iteration order, for external walks.
    static std::vector<std::vector<int>> index_tuples(int degree, int dim);

  private:
    int degree_;
    int dim_;
    std::map<std::vector<int>, Rational> comp_;
};

// G_N^s(r, m) with r a linear form (values on a basis) and m a bilinear form
// (matrix on the same basis). Restricted to the diagonal this is
// gegenbauer_eval(N, s, r(v), m(v,v)).
TensorForm gegenbauer_multilinear(long N, const Rational& s, const RatVec& r, const RatMat& m);

// The unique symmetric N-form whose diagonal is the given homogeneous function,
// computed by finite differences over subset sums. Throws if the output fails
// the symmetry check (the diagonal was not that of a symmetric N-form).
TensorForm polarize(const std::function<Rational(const RatVec&)>& diag, int N, int dim);

// Value of the polarization of a homogeneous degree-N function at arbitrary
// vectors (not necessarily basis vectors).
Rational polarize_value(const std::function<Rational(const RatVec&)>& diag, int N,
                        const std::vector<RatVec>& vectors);

}  // namespace omfq
