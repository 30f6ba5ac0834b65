#pragma once

// Orthogonal modular form expansions on Lorentzian index lattices, and the
// pullback operators to special cycles: scalar pullbacks along a single
// negative-norm vector, tensor-valued pullbacks along a Lorentzian sublattice,
// the quasi-pullback (leading Taylor coefficient), and the variant acting on
// Laurent data of meromorphic forms.

#include "omfq/gegenbauer.hpp"
#include "omfq/lattice.hpp"
#include "omfq/laurent.hpp"

#include <map>
#include <optional>

namespace omfq {

// Coefficient map lambda -> c(lambda) on the dual of a Lorentzian lattice,
// supported in the closed positive cone of the chosen interior vector, with
// height truncation <lambda, cone> <= height_bound.
class OrthoFormExpansion {
  public:
    OrthoFormExpansion(GramLattice lattice, Rational weight, RatVec cone, Rational height_bound,
                       bool cusp = false);

    const GramLattice& lattice() const { return lattice_; }
    const Rational& weight() const { return weight_; }
    const RatVec& cone() const { return cone_; }
    const Rational& height_bound() const { return height_bound_; }
    bool cusp() const { return cusp_; }
    const std::map<RatVec, Rational>& coeffs() const { return coeffs_; }

    Rational height(const RatVec& x) const { return lattice_.pairing(x, cone_); }

    void set(const RatVec& x, const Rational& c);
    void add_to(const RatVec& x, const Rational& c);
    Rational coefficient(const RatVec& x) const;

    bool operator==(const OrthoFormExpansion& o) const {
        return lattice_ == o.lattice_ && coeffs_ == o.coeffs_;
    }

  private:
    GramLattice lattice_;
    Rational weight_;
    RatVec cone_;
    Rational height_bound_;
    bool cusp_;
    std::map<RatVec, Rational> coeffs_;
};

struct TensorValuedExpansion {
    GramLattice lattice;
    Rational weight;
    RatVec cone;
    Rational height_bound;
    int tensor_degree;
    int tensor_dim;
    std::map<RatVec, TensorForm> coeffs;

    TensorForm coefficient(const RatVec& x) const {
        auto it = coeffs.find(x);
        return it == coeffs.end() ? TensorForm(tensor_degree, tensor_dim) : it->second;
    }
};

// Dual vectors of a lattice in the closed cone of w0 with height <= bound.
// Lorentzian lattices and rank-one positive-definite lattices are supported.
std::vector<RatVec> enumerate_cone(const GramLattice& lattice, const RatVec& w0,
                                   const Rational& bound);

// Scalar pullback along a lattice vector lambda with Q(lambda) = -m < 0.
// Output lives on the saturated complement of lambda and has weight k + N.
OrthoFormExpansion pullback_heegner(const OrthoFormExpansion& f,
                                    const std::vector<long>& lambda, long N);

// Tensor-valued pullback along a Lorentzian sublattice whose orthogonal
// complement is negative definite.
TensorValuedExpansion pullback_cycle(const OrthoFormExpansion& f,
                                     const std::vector<RatVec>& sub_basis, long N);

// Order-N Taylor coefficient along the divisor of lambda, as a form on the
// complement. Requires all lower Taylor coefficients to vanish on the
// available truncation.
OrthoFormExpansion quasi_pullback(const OrthoFormExpansion& f, const std::vector<long>& lambda,
                                  long N);

// The exact proportionality factor between the order-N pullback and the
// quasi-pullback: N! * rising_factorial(s + ceil(N/2), floor(N/2)) with
// s = k + (1 - ell)/2.
Rational quasi_pullback_constant(const Rational& k, long ell, long N);

// Pullback acting on Laurent data of a meromorphic form. The input series has
// the q-variables first and the normalized elliptic variable w last; it must
// be regular in w (the pole has already been cleared by a w-power, recorded as
// pole_order). Applies G_N^s(d/dw, m * Delta) at w = 0, where Delta acts on a
// q-monomial as multiplication by Q of its exponent (computed in q_lattice)
// and s = pretend_weight + (1 - ell)/2. Returns a series in the q-variables.
LaurentSeries pullback_meromorphic(const LaurentSeries& g, const GramLattice& q_lattice,
                                   const Rational& pretend_weight, long ell, long pole_order,
                                   long N, const Rational& m = Rational(1));

}  // namespace omfq
