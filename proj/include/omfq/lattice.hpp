#pragma once

// Even lattices presented by Gram matrices: dual vectors, discriminant groups,
// orthogonal complements and dual-vector enumeration. These index every
// Fourier expansion in the project.

#include "omfq/rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace omfq {

using ZMat = std::vector<std::vector<Integer>>;

RatMat rat_inverse(const RatMat& a);                       // throws on singular input
RatVec mat_vec(const RatMat& a, const RatVec& v);
RatMat mat_mul(const RatMat& a, const RatMat& b);
Integer det_int(const ZMat& a);

// U * A * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    ZMat U, D, V;
};
SmithForm smith_normal_form(ZMat a);

struct degenerate_lattice_error : structural_error {
    using structural_error::structural_error;
};

class GramLattice {
  public:
    explicit GramLattice(ZMat gram);

    int rank() const { return rank_; }
    const ZMat& gram() const { return gram_; }
    const RatMat& gram_inverse() const { return gram_inv_; }
    std::pair<int, int> signature() const { return {sig_pos_, sig_neg_}; }
    Integer det() const { return det_; }

    bool is_positive_definite() const { return sig_neg_ == 0; }
    bool is_negative_definite() const { return sig_pos_ == 0; }
    bool is_lorentzian() const { return sig_pos_ == 1 && sig_neg_ == rank_ - 1; }

    Rational pairing(const RatVec& x, const RatVec& y) const;
    Rational q(const RatVec& x) const { return pairing(x, x) / 2; }

    // Membership of a rational coordinate vector in the dual lattice L'.
    bool is_dual_vector(const RatVec& x) const;
    // S * x, the vector of pairings with the basis.
    RatVec pairings_with_basis(const RatVec& x) const;

    // The lattice with quadratic form scaled by a (Gram a*S).
    GramLattice rescaled(long a) const;

    bool operator==(const GramLattice& o) const { return gram_ == o.gram_; }

  private:
    ZMat gram_;
    RatMat gram_inv_;
    int rank_;
    int sig_pos_, sig_neg_;
    Integer det_;
};

// Finite quotient L'/L with Q taken mod 1. Cosets are canonically represented
// by coordinate vectors with entries in [0,1).
class DiscriminantGroup {
  public:
    explicit DiscriminantGroup(const GramLattice& lattice);

    const GramLattice& lattice() const { return *lattice_; }
    const std::vector<RatVec>& cosets() const { return cosets_; }
    const std::vector<Integer>& elementary_divisors() const { return orders_; }
    Integer order() const { return order_; }

    RatVec canonical(const RatVec& x) const;     // reduce coordinates mod 1
    int index_of(const RatVec& x) const;         // index of canonical(x)
    Rational q_mod1(const RatVec& x) const;      // Q(x) mod 1, in [0,1)
    Rational pairing_mod1(const RatVec& x, const RatVec& y) const;

    // Smallest positive integer with level * Q(gamma) integral for all cosets.
    long level() const { return level_; }

  private:
    const GramLattice* lattice_;
    std::vector<RatVec> cosets_;
    std::map<RatVec, int> index_;
    std::vector<Integer> orders_;
    Integer order_;
    long level_;
};

// Orthogonal decomposition of an ambient lattice along a sublattice: primitive
// basis of the complement plus the rational projections onto both summands.
struct SublatticeSplit {
    const GramLattice* ambient;
    std::vector<RatVec> sub_basis;    // columns, integer coordinates in ambient basis
    std::vector<RatVec> comp_basis;   // saturated complement basis
    RatMat proj_sub, proj_comp;       // rational projections, proj_sub + proj_comp = id
    GramLattice sub_gram;             // Gram of sub_basis
    GramLattice comp_gram;            // Gram of comp_basis

    // Express the projection of an ambient vector as a dual vector of the
    // sub (resp. complement) lattice, in coordinates over that basis.
    RatVec sub_dual_coords(const RatVec& x) const;
    RatVec comp_dual_coords(const RatVec& x) const;
};

SublatticeSplit orthogonal_complement(const GramLattice& ambient,
                                      const std::vector<RatVec>& sub_basis);

// All dual vectors of a definite lattice with |Q| <= bound, sorted.
std::vector<RatVec> enumerate_dual_definite(const GramLattice& lattice, const Rational& bound);

// All dual vectors of a Lorentzian lattice in the closed positive cone of w0
// with height <x,w0> <= bound, sorted. Requires Q(w0) > 0.
std::vector<RatVec> enumerate_dual_lorentzian(const GramLattice& lattice, const RatVec& w0,
                                              const Rational& bound);

// All vectors of gamma + L (L positive definite) with Q <= bound, sorted.
std::vector<RatVec> enumerate_coset_ball(const GramLattice& lattice, const RatVec& gamma,
                                         const Rational& bound);

// Largest d >= 1 with x/d still in L'; requires x in L', x != 0.
Integer dual_content(const GramLattice& lattice, const RatVec& x);

}  // namespace omfq
