#include "omfq/ortho.hpp"

#include <algorithm>

namespace omfq {

OrthoFormExpansion::OrthoFormExpansion(GramLattice lattice, Rational weight, RatVec cone,
                                       Rational height_bound, bool cusp)
    : lattice_(std::move(lattice)),
      weight_(std::move(weight)),
      cone_(std::move(cone)),
      height_bound_(std::move(height_bound)),
      cusp_(cusp) {
    if (!(lattice_.is_lorentzian() || (lattice_.rank() == 1 && lattice_.is_positive_definite())))
        throw structural_error("index lattice must be Lorentzian (or positive of rank one)");
    if (lattice_.q(cone_) <= 0) throw structural_error("cone vector must have positive norm");
}

void OrthoFormExpansion::set(const RatVec& x, const Rational& c) {
    if (c == 0) {
        coeffs_.erase(x);
        return;
    }
    if (!lattice_.is_dual_vector(x)) throw structural_error("index is not a dual vector");
    Rational qx = lattice_.q(x);
    Rational h = height(x);
    if (qx < 0 || h < 0) throw structural_error("index outside the closed positive cone");
    if (cusp_ && qx == 0) throw structural_error("cusp form with boundary support");
    if (h > height_bound_) return;
    coeffs_[x] = c;
}

void OrthoFormExpansion::add_to(const RatVec& x, const Rational& c) {
    Rational v = coefficient(x) + c;
    set(x, v);
}

Rational OrthoFormExpansion::coefficient(const RatVec& x) const {
    auto it = coeffs_.find(x);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

std::vector<RatVec> enumerate_cone(const GramLattice& lattice, const RatVec& w0,
                                   const Rational& bound) {
    if (lattice.is_lorentzian()) return enumerate_dual_lorentzian(lattice, w0, bound);
    if (lattice.rank() == 1 && lattice.is_positive_definite()) {
        Rational q0 = lattice.q(w0);
        if (q0 <= 0) throw structural_error("cone vector must have positive norm");
        if (bound < 0) return {};
        std::vector<RatVec> out;
        for (const auto& x : enumerate_dual_definite(lattice, bound * bound / (4 * q0))) {
            Rational h = lattice.pairing(x, w0);
            if (h >= 0 && h <= bound) out.push_back(x);
        }
        return out;
    }
    throw structural_error("cone enumeration requires a Lorentzian or rank-one lattice");
}

namespace {

RatVec ambient_vector(const std::vector<RatVec>& basis, const RatVec& coords) {
    size_t n = basis.empty() ? 0 : basis[0].size();
    RatVec out(n, Rational(0));
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < n; ++i)
            if (coords[j] != 0) out[i] += coords[j] * basis[j][i];
    return out;
}

RatVec add_vec(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

// Look up an input coefficient at an ambient fiber point, enforcing the
// precision contract: a point above the truncation height makes the whole
// output coefficient undetermined.
Rational fiber_coefficient(const OrthoFormExpansion& f, const RatVec& x, const RatVec& out_index) {
    if (!f.lattice().is_dual_vector(x)) return Rational(0);
    Rational h = f.height(x);
    if (h < 0) return Rational(0);  // opposite cone: outside the support
    if (h > f.height_bound())
        throw precision_error("input truncation too shallow: output coefficient at " +
                              vec_to_string(out_index) + " is undetermined");
    return f.coefficient(x);
}

struct PullbackFrame {
    SublatticeSplit split;
    RatVec cone_out;       // cone vector in output-basis coordinates
    Rational bound_out;
    std::vector<RatVec> out_indices;
};

// Common setup for pullbacks whose output lives on split.sub.
PullbackFrame make_frame(const OrthoFormExpansion& f, const std::vector<RatVec>& sub_basis) {
    PullbackFrame fr{orthogonal_complement(f.lattice(), sub_basis), {}, f.height_bound(), {}};
    fr.cone_out = fr.split.sub_dual_coords(f.cone());
    if (fr.split.sub_gram.q(fr.cone_out) <= 0)
        throw structural_error("cone vector projects to a non-positive vector of the cycle");
    fr.out_indices = enumerate_cone(fr.split.sub_gram, fr.cone_out, fr.bound_out);
    return fr;
}

}  // namespace

OrthoFormExpansion pullback_heegner(const OrthoFormExpansion& f, const std::vector<long>& lambda,
                                    long N) {
    RatVec lam(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) lam[i] = Rational(lambda[i]);
    Rational qlam = f.lattice().q(lam);
    if (qlam >= 0) throw value_error("invalid divisor: lambda must have negative norm");
    Rational m = -qlam;
    long ell = f.lattice().rank();
    Rational s = f.weight() + Rational(1 - ell, 2);

    // The output lives on the saturated complement of lambda.
    PullbackFrame fr = make_frame(f, orthogonal_complement(f.lattice(), {lam}).comp_basis);
    OrthoFormExpansion out(fr.split.sub_gram, f.weight() + N, fr.cone_out, fr.bound_out,
                           N >= 1 || f.cusp());

    for (const RatVec& r : fr.out_indices) {
        RatVec r_amb = ambient_vector(fr.split.sub_basis, r);
        Rational qr = fr.split.sub_gram.q(r);
        // fiber: x = r + (t/2m) lambda with t^2 <= 4 m Q(r)
        Integer tmax = isqrt(floor_int(4 * m * qr));
        Rational acc(0);
        for (Integer t = -tmax; t <= tmax; ++t) {
            RatVec mu_amb(lam.size());
            Rational c = Rational(t) / (2 * m);
            for (size_t i = 0; i < lam.size(); ++i) mu_amb[i] = c * lam[i];
            RatVec x = add_vec(r_amb, mu_amb);
            Rational cx = fiber_coefficient(f, x, r);
            if (cx == 0) continue;
            acc += cx * gegenbauer_eval(N, s, f.lattice().pairing(x, lam), m * qr);
        }
        out.set(r, acc);
    }
    return out;
}

TensorValuedExpansion pullback_cycle(const OrthoFormExpansion& f,
                                     const std::vector<RatVec>& sub_basis, long N) {
    PullbackFrame fr = make_frame(f, sub_basis);
    if (!fr.split.comp_gram.is_negative_definite() && fr.split.comp_gram.rank() > 0)
        throw structural_error("cycle complement must be negative definite");
    if (!(fr.split.sub_gram.is_lorentzian() ||
          (fr.split.sub_gram.rank() == 1 && fr.split.sub_gram.is_positive_definite())))
        throw structural_error("cycle lattice must be Lorentzian");

    int dim = fr.split.comp_gram.rank();
    Rational s = f.weight() - Rational(fr.split.sub_gram.rank(), 2);
    TensorValuedExpansion out{fr.split.sub_gram, f.weight() + N, fr.cone_out,
                              fr.bound_out,      (int)N,         dim,
                              {}};

    RatMat b_half(dim, RatVec(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) b_half[i][j] = Rational(fr.split.comp_gram.gram()[i][j]) / 2;

    for (const RatVec& r : fr.out_indices) {
        RatVec r_amb = ambient_vector(fr.split.sub_basis, r);
        Rational qr = fr.split.sub_gram.q(r);
        TensorForm acc((int)N, dim);
        // fiber: mu in the complement dual with |Q(mu)| <= Q(r)
        for (const RatVec& mu : enumerate_dual_definite(fr.split.comp_gram, qr)) {
            RatVec mu_amb = ambient_vector(fr.split.comp_basis, mu);
            RatVec x = add_vec(r_amb, mu_amb);
            Rational cx = fiber_coefficient(f, x, r);
            if (cx == 0) continue;
            RatVec rvals(dim);
            for (int j = 0; j < dim; ++j)
                rvals[j] = f.lattice().pairing(x, fr.split.comp_basis[j]);
            RatMat mmat(dim, RatVec(dim));
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) mmat[i][j] = -qr * b_half[i][j];
            acc += gegenbauer_multilinear(N, s, rvals, mmat).scaled(cx);
        }
        if (!acc.is_zero()) out.coeffs.emplace(r, acc);
    }
    return out;
}

OrthoFormExpansion quasi_pullback(const OrthoFormExpansion& f, const std::vector<long>& lambda,
                                  long N) {
    RatVec lam(lambda.size());
    for (size_t i = 0; i < lambda.size(); ++i) lam[i] = Rational(lambda[i]);
    Rational qlam = f.lattice().q(lam);
    if (qlam >= 0) throw value_error("invalid divisor: lambda must have negative norm");
    Rational m = -qlam;

    PullbackFrame fr = make_frame(f, orthogonal_complement(f.lattice(), {lam}).comp_basis);
    OrthoFormExpansion out(fr.split.sub_gram, f.weight() + N, fr.cone_out, fr.bound_out, N >= 1);

    for (const RatVec& r : fr.out_indices) {
        RatVec r_amb = ambient_vector(fr.split.sub_basis, r);
        Rational qr = fr.split.sub_gram.q(r);
        Integer tmax = isqrt(floor_int(4 * m * qr));
        std::vector<std::pair<Rational, Rational>> fiber;  // (<x,lambda>, c(x))
        for (Integer t = -tmax; t <= tmax; ++t) {
            RatVec mu_amb(lam.size());
            Rational c = Rational(t) / (2 * m);
            for (size_t i = 0; i < lam.size(); ++i) mu_amb[i] = c * lam[i];
            RatVec x = add_vec(r_amb, mu_amb);
            Rational cx = fiber_coefficient(f, x, r);
            if (cx != 0) fiber.emplace_back(f.lattice().pairing(x, lam), cx);
        }
        for (long j = 0; j < N; ++j) {
            Rational tj(0);
            for (const auto& [w, c] : fiber) tj += c * pow_rational(w, j);
            if (tj != 0)
                throw value_error("form does not vanish to order " + std::to_string(N) +
                                  ": Taylor coefficient " + std::to_string(j) + " at " +
                                  vec_to_string(r) + " is " + tj.get_str());
        }
        Rational tn(0);
        for (const auto& [w, c] : fiber) tn += c * pow_rational(w, N);
        out.set(r, tn / factorial(N));
    }
    return out;
}

Rational quasi_pullback_constant(const Rational& k, long ell, long N) {
    Rational s = k + Rational(1 - ell, 2);
    return factorial(N) * rising_factorial(s + (N + 1) / 2, N / 2);
}

LaurentSeries pullback_meromorphic(const LaurentSeries& g, const GramLattice& q_lattice,
                                   const Rational& pretend_weight, long ell, long pole_order,
                                   long N, const Rational& m) {
    int nv = g.nvars();
    int nq = nv - 1;
    if (q_lattice.rank() != nq) throw structural_error("q-lattice rank must match q-variables");
    if (pole_order < 0) throw value_error("pole order must be nonnegative");
    for (const auto& [e, c] : g.coeffs())
        if (e[nq] < 0) throw value_error("pole along w = 0: negative w-exponents present");

    Rational s = pretend_weight + Rational(1 - ell, 2);

    std::vector<TruncationLine> lines;
    for (const auto& line : g.truncation().lines()) {
        if (line.weights[nq] != 0) continue;  // constraints involving w do not restrict the output
        TruncationLine l;
        l.weights.assign(line.weights.begin(), line.weights.begin() + nq);
        l.bound = line.bound;
        lines.push_back(l);
    }
    LaurentSeries out(nq, TruncationRegion::weighted(nq, std::move(lines)), g.denom());

    for (const auto& [e, c] : g.coeffs()) {
        if (e[nq] % g.denom() != 0) throw structural_error("fractional w-exponent");
        long j = e[nq] / g.denom();
        if (j > N || (N - j) % 2 != 0) continue;
        long n1 = (N - j) / 2;
        ExponentVector eq(e.begin(), e.begin() + nq);
        RatVec qv(nq);
        for (int i = 0; i < nq; ++i) qv[i] = Rational(e[i], g.denom());
        Rational term = gegenbauer_coefficient(N, n1, s) * factorial(j) * c *
                        pow_rational(m * q_lattice.q(qv), n1);
        out.add_to(eq, term);
    }
    return out;
}

}  // namespace omfq
