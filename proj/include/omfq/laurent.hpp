#pragma once

// Truncated multivariate Laurent series with exact rational coefficients.
//
// A series stores integer exponent vectors together with one global exponent
// denominator D, so the true exponent of variable i in a term is coords[i]/D.
// Fractional powers (eta quotients, half-integral elliptic exponents) are
// handled by enlarging D, never by storing fractional exponents.

#include "omfq/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace omfq {

using ExponentVector = std::vector<long>;

struct TruncationLine {
    RatVec weights;
    Rational bound;
};

// Conjunction of half-space constraints sum_i w[i] e[i]/D <= bound.
// An empty constraint list means "no truncation".
class TruncationRegion {
  public:
    TruncationRegion() : nvars_(0) {}
    explicit TruncationRegion(int nvars) : nvars_(nvars) {}

    static TruncationRegion none(int nvars) { return TruncationRegion(nvars); }

    static TruncationRegion total_degree(int nvars, const Rational& bound) {
        TruncationRegion r(nvars);
        TruncationLine line;
        line.weights.assign(nvars, Rational(1));
        line.bound = bound;
        r.lines_.push_back(line);
        return r;
    }

    static TruncationRegion weighted(int nvars, std::vector<TruncationLine> lines) {
        TruncationRegion r(nvars);
        for (const auto& l : lines) {
            if ((int)l.weights.size() != nvars)
                throw structural_error("truncation line arity mismatch");
        }
        r.lines_ = std::move(lines);
        return r;
    }

    int nvars() const { return nvars_; }
    const std::vector<TruncationLine>& lines() const { return lines_; }
    bool unbounded() const { return lines_.empty(); }

    bool contains(const ExponentVector& e, long denom) const {
        for (const auto& line : lines_) {
            Rational h(0);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] != 0) h += line.weights[i] * Rational(e[i], denom);
            if (h > line.bound) return false;
        }
        return true;
    }

    TruncationRegion intersected(const TruncationRegion& other) const {
        if (nvars_ != other.nvars_) throw structural_error("truncation arity mismatch");
        TruncationRegion r(nvars_);
        r.lines_ = lines_;
        r.lines_.insert(r.lines_.end(), other.lines_.begin(), other.lines_.end());
        return r;
    }

    // Region for a series multiplied by the monomial with exponents delta/denom.
    TruncationRegion shifted(const ExponentVector& delta, long denom) const {
        TruncationRegion r(nvars_);
        r.lines_ = lines_;
        for (auto& line : r.lines_) {
            for (int i = 0; i < nvars_; ++i)
                if (delta[i] != 0) line.bound += line.weights[i] * Rational(delta[i], denom);
        }
        return r;
    }

  private:
    int nvars_;
    std::vector<TruncationLine> lines_;
};

class LaurentSeries {
  public:
    LaurentSeries() : nvars_(0), denom_(1), trunc_(0) {}
    LaurentSeries(int nvars, TruncationRegion trunc, long denom = 1)
        : nvars_(nvars), denom_(denom), trunc_(std::move(trunc)) {
        if (denom_ <= 0) throw structural_error("exponent denominator must be positive");
        if (trunc_.nvars() != nvars_) throw structural_error("truncation arity mismatch");
    }

    static LaurentSeries zero(int nvars, TruncationRegion trunc, long denom = 1) {
        return LaurentSeries(nvars, std::move(trunc), denom);
    }

    static LaurentSeries monomial(int nvars, TruncationRegion trunc, const ExponentVector& e,
                                  const Rational& c, long denom = 1) {
        LaurentSeries s(nvars, std::move(trunc), denom);
        s.set(e, c);
        return s;
    }

    static LaurentSeries one(int nvars, TruncationRegion trunc, long denom = 1) {
        return monomial(nvars, std::move(trunc), ExponentVector(nvars, 0), Rational(1), denom);
    }

    int nvars() const { return nvars_; }
    long denom() const { return denom_; }
    const TruncationRegion& truncation() const { return trunc_; }
    const std::map<ExponentVector, Rational>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    void set(const ExponentVector& e, const Rational& c) {
        if ((int)e.size() != nvars_) throw structural_error("exponent arity mismatch");
        if (!trunc_.contains(e, denom_)) return;
        if (c == 0)
            coeffs_.erase(e);
        else
            coeffs_[e] = c;
    }

    void add_to(const ExponentVector& e, const Rational& c) {
        if ((int)e.size() != nvars_) throw structural_error("exponent arity mismatch");
        if (!trunc_.contains(e, denom_)) return;
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            if (c != 0) coeffs_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    Rational coefficient(const ExponentVector& e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    // Coefficient of the true (possibly fractional) exponent vector q.
    Rational coefficient_at(const RatVec& q) const {
        ExponentVector e(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            Rational t = q[i] * denom_;
            if (!is_integer(t)) return Rational(0);
            e[i] = to_long(to_integer(t));
        }
        return coefficient(e);
    }

    LaurentSeries rescaled(long new_denom) const {
        if (new_denom % denom_ != 0)
            throw structural_error("exponent denominator rescale must be a multiple");
        long f = new_denom / denom_;
        if (f == 1) return *this;
        LaurentSeries out(nvars_, trunc_, new_denom);
        for (const auto& [e, c] : coeffs_) {
            ExponentVector e2(nvars_);
            for (int i = 0; i < nvars_; ++i) e2[i] = e[i] * f;
            out.coeffs_.emplace(e2, c);
        }
        return out;
    }

    LaurentSeries operator-() const {
        LaurentSeries out(nvars_, trunc_, denom_);
        for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e, -c);
        return out;
    }

    LaurentSeries scaled(const Rational& a) const {
        LaurentSeries out(nvars_, trunc_, denom_);
        if (a == 0) return out;
        for (const auto& [e, c] : coeffs_) out.coeffs_.emplace(e, c * a);
        return out;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        auto [x, y] = aligned(a, b);
        LaurentSeries out(x.nvars_, x.trunc_.intersected(y.trunc_), x.denom_);
        for (const auto& [e, c] : x.coeffs_) out.add_to(e, c);
        for (const auto& [e, c] : y.coeffs_) out.add_to(e, c);
        return out;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
        return a + (-b);
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        auto [x, y] = aligned(a, b);
        LaurentSeries out(x.nvars_, x.trunc_.intersected(y.trunc_), x.denom_);
        ExponentVector e(x.nvars_);
        for (const auto& [e1, c1] : x.coeffs_) {
            for (const auto& [e2, c2] : y.coeffs_) {
                for (int i = 0; i < x.nvars_; ++i) e[i] = e1[i] + e2[i];
                out.add_to(e, c1 * c2);
            }
        }
        return out;
    }

    bool operator==(const LaurentSeries& other) const {
        if (nvars_ != other.nvars_) return false;
        auto [x, y] = aligned(*this, other);
        return x.coeffs_ == y.coeffs_;
    }
    bool operator!=(const LaurentSeries& other) const { return !(*this == other); }

    // Multiply by the monomial x^(delta/denom) and translate the region with it.
    LaurentSeries shifted(const ExponentVector& delta) const {
        LaurentSeries out(nvars_, trunc_.shifted(delta, denom_), denom_);
        for (const auto& [e, c] : coeffs_) {
            ExponentVector e2(nvars_);
            for (int i = 0; i < nvars_; ++i) e2[i] = e[i] + delta[i];
            out.coeffs_.emplace(e2, c);
        }
        return out;
    }

    // Inverse of a series that factors as monomial * unit. The unique minimal
    // exponent is auto-detected: the componentwise minimum of the support must
    // itself carry a nonzero coefficient. The result is exact on the input
    // region translated by -2*(minimal exponent).
    LaurentSeries invert_unit(long max_iterations = 4096) const {
        if (coeffs_.empty()) throw value_error("cannot invert the zero series");
        ExponentVector m = coeffs_.begin()->first;
        for (const auto& [e, c] : coeffs_)
            for (int i = 0; i < nvars_; ++i) m[i] = std::min(m[i], e[i]);
        auto it = coeffs_.find(m);
        if (it == coeffs_.end())
            throw value_error("series has no unit structure (no unique minimal exponent)");
        Rational c0 = it->second;

        ExponentVector neg_m(nvars_);
        for (int i = 0; i < nvars_; ++i) neg_m[i] = -m[i];
        LaurentSeries u = shifted(neg_m);  // constant term c0, all exponents >= 0

        LaurentSeries r(nvars_, u.trunc_, denom_);
        for (const auto& [e, c] : u.coeffs_) {
            bool is_const = std::all_of(e.begin(), e.end(), [](long v) { return v == 0; });
            if (!is_const) r.coeffs_.emplace(e, -c / c0);
        }

        LaurentSeries acc = LaurentSeries::one(nvars_, u.trunc_, denom_);
        LaurentSeries pw = r;
        long iter = 0;
        while (!pw.is_zero()) {
            if (++iter > max_iterations)
                throw precision_error("unit inversion does not terminate within the region");
            acc = acc + pw;
            pw = pw * r;
        }
        return acc.scaled(Rational(1) / c0).shifted(neg_m);
    }

    // Substitute variable `var` by exp(w): x^k -> sum_{j<=order} k^j/j! w^j,
    // where k is the (possibly fractional) true exponent. The substituted slot
    // becomes the w variable; its exponents are integers times denom.
    LaurentSeries exp_substitute(int var, long order) const {
        if (var < 0 || var >= nvars_) throw structural_error("variable index out of range");
        std::vector<TruncationLine> lines;
        for (auto line : trunc_.lines()) {
            line.weights[var] = Rational(0);
            lines.push_back(line);
        }
        TruncationLine wcap;
        wcap.weights.assign(nvars_, Rational(0));
        wcap.weights[var] = Rational(1);
        wcap.bound = Rational(order);
        lines.push_back(wcap);
        LaurentSeries out(nvars_, TruncationRegion::weighted(nvars_, lines), denom_);
        for (const auto& [e, c] : coeffs_) {
            Rational k(e[var], denom_);
            Rational term = c;  // c * k^j / j!
            for (long j = 0; j <= order; ++j) {
                ExponentVector e2 = e;
                e2[var] = j * denom_;
                out.add_to(e2, term);
                if (k == 0) break;
                term *= k;
                term /= (j + 1);
            }
        }
        return out;
    }

  private:
    static std::pair<LaurentSeries, LaurentSeries> aligned(const LaurentSeries& a,
                                                           const LaurentSeries& b) {
        if (a.nvars_ != b.nvars_)
            throw structural_error("series variable-count mismatch");
        long d = std::lcm(a.denom_, b.denom_);
        return {a.rescaled(d), b.rescaled(d)};
    }

    int nvars_;
    long denom_;
    std::map<ExponentVector, Rational> coeffs_;
    TruncationRegion trunc_;
};

}  // namespace omfq
