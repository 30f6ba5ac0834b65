#include "omfq/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace omfq {

RatMat rat_inverse(const RatMat& a) {
    int n = (int)a.size();
    RatMat m = a;
    RatMat inv(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw degenerate_lattice_error("singular matrix");
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = m[col][col];
        for (int j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (int j = 0; j < n; ++j) {
                m[r][j] -= f * m[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

RatVec mat_vec(const RatMat& a, const RatVec& v) {
    RatVec out(a.size(), Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j)
            if (a[i][j] != 0 && v[j] != 0) out[i] += a[i][j] * v[j];
    return out;
}

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    size_t n = a.size(), m = b[0].size(), k = b.size();
    RatMat out(n, RatVec(m, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l)
            if (a[i][l] != 0)
                for (size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    return out;
}

Integer det_int(const ZMat& a) {
    // Fraction-free not needed at these sizes; go through rationals.
    int n = (int)a.size();
    RatMat m(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rational p = m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            Rational f = m[r][col] / p;
            for (int j = col; j < n; ++j) m[r][j] -= f * m[col][j];
        }
    }
    return to_integer(det);
}

namespace {

void identity(ZMat& m, int n) {
    m.assign(n, std::vector<Integer>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
}

}  // namespace

SmithForm smith_normal_form(ZMat a) {
    int rows = (int)a.size();
    int cols = rows ? (int)a[0].size() : 0;
    SmithForm f;
    identity(f.U, rows);
    identity(f.V, cols);

    auto row_op = [&](int i, int j, const Integer& c) {  // row_i += c * row_j
        for (int k = 0; k < cols; ++k) a[i][k] += c * a[j][k];
        for (int k = 0; k < rows; ++k) f.U[i][k] += c * f.U[j][k];
    };
    auto col_op = [&](int i, int j, const Integer& c) {  // col_i += c * col_j
        for (int k = 0; k < rows; ++k) a[k][i] += c * a[k][j];
        for (int k = 0; k < cols; ++k) f.V[k][i] += c * f.V[k][j];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(a[i], a[j]);
        std::swap(f.U[i], f.U[j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int k = 0; k < rows; ++k) std::swap(a[k][i], a[k][j]);
        for (int k = 0; k < cols; ++k) std::swap(f.V[k][i], f.V[k][j]);
    };

    int t = 0;
    while (t < rows && t < cols) {
        // find a pivot with minimal nonzero absolute value
        int pi = -1, pj = -1;
        Integer best = 0;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (a[i][j] == 0) continue;
                Integer v = abs(a[i][j]);
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        row_swap(t, pi);
        col_swap(t, pj);

        bool clean = true;
        for (int i = t + 1; i < rows; ++i) {
            if (a[i][t] == 0) continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
            row_op(i, t, -q);
            if (a[i][t] != 0) clean = false;
        }
        for (int j = t + 1; j < cols; ++j) {
            if (a[t][j] == 0) continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
            col_op(j, t, -q);
            if (a[t][j] != 0) clean = false;
        }
        if (!clean) continue;

        // divisibility of the remaining block
        bool divides = true;
        for (int i = t + 1; i < rows && divides; ++i)
            for (int j = t + 1; j < cols && divides; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    row_op(t, i, 1);
                    divides = false;
                }
        if (!divides) continue;
        if (a[t][t] < 0) {
            for (int k = 0; k < cols; ++k) a[t][k] = -a[t][k];
            for (int k = 0; k < rows; ++k) f.U[t][k] = -f.U[t][k];
        }
        ++t;
    }
    f.D = a;
    return f;
}

GramLattice::GramLattice(ZMat gram) : gram_(std::move(gram)) {
    rank_ = (int)gram_.size();
    for (int i = 0; i < rank_; ++i) {
        if ((int)gram_[i].size() != rank_) throw structural_error("Gram matrix not square");
        if (gram_[i][i] % 2 != 0) throw structural_error("Gram diagonal must be even");
        for (int j = 0; j < rank_; ++j)
            if (gram_[i][j] != gram_[j][i]) throw structural_error("Gram matrix not symmetric");
    }
    // Sylvester signature via congruent diagonalization over Q.
    RatMat m(rank_, RatVec(rank_));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) m[i][j] = Rational(gram_[i][j]);
    sig_pos_ = sig_neg_ = 0;
    for (int t = 0; t < rank_; ++t) {
        if (m[t][t] == 0) {
            int j = -1;
            for (int r = t + 1; r < rank_; ++r)
                if (m[t][r] != 0) {
                    j = r;
                    break;
                }
            if (j < 0) continue;  // zero row: contributes no sign
            Rational c = (m[j][j] == -2 * m[t][j]) ? Rational(-1) : Rational(1);
            for (int k = 0; k < rank_; ++k) m[t][k] += c * m[j][k];
            for (int k = 0; k < rank_; ++k) m[k][t] += c * m[k][j];
        }
        if (m[t][t] == 0) continue;
        if (m[t][t] > 0)
            ++sig_pos_;
        else
            ++sig_neg_;
        for (int r = t + 1; r < rank_; ++r) {
            if (m[r][t] == 0) continue;
            Rational f = m[r][t] / m[t][t];
            for (int k = 0; k < rank_; ++k) m[r][k] -= f * m[t][k];
            for (int k = 0; k < rank_; ++k) m[k][r] -= f * m[k][t];
        }
    }
    if (sig_pos_ + sig_neg_ != rank_)
        throw degenerate_lattice_error("degenerate Gram matrix");
    det_ = det_int(gram_);
    RatMat g(rank_, RatVec(rank_));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) g[i][j] = Rational(gram_[i][j]);
    gram_inv_ = rat_inverse(g);
}

Rational GramLattice::pairing(const RatVec& x, const RatVec& y) const {
    if ((int)x.size() != rank_ || (int)y.size() != rank_)
        throw structural_error("vector arity mismatch");
    Rational s(0);
    for (int i = 0; i < rank_; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < rank_; ++j)
            if (gram_[i][j] != 0 && y[j] != 0) s += x[i] * Rational(gram_[i][j]) * y[j];
    }
    return s;
}

bool GramLattice::is_dual_vector(const RatVec& x) const {
    for (const Rational& p : pairings_with_basis(x))
        if (!is_integer(p)) return false;
    return true;
}

RatVec GramLattice::pairings_with_basis(const RatVec& x) const {
    if ((int)x.size() != rank_) throw structural_error("vector arity mismatch");
    RatVec out(rank_, Rational(0));
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j)
            if (gram_[i][j] != 0 && x[j] != 0) out[i] += Rational(gram_[i][j]) * x[j];
    return out;
}

GramLattice GramLattice::rescaled(long a) const {
    ZMat g = gram_;
    for (auto& row : g)
        for (auto& v : row) v *= a;
    return GramLattice(g);
}

namespace {
Rational mod1(const Rational& x) {
    Rational r = x - Rational(floor_int(x));
    return r;
}
}  // namespace

DiscriminantGroup::DiscriminantGroup(const GramLattice& lattice) : lattice_(&lattice) {
    if (lattice.det() == 0) throw degenerate_lattice_error("discriminant group of degenerate lattice");
    int n = lattice.rank();
    ZMat s(n, std::vector<Integer>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i][j] = lattice.gram()[i][j];
    SmithForm f = smith_normal_form(s);
    for (int i = 0; i < n; ++i)
        if (f.D[i][i] > 1) orders_.push_back(f.D[i][i]);
    order_ = abs(lattice.det());

    // Cosets of Z^n / S Z^n are x = U^{-1} y, y_i mod d_i; gamma = S^{-1} x.
    RatMat uinv;
    {
        RatMat u(n, RatVec(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) u[i][j] = Rational(f.U[i][j]);
        uinv = rat_inverse(u);
    }
    std::vector<long> d(n);
    for (int i = 0; i < n; ++i) d[i] = to_long(f.D[i][i] == 0 ? Integer(1) : f.D[i][i]);
    std::vector<long> y(n, 0);
    const RatMat& sinv = lattice.gram_inverse();
    while (true) {
        RatVec x(n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (y[j] != 0) x[i] += uinv[i][j] * y[j];
        RatVec gamma = canonical(mat_vec(sinv, x));
        if (!index_.count(gamma)) {
            index_[gamma] = (int)cosets_.size();
            cosets_.push_back(gamma);
        }
        int k = n - 1;
        while (k >= 0 && ++y[k] == d[k]) y[k--] = 0;
        if (k < 0) break;
    }
    std::sort(cosets_.begin(), cosets_.end());
    index_.clear();
    for (int i = 0; i < (int)cosets_.size(); ++i) index_[cosets_[i]] = i;
    if (Integer((long)cosets_.size()) != order_)
        throw structural_error("discriminant group enumeration does not match |det|");

    Integer lv = 1;
    for (const auto& g : cosets_) {
        Rational q2 = lattice_->q(g);
        lv = lcm(lv, Integer(q2.get_den()));
    }
    level_ = to_long(lv);
}

RatVec DiscriminantGroup::canonical(const RatVec& x) const {
    RatVec out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = mod1(x[i]);
    return out;
}

int DiscriminantGroup::index_of(const RatVec& x) const {
    auto it = index_.find(canonical(x));
    if (it == index_.end()) throw structural_error("vector is not in the dual lattice");
    return it->second;
}

Rational DiscriminantGroup::q_mod1(const RatVec& x) const { return mod1(lattice_->q(x)); }

Rational DiscriminantGroup::pairing_mod1(const RatVec& x, const RatVec& y) const {
    return mod1(lattice_->pairing(x, y));
}

RatVec SublatticeSplit::sub_dual_coords(const RatVec& x) const {
    RatVec g((size_t)sub_gram.rank());
    for (size_t i = 0; i < sub_basis.size(); ++i) g[i] = ambient->pairing(x, sub_basis[i]);
    return mat_vec(sub_gram.gram_inverse(), g);
}

RatVec SublatticeSplit::comp_dual_coords(const RatVec& x) const {
    RatVec g((size_t)comp_gram.rank());
    for (size_t i = 0; i < comp_basis.size(); ++i) g[i] = ambient->pairing(x, comp_basis[i]);
    return mat_vec(comp_gram.gram_inverse(), g);
}

SublatticeSplit orthogonal_complement(const GramLattice& ambient,
                                      const std::vector<RatVec>& sub_basis) {
    int n = ambient.rank();
    int r = (int)sub_basis.size();
    for (const auto& v : sub_basis)
        for (const auto& c : v)
            if (!is_integer(c)) throw structural_error("sublattice basis must have integer coordinates");

    // Restricted Gram and its nondegeneracy.
    ZMat sub_g(r, std::vector<Integer>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) sub_g[i][j] = to_integer(ambient.pairing(sub_basis[i], sub_basis[j]));
    if (det_int(sub_g) == 0)
        throw degenerate_lattice_error("sublattice has degenerate restricted form");

    // Integer kernel of the pairing matrix P (r x n), saturated via Smith form.
    ZMat p(r, std::vector<Integer>(n));
    for (int i = 0; i < r; ++i) {
        RatVec pr = ambient.pairings_with_basis(sub_basis[i]);
        for (int j = 0; j < n; ++j) p[i][j] = to_integer(pr[j]);
    }
    SmithForm f = smith_normal_form(p);
    int rk = 0;
    for (int i = 0; i < std::min(r, n); ++i)
        if (f.D[i][i] != 0) ++rk;
    std::vector<RatVec> comp;
    for (int j = rk; j < n; ++j) {
        RatVec col(n);
        for (int i = 0; i < n; ++i) col[i] = Rational(f.V[i][j]);
        comp.push_back(col);
    }
    if ((int)comp.size() != n - r)
        throw degenerate_lattice_error("complement has unexpected rank");

    ZMat comp_g(comp.size(), std::vector<Integer>(comp.size()));
    for (size_t i = 0; i < comp.size(); ++i)
        for (size_t j = 0; j < comp.size(); ++j)
            comp_g[i][j] = to_integer(ambient.pairing(comp[i], comp[j]));

    SublatticeSplit split{&ambient, sub_basis, comp, {}, {}, GramLattice(sub_g), GramLattice(comp_g)};

    // proj_sub = B (B^T S B)^{-1} B^T S
    RatMat b(n, RatVec(r));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) b[i][j] = sub_basis[j][i];
    RatMat btsb(r, RatVec(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) btsb[i][j] = Rational(sub_g[i][j]);
    RatMat s(n, RatVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i][j] = Rational(ambient.gram()[i][j]);
    RatMat bts(r, RatVec(n));
    for (int i = 0; i < r; ++i) {
        RatVec pr = ambient.pairings_with_basis(sub_basis[i]);
        for (int j = 0; j < n; ++j) bts[i][j] = pr[j];
    }
    split.proj_sub = mat_mul(b, mat_mul(rat_inverse(btsb), bts));
    split.proj_comp.assign(n, RatVec(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            split.proj_comp[i][j] = (i == j ? Rational(1) : Rational(0)) - split.proj_sub[i][j];
    return split;
}

namespace {

// Enumerate integer vectors k in the box |k_i| <= box[i], sorted, mapped
// through S^{-1}, with an exact filter.
std::vector<RatVec> scan_box(const GramLattice& lattice, const std::vector<Integer>& box,
                             const std::function<bool(const RatVec&)>& keep) {
    int n = lattice.rank();
    std::vector<RatVec> out;
    std::vector<long> k(n), lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        lo[i] = -to_long(box[i]);
        hi[i] = to_long(box[i]);
        k[i] = lo[i];
    }
    while (true) {
        RatVec kv(n);
        for (int i = 0; i < n; ++i) kv[i] = Rational(k[i]);
        RatVec lam = mat_vec(lattice.gram_inverse(), kv);
        if (keep(lam)) out.push_back(lam);
        int i = n - 1;
        while (i >= 0 && ++k[i] > hi[i]) k[i--] = lo[i];
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<RatVec> enumerate_dual_definite(const GramLattice& lattice, const Rational& bound) {
    if (!lattice.is_positive_definite() && !lattice.is_negative_definite())
        throw structural_error("definite enumeration needs a definite lattice");
    if (bound < 0) return {};
    int n = lattice.rank();
    std::vector<Integer> box(n);
    for (int i = 0; i < n; ++i) {
        // |<lam, e_i>|^2 <= 4 |Q(lam)| |Q(e_i)| <= 2 bound |S_ii|
        Rational b2 = 2 * bound * abs(Rational(lattice.gram()[i][i]));
        box[i] = isqrt(ceil_int(b2)) + 1;
    }
    Rational b = bound;
    bool pos = lattice.is_positive_definite();
    return scan_box(lattice, box, [&](const RatVec& lam) {
        Rational q2 = lattice.q(lam);
        return pos ? q2 <= b : -q2 <= b;
    });
}

std::vector<RatVec> enumerate_dual_lorentzian(const GramLattice& lattice, const RatVec& w0,
                                              const Rational& bound) {
    if (!lattice.is_lorentzian()) throw structural_error("cone enumeration needs a Lorentzian lattice");
    Rational q0 = lattice.q(w0);
    if (q0 <= 0) throw structural_error("cone vector must have positive norm");
    if (bound < 0) return {};
    int n = lattice.rank();
    std::vector<Integer> box(n);
    for (int i = 0; i < n; ++i) {
        RatVec ei(n, Rational(0));
        ei[i] = 1;
        Rational wi = lattice.pairing(w0, ei);
        Rational qi_perp = Rational(lattice.gram()[i][i]) / 2 - wi * wi / (4 * q0);
        // k_i = c <w0,e_i> + <u, e_i-perp>, 0 <= c <= bound/(2 q0), Q(u) >= -bound^2/(4 q0)
        Rational lin = bound / (2 * q0) * abs(wi);
        Rational quad = bound * bound / q0 * abs(qi_perp);
        box[i] = ceil_int(lin) + isqrt(ceil_int(quad)) + 1;
    }
    return scan_box(lattice, box, [&](const RatVec& lam) {
        Rational h = lattice.pairing(lam, w0);
        return h >= 0 && h <= bound && lattice.q(lam) >= 0;
    });
}

std::vector<RatVec> enumerate_coset_ball(const GramLattice& lattice, const RatVec& gamma,
                                         const Rational& bound) {
    if (!lattice.is_positive_definite())
        throw structural_error("coset ball enumeration needs a positive-definite lattice");
    if (bound < 0) return {};
    int n = lattice.rank();
    std::vector<RatVec> out;
    std::vector<long> v(n), lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        // |lam_i| <= sqrt(2 bound (S^{-1})_ii)
        Rational b2 = 2 * bound * lattice.gram_inverse()[i][i];
        Integer bd = isqrt(ceil_int(b2)) + 1;
        lo[i] = to_long(-bd - ceil_int(gamma[i]));
        hi[i] = to_long(bd - ceil_int(gamma[i]) + 1);
        v[i] = lo[i];
    }
    while (true) {
        RatVec lam(n);
        for (int i = 0; i < n; ++i) lam[i] = gamma[i] + v[i];
        if (lattice.q(lam) <= bound) out.push_back(lam);
        int i = n - 1;
        while (i >= 0 && ++v[i] > hi[i]) v[i--] = lo[i];
        if (i < 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Integer dual_content(const GramLattice& lattice, const RatVec& x) {
    RatVec p = lattice.pairings_with_basis(x);
    Integer g = 0;
    for (const Rational& c : p) g = gcd(g, to_integer(c));
    if (g == 0) throw value_error("content of the zero vector");
    return abs(g);
}

}  // namespace omfq
