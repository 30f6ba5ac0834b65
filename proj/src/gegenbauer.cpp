#include "omfq/gegenbauer.hpp"

#include <algorithm>

namespace omfq {

Rational gegenbauer_coefficient(long N, long n1, const Rational& s) {
    long n2 = N - 2 * n1;
    if (n1 < 0 || n2 < 0) throw value_error("invalid Gegenbauer index");
    long half_up = (N + 1) / 2;
    Rational c = factorial(N) / (factorial(n1) * factorial(n2));
    c *= rising_factorial(s + half_up, n1 + n2 - half_up);
    if (n1 % 2) c = -c;
    return c;
}

RatVec gegenbauer_coefficient_poly(long N, long n1) {
    long n2 = N - 2 * n1;
    long half_up = (N + 1) / 2;
    // rising factorial (s + a)(s + a + 1)...(s + a + len - 1) as a polynomial
    long a = half_up;
    long len = n1 + n2 - half_up;
    RatVec poly{Rational(1)};
    for (long i = 0; i < len; ++i) {
        RatVec next(poly.size() + 1, Rational(0));
        Rational c(a + i);
        for (size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j] * c;
            next[j + 1] += poly[j];
        }
        poly = next;
    }
    Rational scale = factorial(N) / (factorial(n1) * factorial(n2));
    if (n1 % 2) scale = -scale;
    for (auto& c : poly) c *= scale;
    return poly;
}

Rational gegenbauer_eval(long N, const Rational& s, const Rational& x, const Rational& y) {
    Rational acc(0);
    for (long n1 = 0; 2 * n1 <= N; ++n1) {
        long n2 = N - 2 * n1;
        acc += gegenbauer_coefficient(N, n1, s) * pow_rational(x, n2) * pow_rational(y, n1);
    }
    return acc;
}

Rational gegenbauer_eval_unrescaled(long N, const Rational& s, const Rational& x,
                                    const Rational& y) {
    Rational acc(0);
    for (long n1 = 0; 2 * n1 <= N; ++n1) {
        long n2 = N - 2 * n1;
        Rational c = rising_factorial(s, n1 + n2) / (factorial(n1) * factorial(n2));
        if (n1 % 2) c = -c;
        acc += c * pow_rational(x, n2) * pow_rational(y, n1);
    }
    return acc;
}

Rational TensorForm::value(const std::vector<RatVec>& vectors) const {
    if ((int)vectors.size() != degree_) throw structural_error("tensor evaluation arity mismatch");
    Rational acc(0);
    for (const auto& [idx, c] : comp_) {
        Rational t = c;
        for (int k = 0; k < degree_ && t != 0; ++k) t *= vectors[k][idx[k]];
        acc += t;
    }
    return acc;
}

bool TensorForm::is_symmetric() const {
    for (const auto& [idx, c] : comp_) {
        std::vector<int> sorted_idx = idx;
        std::sort(sorted_idx.begin(), sorted_idx.end());
        if (component(sorted_idx) != c) return false;
    }
    return true;
}

bool TensorForm::is_zero() const {
    for (const auto& [idx, c] : comp_)
        if (c != 0) return false;
    return true;
}

TensorForm& TensorForm::operator+=(const TensorForm& o) {
    if (degree_ != o.degree_ || dim_ != o.dim_)
        throw structural_error("tensor shape mismatch");
    for (const auto& [idx, c] : o.comp_) comp_[idx] += c;
    return *this;
}

TensorForm TensorForm::scaled(const Rational& a) const {
    TensorForm out(degree_, dim_);
    for (const auto& [idx, c] : comp_) out.comp_[idx] = c * a;
    return out;
}

bool TensorForm::operator==(const TensorForm& o) const {
    if (degree_ != o.degree_ || dim_ != o.dim_) return false;
    for (const auto& idx : index_tuples(degree_, dim_))
        if (component(idx) != o.component(idx)) return false;
    return true;
}

std::vector<std::vector<int>> TensorForm::index_tuples(int degree, int dim) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(degree, 0);
    if (degree == 0) {
        out.push_back(idx);
        return out;
    }
    while (true) {
        out.push_back(idx);
        int k = degree - 1;
        while (k >= 0 && ++idx[k] == dim) idx[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

namespace {

// Sym(r^{ox n2} (x) m^{ox n1}) evaluated at basis indices, as the average over
// all permutations of the slots.
TensorForm sym_power(int n1, int n2, const RatVec& r, const RatMat& m, int dim) {
    int N = 2 * n1 + n2;
    TensorForm out(N, dim);
    std::vector<int> perm(N);
    for (int i = 0; i < N; ++i) perm[i] = i;
    Rational norm = Rational(1) / factorial(N);
    auto tuples = TensorForm::index_tuples(N, dim);
    std::map<std::vector<int>, Rational> acc;
    do {
        for (const auto& idx : tuples) {
            Rational t(1);
            for (int k = 0; k < n2 && t != 0; ++k) t *= r[idx[perm[k]]];
            for (int k = 0; k < n1 && t != 0; ++k)
                t *= m[idx[perm[n2 + 2 * k]]][idx[perm[n2 + 2 * k + 1]]];
            if (t != 0) acc[idx] += t;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& idx : tuples) {
        auto it = acc.find(idx);
        out.set_component(idx, it == acc.end() ? Rational(0) : it->second * norm);
    }
    return out;
}

}  // namespace

TensorForm gegenbauer_multilinear(long N, const Rational& s, const RatVec& r, const RatMat& m) {
    int dim = (int)r.size();
    if ((int)m.size() != dim) throw structural_error("linear/bilinear dimension mismatch");
    TensorForm out(N, dim);
    for (long n1 = 0; 2 * n1 <= N; ++n1) {
        long n2 = N - 2 * n1;
        Rational c = gegenbauer_coefficient(N, n1, s);
        if (c == 0) continue;
        out += sym_power((int)n1, (int)n2, r, m, dim).scaled(c);
    }
    return out;
}

Rational polarize_value(const std::function<Rational(const RatVec&)>& diag, int N,
                        const std::vector<RatVec>& vectors) {
    if ((int)vectors.size() != N) throw structural_error("polarization arity mismatch");
    if (N == 0) return diag(RatVec{});
    int dim = (int)vectors[0].size();
    Rational acc(0);
    for (unsigned mask = 1; mask < (1u << N); ++mask) {
        RatVec v(dim, Rational(0));
        int bits = 0;
        for (int k = 0; k < N; ++k)
            if (mask & (1u << k)) {
                ++bits;
                for (int i = 0; i < dim; ++i) v[i] += vectors[k][i];
            }
        Rational t = diag(v);
        if ((N - bits) % 2) t = -t;
        acc += t;
    }
    return acc / factorial(N);
}

TensorForm polarize(const std::function<Rational(const RatVec&)>& diag, int N, int dim) {
    TensorForm out(N, dim);
    if (N == 0) {
        out.set_component({}, diag(RatVec(dim, Rational(0))));
        return out;
    }
    for (const auto& idx : TensorForm::index_tuples(N, dim)) {
        std::vector<RatVec> vs;
        for (int k = 0; k < N; ++k) {
            RatVec e(dim, Rational(0));
            e[idx[k]] = 1;
            vs.push_back(e);
        }
        out.set_component(idx, polarize_value(diag, N, vs));
    }
    // The subset-sum formula is symmetric by construction; the consistency
    // check is that the diagonal of the result reproduces the input.
    std::vector<RatVec> probes;
    for (unsigned mask = 1; mask < (1u << dim); ++mask) {
        RatVec v(dim, Rational(0));
        for (int i = 0; i < dim; ++i)
            if (mask & (1u << i)) v[i] = Rational(1 + i);
        probes.push_back(v);
    }
    for (const auto& v : probes) {
        std::vector<RatVec> vs(N, v);
        if (out.value(vs) != diag(v))
            throw value_error("inconsistent diagonal: input is not the diagonal of a symmetric N-form");
    }
    return out;
}

}  // namespace omfq
