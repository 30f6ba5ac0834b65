#pragma once

// Exact rational scalars. Everything in this project is exact; there is no
// floating point anywhere in the computational core.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace omfq {

using Rational = mpq_class;
using Integer = mpz_class;

struct value_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw value_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& x) { return x.get_den() == 1; }

inline Integer to_integer(const Rational& x) {
    if (!is_integer(x)) throw value_error("expected integer, got " + x.get_str());
    return x.get_num();
}

inline long to_long(const Integer& x) {
    if (!x.fits_slong_p()) throw value_error("integer out of machine range: " + x.get_str());
    return x.get_si();
}

inline Integer floor_int(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Integer ceil_int(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// floor(sqrt(n)) for n >= 0
inline Integer isqrt(const Integer& n) {
    if (n < 0) throw value_error("isqrt of negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw value_error("zero to negative power");
        return Rational(0);
    }
    Rational b = e < 0 ? Rational(1) / base : base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// x (x+1) ... (x+n-1); empty product for n = 0. Exact for any rational x,
// including negative and half-integral arguments.
inline Rational rising_factorial(const Rational& x, long n) {
    if (n < 0) throw value_error("rising_factorial with negative length");
    Rational acc(1);
    Rational t = x;
    for (long i = 0; i < n; ++i) {
        acc *= t;
        t += 1;
    }
    return acc;
}

inline Rational factorial(long n) {
    if (n < 0) throw value_error("factorial of negative integer");
    Rational acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// Generalized binomial coefficient: x (x-1) ... (x-k+1) / k!
inline Rational binomial(const Rational& x, long k) {
    if (k < 0) return Rational(0);
    Rational acc(1);
    Rational t = x;
    for (long i = 0; i < k; ++i) {
        acc *= t;
        t -= 1;
    }
    return acc / factorial(k);
}

inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw value_error("malformed rational: " + s);
    if (r.get_den() == 0) throw value_error("rational with zero denominator: " + s);
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& x) { return x.get_str(); }

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

inline std::string vec_to_string(const RatVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace omfq
