#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace iwahori {

bool is_prime(int p);

// Laurent polynomial in q and lambda with integer coefficients.
// Canonical form: zero coefficients are never stored.
class QLPoly {
public:
    using Key = std::pair<int, int>;  // (q exponent, lambda exponent)

    QLPoly() = default;

    static QLPoly constant(long c) { return term(c, 0, 0); }
    static QLPoly term(long c, int qexp, int lexp);
    static QLPoly term(const mpz_class& c, int qexp, int lexp);
    static QLPoly q_pow(int e) { return term(1, e, 0); }
    static QLPoly lam_pow(int e) { return term(1, 0, e); }

    const std::map<Key, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpz_class coeff(int qexp, int lexp) const;

    QLPoly operator-() const;
    QLPoly& operator+=(const QLPoly& o);
    QLPoly& operator-=(const QLPoly& o);
    QLPoly operator+(const QLPoly& o) const;
    QLPoly operator-(const QLPoly& o) const;
    QLPoly operator*(const QLPoly& o) const;
    QLPoly& operator*=(const QLPoly& o);
    bool operator==(const QLPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const QLPoly& o) const { return terms_ != o.terms_; }

    std::string str() const;

private:
    std::map<Key, mpz_class> terms_;

    void add_term(const Key& k, const mpz_class& c);
};

// Element of Q(zeta_p)[lambda^{\pm 1}] for a prime p.  Coordinates are kept in
// the power basis 1, zeta, ..., zeta^{p-2}; zeta^{p-1} is eliminated through
// 1 + zeta + ... + zeta^{p-1} = 0.
class CycloScalar {
public:
    using Coords = std::vector<mpq_class>;  // length p-1

    explicit CycloScalar(int p);  // zero

    static CycloScalar rational(int p, const mpq_class& c);
    static CycloScalar zeta_pow(int p, long k);
    static CycloScalar term(int p, int lexp, const Coords& coords);

    int p() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Coords>& terms() const { return terms_; }

    CycloScalar operator-() const;
    CycloScalar& operator+=(const CycloScalar& o);
    CycloScalar& operator-=(const CycloScalar& o);
    CycloScalar operator+(const CycloScalar& o) const;
    CycloScalar operator-(const CycloScalar& o) const;
    CycloScalar operator*(const CycloScalar& o) const;
    bool operator==(const CycloScalar& o) const;
    bool operator!=(const CycloScalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    int p_;
    std::map<int, Coords> terms_;  // lambda exponent -> coordinates

    void add_term(int lexp, const Coords& c);
    void check_compatible(const CycloScalar& o) const;
};

// zeta_p^x; x is reduced mod p.
CycloScalar psi_char(int p, long x);

// Ring map q -> p, lambda -> lambda, into Q(zeta_p)[lambda^{\pm 1}].
CycloScalar specialize(const QLPoly& f, int p);

// p^e as an exact rational, e of either sign.
mpq_class rational_pow(long base, int e);

}  // namespace iwahori
