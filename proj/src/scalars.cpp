#include "iwahori/scalars.hpp"

#include <sstream>
#include <stdexcept>

namespace iwahori {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

QLPoly QLPoly::term(long c, int qexp, int lexp) { return term(mpz_class(c), qexp, lexp); }

QLPoly QLPoly::term(const mpz_class& c, int qexp, int lexp) {
    QLPoly r;
    if (c != 0) r.terms_[{qexp, lexp}] = c;
    return r;
}

mpz_class QLPoly::coeff(int qexp, int lexp) const {
    auto it = terms_.find({qexp, lexp});
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void QLPoly::add_term(const Key& k, const mpz_class& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_[k] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

QLPoly QLPoly::operator-() const {
    QLPoly r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

QLPoly& QLPoly::operator+=(const QLPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

QLPoly& QLPoly::operator-=(const QLPoly& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

QLPoly QLPoly::operator+(const QLPoly& o) const {
    QLPoly r = *this;
    r += o;
    return r;
}

QLPoly QLPoly::operator-(const QLPoly& o) const {
    QLPoly r = *this;
    r -= o;
    return r;
}

QLPoly QLPoly::operator*(const QLPoly& o) const {
    QLPoly r;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
}

QLPoly& QLPoly::operator*=(const QLPoly& o) {
    *this = *this * o;
    return *this;
}

std::string QLPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        mpz_class a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool unit = (a == 1) && (k.first != 0 || k.second != 0);
        if (!unit) os << a.get_str();
        bool need_sep = !unit;
        if (k.first != 0) {
            if (need_sep) os << "*";
            os << "q";
            if (k.first != 1) os << "^" << k.first;
            need_sep = true;
        }
        if (k.second != 0) {
            if (need_sep) os << "*";
            os << "lam";
            if (k.second != 1) os << "^" << k.second;
        }
    }
    return os.str();
}

CycloScalar::CycloScalar(int p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("CycloScalar: p must be prime");
}

CycloScalar CycloScalar::rational(int p, const mpq_class& c) {
    CycloScalar r(p);
    Coords v(static_cast<size_t>(p - 1), mpq_class(0));
    v[0] = c;
    r.add_term(0, v);
    return r;
}

CycloScalar CycloScalar::zeta_pow(int p, long k) {
    CycloScalar r(p);
    long e = k % p;
    if (e < 0) e += p;
    Coords v(static_cast<size_t>(p - 1), mpq_class(0));
    if (e < p - 1) {
        v[static_cast<size_t>(e)] = 1;
    } else {
        // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (auto& x : v) x = -1;
    }
    r.add_term(0, v);
    return r;
}

CycloScalar CycloScalar::term(int p, int lexp, const Coords& coords) {
    CycloScalar r(p);
    if (coords.size() != static_cast<size_t>(p - 1))
        throw std::invalid_argument("CycloScalar: coordinate vector has wrong length");
    r.add_term(lexp, coords);
    return r;
}

void CycloScalar::add_term(int lexp, const Coords& c) {
    bool all_zero = true;
    for (const auto& x : c)
        if (x != 0) {
            all_zero = false;
            break;
        }
    auto it = terms_.find(lexp);
    if (it == terms_.end()) {
        if (!all_zero) terms_[lexp] = c;
        return;
    }
    bool nonzero = false;
    for (size_t i = 0; i < c.size(); ++i) {
        it->second[i] += c[i];
        if (it->second[i] != 0) nonzero = true;
    }
    if (!nonzero) terms_.erase(it);
}

void CycloScalar::check_compatible(const CycloScalar& o) const {
    if (p_ != o.p_) throw std::invalid_argument("CycloScalar: mixed cyclotomic fields");
}

CycloScalar CycloScalar::operator-() const {
    CycloScalar r(p_);
    for (const auto& [e, c] : terms_) {
        Coords v = c;
        for (auto& x : v) x = -x;
        r.terms_[e] = v;
    }
    return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) {
    check_compatible(o);
    *this += -o;
    return *this;
}

CycloScalar CycloScalar::operator+(const CycloScalar& o) const {
    CycloScalar r = *this;
    r += o;
    return r;
}

CycloScalar CycloScalar::operator-(const CycloScalar& o) const {
    CycloScalar r = *this;
    r -= o;
    return r;
}

CycloScalar CycloScalar::operator*(const CycloScalar& o) const {
    check_compatible(o);
    CycloScalar r(p_);
    const size_t m = static_cast<size_t>(p_ - 1);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            // Convolve in zeta, then fold zeta^p = 1 and eliminate zeta^{p-1}.
            std::vector<mpq_class> conv(2 * m - 1, mpq_class(0));
            for (size_t i = 0; i < m; ++i) {
                if (ca[i] == 0) continue;
                for (size_t j = 0; j < m; ++j) {
                    if (cb[j] == 0) continue;
                    conv[i + j] += ca[i] * cb[j];
                }
            }
            std::vector<mpq_class> folded(static_cast<size_t>(p_), mpq_class(0));
            for (size_t k = 0; k < conv.size(); ++k)
                folded[k % static_cast<size_t>(p_)] += conv[k];
            Coords v(m, mpq_class(0));
            for (size_t k = 0; k < m; ++k) v[k] = folded[k] - folded[m];
            r.add_term(ea + eb, v);
        }
    }
    return r;
}

bool CycloScalar::operator==(const CycloScalar& o) const {
    return p_ == o.p_ && terms_ == o.terms_;
}

std::string CycloScalar::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool outer_first = true;
    for (const auto& [e, c] : terms_) {
        if (!outer_first) os << " + ";
        outer_first = false;
        os << "(";
        bool first = true;
        for (size_t k = 0; k < c.size(); ++k) {
            if (c[k] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << c[k];
            if (k > 0) os << "*z^" << k;
        }
        if (first) os << "0";
        os << ")";
        if (e != 0) os << "*lam^" << e;
    }
    return os.str();
}

CycloScalar psi_char(int p, long x) { return CycloScalar::zeta_pow(p, x); }

mpq_class rational_pow(long base, int e) {
    mpz_class b(base);
    mpz_class num;
    mpz_pow_ui(num.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e >= 0 ? e : -e));
    if (e >= 0) return mpq_class(num);
    mpq_class r(1, num);
    r.canonicalize();
    return r;
}

CycloScalar specialize(const QLPoly& f, int p) {
    CycloScalar r(p);
    for (const auto& [k, c] : f.terms()) {
        CycloScalar::Coords v(static_cast<size_t>(p - 1), mpq_class(0));
        v[0] = mpq_class(c) * rational_pow(p, k.first);
        r += CycloScalar::term(p, k.second, v);
    }
    return r;
}

}  // namespace iwahori
