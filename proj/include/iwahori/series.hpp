#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace iwahori {

// Raised when a query needs coefficients beyond the known window.
struct insufficient_precision : std::runtime_error {
    explicit insufficient_precision(const std::string& what)
        : std::runtime_error(what) {}
};

// Raised when an element or matrix certified as zero / singular is inverted.
struct not_invertible : std::runtime_error {
    explicit not_invertible(const std::string& what) : std::runtime_error(what) {}
};

// Element of F_p((pi)) known exactly at all exponents below hi().  Exponents
// at or above hi() are unknown; exponents below the smallest stored one are
// exactly zero.  hi() == kExactHi marks a fully exact Laurent polynomial.
// The exact zero (no terms, exact) is distinct from "zero at this precision"
// (no known terms, finite window).
class Series {
public:
    static constexpr int kExactHi = 1 << 28;

    explicit Series(int p);  // exact zero
    static Series exact_zero(int p) { return Series(p); }
    static Series monomial(int p, int exp, long c = 1);
    static Series from_coeffs(int p, const std::map<int, int>& coeffs,
                              int hi = kExactHi);

    int p() const { return p_; }
    int hi() const { return hi_; }
    bool is_exact() const { return hi_ == kExactHi; }
    bool is_exact_zero() const { return is_exact() && coeffs_.empty(); }
    // True when no nonzero coefficient is known (exact zero or zero at
    // precision).
    bool known_part_zero() const { return coeffs_.empty(); }
    const std::map<int, int>& coeffs() const { return coeffs_; }

    // Coefficient at exponent e; throws insufficient_precision if e >= hi().
    int coeff(int e) const;
    // Coefficient of pi^{-1}.
    int residue_coeff() const { return coeff(-1); }

    bool has_valuation() const { return !coeffs_.empty(); }
    // Certified valuation; throws not_invertible on exact zero and
    // insufficient_precision on zero-at-precision.
    int valuation() const;
    // Lower bound on the valuation: the valuation itself when certified,
    // otherwise hi() (and kExactHi for the exact zero).
    int val_lower_bound() const;
    // Certifies val >= t, or throws insufficient_precision when undecidable.
    bool val_at_least(int t) const;

    Series truncated(int new_hi) const;

    Series operator-() const;
    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const;
    Series operator*(const Series& o) const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    // Agreement at every exponent below min(hi(), o.hi()).
    bool agrees_with(const Series& o) const;
    // Exact equality of representations (window and coefficients).
    bool operator==(const Series& o) const {
        return p_ == o.p_ && hi_ == o.hi_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const Series& o) const { return !(*this == o); }

    // Multiplicative inverse, computed below min(want_hi, hi() - 2*val).
    // Exact for exact monomials.
    Series inverse(int want_hi) const;

    std::string str() const;

private:
    int p_;
    std::map<int, int> coeffs_;  // exponent -> residue in [1, p)
    int hi_;

    void set_coeff(int e, long c);
    void normalize();
    void check_compatible(const Series& o) const;
};

// a * b^{-1} at the precision the inputs support (inverse target want_hi).
Series series_div(const Series& a, const Series& b, int want_hi);

}  // namespace iwahori
