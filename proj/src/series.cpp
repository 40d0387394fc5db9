#include "iwahori/series.hpp"

#include "iwahori/scalars.hpp"

#include <sstream>

namespace iwahori {

namespace {

constexpr int kBig = Series::kExactHi / 2;

// min(a + b, kExactHi), saturating so exact windows stay exact.
int sat_add(int a, int b) {
    if (a >= kBig || b >= kBig) return Series::kExactHi;
    return a + b;
}

int norm_mod(long x, int p) {
    long r = x % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
}

// Inverse of c mod p, p prime, c not divisible by p.
int mod_inverse(int c, int p) {
    int t = 0, newt = 1, r = p, newr = norm_mod(c, p);
    while (newr != 0) {
        int qq = r / newr;
        int tmp = t - qq * newt;
        t = newt;
        newt = tmp;
        tmp = r - qq * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw not_invertible("mod_inverse: not a unit");
    return norm_mod(t, p);
}

}  // namespace

Series::Series(int p) : p_(p), hi_(kExactHi) {
    if (!is_prime(p)) throw std::invalid_argument("Series: p must be prime");
}

Series Series::monomial(int p, int exp, long c) {
    Series r(p);
    int cc = norm_mod(c, p);
    if (cc != 0) r.coeffs_[exp] = cc;
    return r;
}

Series Series::from_coeffs(int p, const std::map<int, int>& coeffs, int hi) {
    Series r(p);
    r.hi_ = hi;
    for (const auto& [e, c] : coeffs) r.coeffs_[e] = c;
    r.normalize();
    return r;
}

void Series::normalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        it->second = norm_mod(it->second, p_);
        if (it->second == 0 || it->first >= hi_)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

void Series::check_compatible(const Series& o) const {
    if (p_ != o.p_) throw std::invalid_argument("Series: mixed residue characteristics");
}

int Series::coeff(int e) const {
    if (e >= hi_)
        throw insufficient_precision("Series::coeff: exponent beyond known window");
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? 0 : it->second;
}

int Series::valuation() const {
    if (!coeffs_.empty()) return coeffs_.begin()->first;
    if (is_exact_zero()) throw not_invertible("Series::valuation: exact zero");
    throw insufficient_precision("Series::valuation: no nonzero coefficient in window");
}

int Series::val_lower_bound() const {
    return coeffs_.empty() ? hi_ : coeffs_.begin()->first;
}

bool Series::val_at_least(int t) const {
    if (!coeffs_.empty() && coeffs_.begin()->first < t) return false;
    if (hi_ >= t) return true;
    throw insufficient_precision("Series::val_at_least: window ends below threshold");
}

Series Series::truncated(int new_hi) const {
    Series r(p_);
    r.hi_ = std::min(hi_, new_hi);
    for (const auto& [e, c] : coeffs_)
        if (e < r.hi_) r.coeffs_[e] = c;
    return r;
}

Series Series::operator-() const {
    Series r(p_);
    r.hi_ = hi_;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = p_ - c;
    return r;
}

Series Series::operator+(const Series& o) const {
    check_compatible(o);
    Series r(p_);
    r.hi_ = std::min(hi_, o.hi_);
    r.coeffs_ = coeffs_;
    for (const auto& [e, c] : o.coeffs_) r.coeffs_[e] += c;
    r.normalize();
    return r;
}

Series Series::operator-(const Series& o) const { return *this + (-o); }

Series Series::operator*(const Series& o) const {
    check_compatible(o);
    // Exact zero absorbs regardless of the other window.
    if (is_exact_zero() || o.is_exact_zero()) return Series(p_);
    Series r(p_);
    r.hi_ = std::min(sat_add(val_lower_bound(), o.hi_),
                     sat_add(o.val_lower_bound(), hi_));
    for (const auto& [ea, ca] : coeffs_)
        for (const auto& [eb, cb] : o.coeffs_) {
            int e = ea + eb;
            if (e < r.hi_) r.coeffs_[e] += static_cast<long>(ca) * cb % p_;
        }
    r.normalize();
    return r;
}

bool Series::agrees_with(const Series& o) const {
    check_compatible(o);
    int h = std::min(hi_, o.hi_);
    for (const auto& [e, c] : coeffs_)
        if (e < h && o.coeff(e) != c) return false;
    for (const auto& [e, c] : o.coeffs_)
        if (e < h && coeff(e) != c) return false;
    return true;
}

Series Series::inverse(int want_hi) const {
    if (is_exact_zero()) throw not_invertible("Series::inverse: exact zero");
    if (!has_valuation())
        throw insufficient_precision("Series::inverse: valuation not certified");
    int v = valuation();
    int c = coeffs_.begin()->second;
    int cinv = mod_inverse(c, p_);

    if (is_exact() && coeffs_.size() == 1) return monomial(p_, -v, cinv);

    int out_hi = is_exact() ? want_hi : std::min(want_hi, sat_add(hi_, -2 * v));
    Series r(p_);
    r.hi_ = out_hi;
    std::map<int, int> y;  // exponent -> coefficient of the inverse
    for (int t = 0; -v + t < out_hi; ++t) {
        long acc;
        if (t == 0) {
            acc = cinv;
        } else {
            long s = 0;
            for (const auto& [e, xc] : coeffs_) {
                int off = e - v;  // need x_{v+1} .. x_{v+t}
                if (off < 1 || off > t) continue;
                auto it = y.find(-v + t - off);
                if (it != y.end()) s += static_cast<long>(xc) * it->second % p_;
            }
            acc = -(cinv * (s % p_)) % p_;
        }
        int cc = norm_mod(acc, p_);
        if (cc != 0) y[-v + t] = cc;
    }
    r.coeffs_ = std::move(y);
    r.normalize();
    return r;
}

Series series_div(const Series& a, const Series& b, int want_hi) {
    return a * b.inverse(want_hi);
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "pi";
            if (e != 1) os << "^" << e;
        }
    }
    if (!is_exact()) {
        if (!first) os << " + ";
        os << "O(pi^" << hi_ << ")";
    } else if (first) {
        os << "0";
    }
    return os.str();
}

}  // namespace iwahori
