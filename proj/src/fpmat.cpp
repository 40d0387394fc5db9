#include "iwahori/fpmat.hpp"

#include <sstream>
#include <stdexcept>

namespace iwahori {

namespace {

int mod_pow(int base, int exp, int p) {
    long long r = 1, b = ((base % p) + p) % p;
    while (exp > 0) {
        if (exp & 1) r = r * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<int>(r);
}

int mod_inv(int x, int p) { return mod_pow(x, p - 2, p); }

// In-place reduced row echelon form on a row-major buffer. Returns the pivot
// column indices in order.
std::vector<int> rref(std::vector<int>& m, int rows, int cols, int p) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i) {
            if (m[static_cast<size_t>(i) * cols + c] != 0) {
                pr = i;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != r) {
            for (int j = 0; j < cols; ++j)
                std::swap(m[static_cast<size_t>(pr) * cols + j],
                          m[static_cast<size_t>(r) * cols + j]);
        }
        int inv = mod_inv(m[static_cast<size_t>(r) * cols + c], p);
        for (int j = 0; j < cols; ++j)
            m[static_cast<size_t>(r) * cols + j] =
                m[static_cast<size_t>(r) * cols + j] * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            int f = m[static_cast<size_t>(i) * cols + c];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j) {
                int v = m[static_cast<size_t>(i) * cols + j] -
                        f * m[static_cast<size_t>(r) * cols + j] % p;
                m[static_cast<size_t>(i) * cols + j] = ((v % p) + p) % p;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

FpMatrix::FpMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
    if (p < 2 || rows < 0 || cols < 0)
        throw std::invalid_argument("FpMatrix: bad shape or modulus");
    a_.assign(static_cast<size_t>(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int p, int n) {
    FpMatrix m(p, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

int FpMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("FpMatrix::at");
    return a_[static_cast<size_t>(r) * cols_ + c];
}

void FpMatrix::set(int r, int c, int v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("FpMatrix::set");
    a_[static_cast<size_t>(r) * cols_ + c] = ((v % p_) + p_) % p_;
}

bool FpMatrix::operator==(const FpMatrix& o) const {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

FpMatrix FpMatrix::operator+(const FpMatrix& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("FpMatrix: shape mismatch in +");
    FpMatrix r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = (a_[i] + o.a_[i]) % p_;
    return r;
}

FpMatrix FpMatrix::operator-(const FpMatrix& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("FpMatrix: shape mismatch in -");
    FpMatrix r(p_, rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = ((a_[i] - o.a_[i]) % p_ + p_) % p_;
    return r;
}

FpMatrix FpMatrix::operator*(const FpMatrix& o) const {
    if (p_ != o.p_ || cols_ != o.rows_)
        throw std::invalid_argument("FpMatrix: shape mismatch in *");
    FpMatrix r(p_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            int v = a_[static_cast<size_t>(i) * cols_ + k];
            if (v == 0) continue;
            for (int j = 0; j < o.cols_; ++j) {
                size_t idx = static_cast<size_t>(i) * o.cols_ + j;
                r.a_[idx] = (r.a_[idx] + v * o.a_[static_cast<size_t>(k) * o.cols_ + j]) % p_;
            }
        }
    }
    return r;
}

bool FpMatrix::is_zero() const {
    for (int v : a_)
        if (v != 0) return false;
    return true;
}

FpMatrix FpMatrix::transpose() const {
    FpMatrix r(p_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
    return r;
}

FpMatrix FpMatrix::kron(const FpMatrix& o) const {
    if (p_ != o.p_) throw std::invalid_argument("FpMatrix: modulus mismatch in kron");
    FpMatrix r(p_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            int v = at(i, j);
            if (v == 0) continue;
            for (int k = 0; k < o.rows_; ++k)
                for (int l = 0; l < o.cols_; ++l)
                    r.set(i * o.rows_ + k, j * o.cols_ + l, v * o.at(k, l));
        }
    return r;
}

FpMatrix FpMatrix::hstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_ || a.rows_ != b.rows_)
        throw std::invalid_argument("FpMatrix: shape mismatch in hstack");
    FpMatrix r(a.p_, a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) r.set(i, j, a.at(i, j));
        for (int j = 0; j < b.cols_; ++j) r.set(i, a.cols_ + j, b.at(i, j));
    }
    return r;
}

FpMatrix FpMatrix::vstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_ || a.cols_ != b.cols_)
        throw std::invalid_argument("FpMatrix: shape mismatch in vstack");
    FpMatrix r(a.p_, a.rows_ + b.rows_, a.cols_);
    for (int j = 0; j < a.cols_; ++j) {
        for (int i = 0; i < a.rows_; ++i) r.set(i, j, a.at(i, j));
        for (int i = 0; i < b.rows_; ++i) r.set(a.rows_ + i, j, b.at(i, j));
    }
    return r;
}

FpMatrix FpMatrix::col(int c) const {
    FpMatrix r(p_, rows_, 1);
    for (int i = 0; i < rows_; ++i) r.set(i, 0, at(i, c));
    return r;
}

int FpMatrix::rank() const {
    std::vector<int> m = a_;
    return static_cast<int>(rref(m, rows_, cols_, p_).size());
}

FpMatrix FpMatrix::kernel_basis() const {
    std::vector<int> m = a_;
    std::vector<int> pivots = rref(m, rows_, cols_, p_);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    FpMatrix ker(p_, cols_, cols_ - static_cast<int>(pivots.size()));
    int out = 0;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[static_cast<size_t>(free)]) continue;
        ker.set(free, out, 1);
        for (size_t r = 0; r < pivots.size(); ++r)
            ker.set(pivots[r], out, -m[r * cols_ + free]);
        ++out;
    }
    return ker;
}

FpMatrix FpMatrix::solve(const FpMatrix& rhs) const {
    if (p_ != rhs.p_ || rows_ != rhs.rows_)
        throw std::invalid_argument("FpMatrix: shape mismatch in solve");
    FpMatrix aug = hstack(*this, rhs);
    std::vector<int> m = aug.a_;
    std::vector<int> pivots = rref(m, rows_, cols_ + rhs.cols_, p_);
    for (int c : pivots)
        if (c >= cols_) throw std::invalid_argument("FpMatrix: inconsistent system");
    FpMatrix x(p_, cols_, rhs.cols_);
    for (size_t r = 0; r < pivots.size(); ++r)
        for (int j = 0; j < rhs.cols_; ++j)
            x.set(pivots[r], j, m[r * (cols_ + rhs.cols_) + cols_ + j]);
    return x;
}

FpMatrix FpMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("FpMatrix: inverse of non-square");
    if (rank() != rows_) throw std::invalid_argument("FpMatrix: singular");
    return solve(identity(p_, rows_));
}

bool FpMatrix::contains(const FpMatrix& v) const {
    if (p_ != v.p_ || rows_ != v.rows_)
        throw std::invalid_argument("FpMatrix: shape mismatch in contains");
    return hstack(*this, v).rank() == rank();
}

std::string FpMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << at(i, j);
        }
    }
    os << "]";
    return os.str();
}

}  // namespace iwahori
