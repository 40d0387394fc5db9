#pragma once

#include <string>
#include <vector>

namespace iwahori {

// Dense matrix over the prime field F_p. Entries are stored reduced to [0, p).
// Zero-row and zero-column shapes are legal and behave as the empty matrix.
class FpMatrix {
public:
    FpMatrix(int p, int rows, int cols);
    static FpMatrix identity(int p, int n);

    int p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int at(int r, int c) const;
    void set(int r, int c, int v);

    bool operator==(const FpMatrix& o) const;
    bool operator!=(const FpMatrix& o) const { return !(*this == o); }
    FpMatrix operator+(const FpMatrix& o) const;
    FpMatrix operator-(const FpMatrix& o) const;
    FpMatrix operator*(const FpMatrix& o) const;
    bool is_zero() const;

    FpMatrix transpose() const;
    FpMatrix kron(const FpMatrix& o) const;
    static FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
    static FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
    FpMatrix col(int c) const;

    int rank() const;
    // Columns span the null space; reduced echelon construction, so the result
    // is deterministic and its columns are independent.
    FpMatrix kernel_basis() const;
    // X with (*this) * X == rhs. Throws std::invalid_argument when the system
    // is inconsistent. Free variables are set to zero.
    FpMatrix solve(const FpMatrix& rhs) const;
    FpMatrix inverse() const;
    // True when every column of v lies in the column span.
    bool contains(const FpMatrix& v) const;

    std::string str() const;

private:
    int p_;
    int rows_, cols_;
    std::vector<int> a_;
};

}  // namespace iwahori
