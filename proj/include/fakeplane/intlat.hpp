#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace fakeplane {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0);
    static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<BigInt>& entries() const { return data_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const;
    IntVector column(std::size_t j) const;
    IntMatrix transpose() const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
    IntMatrix select_columns(const std::vector<std::size_t>& idx) const;
    IntMatrix hstack(const IntMatrix& other) const;
    IntMatrix vstack(const IntMatrix& other) const;
    IntMatrix mod(long long m) const;  // entries reduced into [0, m)

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    std::string to_string() const;
    std::vector<std::vector<long long>> to_ll() const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    // row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k);
    // col[dst] += k * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend IntVector operator*(const IntMatrix& a, const IntVector& v);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

IntVector make_vector(std::initializer_list<long long> v);
BigInt dot(const IntVector& a, const IntVector& b);
BigInt bilinear(const IntVector& a, const IntMatrix& q, const IntVector& b);
IntVector add(const IntVector& a, const IntVector& b);
IntVector sub(const IntVector& a, const IntVector& b);
IntVector scale(const BigInt& k, const IntVector& v);
bool is_zero(const IntVector& v);
std::string to_string(const IntVector& v);

struct SmithDecomposition {
    IntMatrix U;  // rows x rows, unimodular
    IntMatrix D;  // rows x cols, diagonal, nonnegative, d_i | d_{i+1}
    IntMatrix V;  // cols x cols, unimodular

    std::vector<BigInt> diagonal() const;
    std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

struct CokernelInvariants {
    std::size_t free_rank = 0;
    std::vector<BigInt> torsion;  // all > 1, each dividing the next
};

CokernelInvariants cokernel_invariants(const IntMatrix& a);

// Columns form a saturated basis of ker(a), in row-style Hermite normal form.
IntMatrix kernel_basis(const IntMatrix& a);

// Rows of the result span the same lattice as the rows of a, in Hermite normal form
// with zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& a);

BigInt determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

// Some integer X with a * X = b, if one exists.
std::optional<IntMatrix> solve_exact(const IntMatrix& a, const IntMatrix& b);

// For a with saturated, linearly independent columns: L with L * a = identity.
IntMatrix left_inverse(const IntMatrix& a);

// Inverse of a square matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& a);

// Rank of a matrix over F_2 (entries taken mod 2).
std::size_t rank_mod2(const IntMatrix& a);

}  // namespace fakeplane
