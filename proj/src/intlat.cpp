#include "fakeplane/intlat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fakeplane {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("IntMatrix: entry count does not match shape");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long long x : r) data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty) {
    std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols, std::size_t rows_if_empty) {
    std::size_t rows = cols.empty() ? rows_if_empty : cols.front().size();
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows) throw std::invalid_argument("IntMatrix::from_columns: ragged columns");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
}

IntMatrix IntMatrix::select_columns(const std::vector<std::size_t>& idx) const {
    IntMatrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
}

IntMatrix IntMatrix::hstack(const IntMatrix& other) const {
    if (other.rows_ != rows_) throw std::invalid_argument("hstack: row count mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
}

IntMatrix IntMatrix::vstack(const IntMatrix& other) const {
    if (other.cols_ != cols_) throw std::invalid_argument("vstack: column count mismatch");
    IntMatrix m(rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), m.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(), m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return m;
}

IntMatrix IntMatrix::mod(long long m) const {
    IntMatrix r = *this;
    for (auto& x : r.data_) {
        x %= m;
        if (x < 0) x += m;
    }
    return r;
}

bool IntMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << ", ";
        os << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << (*this)(i, j);
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<std::vector<long long>> IntMatrix::to_ll() const {
    std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i][j] = static_cast<long long>((*this)(i, j));
    return out;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const BigInt& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const BigInt& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
    IntMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
    IntMatrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    IntVector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    return out;
}

IntVector make_vector(std::initializer_list<long long> v) {
    IntVector out;
    out.reserve(v.size());
    for (long long x : v) out.emplace_back(x);
    return out;
}

BigInt dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

BigInt bilinear(const IntVector& a, const IntMatrix& q, const IntVector& b) { return dot(a, q * b); }

IntVector add(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: length mismatch");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

IntVector sub(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: length mismatch");
    IntVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

IntVector scale(const BigInt& k, const IntVector& v) {
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = k * v[i];
    return out;
}

bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

std::string to_string(const IntVector& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
    os << ")";
    return os.str();
}

std::vector<BigInt> SmithDecomposition::diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
}

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    for (const auto& x : diagonal())
        if (x != 0) ++r;
    return r;
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Location of the nonzero entry of smallest absolute value in the block [t.., t..].
bool smallest_in_block(const IntMatrix& m, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    BigInt best;
    for (std::size_t i = t; i < m.rows(); ++i)
        for (std::size_t j = t; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            BigInt a = abs_big(m(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    IntMatrix M = a;
    IntMatrix U = IntMatrix::identity(m);
    IntMatrix V = IntMatrix::identity(n);

    auto move_to_pivot = [&](std::size_t t, std::size_t pi, std::size_t pj) {
        M.swap_rows(t, pi);
        U.swap_rows(t, pi);
        M.swap_cols(t, pj);
        V.swap_cols(t, pj);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t pi = 0, pj = 0;
        if (!smallest_in_block(M, t, pi, pj)) break;
        move_to_pivot(t, pi, pj);

        for (;;) {
            bool residue = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (M(i, t) == 0) continue;
                BigInt q = M(i, t) / M(t, t);
                M.add_row_multiple(i, t, -q);
                U.add_row_multiple(i, t, -q);
                if (M(i, t) != 0) residue = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (M(t, j) == 0) continue;
                BigInt q = M(t, j) / M(t, t);
                M.add_col_multiple(j, t, -q);
                V.add_col_multiple(j, t, -q);
                if (M(t, j) != 0) residue = true;
            }
            if (residue) {
                std::size_t bi = t, bj = t;
                BigInt best = abs_big(M(t, t));
                for (std::size_t i = t + 1; i < m; ++i)
                    if (M(i, t) != 0 && abs_big(M(i, t)) < best) {
                        best = abs_big(M(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (M(t, j) != 0 && abs_big(M(t, j)) < best) {
                        best = abs_big(M(t, j));
                        bi = t;
                        bj = j;
                    }
                move_to_pivot(t, bi, bj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (M(i, j) % M(t, t) != 0) {
                        M.add_row_multiple(t, i, 1);
                        U.add_row_multiple(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (M(t, t) < 0) {
            M.negate_row(t);
            U.negate_row(t);
        }
    }
    return SmithDecomposition{std::move(U), std::move(M), std::move(V)};
}

CokernelInvariants cokernel_invariants(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    CokernelInvariants out;
    std::size_t r = s.rank();
    out.free_rank = a.rows() - r;
    for (const auto& d : s.diagonal())
        if (d > 1) out.torsion.push_back(d);
    return out;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
    IntMatrix M = a;
    const std::size_t m = M.rows();
    const std::size_t n = M.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i)
                if (M(i, c) != 0 && (best == m || abs_big(M(i, c)) < abs_big(M(best, c)))) best = i;
            if (best == m) break;
            M.swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (M(i, c) == 0) continue;
                M.add_row_multiple(i, r, -(M(i, c) / M(r, c)));
                if (M(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (M(r, c) == 0) continue;
        if (M(r, c) < 0) M.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) M.add_row_multiple(i, r, -floor_div(M(i, c), M(r, c)));
        ++r;
    }
    std::vector<std::size_t> keep(r);
    for (std::size_t i = 0; i < r; ++i) keep[i] = i;
    return M.select_rows(keep);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    std::size_t r = s.rank();
    std::vector<std::size_t> idx;
    for (std::size_t j = r; j < a.cols(); ++j) idx.push_back(j);
    IntMatrix k = s.V.select_columns(idx);
    if (k.cols() == 0) return k;
    return hermite_normal_form(k.transpose()).transpose();
}

BigInt determinant(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix M = a;
    BigInt sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return 0;
            M.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) { return smith_normal_form(a).rank(); }

std::optional<IntMatrix> solve_exact(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_exact: row count mismatch");
    SmithDecomposition s = smith_normal_form(a);
    IntMatrix ub = s.U * b;
    std::size_t r = s.rank();
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (i < r) {
                if (ub(i, j) % s.D(i, i) != 0) return std::nullopt;
                y(i, j) = ub(i, j) / s.D(i, i);
            } else if (ub(i, j) != 0) {
                return std::nullopt;
            }
        }
    return s.V * y;
}

IntMatrix left_inverse(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    const std::size_t n = a.cols();
    for (std::size_t i = 0; i < n; ++i)
        if (s.D(i, i) != 1) throw std::invalid_argument("left_inverse: columns are not a saturated independent family");
    IntMatrix proj(n, a.rows());
    for (std::size_t i = 0; i < n; ++i) proj(i, i) = 1;
    return s.V * proj * s.U;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("unimodular_inverse: matrix not square");
    auto x = solve_exact(a, IntMatrix::identity(a.rows()));
    if (!x) throw std::invalid_argument("unimodular_inverse: matrix not invertible over the integers");
    return *x;
}

std::size_t rank_mod2(const IntMatrix& a) {
    std::vector<std::vector<int>> m(a.rows(), std::vector<int>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = static_cast<int>(((a(i, j) % 2) + 2) % 2);
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && m[p][c] == 0) ++p;
        if (p == a.rows()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < a.rows(); ++i)
            if (i != r && m[i][c])
                for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] ^= m[r][j];
        ++r;
    }
    return r;
}

}  // namespace fakeplane
