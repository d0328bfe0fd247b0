#pragma once

#include <vector>

#include "cylg/errors.hpp"
#include "cylg/qext.hpp"
#include "cylg/rational.hpp"

namespace cylg {

namespace field_detail {
inline bool is_zero(const Rat& x) { return x == 0; }
inline Rat inv(const Rat& x) { return 1 / x; }
inline bool is_zero(const QExt& x) { return x.is_zero(); }
inline QExt inv(const QExt& x) { return x.inverse(); }
}  // namespace field_detail

// Exact Gauss-Jordan inverse of a square matrix over a field (Rat or QExt).
// Fails with BadInput when the matrix is singular.
template <typename F>
Result<std::vector<std::vector<F>>> matrix_inverse_exact(std::vector<std::vector<F>> A) {
    using M = std::vector<std::vector<F>>;
    const size_t n = A.size();
    M I(n, std::vector<F>(n, F(0)));
    for (size_t k = 0; k < n; ++k) {
        if (A[k].size() != n) return Result<M>::fail(Err::BadInput, "not square");
        I[k][k] = F(1);
    }
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && field_detail::is_zero(A[p][c])) ++p;
        if (p == n) return Result<M>::fail(Err::BadInput, "singular matrix");
        std::swap(A[p], A[c]);
        std::swap(I[p], I[c]);
        F pivinv = field_detail::inv(A[c][c]);
        for (size_t j = 0; j < n; ++j) {
            A[c][j] = A[c][j] * pivinv;
            I[c][j] = I[c][j] * pivinv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || field_detail::is_zero(A[r][c])) continue;
            F f = A[r][c];
            for (size_t j = 0; j < n; ++j) {
                A[r][j] = A[r][j] - f * A[c][j];
                I[r][j] = I[r][j] - f * I[c][j];
            }
        }
    }
    return Result<M>::ok(std::move(I));
}

// C = A * B for square matrices over a ring with +,*.
template <typename F>
std::vector<std::vector<F>> matrix_mul(const std::vector<std::vector<F>>& A,
                                       const std::vector<std::vector<F>>& B) {
    const size_t n = A.size(), m = B[0].size(), k = B.size();
    std::vector<std::vector<F>> C(n, std::vector<F>(m, F(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (field_detail::is_zero(A[i][l])) continue;
            for (size_t j = 0; j < m; ++j) C[i][j] = C[i][j] + A[i][l] * B[l][j];
        }
    return C;
}

template <typename F>
std::vector<std::vector<F>> matrix_transpose(const std::vector<std::vector<F>>& A) {
    const size_t n = A.size(), m = A[0].size();
    std::vector<std::vector<F>> T(m, std::vector<F>(n, F(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < m; ++j) T[j][i] = A[i][j];
    return T;
}

// Exact dense Gaussian elimination over Q.  Solves A x = b for the unique
// solution; reports NoFit when inconsistent and NonUniqueFit when the system
// is underdetermined.
inline Result<std::vector<Rat>> solve_linear_exact(std::vector<std::vector<Rat>> A,
                                                   std::vector<Rat> b) {
    const size_t rows = A.size();
    if (rows == 0) return Result<std::vector<Rat>>::fail(Err::NonUniqueFit, "no equations");
    const size_t cols = A[0].size();
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && A[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(A[p], A[rank]);
        std::swap(b[p], b[rank]);
        Rat inv = 1 / A[rank][c];
        for (size_t j = c; j < cols; ++j) A[rank][j] *= inv;
        b[rank] *= inv;
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || A[r][c] == 0) continue;
            Rat f = A[r][c];
            for (size_t j = c; j < cols; ++j) A[r][j] -= f * A[rank][j];
            b[r] -= f * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return Result<std::vector<Rat>>::fail(Err::NoFit, "inconsistent system");
    if (rank < cols) return Result<std::vector<Rat>>::fail(Err::NonUniqueFit, "rank deficient");
    std::vector<Rat> x(cols, Rat(0));
    for (size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
    return Result<std::vector<Rat>>::ok(std::move(x));
}

}  // namespace cylg
