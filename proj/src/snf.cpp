#include "treecochain/snf.hpp"

#include <stdexcept>
#include <utility>

namespace tc {

IntMatrix mat_identity(std::size_t n) {
    IntMatrix I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B) {
    if (A.empty()) return {};
    const std::size_t n = A.size(), m = B.size(), k = B.empty() ? 0 : B[0].size();
    if (A[0].size() != m) throw std::invalid_argument("matrix shapes do not match");
    IntMatrix C(n, std::vector<BigInt>(k, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < m; ++t) {
            if (A[i][t] == 0) continue;
            for (std::size_t j = 0; j < k; ++j) C[i][j] += A[i][t] * B[t][j];
        }
    return C;
}

BigInt mat_det(IntMatrix A) {
    const std::size_t n = A.size();
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (A[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && A[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev;
        prev = A[k][k];
    }
    return sign * A[n - 1][n - 1];
}

namespace {

void swap_rows(IntMatrix& A, std::size_t i, std::size_t j) { std::swap(A[i], A[j]); }

void swap_cols(IntMatrix& A, std::size_t i, std::size_t j) {
    for (auto& row : A) std::swap(row[i], row[j]);
}

// row_i += k * row_j
void add_row(IntMatrix& A, std::size_t i, std::size_t j, const BigInt& k) {
    for (std::size_t c = 0; c < A[i].size(); ++c) A[i][c] += k * A[j][c];
}

void add_col(IntMatrix& A, std::size_t i, std::size_t j, const BigInt& k) {
    for (auto& row : A) row[i] += k * row[j];
}

// floor division that keeps remainders non-negative
BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
    SmithForm S;
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    S.D = M;
    S.U = mat_identity(rows);
    S.V = mat_identity(cols);
    IntMatrix& D = S.D;
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // pivot: smallest nonzero |entry| in the trailing block
        for (;;) {
            std::size_t pi = rows, pj = cols;
            BigInt best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (D[i][j] != 0 && (best == 0 || abs(D[i][j]) < best)) {
                        best = abs(D[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (best == 0) goto done;
            swap_rows(D, t, pi);
            swap_rows(S.U, t, pi);
            swap_cols(D, t, pj);
            swap_cols(S.V, t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (D[i][t] == 0) continue;
                BigInt k = -fdiv(D[i][t], D[t][t]);
                add_row(D, i, t, k);
                add_row(S.U, i, t, k);
                if (D[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (D[t][j] == 0) continue;
                BigInt k = -fdiv(D[t][j], D[t][t]);
                add_col(D, j, t, k);
                add_col(S.V, j, t, k);
                if (D[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility: fold any entry not divisible by the pivot into row t
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (D[i][j] % D[t][t] != 0) {
                        add_row(D, t, i, 1);
                        add_row(S.U, t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (D[t][t] < 0) {
            for (auto& x : D[t]) x = -x;
            for (auto& x : S.U[t]) x = -x;
        }
    }
done:
    S.rank = 0;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
        S.diag.push_back(D[i][i]);
        if (D[i][i] != 0) ++S.rank;
    }
    return S;
}

}  // namespace tc
