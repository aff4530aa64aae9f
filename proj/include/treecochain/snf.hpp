#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tc {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

/// U * M * V = D with U, V unimodular, D diagonal and d_1 | d_2 | ...
/// (non-negative, zeros last).
struct SmithForm {
    IntMatrix U, D, V;
    std::vector<BigInt> diag;  // min(rows, cols) entries
    int rank = 0;
};

SmithForm smith_normal_form(const IntMatrix& M);

IntMatrix mat_mul(const IntMatrix& A, const IntMatrix& B);
IntMatrix mat_identity(std::size_t n);
/// Determinant of a square matrix by fraction-free elimination.
BigInt mat_det(IntMatrix A);

}  // namespace tc
