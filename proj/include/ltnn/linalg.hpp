#pragma once

#include <cstddef>

#include "ltnn/rational.hpp"

namespace ltnn::linalg {

/// Row-reduced echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(Mat& m, std::size_t cols);

std::size_t rank(const Mat& rows, std::size_t cols);

/// Basis of {x : rows * x = 0}.
Mat nullspace(const Mat& rows, std::size_t cols);

/// Minimum-norm least-squares solution of A x ≈ y (A is rows x cols). Exact.
Vec min_norm_least_squares(const Mat& a, const Vec& y, std::size_t cols);

Vec mat_vec(const Mat& a, const Vec& x);

}  // namespace ltnn::linalg
