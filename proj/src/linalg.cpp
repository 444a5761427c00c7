#include "ltnn/linalg.hpp"

#include <utility>

namespace ltnn::linalg {

std::vector<std::size_t> rref(Mat& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const Mat& rows, std::size_t cols) {
  Mat m = rows;
  return rref(m, cols).size();
}

Mat nullspace(const Mat& rows, std::size_t cols) {
  Mat m = rows;
  const auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Mat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec mat_vec(const Mat& a, const Vec& x) {
  Vec out;
  out.reserve(a.size());
  for (const auto& row : a) out.push_back(dot(row, x));
  return out;
}

Vec min_norm_least_squares(const Mat& a, const Vec& y, std::size_t cols) {
  // Normal equations [AᵀA | Aᵀy], then project the particular solution onto
  // the orthogonal complement of null(AᵀA) = null(A).
  Mat normal(cols, Vec(cols + 1, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (a[i][j] == 0) continue;
      for (std::size_t k = 0; k < cols; ++k) normal[j][k] += a[i][j] * a[i][k];
      normal[j][cols] += a[i][j] * y[i];
    }
  }
  Mat reduced = normal;
  const auto pivots = rref(reduced, cols + 1);
  Vec x(cols, Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = reduced[r][cols];

  Mat gram_rows;
  for (const auto& row : normal) gram_rows.emplace_back(row.begin(), row.begin() + static_cast<long>(cols));
  const Mat null = nullspace(gram_rows, cols);
  if (null.empty()) return x;

  // Solve (NᵀN) u = -Nᵀx and shift x by N u.
  const std::size_t k = null.size();
  Mat sys(k, Vec(k + 1, Rational(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) sys[i][j] = dot(null[i], null[j]);
    sys[i][k] = -dot(null[i], x);
  }
  const auto sp = rref(sys, k + 1);
  Vec u(k, Rational(0));
  for (std::size_t r = 0; r < sp.size(); ++r) u[sp[r]] = sys[r][k];
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < cols; ++j) x[j] += u[i] * null[i][j];
  }
  return x;
}

}  // namespace ltnn::linalg
