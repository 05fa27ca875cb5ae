#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chipfire/error.hpp"
#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Primitive period vector and its 1-norm, the period length.
struct PeriodData {
  std::vector<Count> vector;
  Count length = 0;

  friend bool operator==(const PeriodData&, const PeriodData&) = default;
};

/// True iff L * u = 0 and every component of u is at least 1.
inline bool verify_period(const Multigraph& g, const std::vector<Count>& u) {
  if (u.size() != g.size()) return false;
  for (Count x : u) {
    if (x < 1) return false;
  }
  const IntMatrix lap = laplacian(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    BigInt row = 0;
    for (std::size_t j = 0; j < g.size(); ++j) row += lap(i, j) * BigInt(u[j]);
    if (row != 0) return false;
  }
  return true;
}

/// Exact kernel generator of the Laplacian, normalized to the primitive
/// positive integer vector. Requires a strongly connected graph so that the
/// kernel is a ray.
inline PeriodData primitive_period_vector(const Multigraph& g) {
  using Rational = boost::multiprecision::cpp_rational;
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected, "period vector needs a strongly connected graph");
  }
  const std::size_t n = g.size();
  const IntMatrix lap = laplacian(g);
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(lap(i, j));
  }

  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t pivot = row;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[row]);
    const Rational inv = 1 / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  if (n - pivot_cols.size() != 1) {
    throw Error(ErrorKind::kKernelDegenerate,
                "kernel dimension " + std::to_string(n - pivot_cols.size()) + " != 1");
  }

  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;

  std::vector<Rational> kernel(n, Rational(0));
  kernel[free_col] = 1;
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) kernel[pivot_cols[r]] = -a[r][free_col];

  BigInt lcm = 1;
  for (const auto& x : kernel) {
    const BigInt d = boost::multiprecision::denominator(x);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<BigInt> ints(n);
  BigInt gcd = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ints[i] = boost::multiprecision::numerator(Rational(kernel[i] * lcm));
    gcd = boost::multiprecision::gcd(gcd, ints[i]);
  }
  const bool negative = ints[free_col] < 0;
  PeriodData out;
  out.vector.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    BigInt x = ints[i] / gcd;
    if (negative) x = -x;
    if (x <= 0 || x > BigInt(std::numeric_limits<Count>::max() / n)) {
      throw Error(ErrorKind::kKernelDegenerate, "kernel component out of range");
    }
    out.vector[i] = static_cast<Count>(x);
    out.length += out.vector[i];
  }
  return out;
}

}  // namespace chipfire
