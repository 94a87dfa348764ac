#pragma once

#include <algorithm>
#include <atomic>
#include <cassert>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

#include "lah/exact.hpp"

namespace lah {

// Cap on the row index accepted by any triangle routine; requests above it
// raise resource_error instead of silently truncating. Adjustable for jobs
// that genuinely need deeper rows and accept the memory/time cost.
inline std::atomic<int>& triangle_row_cap() {
  static std::atomic<int> cap{5000};
  return cap;
}

inline void set_triangle_row_cap(int cap) { triangle_row_cap().store(cap); }

// Rows up to this index are kept in the shared memo triangles; larger rows
// are recomputed per call with rolling storage so memory stays bounded.
inline constexpr int kTriangleMemoLimit = 600;

namespace detail {

// Row-extendable triangle with concurrent readers and a single writer.
// row(n) stays valid for the program lifetime once built (rows are never
// moved: the outer vector is pre-sized to the memo limit).
class Triangle {
 public:
  enum class Kind { first, second };

  explicit Triangle(Kind kind) : kind_(kind), rows_(kTriangleMemoLimit + 1) {}

  const std::vector<Int>& row(int n) {
    {
      std::shared_lock lock(mutex_);
      if (n <= built_) return rows_[n];
    }
    std::unique_lock lock(mutex_);
    while (built_ < n) {
      const int m = built_ + 1;
      std::vector<Int> next(m + 1);
      if (m == 0) {
        next[0] = 1;
      } else {
        const std::vector<Int>& prev = rows_[m - 1];
        for (int j = 1; j <= m; ++j) {
          // s(m,j) = (m-1) s(m-1,j) + s(m-1,j-1);  S(m,j) = j S(m-1,j) + S(m-1,j-1)
          const long mult = kind_ == Kind::first ? m - 1 : j;
          next[j] = prev[j - 1];
          if (j <= m - 1) next[j] += mult * prev[j];
        }
      }
      rows_[m] = std::move(next);
      built_ = m;
    }
    return rows_[n];
  }

 private:
  Kind kind_;
  std::vector<std::vector<Int>> rows_;
  int built_ = -1;
  mutable std::shared_mutex mutex_;
};

inline Triangle& first_kind_triangle() {
  static Triangle t(Triangle::Kind::first);
  return t;
}

inline Triangle& second_kind_triangle() {
  static Triangle t(Triangle::Kind::second);
  return t;
}

// One rolling pass of the recurrence up to row n, keeping columns <= j_max.
inline std::vector<Int> rolled_row(Triangle::Kind kind, int n, int j_max) {
  std::vector<Int> row(1, Int(1)), next;  // row 0
  for (int m = 1; m <= n; ++m) {
    const int width = std::min(m, j_max);
    next.assign(width + 1, Int(0));
    for (int j = 1; j <= width; ++j) {
      const long mult = kind == Triangle::Kind::first ? m - 1 : j;
      next[j] = row[j - 1];
      if (j < static_cast<int>(row.size())) {
        Int t = row[j];
        t *= mult;
        next[j] += t;
      }
    }
    row.swap(next);
  }
  return row;
}

inline void check_row_index(int n) {
  if (n < 0) throw std::domain_error("stirling: n must be nonnegative");
  const int cap = triangle_row_cap().load();
  if (n > cap)
    throw resource_error("stirling: row index exceeds capacity cap " +
                         std::to_string(cap));
}

}  // namespace detail

// Unsigned Stirling number of the first kind: permutations of n with j cycles.
inline Int stirling_first(int n, int j) {
  detail::check_row_index(n);
  if (j < 0 || j > n) throw std::domain_error("stirling_first: need 0 <= j <= n");
  if (n <= kTriangleMemoLimit) return detail::first_kind_triangle().row(n)[j];
  return detail::rolled_row(detail::Triangle::Kind::first, n, j)[j];
}

// Stirling number of the second kind: partitions of n into j blocks.
inline Int stirling_second(int n, int j) {
  detail::check_row_index(n);
  if (j < 0 || j > n) throw std::domain_error("stirling_second: need 0 <= j <= n");
  if (n <= kTriangleMemoLimit) return detail::second_kind_triangle().row(n)[j];
  return detail::rolled_row(detail::Triangle::Kind::second, n, j)[j];
}

// Full row s(n,.) (index 0..n). Rolling computation above the memo limit, so
// repeated large-n calls pay the cost each time; pull the row once.
inline std::vector<Int> stirling_first_row(int n) {
  detail::check_row_index(n);
  if (n <= kTriangleMemoLimit) return detail::first_kind_triangle().row(n);
  return detail::rolled_row(detail::Triangle::Kind::first, n, n);
}

inline std::vector<Int> stirling_second_row(int n) {
  detail::check_row_index(n);
  if (n <= kTriangleMemoLimit) return detail::second_kind_triangle().row(n);
  return detail::rolled_row(detail::Triangle::Kind::second, n, n);
}

// Columns 0..j_max of row n, for deep rows where the full row is unaffordable.
inline std::vector<Int> stirling_first_row_prefix(int n, int j_max) {
  detail::check_row_index(n);
  if (j_max < 0 || j_max > n)
    throw std::domain_error("stirling_first_row_prefix: need 0 <= j_max <= n");
  return detail::rolled_row(detail::Triangle::Kind::first, n, j_max);
}

// S(j,k) for j = 0..n_max at fixed k (a column of the second-kind triangle).
inline std::vector<Int> stirling_second_column(int n_max, int k) {
  detail::check_row_index(n_max);
  if (k < 0 || k > n_max)
    throw std::domain_error("stirling_second_column: need 0 <= k <= n_max");
  std::vector<Int> column(n_max + 1);
  std::vector<Int> row(1, Int(1)), next;
  column[0] = k == 0 ? 1 : 0;
  for (int m = 1; m <= n_max; ++m) {
    const int width = std::min(m, k);
    next.assign(width + 1, Int(0));
    for (int j = 1; j <= width; ++j) {
      next[j] = row[j - 1];
      if (j < static_cast<int>(row.size())) {
        Int t = row[j];
        t *= j;
        next[j] += t;
      }
    }
    row.swap(next);
    column[m] = m >= k ? row[k] : Int(0);
  }
  return column;
}

inline Int factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: n must be nonnegative");
  static std::vector<Int> memo{Int(1)};
  static std::shared_mutex mutex;
  {
    std::shared_lock lock(mutex);
    if (n < static_cast<int>(memo.size())) return memo[n];
  }
  std::unique_lock lock(mutex);
  while (static_cast<int>(memo.size()) <= n)
    memo.push_back(memo.back() * static_cast<long>(memo.size()));
  return memo[n];
}

// binom(n,k) for integer n >= 0; out-of-range k gives 0.
inline Int binomial(long n, long k) {
  if (n < 0) throw std::domain_error("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Int r = 1;
  for (long i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

// Lah number L(n,k) = (n!/k!) binom(n-1,k-1). In debug builds the
// Stirling-product form sum_j s(n,j) S(j,k) is asserted to agree.
inline Int lah_number(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("lah_number: need 1 <= k <= n");
  Int value = factorial(n) / factorial(k) * binomial(n - 1, k - 1);
#ifndef NDEBUG
  if (n <= kTriangleMemoLimit) {
    Int crossed = 0;
    for (int j = k; j <= n; ++j) crossed += stirling_first(n, j) * stirling_second(j, k);
    assert(crossed == value && "lah_number: closed forms disagree");
  }
#endif
  return value;
}

// Generalized harmonic number H_n^(m) = sum_{l<=n} l^-m, exactly.
inline Ratio harmonic(long n, int m = 1) {
  if (n < 0) throw std::domain_error("harmonic: n must be nonnegative");
  if (m < 1) throw std::domain_error("harmonic: m must be >= 1");
  Ratio h = 0;
  for (long l = 1; l <= n; ++l) {
    Int p = l;
    for (int i = 1; i < m; ++i) p *= l;
    h += Ratio(Int(1), p);
  }
  return h;
}

// H_0^(m), ..., H_n^(m) in one pass; use inside loops instead of harmonic().
inline std::vector<Ratio> harmonic_prefix(long n, int m = 1) {
  if (n < 0) throw std::domain_error("harmonic_prefix: n must be nonnegative");
  if (m < 1) throw std::domain_error("harmonic_prefix: m must be >= 1");
  std::vector<Ratio> h(n + 1);
  h[0] = 0;
  for (long l = 1; l <= n; ++l) {
    Int p = l;
    for (int i = 1; i < m; ++i) p *= l;
    h[l] = h[l - 1] + Ratio(Int(1), p);
  }
  return h;
}

}  // namespace lah
