#pragma once

#include <stdexcept>
#include <vector>

#include "lah/combinatorics.hpp"
#include "lah/exact.hpp"

namespace lah {

// Largest n accepted by the brute-force composition enumeration below.
inline constexpr int kConicBruteForceCap = 14;

namespace detail {

// Cycle-count distribution of a uniform permutation of i elements:
// coefficient l is s(i,l)/i!, the l-th conic intrinsic volume of the chamber
// {x_1 >= ... >= x_i}.
inline std::vector<Ratio> chamber_volume_vector(int i) {
  const std::vector<Int> row = stirling_first_row(i);
  const Int f = factorial(i);
  std::vector<Ratio> v(i + 1);
  for (int l = 0; l <= i; ++l) v[l] = Ratio(row[l], f);
  return v;
}

inline void conic_sum_rec(int remaining, int parts_left, int coeff_target,
                          const std::vector<std::vector<Ratio>>& volumes,
                          const std::vector<Ratio>& partial, Ratio& total) {
  if (parts_left == 1) {
    const int i = remaining;
    const auto& v = volumes[i];
    for (int l = 0; l <= i && l <= coeff_target; ++l) {
      if (v[l] == 0) continue;
      total += v[l] * partial[coeff_target - l];
    }
    return;
  }
  for (int i = 1; i + (parts_left - 1) <= remaining; ++i) {
    const auto& v = volumes[i];
    std::vector<Ratio> next(coeff_target + 1, Ratio(0));
    for (int l = 0; l <= i && l <= coeff_target; ++l) {
      if (v[l] == 0) continue;
      for (int c = 0; c + l <= coeff_target; ++c) {
        if (partial[c] == 0) continue;
        next[c + l] += partial[c] * v[l];
      }
    }
    conic_sum_rec(remaining - i, parts_left - 1, coeff_target, volumes, next, total);
  }
}

}  // namespace detail

// Sum over all compositions (i_1,...,i_k) of n of the j-th coefficient of the
// convolution of the per-block cycle distributions s(i_l, .)/i_l!. Equals the
// tangent-cone intrinsic-volume sum of the ordered Weyl chamber, and must
// match binom(n-1,k-1) P[Lah(n,k)=j] = (k!/n!) s(n,j) S(j,k).
inline Ratio conic_face_volume_sum(int n, int k, int j) {
  if (k < 1 || k > n) throw std::domain_error("conic_face_volume_sum: need 1 <= k <= n");
  if (j < k || j > n) throw std::domain_error("conic_face_volume_sum: need k <= j <= n");
  if (n > kConicBruteForceCap)
    throw resource_error("conic_face_volume_sum: brute force capped at n <= " +
                         std::to_string(kConicBruteForceCap));
  std::vector<std::vector<Ratio>> volumes(n + 1);
  for (int i = 1; i <= n; ++i) volumes[i] = detail::chamber_volume_vector(i);
  std::vector<Ratio> unit(j + 1, Ratio(0));
  unit[0] = 1;
  Ratio total = 0;
  detail::conic_sum_rec(n, k, j, volumes, unit, total);
  return total;
}

}  // namespace lah
