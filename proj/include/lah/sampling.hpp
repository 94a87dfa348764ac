#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <vector>

#include "lah/combinatorics.hpp"
#include "lah/exact.hpp"
#include "lah/rng.hpp"

namespace lah {

// Ordered positive parts summing to n. The uniform law puts mass
// 1/binom(n-1,k-1) on each composition of n into k parts.
struct Composition {
  std::vector<long> parts;

  long total() const {
    long n = 0;
    for (long b : parts) n += b;
    return n;
  }
  int block_count() const { return static_cast<int>(parts.size()); }
};

// Uniform composition via a uniform (k-1)-subset of the n-1 gaps
// (stars and bars). Sparse subsets use Floyd's sampling, dense ones a
// partial Fisher-Yates, so both (n,k)=(4000,40) and (2000,1000) stay cheap.
inline Composition sample_composition(long n, int k, Rng& rng) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("sample_composition: need 1 <= k <= n");
  Composition comp;
  comp.parts.reserve(k);
  const long picks = k - 1;
  if (picks == 0) {
    comp.parts.push_back(n);
    return comp;
  }
  if (picks * 8 < n) {
    std::vector<long> gaps;
    gaps.reserve(picks);
    // Floyd: for j = n-k+1 .. n-1 pick t in [1..j]; take t unless taken, else j.
    for (long j = n - picks; j <= n - 1; ++j) {
      const long t = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(j)));
      if (std::find(gaps.begin(), gaps.end(), t) == gaps.end()) gaps.push_back(t);
      else gaps.push_back(j);
    }
    std::sort(gaps.begin(), gaps.end());
    long prev = 0;
    for (long g : gaps) {
      comp.parts.push_back(g - prev);
      prev = g;
    }
    comp.parts.push_back(n - prev);
    return comp;
  }
  // Dense: shuffle the first k-1 positions of 1..n-1, then mark cuts.
  std::vector<long> pool(n - 1);
  for (long i = 0; i < n - 1; ++i) pool[i] = i + 1;
  std::vector<bool> cut(n, false);
  for (long i = 0; i < picks; ++i) {
    const long j = i + static_cast<long>(rng.below(static_cast<std::uint64_t>(n - 1 - i)));
    std::swap(pool[i], pool[j]);
    cut[pool[i]] = true;
  }
  long prev = 0;
  for (long g = 1; g <= n - 1; ++g) {
    if (!cut[g]) continue;
    comp.parts.push_back(g - prev);
    prev = g;
  }
  comp.parts.push_back(n - prev);
  return comp;
}

// Records (left-to-right maxima) summed over the blocks of a composition.
inline int count_records(std::span<const double> labels, const Composition& comp) {
  if (static_cast<long>(labels.size()) != comp.total())
    throw std::domain_error("count_records: label count must equal the composition total");
  int records = 0;
  std::size_t pos = 0;
  for (long b : comp.parts) {
    double running_max = labels[pos];
    ++records;
    for (long i = 1; i < b; ++i) {
      const double v = labels[pos + i];
      if (v == running_max)
        throw std::domain_error("count_records: labels must be pairwise distinct");
      if (v > running_max) {
        running_max = v;
        ++records;
      }
    }
    pos += b;
  }
  return records;
}

// Aldous' consistent family on n vertices: uniform labels plus a uniform
// order in which the n-1 chain edges are removed. Row k (after k-1 removals)
// is a uniform composition of n into k blocks, and the rows refine each other.
struct AldousFamily {
  int n = 0;
  std::vector<double> labels;       // U_1..U_n
  std::vector<int> removal_order;   // permutation of edge indices 1..n-1

  // Composition induced by the first k-1 removed edges; O(n) via cut marks.
  Composition row(int k) const {
    if (k < 1 || k > n) throw std::domain_error("AldousFamily::row: need 1 <= k <= n");
    std::vector<bool> cut(n, false);
    for (int i = 0; i < k - 1; ++i) cut[removal_order[i]] = true;
    Composition comp;
    comp.parts.reserve(k);
    long prev = 0;
    for (int g = 1; g <= n - 1; ++g) {
      if (!cut[g]) continue;
      comp.parts.push_back(g - prev);
      prev = g;
    }
    comp.parts.push_back(n - prev);
    return comp;
  }

  // X_{n,k}: records of the shared labels with respect to row k.
  int records_row(int k) const { return count_records(labels, row(k)); }

  // The n-vertex family obtained by deleting vertex n+1 (and the row that
  // becomes duplicated): drop edge n-1... here edge index n-1 connects
  // vertices n-1 and n, so deleting the last vertex removes edge n-1 from
  // the removal order.
  AldousFamily drop_last_vertex() const {
    AldousFamily reduced;
    reduced.n = n - 1;
    reduced.labels.assign(labels.begin(), labels.end() - 1);
    reduced.removal_order.reserve(n - 2);
    for (int e : removal_order)
      if (e != n - 1) reduced.removal_order.push_back(e);
    return reduced;
  }
};

inline AldousFamily sample_aldous_family(int n, Rng& rng) {
  if (n < 1) throw std::domain_error("sample_aldous_family: n must be >= 1");
  AldousFamily family;
  family.n = n;
  family.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    bool fresh = false;
    while (!fresh) {
      family.labels[i] = rng.next_unit();
      fresh = true;
      for (int j = 0; j < i; ++j)
        if (family.labels[j] == family.labels[i]) fresh = false;  // ties: resample
    }
  }
  family.removal_order.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) family.removal_order[i] = i + 1;
  for (int i = n - 2; i > 0; --i) {
    const int j = static_cast<int>(rng.below(i + 1));
    std::swap(family.removal_order[i], family.removal_order[j]);
  }
  return family;
}

// Polya urn: k colors, one new ball per step copies the color of a uniformly
// drawn ball. A ball is a local record when its label beats every earlier
// label of its color. Y_n (the record count at n balls) is Lah(n,k)
// distributed and nondecreasing in n along one path.
struct UrnState {
  int k = 0;
  std::vector<long> counts;       // balls per color, sums to n
  std::vector<double> color_max;  // running max label per color
  long total = 0;
  long records = 0;

  static UrnState start(int k, Rng& rng) {
    if (k < 1) throw std::domain_error("UrnState::start: k must be >= 1");
    UrnState urn;
    urn.k = k;
    urn.counts.assign(k, 1);
    urn.color_max.resize(k);
    for (auto& m : urn.color_max) m = rng.next_unit();
    urn.total = k;
    urn.records = k;  // the initial ball of each color is a record
    return urn;
  }

  void add_ball(Rng& rng) {
    // Pick a uniform ball; its color gets the new ball.
    std::uint64_t pick = rng.below(static_cast<std::uint64_t>(total));
    int color = 0;
    while (pick >= static_cast<std::uint64_t>(counts[color])) {
      pick -= counts[color];
      ++color;
    }
    const double label = rng.next_unit();
    ++counts[color];
    ++total;
    if (label > color_max[color]) {
      color_max[color] = label;
      ++records;
    }
  }
};

inline std::vector<long> polya_urn_path(long n_max, int k, Rng& rng) {
  if (k < 1 || n_max < k)
    throw std::domain_error("polya_urn_path: need 1 <= k <= n_max");
  UrnState urn = UrnState::start(k, rng);
  std::vector<long> path;
  path.reserve(n_max - k + 1);
  path.push_back(urn.records);
  for (long n = k + 1; n <= n_max; ++n) {
    urn.add_ball(rng);
    path.push_back(urn.records);
  }
  return path;
}

enum class LahSampler { records, bernoulli_blocks, polya };

// One draw from Lah(n,k) by the requested coupling.
inline int sample_lah(long n, int k, LahSampler method, Rng& rng) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("sample_lah: need 1 <= k <= n");
  switch (method) {
    case LahSampler::records: {
      const Composition comp = sample_composition(n, k, rng);
      std::vector<double> labels(n);
      for (auto& u : labels) u = rng.next_unit();
      // Ties between labels have probability ~0; resample the block on one.
      for (;;) {
        try {
          return count_records(labels, comp);
        } catch (const std::domain_error&) {
          for (auto& u : labels) u = rng.next_unit();
        }
      }
    }
    case LahSampler::bernoulli_blocks: {
      // Within a block of size b the record count is sum_{l<=b} Bernoulli(1/l).
      const Composition comp = sample_composition(n, k, rng);
      long total = 0;
      for (long b : comp.parts) {
        ++total;  // l = 1 always succeeds
        for (long l = 2; l <= b; ++l)
          if (rng.below(static_cast<std::uint64_t>(l)) == 0) ++total;
      }
      return static_cast<int>(total);
    }
    case LahSampler::polya: {
      UrnState urn = UrnState::start(k, rng);
      for (long n_cur = k + 1; n_cur <= n; ++n_cur) urn.add_ball(rng);
      return static_cast<int>(urn.records);
    }
  }
  throw std::logic_error("sample_lah: unknown method");
}

// N_j = #{i : b_i = j} for j = 1..j_max.
inline std::vector<long> block_counts(const Composition& comp, int j_max) {
  std::vector<long> counts(j_max + 1, 0);
  for (long b : comp.parts)
    if (b <= j_max) ++counts[b];
  counts.erase(counts.begin());
  return counts;
}

// P[b_1 = j] = binom(n-j-1,k-2)/binom(n-1,k-1); zero outside 1 <= j <= n-k+1.
inline Ratio b1_marginal(long n, int k, long j) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("b1_marginal: need 1 <= k <= n");
  if (j < 1 || j > n - k + 1) return 0;
  if (k == 1) return j == n ? 1 : 0;
  return Ratio(binomial(n - j - 1, k - 2), binomial(n - 1, k - 1));
}

// P[b_1 >= j] = binom(n-j,k-1)/binom(n-1,k-1) (hockey-stick identity).
inline Ratio b1_tail(long n, int k, long j) {
  if (n < 1 || k < 1 || k > n)
    throw std::domain_error("b1_tail: need 1 <= k <= n");
  if (j <= 1) return 1;
  if (j > n - k + 1) return 0;
  return Ratio(binomial(n - j, k - 1), binomial(n - 1, k - 1));
}

}  // namespace lah
