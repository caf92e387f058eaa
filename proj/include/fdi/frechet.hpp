#pragma once

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdi/geom.hpp"

// Discrete Frechet distance and its one-sided-shortcut variant for
// precise point sequences. Both are bottleneck (min-max) dynamic
// programs; the returned value is always some pair distance.

namespace fdi {

using PointSeq = std::vector<Point>;

struct Match {
  int i = 0;  // 1-based index into the first sequence
  int j = 0;  // 1-based index into the second sequence
  bool operator==(const Match& o) const { return i == o.i && j == o.j; }
};

struct MatchPath {
  std::vector<Match> matches;
  double bottleneck = 0.0;
};

struct FrechetResult {
  double value = 0.0;
  MatchPath witness;
};

inline void require_valid_seq(const PointSeq& a) {
  if (a.empty()) throw std::invalid_argument("empty point sequence");
  for (const Point& p : a)
    if (p.dim() != a.front().dim())
      throw std::invalid_argument("mixed dimensions in sequence");
}

inline void require_same_dim(const PointSeq& a, const PointSeq& b) {
  require_valid_seq(a);
  require_valid_seq(b);
  if (a.front().dim() != b.front().dim())
    throw std::invalid_argument("dimension mismatch");
}

namespace detail {

// Value-only kernel over a precomputed pair-distance table (row-major,
// n x m). Reused by the realization oracles, so it avoids allocation:
// `work` must hold at least m doubles.
inline double dfd_value(const double* dist, int n, int m, double* work) {
  // work[j] = bottleneck to reach (current i, j)
  work[0] = dist[0];
  for (int j = 1; j < m; ++j) work[j] = std::max(work[j - 1], dist[j]);
  for (int i = 1; i < n; ++i) {
    const double* row = dist + static_cast<std::size_t>(i) * m;
    double diag = work[0];  // value at (i-1, j-1)
    work[0] = std::max(work[0], row[0]);
    for (int j = 1; j < m; ++j) {
      double best = std::min(std::min(work[j], work[j - 1]), diag);
      diag = work[j];
      work[j] = std::max(best, row[j]);
    }
  }
  return work[m - 1];
}

// Shortcut kernel: minimum bottleneck over match paths that start at any
// (1, j), end at any (n, j'), with moves (i+1,j), (i,l>j), (i+1,l>j).
// `work` must hold at least 2*m doubles.
inline double dfd_shortcut_value(const double* dist, int n, int m,
                                 double* work) {
  double* cur = work;       // G[i][j]
  double* prevmin = work + m;  // prefix min of G[i-1][0..j-1], shifted
  for (int j = 0; j < m; ++j) cur[j] = dist[j];
  for (int i = 1; i < n; ++i) {
    const double* row = dist + static_cast<std::size_t>(i) * m;
    // prevmin[j] = min over j' < j of G[i-1][j'] (inf for j = 0)
    double run = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      double t = cur[j];
      prevmin[j] = run;
      run = std::min(run, t);
    }
    double rowmin = std::numeric_limits<double>::infinity();  // min G[i][j'<j]
    for (int j = 0; j < m; ++j) {
      double prev = std::min(cur[j], prevmin[j]);  // moves a) and c)
      double best = std::min(prev, rowmin);        // move b)
      double g = std::max(row[j], best);
      rowmin = std::min(rowmin, g);
      cur[j] = g;
    }
  }
  double v = cur[0];
  for (int j = 1; j < m; ++j) v = std::min(v, cur[j]);
  return v;
}

inline std::vector<double> pair_distances(const PointSeq& a,
                                          const PointSeq& b) {
  std::vector<double> d(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      d[i * b.size() + j] = euclid_dist(a[i], b[j]);
  return d;
}

}  // namespace detail

// Discrete Frechet distance with a witness coupling. Ties between
// couplings are broken toward the lexicographically smallest match list.
inline FrechetResult dfd(const PointSeq& a, const PointSeq& b) {
  require_same_dim(a, b);
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  std::vector<double> dist = detail::pair_distances(a, b);
  auto d = [&](int i, int j) { return dist[static_cast<std::size_t>(i) * m + j]; };

  // Suffix bottleneck S[i][j]: best value from (i,j) to (n-1,m-1).
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> suf(dist.size());
  auto S = [&](int i, int j) -> double& { return suf[static_cast<std::size_t>(i) * m + j]; };
  for (int i = n - 1; i >= 0; --i)
    for (int j = m - 1; j >= 0; --j) {
      double next;
      if (i == n - 1 && j == m - 1) {
        next = 0.0;
      } else {
        double right = j + 1 < m ? S(i, j + 1) : inf;
        double up = i + 1 < n ? S(i + 1, j) : inf;
        double diag = (i + 1 < n && j + 1 < m) ? S(i + 1, j + 1) : inf;
        next = std::min(std::min(right, up), diag);
      }
      S(i, j) = std::max(d(i, j), next);
    }

  FrechetResult res;
  res.value = S(0, 0);
  int i = 0, j = 0;
  res.witness.matches.push_back({1, 1});
  while (i != n - 1 || j != m - 1) {
    // lexicographic move preference: (i, j+1), (i+1, j), (i+1, j+1)
    if (j + 1 < m && S(i, j + 1) <= res.value) {
      ++j;
    } else if (i + 1 < n && S(i + 1, j) <= res.value) {
      ++i;
    } else {
      ++i;
      ++j;
    }
    res.witness.matches.push_back({i + 1, j + 1});
  }
  res.witness.bottleneck = res.value;
  return res;
}

// Discrete Frechet distance with shortcuts on side B (Def. of F_c):
// the minimum of dfd(A, B') over nonempty subsequences B' of B.
inline FrechetResult dfd_shortcut(const PointSeq& a, const PointSeq& b) {
  require_same_dim(a, b);
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  std::vector<double> dist = detail::pair_distances(a, b);
  auto d = [&](int i, int j) { return dist[static_cast<std::size_t>(i) * m + j]; };

  // Suffix value R[i][j]: best bottleneck of a match path starting at
  // match (i,j) and ending in row n-1.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> suf(dist.size());
  auto R = [&](int i, int j) -> double& { return suf[static_cast<std::size_t>(i) * m + j]; };
  for (int i = n - 1; i >= 0; --i) {
    // sufmin_next[j] = min over l > j of R[i+1][l]; sufmin_same likewise
    double sufmin_next = inf, sufmin_same = inf;
    for (int j = m - 1; j >= 0; --j) {
      double next;
      if (i == n - 1) {
        next = 0.0;  // may stop at any column of the last row
      } else {
        next = std::min(R(i + 1, j), std::min(sufmin_same, sufmin_next));
      }
      R(i, j) = std::max(d(i, j), next);
      if (i + 1 < n) sufmin_next = std::min(sufmin_next, R(i + 1, j));
      sufmin_same = std::min(sufmin_same, R(i, j));
    }
  }

  FrechetResult res;
  res.value = inf;
  for (int j = 0; j < m; ++j) res.value = std::min(res.value, R(0, j));

  // Forward reconstruction, lexicographically smallest match list.
  int i = 0, j = -1;
  for (int l = 0; l < m; ++l)
    if (R(0, l) <= res.value) { j = l; break; }
  res.witness.matches.push_back({1, j + 1});
  while (i != n - 1) {
    bool moved = false;
    for (int l = j + 1; l < m && !moved; ++l)
      if (R(i, l) <= res.value) { j = l; moved = true; }
    if (!moved) {
      for (int l = j; l < m && !moved; ++l)
        if (R(i + 1, l) <= res.value) { i = i + 1; j = l; moved = true; }
    }
    if (!moved) throw std::logic_error("shortcut witness reconstruction failed");
    res.witness.matches.push_back({i + 1, j + 1});
  }
  res.witness.bottleneck = res.value;
  return res;
}

}  // namespace fdi
