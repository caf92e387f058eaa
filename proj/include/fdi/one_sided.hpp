#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "fdi/frechet.hpp"
#include "fdi/geom.hpp"

// F^max_1(U, W) for a precise sequence U and a ball sequence W:
// the greedy decision procedure, its sort + binary-search optimization,
// and the streaming dynamic program.

namespace fdi {

using BallSeq = std::vector<Ball>;

inline void require_same_dim(const PointSeq& u, const BallSeq& w) {
  require_valid_seq(u);
  if (w.empty()) throw std::invalid_argument("empty ball sequence");
  for (const Ball& b : w)
    if (b.dim() != u.front().dim())
      throw std::invalid_argument("dimension mismatch");
}

// delta_{i,j} = d(u_i, c_j) + r_j, the event value at which w_j becomes
// contained in D(u_i, delta).
struct DeltaMatrix {
  int n = 0, m = 0;
  std::vector<double> values;  // row-major
  double operator()(int i, int j) const {
    return values[static_cast<std::size_t>(i) * m + j];
  }
};

inline DeltaMatrix delta_matrix(const PointSeq& u, const BallSeq& w) {
  require_same_dim(u, w);
  DeltaMatrix dm;
  dm.n = static_cast<int>(u.size());
  dm.m = static_cast<int>(w.size());
  dm.values.resize(static_cast<std::size_t>(dm.n) * dm.m);
  for (int i = 0; i < dm.n; ++i)
    for (int j = 0; j < dm.m; ++j)
      dm.values[static_cast<std::size_t>(i) * dm.m + j] =
          dmax_point_ball(u[i], w[j]);
  return dm;
}

struct DecisionTrace {
  bool yes = false;
  std::vector<Match> matches;  // the set S = {M(i, j*(i))}, present iff yes
  int fail_row = 0;            // 1-based, present iff no
};

// Greedy scan: for each row i find the smallest k >= j with
// w_k subseteq D(u_i, delta), then continue from j = k (inclusive).
inline DecisionTrace decide_one_sided(const PointSeq& u, const BallSeq& w,
                                      double delta) {
  require_same_dim(u, w);
  if (delta < 0.0) throw std::invalid_argument("delta < 0");
  const int n = static_cast<int>(u.size());
  const int m = static_cast<int>(w.size());
  DecisionTrace tr;
  int j = 0;
  for (int i = 0; i < n; ++i) {
    int k = -1;
    for (int c = j; c < m; ++c) {
      if (ball_in_ball(w[c], u[i], delta)) { k = c; break; }
    }
    if (k < 0) {
      tr.yes = false;
      tr.fail_row = i + 1;
      tr.matches.clear();
      return tr;
    }
    tr.matches.push_back({i + 1, k + 1});
    j = k;
  }
  tr.yes = true;
  return tr;
}

// Optimization by sorting the nm event values and binary-searching for
// the smallest Yes. The optimum is always one of the delta_{i,j}.
inline double optimize_one_sided_search(const PointSeq& u, const BallSeq& w) {
  DeltaMatrix dm = delta_matrix(u, w);
  std::vector<double> events = dm.values;
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  std::size_t lo = 0, hi = events.size() - 1;
  // decide(events.back()) is always Yes: every w_j fits at max delta.
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (decide_one_sided(u, w, events[mid]).yes)
      hi = mid;
    else
      lo = mid + 1;
  }
  return events[lo];
}

struct DpTables {
  int n = 0, m = 0;
  std::vector<double> z;  // row-major, Z^max_1
  std::vector<double> f;  // row-major, F^max_1
  double Z(int i, int j) const { return z[static_cast<std::size_t>(i) * m + j]; }
  double F(int i, int j) const { return f[static_cast<std::size_t>(i) * m + j]; }
};

struct OneSidedDpResult {
  double value = 0.0;
  std::optional<DpTables> tables;
};

// Two-recurrence dynamic program:
//   Z(i+1,j) = max{F(i,j), delta_{i+1,j}},  Z(1,j) = delta_{1,j}
//   F(i,j+1) = min{F(i,j), Z(i,j+1)},       F(i,1) = Z(i,1)
// evaluated row by row. Without tables it streams with O(m) memory and
// computes delta_{i,j} on the fly.
inline OneSidedDpResult optimize_one_sided_dp(const PointSeq& u,
                                              const BallSeq& w,
                                              bool want_tables = false) {
  require_same_dim(u, w);
  const int n = static_cast<int>(u.size());
  const int m = static_cast<int>(w.size());
  OneSidedDpResult res;
  if (want_tables) {
    res.tables = DpTables{};
    res.tables->n = n;
    res.tables->m = m;
    res.tables->z.resize(static_cast<std::size_t>(n) * m);
    res.tables->f.resize(static_cast<std::size_t>(n) * m);
  }
  std::vector<double> frow(m);
  for (int i = 0; i < n; ++i) {
    double running = 0.0;
    for (int j = 0; j < m; ++j) {
      double delta_ij = dmax_point_ball(u[i], w[j]);
      double z = i == 0 ? delta_ij : std::max(frow[j], delta_ij);
      double f = j == 0 ? z : std::min(running, z);
      if (want_tables) {
        res.tables->z[static_cast<std::size_t>(i) * m + j] = z;
        res.tables->f[static_cast<std::size_t>(i) * m + j] = f;
      }
      frow[j] = f;
      running = f;
    }
  }
  res.value = frow[m - 1];
  return res;
}

}  // namespace fdi
