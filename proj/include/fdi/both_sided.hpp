#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fdi/geom.hpp"
#include "fdi/one_sided.hpp"

// F^max_1(U, W) when both sequences are disks in R^2. The core query is
// D(i,j,k) = max over the disk u_i of the lower envelope
// min_{j<=x<=k} (d(p, c_x) + r_x), evaluated exactly by candidate
// enumeration: per-site antipodal boundary points, additive-bisector /
// boundary-circle intersections, and triple equidistance points.

namespace fdi {

// min over x in [j,k] of d(p, c_x) + r_x (closed window, 0-based)
inline double envelope_min(const Point& p, const BallSeq& w, int j, int k) {
  if (j < 0 || k >= static_cast<int>(w.size()) || j > k)
    throw std::invalid_argument("empty or invalid window");
  double best = std::numeric_limits<double>::infinity();
  for (int x = j; x <= k; ++x)
    best = std::min(best, dmax_point_ball(p, w[x]));
  return best;
}

struct EnvelopeQuery {
  double value = 0.0;
  Point argmax_point;
  int active_site = 0;  // 0-based index into W
};

namespace detail {

inline int envelope_argmin(const Point& p, const BallSeq& w, int j, int k) {
  int arg = j;
  double best = dmax_point_ball(p, w[j]);
  for (int x = j + 1; x <= k; ++x) {
    double v = dmax_point_ball(p, w[x]);
    if (v < best) { best = v; arg = x; }
  }
  return arg;
}

// Roots of f on the disk boundary angle parameterization, by scanning
// `samples` intervals and bisecting sign changes.
template <typename F>
inline void boundary_roots(F&& f, int samples, std::vector<double>& out) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double t0 = 0.0, f0 = f(0.0);
  for (int s = 1; s <= samples; ++s) {
    double t1 = two_pi * s / samples;
    double f1 = f(t1);
    if (f0 == 0.0) out.push_back(t0);
    if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
      double a = t0, b = t1, fa = f0;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (a + b);
        double fm = f(mid);
        if (fm == 0.0) { a = b = mid; break; }
        if ((fa < 0.0) == (fm < 0.0)) { a = mid; fa = fm; }
        else b = mid;
      }
      out.push_back(0.5 * (a + b));
    }
    t0 = t1;
    f0 = f1;
  }
}

// 2-d Newton refinement for the additive equidistance point of three
// sites; returns true on residual < 1e-10.
inline bool triple_equidistance(const Ball& a, const Ball& b, const Ball& c,
                                Point& p) {
  double x = p[0], y = p[1];
  for (int it = 0; it < 80; ++it) {
    double dax = x - a.center[0], day = y - a.center[1];
    double dbx = x - b.center[0], dby = y - b.center[1];
    double dcx = x - c.center[0], dcy = y - c.center[1];
    double la = std::hypot(dax, day), lb = std::hypot(dbx, dby),
           lc = std::hypot(dcx, dcy);
    if (la < 1e-14 || lb < 1e-14 || lc < 1e-14) return false;
    double g1 = la + a.radius - lb - b.radius;
    double g2 = la + a.radius - lc - c.radius;
    if (std::abs(g1) < 1e-10 && std::abs(g2) < 1e-10) {
      p = Point(x, y);
      return true;
    }
    // Jacobian of (g1, g2)
    double j11 = dax / la - dbx / lb, j12 = day / la - dby / lb;
    double j21 = dax / la - dcx / lc, j22 = day / la - dcy / lc;
    double det = j11 * j22 - j12 * j21;
    if (std::abs(det) < 1e-16) return false;
    double sx = (g1 * j22 - g2 * j12) / det;
    double sy = (j11 * g2 - j21 * g1) / det;
    // damped step to keep Newton bounded
    double lim = 2.0 * std::max({la, lb, lc});
    double sn = std::hypot(sx, sy);
    if (sn > lim) { sx *= lim / sn; sy *= lim / sn; }
    x -= sx;
    y -= sy;
  }
  return false;
}

}  // namespace detail

// Exact max over the closed disk u of the lower envelope of the window
// [j,k] of W, with witness point and active site.
inline EnvelopeQuery window_max_min(const Ball& u, const BallSeq& w, int j,
                                    int k) {
  if (u.dim() != 2) throw std::invalid_argument("window_max_min requires d = 2");
  if (j < 0 || k >= static_cast<int>(w.size()) || j > k)
    throw std::invalid_argument("empty or invalid window");

  EnvelopeQuery best;
  best.value = -1.0;
  auto consider = [&](const Point& p) {
    double v = envelope_min(p, w, j, k);
    if (v > best.value) {
      best.value = v;
      best.argmax_point = p;
      best.active_site = detail::envelope_argmin(p, w, j, k);
    }
  };

  const double cx = u.center[0], cy = u.center[1], r = u.radius;
  auto boundary = [&](double t) {
    return Point(cx + r * std::cos(t), cy + r * std::sin(t));
  };

  if (r == 0.0) {
    consider(u.center);
    return best;
  }

  // (a) per-site antipodal boundary points
  for (int x = j; x <= k; ++x) {
    double dx = cx - w[x].center[0], dy = cy - w[x].center[1];
    double len = std::hypot(dx, dy);
    if (len < 1e-14) {
      consider(Point(cx + r, cy));
    } else {
      consider(Point(cx + r * dx / len, cy + r * dy / len));
    }
  }

  // (b) additive-bisector intersections with the boundary circle
  std::vector<double> roots;
  for (int x = j; x <= k; ++x) {
    for (int y = x + 1; y <= k; ++y) {
      roots.clear();
      auto f = [&](double t) {
        Point p = boundary(t);
        return dmax_point_ball(p, w[x]) - dmax_point_ball(p, w[y]);
      };
      detail::boundary_roots(f, 512, roots);
      for (double t : roots) consider(boundary(t));
    }
  }

  // (c) triple equidistance points inside the disk
  for (int x = j; x <= k; ++x) {
    for (int y = x + 1; y <= k; ++y) {
      for (int z = y + 1; z <= k; ++z) {
        // several starts: disk center and site centroid
        Point starts[2] = {
            u.center,
            Point((w[x].center[0] + w[y].center[0] + w[z].center[0]) / 3.0,
                  (w[x].center[1] + w[y].center[1] + w[z].center[1]) / 3.0)};
        for (Point& s : starts) {
          Point p = s;
          if (detail::triple_equidistance(w[x], w[y], w[z], p) &&
              euclid_dist(p, u.center) <= r * (1.0 + 1e-12)) {
            consider(p);
          }
        }
      }
    }
  }

  return best;
}

// Fig.-8 decision procedure: greedy scan with the containment test
// replaced by D(i, j, k) <= delta.
inline DecisionTrace decide_both(const BallSeq& u, const BallSeq& w,
                                 double delta) {
  if (u.empty() || w.empty()) throw std::invalid_argument("empty sequence");
  if (delta < 0.0) throw std::invalid_argument("delta < 0");
  const int n = static_cast<int>(u.size());
  const int m = static_cast<int>(w.size());
  DecisionTrace tr;
  int j = 0;
  for (int i = 0; i < n; ++i) {
    int found = -1;
    for (int k = j; k < m; ++k) {
      if (window_max_min(u[i], w, j, k).value <= delta) { found = k; break; }
    }
    if (found < 0) {
      tr.yes = false;
      tr.fail_row = i + 1;
      tr.matches.clear();
      return tr;
    }
    tr.matches.push_back({i + 1, found + 1});
    j = found;
  }
  tr.yes = true;
  return tr;
}

struct MongeStats {
  long long probe_count = 0;        // D evaluations in the current row
  long long max_row_probes = 0;     // max over rows
  bool pointers_monotone = true;    // j_{k+1} >= j_k on every row
};

namespace detail {

struct BothDp {
  const BallSeq& u;
  const BallSeq& w;
  int n, m;
  long long probes = 0;

  double D(int i, int j, int k) {
    ++probes;
    return window_max_min(u[i], w, j, k).value;
  }
};

}  // namespace detail

// Full-table evaluation of the recurrence
//   F(i+1,k) = min_{1<=j<=k} max{F(i,j), D(i+1,j,k)},  F(1,k) = D(1,1,k)
inline double optimize_both_naive(const BallSeq& u, const BallSeq& w) {
  if (u.empty() || w.empty()) throw std::invalid_argument("empty sequence");
  detail::BothDp dp{u, w, static_cast<int>(u.size()), static_cast<int>(w.size())};
  std::vector<double> f(dp.m), next(dp.m);
  for (int k = 0; k < dp.m; ++k) f[k] = dp.D(0, 0, k);
  for (int i = 1; i < dp.n; ++i) {
    for (int k = 0; k < dp.m; ++k) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j <= k; ++j)
        best = std::min(best, std::max(f[j], dp.D(i, j, k)));
      next[k] = best;
    }
    f.swap(next);
  }
  return f[dp.m - 1];
}

// Monge-accelerated rows: the split pointer j_k only moves right, so each
// row probes O(m) D values.
inline double optimize_both_monge(const BallSeq& u, const BallSeq& w,
                                  MongeStats* stats = nullptr) {
  if (u.empty() || w.empty()) throw std::invalid_argument("empty sequence");
  detail::BothDp dp{u, w, static_cast<int>(u.size()), static_cast<int>(w.size())};
  MongeStats local;
  std::vector<double> f(dp.m), next(dp.m);
  for (int k = 0; k < dp.m; ++k) f[k] = dp.D(0, 0, k);
  local.max_row_probes = dp.probes;
  for (int i = 1; i < dp.n; ++i) {
    long long row_start = dp.probes;
    int j = 0;
    int prev_j = 0;
    for (int k = 0; k < dp.m; ++k) {
      if (j > k) j = k;  // unreachable with monotone pointers; guard only
      double cur = std::max(f[j], dp.D(i, j, k));
      while (j < k) {
        double nxt = std::max(f[j + 1], dp.D(i, j + 1, k));
        if (nxt <= cur) {
          cur = nxt;
          ++j;
        } else {
          break;
        }
      }
      if (j < prev_j) local.pointers_monotone = false;
      prev_j = j;
      next[k] = cur;
    }
    f.swap(next);
    local.max_row_probes =
        std::max(local.max_row_probes, dp.probes - row_start);
  }
  local.probe_count = dp.probes;
  if (stats) *stats = local;
  return f[dp.m - 1];
}

}  // namespace fdi
