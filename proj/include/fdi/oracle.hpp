#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fdi/frechet.hpp"
#include "fdi/geom.hpp"

// Brute-force oracles over discretized realizations. These are the ground
// truth the upper-bound algorithms are tested against on small instances.
// Discretization error for a 2-d ball of radius r with K boundary
// directions is at most 2*r*sin(pi/(2K)) per pair distance.

namespace fdi {

using Region = std::variant<Point, Ball, OrientedRect>;
using RegionSeq = std::vector<Region>;

struct RealizationScheme {
  int directions = 16;            // boundary directions per ball, K >= 1
  std::uint64_t seed = 0x5eed;    // for d >= 3 direction sampling
  std::uint64_t combo_cap = 50'000'000;
};

inline std::size_t region_dim(const Region& r) {
  if (auto* p = std::get_if<Point>(&r)) return p->dim();
  if (auto* b = std::get_if<Ball>(&r)) return b->dim();
  return 2;
}

// Candidate points of one region: region itself for points, center plus K
// boundary directions for balls (equally spaced in 2-d, seeded random
// unit vectors otherwise), corners plus edge midpoints for rectangles.
inline std::vector<Point> region_choices(const Region& r,
                                         const RealizationScheme& scheme) {
  if (auto* p = std::get_if<Point>(&r)) return {*p};
  if (auto* b = std::get_if<Ball>(&r)) {
    if (b->radius == 0.0) return {b->center};
    std::vector<Point> out;
    out.reserve(scheme.directions + 1);
    out.push_back(b->center);
    if (b->dim() == 2) {
      constexpr double two_pi = 6.283185307179586476925286766559;
      for (int k = 0; k < scheme.directions; ++k) {
        double t = two_pi * k / scheme.directions;
        out.push_back(Point(b->center[0] + b->radius * std::cos(t),
                            b->center[1] + b->radius * std::sin(t)));
      }
    } else {
      std::mt19937_64 rng(scheme.seed);
      std::normal_distribution<double> gauss;
      for (int k = 0; k < scheme.directions; ++k) {
        std::vector<double> dir(b->dim());
        double norm = 0.0;
        do {
          norm = 0.0;
          for (double& v : dir) {
            v = gauss(rng);
            norm += v * v;
          }
          norm = std::sqrt(norm);
        } while (norm < 1e-12);
        Point q = b->center;
        for (std::size_t i = 0; i < dir.size(); ++i)
          q[i] += b->radius * dir[i] / norm;
        out.push_back(std::move(q));
      }
    }
    return out;
  }
  const auto& rect = std::get<OrientedRect>(r);
  std::vector<Point> out;
  out.reserve(8);
  for (const Point& c : rect.corners()) out.push_back(c);
  out.push_back(rect.point_at(0.5, 0.0));
  out.push_back(rect.point_at(0.5, 1.0));
  out.push_back(rect.point_at(0.0, 0.5));
  out.push_back(rect.point_at(1.0, 0.5));
  return out;
}

namespace detail {

inline std::uint64_t realization_count(
    const std::vector<std::vector<Point>>& choices,
    const RealizationScheme& scheme) {
  unsigned __int128 total = 1;
  for (const auto& c : choices) {
    total *= c.size();
    if (total > (unsigned __int128)1 << 62) break;  // saturate
  }
  if (total > scheme.combo_cap) {
    std::string req = total > (unsigned __int128)1 << 62
                          ? std::string("> 2^62")
                          : std::to_string(static_cast<std::uint64_t>(total));
    throw std::invalid_argument(
        "realization enumeration exceeds combo_cap; required cap " + req);
  }
  return static_cast<std::uint64_t>(total);
}

}  // namespace detail

// Yields every combination of per-region choices into `visit(seq)`;
// the buffer is reused across calls.
inline void enumerate_realizations(
    const RegionSeq& regions, const RealizationScheme& scheme,
    const std::function<void(const PointSeq&)>& visit) {
  if (regions.empty()) throw std::invalid_argument("empty region sequence");
  std::vector<std::vector<Point>> choices;
  choices.reserve(regions.size());
  for (const Region& r : regions) choices.push_back(region_choices(r, scheme));
  detail::realization_count(choices, scheme);

  const std::size_t n = regions.size();
  std::vector<std::size_t> idx(n, 0);
  PointSeq seq(n);
  for (std::size_t i = 0; i < n; ++i) seq[i] = choices[i][0];
  for (;;) {
    visit(seq);
    std::size_t pos = 0;
    while (pos < n) {
      if (++idx[pos] < choices[pos].size()) {
        seq[pos] = choices[pos][idx[pos]];
        break;
      }
      idx[pos] = 0;
      seq[pos] = choices[pos][0];
      ++pos;
    }
    if (pos == n) break;
  }
}

namespace detail {

// Flat-coordinate odometer loop shared by the two F-max oracles.
// maximizes `eval(distance table)` over all realizations of both sides.
template <typename Kernel>
inline double oracle_max(const RegionSeq& qa, const RegionSeq& qb,
                         const RealizationScheme& scheme, Kernel&& kernel) {
  std::vector<std::vector<Point>> choices;
  for (const Region& r : qa) choices.push_back(region_choices(r, scheme));
  for (const Region& r : qb) choices.push_back(region_choices(r, scheme));
  realization_count(choices, scheme);

  const int n = static_cast<int>(qa.size());
  const int m = static_cast<int>(qb.size());
  const int d = static_cast<int>(region_dim(qa.front()));
  const std::size_t total = choices.size();

  // flat coordinate buffers: A then B
  std::vector<double> pts(static_cast<std::size_t>(n + m) * d);
  std::vector<std::size_t> idx(total, 0);
  for (std::size_t i = 0; i < total; ++i)
    for (int c = 0; c < d; ++c) pts[i * d + c] = choices[i][0][c];

  std::vector<double> dist(static_cast<std::size_t>(n) * m);
  std::vector<double> work(2 * m);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (int i = 0; i < n; ++i) {
      const double* a = &pts[static_cast<std::size_t>(i) * d];
      for (int j = 0; j < m; ++j) {
        const double* b = &pts[static_cast<std::size_t>(n + j) * d];
        double s = 0.0;
        for (int c = 0; c < d; ++c) {
          double t = a[c] - b[c];
          s += t * t;
        }
        dist[static_cast<std::size_t>(i) * m + j] = std::sqrt(s);
      }
    }
    best = std::max(best, kernel(dist.data(), n, m, work.data()));

    std::size_t pos = 0;
    while (pos < total) {
      if (++idx[pos] < choices[pos].size()) {
        for (int c = 0; c < d; ++c)
          pts[pos * d + c] = choices[pos][idx[pos]][c];
        break;
      }
      idx[pos] = 0;
      for (int c = 0; c < d; ++c) pts[pos * d + c] = choices[pos][0][c];
      ++pos;
    }
    if (pos == total) break;
  }
  return best;
}

}  // namespace detail

// Lower bound on F^max(Q, H): max of dfd over enumerated realizations of Q
// against the precise sequence H.
inline double oracle_fmax(const RegionSeq& q, const PointSeq& h,
                          const RealizationScheme& scheme) {
  if (q.empty() || h.empty()) throw std::invalid_argument("empty sequence");
  RegionSeq hr;
  hr.reserve(h.size());
  for (const Point& p : h) hr.emplace_back(p);
  return detail::oracle_max(q, hr, scheme, detail::dfd_value);
}

// Lower bound on F^max_1(U, W): max of dfd_shortcut over realization pairs.
inline double oracle_fmax_shortcut(const RegionSeq& u, const RegionSeq& w,
                                   const RealizationScheme& scheme) {
  if (u.empty() || w.empty()) throw std::invalid_argument("empty sequence");
  return detail::oracle_max(u, w, scheme, detail::dfd_shortcut_value);
}

// min over all 2^m - 1 nonempty subsequences B' of dfd(A, B')
inline double shortcut_subseq_oracle(const PointSeq& a, const PointSeq& b) {
  require_same_dim(a, b);
  const int m = static_cast<int>(b.size());
  if (m > 12) throw std::invalid_argument("|B| > 12");
  double best = std::numeric_limits<double>::infinity();
  PointSeq sub;
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    sub.clear();
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) sub.push_back(b[j]);
    best = std::min(best, dfd(a, sub).value);
  }
  return best;
}

}  // namespace fdi
