#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdi/frechet.hpp"
#include "fdi/geom.hpp"
#include "fdi/oracle.hpp"

// The NP-hardness chain for the no-shortcut upper bound F^max:
// 3SAT -> colored digraph (ISCPCS) -> colored free-space grid ->
// geometric realization with a precise sequence H and an imprecise
// rectangle sequence Q, plus brute-force verifiers for every link.

namespace fdi {

// ---------------------------------------------------------------------------
// CNF

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;  // signed 1-based variable indices
};

// DIMACS parser. Clauses of width < 3 are padded by repeating their first
// literal (satisfiability-preserving); width > 3 is rejected.
inline CnfFormula parse_cnf(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  CnfFormula f;
  int declared_clauses = -1;
  std::vector<int> lits;
  auto flush_clause = [&]() {
    if (lits.empty()) return;
    if (lits.size() > 3)
      throw std::invalid_argument("clause width > 3");
    std::array<int, 3> cl{};
    for (std::size_t k = 0; k < 3; ++k)
      cl[k] = k < lits.size() ? lits[k] : lits[0];
    f.clauses.push_back(cl);
    lits.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, fmt;
      if (!(hs >> p >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf")
        throw std::invalid_argument("malformed DIMACS header");
      if (f.num_vars < 1 || declared_clauses < 1)
        throw std::invalid_argument("DIMACS requires n >= 1 and m >= 1");
      continue;
    }
    if (declared_clauses < 0)
      throw std::invalid_argument("clause before DIMACS header");
    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        flush_clause();
      } else {
        if (std::abs(lit) > f.num_vars)
          throw std::invalid_argument("literal out of range");
        lits.push_back(lit);
      }
    }
  }
  flush_clause();
  if (declared_clauses < 0) throw std::invalid_argument("missing header");
  if (static_cast<int>(f.clauses.size()) != declared_clauses)
    throw std::invalid_argument("clause count does not match header");
  return f;
}

inline bool cnf_satisfied(const CnfFormula& f, std::uint32_t assignment) {
  for (const auto& cl : f.clauses) {
    bool ok = false;
    for (int lit : cl) {
      bool v = (assignment >> (std::abs(lit) - 1)) & 1u;
      if (lit < 0) v = !v;
      if (v) { ok = true; break; }
    }
    if (!ok) return false;
  }
  return true;
}

// Exhaustive satisfiability check, n <= 24.
inline std::optional<std::vector<bool>> sat_brute(const CnfFormula& f) {
  if (f.num_vars > 24) throw std::invalid_argument("sat_brute: n > 24");
  for (std::uint32_t a = 0; a < (1u << f.num_vars); ++a) {
    if (cnf_satisfied(f, a)) {
      std::vector<bool> out(f.num_vars);
      for (int i = 0; i < f.num_vars; ++i) out[i] = (a >> i) & 1u;
      return out;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ISCPCS colored digraph

struct ColoredDigraph {
  enum class Role { Source, Sink, VarVertex, ClauseVertex };
  struct Vertex {
    Role role;
    int color = 0;        // 0 for s and t; variables 1..n, clauses n+1..n+m
    int var = 0;          // 1-based, VarVertex: variable index
    bool positive = false;  // VarVertex: labels x_i (true) or not-x_i
    int clause = 0;       // 1-based, ClauseVertex
    int slot = 0;         // ClauseVertex: literal position 0..2
    int literal = 0;      // ClauseVertex: the literal it denotes
  };
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;  // directed (from, to)
  int num_colors = 0;
  int source = 0, sink = 1;
};

// One vertex per variable polarity (same color per variable), three
// vertices per clause (one color per clause). Edges: s -> clause vertices,
// variable vertices -> t, and each clause-literal vertex -> the variable
// vertex denoting the negated literal.
inline ColoredDigraph build_iscpcs(const CnfFormula& f) {
  ColoredDigraph g;
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());
  g.num_colors = n + m;
  g.vertices.push_back({ColoredDigraph::Role::Source, 0, 0, false, 0, 0, 0});
  g.vertices.push_back({ColoredDigraph::Role::Sink, 0, 0, false, 0, 0, 0});

  std::vector<std::array<int, 2>> var_vertex(n + 1);  // [positive, negative]
  for (int i = 1; i <= n; ++i) {
    var_vertex[i][0] = static_cast<int>(g.vertices.size());
    g.vertices.push_back({ColoredDigraph::Role::VarVertex, i, i, true, 0, 0, 0});
    var_vertex[i][1] = static_cast<int>(g.vertices.size());
    g.vertices.push_back({ColoredDigraph::Role::VarVertex, i, i, false, 0, 0, 0});
    g.edges.emplace_back(var_vertex[i][0], g.sink);
    g.edges.emplace_back(var_vertex[i][1], g.sink);
  }
  for (int j = 1; j <= m; ++j) {
    for (int s = 0; s < 3; ++s) {
      int lit = f.clauses[j - 1][s];
      int v = static_cast<int>(g.vertices.size());
      g.vertices.push_back(
          {ColoredDigraph::Role::ClauseVertex, n + j, 0, false, j, s, lit});
      g.edges.emplace_back(g.source, v);
      // literal l points to the variable vertex denoting not-l
      int target = lit > 0 ? var_vertex[lit][1] : var_vertex[-lit][0];
      g.edges.emplace_back(v, target);
    }
  }
  return g;
}

namespace detail {

inline bool induced_path_s_to_t(const ColoredDigraph& g,
                                const std::vector<bool>& kept) {
  std::vector<bool> seen(g.vertices.size(), false);
  std::vector<int> stack{g.source};
  seen[g.source] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == g.sink) return true;
    for (const auto& [a, b] : g.edges) {
      if (a != v || seen[b] || !kept[b]) continue;
      seen[b] = true;
      stack.push_back(b);
    }
  }
  return false;
}

}  // namespace detail

// Exhaustive search for a one-vertex-per-color selection whose induced
// subgraph (with s and t) has no s -> t path.
inline std::optional<std::vector<int>> iscpcs_blocking_selection(
    const ColoredDigraph& g) {
  if (g.num_colors > 12)
    throw std::invalid_argument("too many colors to enumerate");
  std::vector<std::vector<int>> by_color(g.num_colors + 1);
  for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v)
    if (g.vertices[v].color > 0) by_color[g.vertices[v].color].push_back(v);
  for (int c = 1; c <= g.num_colors; ++c)
    if (by_color[c].empty()) throw std::logic_error("color with no vertices");

  std::vector<std::size_t> idx(g.num_colors + 1, 0);
  std::vector<bool> kept(g.vertices.size(), false);
  kept[g.source] = kept[g.sink] = true;
  for (;;) {
    for (int c = 1; c <= g.num_colors; ++c) {
      for (int v : by_color[c]) kept[v] = false;
      kept[by_color[c][idx[c]]] = true;
    }
    if (!detail::induced_path_s_to_t(g, kept)) {
      std::vector<int> sel(g.num_colors + 1, -1);
      for (int c = 1; c <= g.num_colors; ++c) sel[c] = by_color[c][idx[c]];
      return sel;
    }
    int c = 1;
    while (c <= g.num_colors) {
      if (++idx[c] < by_color[c].size()) break;
      idx[c] = 0;
      ++c;
    }
    if (c > g.num_colors) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Colored free-space grid

enum class CellClass : std::uint8_t { White, Gray, Gadget };

struct GridCell {
  CellClass cls = CellClass::Gray;
  int color = 0;  // valid iff Gadget
  bool operator==(const GridCell& o) const {
    return cls == o.cls && (cls != CellClass::Gadget || color == o.color);
  }
};

struct ColumnInfo {
  bool is_variable = false;
  int var = 0;          // variable column: 1-based variable index
  bool positive = false;  // variable column: polarity label of the vertex
  int clause = 0;       // clause column: 1-based clause index
  int slot = 0;         // clause column: literal slot 0..2
};

struct FreeSpaceGrid {
  int rows = 0, cols = 0;
  int num_vars = 0, num_clauses = 0;
  std::vector<GridCell> cells;  // row-major, row 0 is the bottom row
  std::vector<ColumnInfo> columns;
  // color -> gadget cells (row, col), 0-based, ascending column
  std::map<int, std::vector<std::pair<int, int>>> gadgets;

  GridCell& at(int r, int c) { return cells[static_cast<std::size_t>(r) * cols + c]; }
  const GridCell& at(int r, int c) const {
    return cells[static_cast<std::size_t>(r) * cols + c];
  }
};

// Deterministic layout: variables in index order, the positive-polarity
// vertex before the negative one; each vertex's attached clause cells sit
// immediately left of it, sorted by clause row. Rows bottom-up: all-white,
// m clause rows, the separator row, n variable rows, all-white.
//
// Vertices with no attached clause cells are placed in a leftmost block
// instead. This keeps every remaining vertex column immediately preceded
// by its own clause-cell group, which is what makes the grid equivalent
// to the colored digraph: a monotone path's column span is contiguous,
// clause columns are impassable in variable rows and vertex columns are
// impassable in clause rows, so any path must cross the clause rows
// inside a single attachment group (forcing a chosen clause cell there)
// and then climb vertically at that group's own vertex column (forcing
// that exact vertex to be chosen). Adjacent vertex columns would let the
// path slip onto a different vertex, breaking the equivalence.
inline FreeSpaceGrid build_grid(const CnfFormula& f) {
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());
  FreeSpaceGrid grid;
  grid.num_vars = n;
  grid.num_clauses = m;
  grid.rows = n + m + 3;
  grid.cols = 3 * m + 2 * n;
  grid.cells.assign(static_cast<std::size_t>(grid.rows) * grid.cols, {});

  // column order: first the vertices without attached clause cells, then,
  // per remaining vertex, its attachment group immediately followed by the
  // vertex column itself
  auto attached_cells = [&](int i, int positive) {
    // occurrences of the literal whose negation this vertex denotes
    int attached_lit = positive ? -i : i;
    std::vector<ColumnInfo> cells;
    for (int j = 1; j <= m; ++j)
      for (int s = 0; s < 3; ++s)
        if (f.clauses[j - 1][s] == attached_lit)
          cells.push_back({false, 0, false, j, s});
    return cells;
  };
  for (int i = 1; i <= n; ++i)
    for (int positive : {1, 0})
      if (attached_cells(i, positive).empty())
        grid.columns.push_back({true, i, positive != 0, 0, 0});
  for (int i = 1; i <= n; ++i) {
    for (int positive : {1, 0}) {
      std::vector<ColumnInfo> cells = attached_cells(i, positive);
      if (cells.empty()) continue;
      grid.columns.insert(grid.columns.end(), cells.begin(), cells.end());
      grid.columns.push_back({true, i, positive != 0, 0, 0});
    }
  }
  if (static_cast<int>(grid.columns.size()) != grid.cols)
    throw std::logic_error("column layout size mismatch");

  auto clause_color = [&](int j) { return n + j; };
  for (int c = 0; c < grid.cols; ++c) {
    const ColumnInfo& col = grid.columns[c];
    // rows 1 and n+m+3: all white
    grid.at(0, c) = {CellClass::White, 0};
    grid.at(grid.rows - 1, c) = {CellClass::White, 0};
    // clause rows 2..m+1
    for (int j = 1; j <= m; ++j) {
      GridCell cell{CellClass::Gray, 0};
      if (!col.is_variable)
        cell = col.clause == j ? GridCell{CellClass::Gadget, clause_color(j)}
                               : GridCell{CellClass::White, 0};
      grid.at(j, c) = cell;
    }
    // separator row m+2: white exactly in clause-cell columns
    grid.at(m + 1, c) = {col.is_variable ? CellClass::Gray : CellClass::White, 0};
    // variable rows m+3..n+m+2
    for (int i = 1; i <= n; ++i) {
      GridCell cell{CellClass::Gray, 0};
      if (col.is_variable)
        cell = col.var == i ? GridCell{CellClass::Gadget, i}
                            : GridCell{CellClass::White, 0};
      grid.at(m + 1 + i, c) = cell;
    }
  }
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c)
      if (grid.at(r, c).cls == CellClass::Gadget)
        grid.gadgets[grid.at(r, c).color].emplace_back(r, c);
  return grid;
}

// Monotone (right/up/diagonal) path through passable cells from the
// lower-left to the upper-right corner.
inline bool monotone_path_exists(const FreeSpaceGrid& grid,
                                 const std::map<int, int>& chosen) {
  auto passable = [&](int r, int c) {
    const GridCell& cell = grid.at(r, c);
    if (cell.cls == CellClass::White) return true;
    if (cell.cls == CellClass::Gray) return false;
    auto it = chosen.find(cell.color);
    if (it == chosen.end()) return false;
    const auto& cells = grid.gadgets.at(cell.color);
    return cells[it->second] == std::make_pair(r, c);
  };
  std::vector<bool> reach(static_cast<std::size_t>(grid.rows) * grid.cols, false);
  auto idx = [&](int r, int c) { return static_cast<std::size_t>(r) * grid.cols + c; };
  for (int r = 0; r < grid.rows; ++r)
    for (int c = 0; c < grid.cols; ++c) {
      if (!passable(r, c)) continue;
      bool ok = (r == 0 && c == 0) ||
                (r > 0 && reach[idx(r - 1, c)]) ||
                (c > 0 && reach[idx(r, c - 1)]) ||
                (r > 0 && c > 0 && reach[idx(r - 1, c - 1)]);
      reach[idx(r, c)] = ok;
    }
  return reach[idx(grid.rows - 1, grid.cols - 1)];
}

// One passable cell per color such that no monotone path exists, or
// nullopt. The returned map is color -> index into grid.gadgets[color].
inline std::optional<std::map<int, int>> grid_blocking_choice(
    const FreeSpaceGrid& grid) {
  if (static_cast<int>(grid.gadgets.size()) > 12)
    throw std::invalid_argument("too many colors to enumerate");
  std::vector<int> colors;
  for (const auto& [color, cells] : grid.gadgets) colors.push_back(color);
  std::map<int, int> choice;
  for (int c : colors) choice[c] = 0;
  for (;;) {
    if (!monotone_path_exists(grid, choice)) return choice;
    std::size_t pos = 0;
    while (pos < colors.size()) {
      int c = colors[pos];
      if (++choice[c] < static_cast<int>(grid.gadgets.at(c).size())) break;
      choice[c] = 0;
      ++pos;
    }
    if (pos == colors.size()) break;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Geometric realization

struct GadgetGeometry {
  int color = 0;
  bool is_clause = false;
  int row = 0;                 // 0-based grid row
  std::vector<int> h_cols;     // columns of the gadget's precise points
  Point base_p, base_m;        // P / M (clause) or P' / M' (variable)
  std::vector<Point> s_points;  // closed-form circle intersections
};

struct LayoutConstants {
  int big_n = 0;        // N, even
  double theta = 0.0;
  double eps_prime = 0.0;   // radius of the P/M neighborhoods
  double eps_dprime = 0.0;  // rectangle width
  Point circle_center;
  std::vector<Point> p, m;    // P_i, M_i, i = 0..N
  std::vector<Point> pp, mp;  // reflections P'_i, M'_i
};

struct ReductionInstance {
  CnfFormula formula;
  double epsilon = 0.0;
  PointSeq h;    // 3m+2n precise points, one per grid column
  RegionSeq q;   // n+m+3 regions, one per grid row (Point or OrientedRect)
  FreeSpaceGrid intended;
  LayoutConstants layout;
  std::vector<GadgetGeometry> gadgets;  // one per color

  const GadgetGeometry* gadget_for_color(int color) const {
    for (const auto& g : gadgets)
      if (g.color == color) return &g;
    return nullptr;
  }
};

inline ReductionInstance realize_geometry(const CnfFormula& f, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  const int n = f.num_vars;
  const int m = static_cast<int>(f.clauses.size());

  ReductionInstance inst;
  inst.formula = f;
  inst.epsilon = epsilon;
  inst.intended = build_grid(f);

  LayoutConstants& lay = inst.layout;
  lay.big_n = std::max(m, n);
  if (lay.big_n % 2 == 1) ++lay.big_n;
  const int N = lay.big_n;
  constexpr double pi = 3.1415926535897932384626433832795;
  lay.theta = pi / (20.0 * N);
  const double r = epsilon / 2.0;
  lay.circle_center = Point(0.0, r);

  lay.p.resize(N + 1);
  lay.m.resize(N + 1);
  lay.pp.resize(N + 1);
  lay.mp.resize(N + 1);
  const double reflect_y = -0.75 * epsilon;
  for (int i = 0; i <= N; ++i) {
    double ang = -pi / 2.0 + (i - N / 2) * lay.theta;
    lay.p[i] = Point(r * std::cos(ang), r + r * std::sin(ang));
    lay.m[i] = Point(2.0 * lay.circle_center[0] - lay.p[i][0],
                     2.0 * lay.circle_center[1] - lay.p[i][1]);
    lay.pp[i] = Point(lay.p[i][0], 2.0 * reflect_y - lay.p[i][1]);
    lay.mp[i] = Point(lay.m[i][0], 2.0 * reflect_y - lay.m[i][1]);
  }

  // eps' = 1/2 min_{i != j} (eps - d(P_i, M_j))
  double min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      if (i != j)
        min_gap = std::min(min_gap, epsilon - euclid_dist(lay.p[i], lay.m[j]));
  lay.eps_prime = 0.5 * min_gap;
  const double ep = lay.eps_prime;
  // half the strict upper bound eps - sqrt(eps^2 - (eps'/3)^2)
  lay.eps_dprime =
      0.5 * (epsilon - std::sqrt(epsilon * epsilon - (ep / 3.0) * (ep / 3.0)));
  const double epp = lay.eps_dprime;
  const double u2 =
      std::sqrt(epsilon * epsilon - (ep / 3.0) * (ep / 3.0));
  const double u16 =
      std::sqrt(epsilon * epsilon - (ep / 6.0) * (ep / 6.0));

  const FreeSpaceGrid& grid = inst.intended;
  inst.h.resize(grid.cols);
  inst.q.resize(grid.rows);

  auto offset = [](const Point& base, double a, const Point& dir_u, double b,
                   const Point& dir_v) {
    return Point(base[0] + a * dir_u[0] + b * dir_v[0],
                 base[1] + a * dir_u[1] + b * dir_v[1]);
  };

  // clause gadgets (grid rows 2..m+1 use P_{row-2}, M_{row-2})
  for (int j = 1; j <= m; ++j) {
    const Point& P = lay.p[j - 1];
    const Point& M = lay.m[j - 1];
    Point uhat((M[0] - P[0]) / epsilon, (M[1] - P[1]) / epsilon);
    Point vhat(-uhat[1], uhat[0]);

    GadgetGeometry gg;
    gg.color = n + j;
    gg.is_clause = true;
    gg.row = j;  // 0-based
    gg.base_p = P;
    gg.base_m = M;
    for (const auto& [rr, cc] : grid.gadgets.at(gg.color)) gg.h_cols.push_back(cc);

    Point h1 = offset(P, 0.0, uhat, -ep / 3.0, vhat);
    Point h2 = P;
    Point h3 = offset(P, 0.0, uhat, ep / 3.0, vhat);
    inst.h[gg.h_cols[0]] = h1;
    inst.h[gg.h_cols[1]] = h2;
    inst.h[gg.h_cols[2]] = h3;

    gg.s_points.push_back(offset(P, u16, uhat, -ep / 6.0, vhat));  // s1
    gg.s_points.push_back(offset(P, u2, uhat, 0.0, vhat));         // s2
    gg.s_points.push_back(offset(P, u16, uhat, ep / 6.0, vhat));   // s3

    Point rc = offset(P, u2 + epp / 2.0, uhat, 0.0, vhat);
    inst.q[gg.row] = OrientedRect(rc, vhat[0], vhat[1], ep / 3.0, epp / 2.0);
    inst.gadgets.push_back(std::move(gg));
  }

  // variable gadgets (grid rows m+3..n+m+2 use P'_{i-1}, M'_{i-1})
  for (int i = 1; i <= n; ++i) {
    const Point& P = lay.pp[i - 1];
    const Point& M = lay.mp[i - 1];
    Point uhat((M[0] - P[0]) / epsilon, (M[1] - P[1]) / epsilon);
    Point vhat(-uhat[1], uhat[0]);

    GadgetGeometry gg;
    gg.color = i;
    gg.is_clause = false;
    gg.row = m + 1 + i;
    gg.base_p = P;
    gg.base_m = M;
    for (const auto& [rr, cc] : grid.gadgets.at(gg.color)) gg.h_cols.push_back(cc);

    inst.h[gg.h_cols[0]] = offset(P, 0.0, uhat, -ep / 3.0, vhat);
    inst.h[gg.h_cols[1]] = offset(P, 0.0, uhat, ep / 3.0, vhat);
    gg.s_points.push_back(offset(P, u2, uhat, 0.0, vhat));

    // sits fully below the two-circle intersection so coverage is strict
    Point rc = offset(P, u2 - epp, uhat, 0.0, vhat);
    inst.q[gg.row] = OrientedRect(rc, vhat[0], vhat[1], ep / 3.0, epp / 2.0);
    inst.gadgets.push_back(std::move(gg));
  }

  inst.q[0] = Point(0.0, -0.75 * epsilon);
  inst.q[grid.rows - 1] = Point(0.0, -0.75 * epsilon);
  inst.q[m + 1] = Point(0.0, 0.0);
  return inst;
}

// ---------------------------------------------------------------------------
// Cell classification and chain verification

struct GadgetWitnesses {
  // (color, column of the enabled precise point) -> adversarial placement
  std::map<std::pair<int, int>, Point> points;
};

// Classifies every (region, point) cell of the instance and verifies the
// gadget rows: union coverage plus an exclusive witness placement per
// gadget point. Throws on construction defects.
inline FreeSpaceGrid classify_cells(const ReductionInstance& inst,
                                    GadgetWitnesses* witnesses = nullptr,
                                    int resolution = 200) {
  const FreeSpaceGrid& intended = inst.intended;
  FreeSpaceGrid grid = intended;  // reuse layout metadata
  grid.gadgets.clear();
  const double eps = inst.epsilon;

  // per-row gadget color, derived from the row position alone
  auto row_color = [&](int r) -> int {
    int mm = grid.num_clauses;
    if (r >= 1 && r <= mm) return grid.num_vars + r;
    if (r >= mm + 2 && r <= mm + 1 + grid.num_vars) return r - mm - 1;
    return 0;
  };

  for (int rr = 0; rr < grid.rows; ++rr) {
    for (int cc = 0; cc < grid.cols; ++cc) {
      const Point& h = inst.h[cc];
      GridCell cell;
      if (const Point* qp = std::get_if<Point>(&inst.q[rr])) {
        cell = euclid_dist(*qp, h) <= eps ? GridCell{CellClass::White, 0}
                                          : GridCell{CellClass::Gray, 0};
      } else {
        const auto& rect = std::get<OrientedRect>(inst.q[rr]);
        DistRange range = rect_point_dist_range(rect, h);
        if (range.max <= eps) cell = {CellClass::White, 0};
        else if (range.min > eps) cell = {CellClass::Gray, 0};
        else {
          int color = row_color(rr);
          if (color == 0)
            throw std::runtime_error("construction defect: partial cell at (" +
                                     std::to_string(rr + 1) + "," +
                                     std::to_string(cc + 1) +
                                     ") outside gadget rows");
          cell = {CellClass::Gadget, color};
        }
      }
      grid.at(rr, cc) = cell;
      if (cell.cls == CellClass::Gadget)
        grid.gadgets[cell.color].emplace_back(rr, cc);
    }
  }

  // gadget verification: coverage and per-point exclusive witnesses
  for (const GadgetGeometry& gg : inst.gadgets) {
    const auto& rect = std::get<OrientedRect>(inst.q[gg.row]);
    std::vector<Point> centers;
    for (int c : gg.h_cols) centers.push_back(inst.h[c]);
    if (!rect_covered_by_disks(rect, centers, eps, resolution))
      throw std::runtime_error("construction defect: gadget row " +
                               std::to_string(gg.row + 1) +
                               " not covered by its circles");
    for (std::size_t target = 0; target < centers.size(); ++target) {
      bool found = false;
      for (int a = 0; a < resolution && !found; ++a) {
        for (int b = 0; b < resolution && !found; ++b) {
          Point qpt = rect.point_at(static_cast<double>(a) / (resolution - 1),
                                    static_cast<double>(b) / (resolution - 1));
          if (euclid_dist(qpt, centers[target]) > eps) continue;
          bool exclusive = true;
          for (std::size_t other = 0; other < centers.size(); ++other)
            if (other != target && euclid_dist(qpt, centers[other]) <= eps) {
              exclusive = false;
              break;
            }
          if (exclusive) {
            if (witnesses)
              witnesses->points[{gg.color, gg.h_cols[target]}] = qpt;
            found = true;
          }
        }
      }
      if (!found)
        throw std::runtime_error(
            "construction defect: no exclusive witness for gadget color " +
            std::to_string(gg.color) + " point column " +
            std::to_string(gg.h_cols[target] + 1));
    }
  }
  return grid;
}

struct ChainReport {
  bool satisfiable = false;
  bool iscpcs_blocking = false;
  bool grid_blocking = false;
  bool equivalence_ok = false;
  bool grid_match = false;
  bool witness_ok = true;      // vacuous when no blocking exists
  bool sampled_ok = true;      // vacuous when blocking exists
  double witness_dfd = 0.0;
  double max_sampled_dfd = 0.0;
  std::vector<std::string> issues;
  bool pass() const {
    return equivalence_ok && grid_match && witness_ok && sampled_ok;
  }
};

// Runs the full chain on one formula: SAT <=> ISCPCS blocking <=> grid
// blocking, classification against the intended grid, and either a
// certified adversarial realization (blocking) or sampled evidence for
// F^max <= eps (no blocking).
inline ChainReport verify_chain(const CnfFormula& f, double epsilon,
                                int sample_count = 100,
                                std::uint64_t seed = 1) {
  ChainReport rep;
  rep.satisfiable = sat_brute(f).has_value();
  rep.iscpcs_blocking = iscpcs_blocking_selection(build_iscpcs(f)).has_value();

  ReductionInstance inst = realize_geometry(f, epsilon);
  auto blocking = grid_blocking_choice(inst.intended);
  rep.grid_blocking = blocking.has_value();

  rep.equivalence_ok = (rep.satisfiable == rep.iscpcs_blocking) &&
                       (rep.satisfiable == rep.grid_blocking);
  if (!rep.equivalence_ok)
    rep.issues.push_back("SAT / ISCPCS / grid blocking verdicts disagree");

  GadgetWitnesses wit;
  FreeSpaceGrid classified = classify_cells(inst, &wit);
  rep.grid_match = classified.cells == inst.intended.cells;
  if (!rep.grid_match)
    rep.issues.push_back("classified grid differs from the intended grid");

  const FreeSpaceGrid& grid = inst.intended;
  if (blocking) {
    // assemble the adversarial realization from the witness placements
    PointSeq a(grid.rows);
    for (int rr = 0; rr < grid.rows; ++rr) {
      if (const Point* qp = std::get_if<Point>(&inst.q[rr])) {
        a[rr] = *qp;
      } else {
        int color = 0;
        for (const auto& [col, cells] : grid.gadgets)
          for (const auto& cell : cells)
            if (cell.first == rr) color = col;
        const auto& cells = grid.gadgets.at(color);
        int chosen_col = cells[blocking->at(color)].second;
        a[rr] = wit.points.at({color, chosen_col});
      }
    }
    rep.witness_dfd = dfd(a, inst.h).value;
    rep.witness_ok = rep.witness_dfd > epsilon;
    if (!rep.witness_ok)
      rep.issues.push_back("witness realization does not exceed epsilon");
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    rep.max_sampled_dfd = 0.0;
    for (int s = 0; s < sample_count; ++s) {
      PointSeq a(grid.rows);
      for (int rr = 0; rr < grid.rows; ++rr) {
        if (const Point* qp = std::get_if<Point>(&inst.q[rr]))
          a[rr] = *qp;
        else
          a[rr] = std::get<OrientedRect>(inst.q[rr]).point_at(unit(rng), unit(rng));
      }
      rep.max_sampled_dfd = std::max(rep.max_sampled_dfd, dfd(a, inst.h).value);
    }
    rep.sampled_ok = rep.max_sampled_dfd <= epsilon;
    if (!rep.sampled_ok)
      rep.issues.push_back("a sampled realization exceeded epsilon");
  }
  return rep;
}

}  // namespace fdi
