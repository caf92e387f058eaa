#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fdi/geom.hpp"
#include "fdi/oracle.hpp"
#include "fdi/reduction.hpp"

// JSON instance documents and the reduction-instance export format.
// Doubles are serialized at full round-trip precision.

namespace fdi {

using nlohmann::json;

struct InstanceDocument {
  int dim = 0;
  std::string u_type, w_type;  // "points" | "balls" | "rects"
  RegionSeq u, w;
  std::optional<double> epsilon;
  std::optional<double> delta;
};

namespace detail {

inline Point parse_point(const json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw std::invalid_argument("point with wrong dimension");
  Point p;
  for (const auto& v : j) p.coords.push_back(v.get<double>());
  return p;
}

inline json point_to_json(const Point& p) {
  json a = json::array();
  for (double v : p.coords) a.push_back(v);
  return a;
}

inline RegionSeq parse_regions(const json& j, int dim, std::string& type_out) {
  if (!j.contains("type") || !j.contains("items"))
    throw std::invalid_argument("region list needs type and items");
  type_out = j["type"].get<std::string>();
  const json& items = j["items"];
  if (!items.is_array() || items.empty())
    throw std::invalid_argument("region list must be nonempty");
  RegionSeq out;
  for (const auto& it : items) {
    if (type_out == "points") {
      out.emplace_back(parse_point(it, dim));
    } else if (type_out == "balls") {
      out.emplace_back(Ball(parse_point(it["center"], dim),
                            it["radius"].get<double>()));
    } else if (type_out == "rects") {
      if (dim != 2) throw std::invalid_argument("rects require dim = 2");
      Point ax = parse_point(it["axis"], 2);
      out.emplace_back(OrientedRect(parse_point(it["center"], 2), ax[0], ax[1],
                                    it["length"].get<double>() / 2.0,
                                    it["width"].get<double>() / 2.0));
    } else {
      throw std::invalid_argument("unknown region type: " + type_out);
    }
  }
  return out;
}

inline json regions_to_json(const RegionSeq& regions, const std::string& type) {
  json items = json::array();
  for (const Region& r : regions) {
    if (type == "points") {
      items.push_back(point_to_json(std::get<Point>(r)));
    } else if (type == "balls") {
      const Ball& b = std::get<Ball>(r);
      items.push_back({{"center", point_to_json(b.center)}, {"radius", b.radius}});
    } else {
      const OrientedRect& rc = std::get<OrientedRect>(r);
      items.push_back({{"center", point_to_json(rc.center)},
                       {"axis", json::array({rc.axis_x, rc.axis_y})},
                       {"length", 2.0 * rc.half_length},
                       {"width", 2.0 * rc.half_width}});
    }
  }
  return {{"type", type}, {"items", items}};
}

}  // namespace detail

inline InstanceDocument parse_instance(const json& j) {
  InstanceDocument doc;
  if (!j.contains("dim") || !j.contains("U") || !j.contains("W"))
    throw std::invalid_argument("instance needs dim, U and W");
  doc.dim = j["dim"].get<int>();
  if (doc.dim < 1) throw std::invalid_argument("dim must be >= 1");
  doc.u = detail::parse_regions(j["U"], doc.dim, doc.u_type);
  doc.w = detail::parse_regions(j["W"], doc.dim, doc.w_type);
  if (j.contains("epsilon")) doc.epsilon = j["epsilon"].get<double>();
  if (j.contains("delta")) doc.delta = j["delta"].get<double>();
  return doc;
}

inline json instance_to_json(const InstanceDocument& doc) {
  json j = {{"dim", doc.dim},
            {"U", detail::regions_to_json(doc.u, doc.u_type)},
            {"W", detail::regions_to_json(doc.w, doc.w_type)}};
  if (doc.epsilon) j["epsilon"] = *doc.epsilon;
  if (doc.delta) j["delta"] = *doc.delta;
  return j;
}

// --------------------------------------------------------------------------
// Reduction-instance export

inline std::string cell_code(const GridCell& c) {
  switch (c.cls) {
    case CellClass::White: return "W";
    case CellClass::Gray: return "G";
    default: return "g" + std::to_string(c.color);
  }
}

inline json reduction_to_json(const ReductionInstance& inst) {
  json cnf_clauses = json::array();
  for (const auto& cl : inst.formula.clauses)
    cnf_clauses.push_back(json::array({cl[0], cl[1], cl[2]}));

  json h = json::array();
  for (const Point& p : inst.h) h.push_back(detail::point_to_json(p));

  json q = json::array();
  for (const Region& r : inst.q) {
    if (const Point* p = std::get_if<Point>(&r)) {
      q.push_back({{"type", "point"}, {"coords", detail::point_to_json(*p)}});
    } else {
      const OrientedRect& rc = std::get<OrientedRect>(r);
      q.push_back({{"type", "rect"},
                   {"center", detail::point_to_json(rc.center)},
                   {"axis", json::array({rc.axis_x, rc.axis_y})},
                   {"length", 2.0 * rc.half_length},
                   {"width", 2.0 * rc.half_width}});
    }
  }

  json grid = json::array();
  for (const GridCell& c : inst.intended.cells) grid.push_back(cell_code(c));

  auto pts = [](const std::vector<Point>& v) {
    json a = json::array();
    for (const Point& p : v) a.push_back(detail::point_to_json(p));
    return a;
  };
  json layout = {{"N", inst.layout.big_n},
                 {"theta", inst.layout.theta},
                 {"eps_prime", inst.layout.eps_prime},
                 {"eps_dprime", inst.layout.eps_dprime},
                 {"circle_center", detail::point_to_json(inst.layout.circle_center)},
                 {"P", pts(inst.layout.p)},
                 {"M", pts(inst.layout.m)},
                 {"P_reflected", pts(inst.layout.pp)},
                 {"M_reflected", pts(inst.layout.mp)}};

  return {{"epsilon", inst.epsilon},
          {"cnf", {{"num_vars", inst.formula.num_vars}, {"clauses", cnf_clauses}}},
          {"rows", inst.intended.rows},
          {"cols", inst.intended.cols},
          {"H", h},
          {"Q", q},
          {"grid", grid},
          {"layout", layout}};
}

// Re-parses an exported reduction instance. The construction is
// deterministic in (cnf, epsilon); the emitted geometry is checked
// against the reconstruction.
inline ReductionInstance reduction_from_json(const json& j) {
  CnfFormula f;
  f.num_vars = j.at("cnf").at("num_vars").get<int>();
  for (const auto& cl : j.at("cnf").at("clauses"))
    f.clauses.push_back({cl[0].get<int>(), cl[1].get<int>(), cl[2].get<int>()});
  ReductionInstance inst = realize_geometry(f, j.at("epsilon").get<double>());
  json round_trip = reduction_to_json(inst);
  if (round_trip.at("H") != j.at("H") || round_trip.at("grid") != j.at("grid"))
    throw std::invalid_argument("reduction document does not match its formula");
  return inst;
}

// Plain-text art, top row first: W for white, '.' for gray, a base-36
// digit for each gadget color.
inline std::string grid_to_art(const FreeSpaceGrid& grid) {
  std::string out;
  for (int r = grid.rows - 1; r >= 0; --r) {
    for (int c = 0; c < grid.cols; ++c) {
      const GridCell& cell = grid.at(r, c);
      if (cell.cls == CellClass::White) out += 'W';
      else if (cell.cls == CellClass::Gray) out += '.';
      else {
        int col = cell.color;
        out += col <= 9 ? static_cast<char>('0' + col)
                        : static_cast<char>('a' + col - 10);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace fdi
