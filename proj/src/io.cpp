#include "gstatics/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gstatics/lifting.hpp"
#include "gstatics/reciprocal.hpp"
#include "gstatics/statics.hpp"

namespace gstatics {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw StaticsError(ErrorCode::SchemaError, msg); }

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(std::string("missing key '") + key + "'");
  return *it;
}

void only_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) schema(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items())
    if (!ok.count(k)) schema("unknown key '" + k + "' in " + where);
}

std::vector<std::string> id_list(const Json& arr, const std::string& where) {
  if (!arr.is_array()) schema(where + " must be an array of ids");
  std::vector<std::string> out;
  for (const auto& x : arr) {
    if (!x.is_string()) schema(where + " must contain strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Vec2 point(const Json& x, const std::string& where) {
  if (!x.is_array() || x.size() != 2 || !x[0].is_number() || !x[1].is_number())
    schema(where + " must be a pair of numbers");
  return {x[0].get<double>(), x[1].get<double>()};
}

Json pair(const Vec2& p) { return Json::array({p.x(), p.y()}); }

}  // namespace

DiagramFile parse_diagram(const Json& doc) {
  only_keys(doc, {"dimension", "closed", "cells", "incidence", "realization", "open_edge_directions", "spring_constants"},
            "diagram");
  const auto& dim = field(doc, "dimension");
  if (!dim.is_number_integer() || dim.get<long>() < 0 || dim.get<long>() > 2) schema("dimension must be 0, 1 or 2");
  const auto& closed = field(doc, "closed");
  if (!closed.is_boolean()) schema("closed must be a boolean");

  const auto& cells = field(doc, "cells");
  only_keys(cells, {"vertices", "edges", "faces"}, "cells");
  std::vector<Cell> all;
  const char* names[3] = {"vertices", "edges", "faces"};
  for (int d = 0; d < 3; ++d) {
    if (!cells.contains(names[d])) continue;
    const auto ids = id_list(cells.at(names[d]), std::string("cells.") + names[d]);
    if (!ids.empty() && d > dim.get<long>()) schema(std::string(names[d]) + " exceed the declared dimension");
    for (const auto& id : ids) all.push_back({id, d});
  }

  const auto& inc = field(doc, "incidence");
  if (!inc.is_array()) schema("incidence must be an array");
  std::vector<Incidence> incidence;
  for (const auto& row : inc) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_string() || !row[1].is_string() ||
        !row[2].is_number_integer())
      schema("incidence entries must be [lower, upper, sign]");
    const long s = row[2].get<long>();
    if (s != 1 && s != -1) schema("incidence sign must be +1 or -1");
    incidence.push_back({row[0].get<std::string>(), row[1].get<std::string>(), int(s)});
  }
  auto cx = std::make_shared<const CellComplex>(std::move(all), std::move(incidence), closed.get<bool>());

  const auto& real = field(doc, "realization");
  if (!real.is_object()) schema("realization must be an object");
  std::vector<Vec2> pos(cx->count(0));
  for (const auto& [k, v] : real.items()) {
    auto ref = cx->find(k);
    if (!ref || ref->dim != 0) schema("realization names unknown vertex '" + k + "'");
    pos[ref->index] = point(v, "realization." + k);
  }
  if (static_cast<Index>(real.size()) != cx->count(0)) schema("realization must give every vertex a position");

  std::map<Index, Vec2> dirs;
  if (doc.contains("open_edge_directions")) {
    const auto& od = doc.at("open_edge_directions");
    if (!od.is_object()) schema("open_edge_directions must be an object");
    for (const auto& [k, v] : od.items()) {
      auto ref = cx->find(k);
      if (!ref || ref->dim != 1) schema("open_edge_directions names unknown edge '" + k + "'");
      dirs[ref->index] = point(v, "open_edge_directions." + k);
    }
  }

  SpringConstants springs;
  if (doc.contains("spring_constants")) {
    const auto& sc = doc.at("spring_constants");
    if (!sc.is_object()) schema("spring_constants must be an object");
    for (const auto& [k, v] : sc.items()) {
      auto ref = cx->find(k);
      if (!ref || ref->dim != 1) schema("spring_constants names unknown edge '" + k + "'");
      if (!v.is_number()) schema("spring constant for '" + k + "' must be a number");
      springs[ref->index] = v.get<double>();
    }
  }
  return {Diagram(cx, std::move(pos), std::move(dirs)), std::move(springs)};
}

DiagramFile parse_diagram(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  return parse_diagram(doc);
}

DiagramFile read_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str());
}

Json diagram_to_json(const Diagram& dg, const SpringConstants& springs) {
  const auto& cx = dg.complex();
  Json doc;
  doc["dimension"] = 2;
  doc["closed"] = cx.closed();
  doc["cells"] = {{"vertices", cx.ids(0)}, {"edges", cx.ids(1)}, {"faces", cx.ids(2)}};
  Json inc = Json::array();
  for (const auto& i : cx.incidence()) inc.push_back(Json::array({i.lower, i.upper, i.sign}));
  doc["incidence"] = std::move(inc);
  Json real = Json::object();
  for (Index v = 0; v < cx.count(0); ++v) real[cx.id(0, v)] = pair(dg.position(v));
  doc["realization"] = std::move(real);
  Json dirs = Json::object();
  for (const auto& [e, d] : dg.open_directions()) dirs[cx.id(1, e)] = pair(d);
  doc["open_edge_directions"] = std::move(dirs);
  if (!springs.empty()) {
    Json sc = Json::object();
    for (const auto& [e, k] : springs) sc[cx.id(1, e)] = k;
    doc["spring_constants"] = std::move(sc);
  }
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json to_json(const Matrix& columns) {
  Json out = Json::array();
  for (Index j = 0; j < columns.cols(); ++j) out.push_back(to_json(Vector(columns.col(j))));
  return out;
}

Json analyze(const Diagram& dg, const Tolerance& tol) {
  const auto& cx = dg.complex();
  Json out;
  Index open = 0;
  for (Index e = 0; e < cx.count(1); ++e) open += dg.is_open_edge(e) ? 1 : 0;
  out["cells"] = {{"vertices", cx.count(0)}, {"edges", cx.count(1)}, {"faces", cx.count(2)}, {"open_edges", open}};
  out["closed"] = cx.closed();
  if (cx.closed()) {
    out["euler_characteristic"] = euler_characteristic(cx);
    out["genus"] = genus(cx);
  }

  const auto force = force_cosheaf(dg);
  const auto bf = betti(force, tol);
  const auto pos = position_sheaf(dg);
  out["H0F"] = bf[0];
  out["H1F"] = bf[1];
  out["H0J"] = cohomology(pos, 0, tol).dimension();
  out["H1J"] = cohomology(pos, 1, tol).dimension();
  const auto emb = force_embedding(dg, tol);
  out["H2G"] = homology(*emb.quotient.quotient, 2, tol).dimension();
  const auto lift = lift_space(dg, tol);
  out["H2A"] = lift.lift_dim;

  const auto m = maxwell_rule_report(dg, tol);
  out["maxwell"] = {{"lhs", m.lhs},
                    {"rhs", m.rhs},
                    {"holds", m.holds},
                    {"rigid_motions", m.rigid_motions},
                    {"mechanisms", m.mechanisms},
                    {"self_stresses", m.self_stresses}};

  const auto stresses = self_stresses(dg, tol);
  Json sj = Json::array();
  for (const auto& s : stresses) sj.push_back(to_json(s.values));
  out["self_stresses"] = std::move(sj);
  out["reciprocal_stresses"] = to_json(reciprocal_stresses(dg, tol));
  out["liftable_stresses"] = to_json(liftable_stresses(dg, tol));
  Json mj = Json::array();
  for (const auto& mode : freedom_modes(dg, tol))
    mj.push_back({{"kind", to_string(mode.kind)}, {"displacement", to_json(mode.displacement)}});
  out["freedom_modes"] = std::move(mj);

  Json duals = Json::array(), lifts = Json::array();
  for (const auto& s : stresses) {
    try {
      const auto q = reciprocal_diagram(dg, s.values, Convention::Cremona, tol);
      Json pts = Json::object();
      for (Index f = 0; f < cx.count(2); ++f) pts[cx.id(2, f)] = pair(q.points[f]);
      duals.push_back(std::move(pts));
    } catch (const StaticsError& e) {
      duals.push_back({{"error", e.what()}});
    }
    try {
      const auto l = polyhedral_lift(dg, s.values, tol);
      Json fs = Json::object();
      for (Index f = 0; f < cx.count(2); ++f)
        fs[cx.id(2, f)] = Json::array({l.faces[f].x(), l.faces[f].y(), l.faces[f].z()});
      lifts.push_back(std::move(fs));
    } catch (const StaticsError& e) {
      lifts.push_back({{"error", e.what()}});
    }
  }
  out["dual_realizations"] = std::move(duals);
  out["lift_coefficients"] = std::move(lifts);

  out["lift_space"] = {{"dimension", lift.lift_dim}, {"mod_affine", lift.lift_dim_mod_affine}};
  if (cx.closed()) {
    const auto g = genus_existence_check(dg, tol);
    const auto lg = lift_genus_check(dg, tol);
    out["genus_bounds"] = {
        {"reciprocal",
         {{"bound", g.bound}, {"self_stresses", g.self_stress_dim}, {"guaranteed", g.guaranteed},
          {"nontrivial_dual_dim", g.nontrivial_dual_dim}}},
        {"lift",
         {{"bound", lg.bound}, {"self_stresses", lg.self_stress_dim}, {"guaranteed", lg.guaranteed},
          {"lift_dim_mod_affine", lg.lift_dim_mod_affine}}}};
  }
  return out;
}

}  // namespace gstatics
