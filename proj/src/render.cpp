#include "gstatics/render.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace gstatics {

namespace {

struct Box {
  Vec2 lo{1e300, 1e300};
  Vec2 hi{-1e300, -1e300};
  void add(const Vec2& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  double span() const { return std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9}); }
};

std::string num(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << (std::abs(x) < 5e-4 ? 0.0 : x);
  return os.str();
}

class Canvas {
 public:
  Canvas(const Box& box, Vec2 offset, double s) : box_(box), offset_(offset), s_(s) {}
  Vec2 map(const Vec2& p) const {
    return {offset_.x() + s_ * (p.x() - box_.lo.x()), offset_.y() + s_ * (box_.hi.y() - p.y())};
  }
  std::string line(const Vec2& a, const Vec2& b, const std::string& style) const {
    const Vec2 u = map(a), v = map(b);
    return "<line x1=\"" + num(u.x()) + "\" y1=\"" + num(u.y()) + "\" x2=\"" + num(v.x()) + "\" y2=\"" +
           num(v.y()) + "\" " + style + "/>\n";
  }
  double scale() const { return s_; }

 private:
  Box box_;
  Vec2 offset_;
  double s_;
};

Vec2 open_end(const Diagram& dg, Index e, double len) {
  const Index v = dg.complex().faces_of(1, e)[0].cell;
  const auto it = dg.open_directions().find(e);
  const Vec2 d = it == dg.open_directions().end() || it->second.norm() == 0 ? Vec2(0, 0) : it->second.normalized();
  return dg.position(v) + len * d;
}

std::pair<Vec2, Vec2> segment(const Diagram& dg, Index e, double open_len) {
  const auto vs = dg.complex().faces_of(1, e);
  if (vs.size() == 2) return {dg.position(vs[0].cell), dg.position(vs[1].cell)};
  return {dg.position(vs[0].cell), open_end(dg, e, open_len)};
}

}  // namespace

std::string render_svg(const Diagram& dg, const RenderOptions& opt) {
  const auto& cx = dg.complex();
  const double margin = 20;
  Box form;
  for (const auto& p : dg.positions()) form.add(p);
  const double open_len = 0.25 * form.span();
  for (Index e = 0; e < cx.count(1); ++e)
    if (dg.is_open_edge(e)) form.add(open_end(dg, e, open_len));

  Box dual;
  if (opt.dual)
    for (const auto& q : opt.dual->points) dual.add(q);

  const double panel = opt.dual ? (opt.width - 3 * margin) / 2 : opt.width - 2 * margin;
  const double s = panel / form.span();
  const Canvas fc(form, {margin, margin}, s);
  const double fh = s * (form.hi.y() - form.lo.y());
  double height = fh + 2 * margin;

  std::ostringstream os;
  std::ostringstream body;

  body << "<g id=\"form\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto [a, b] = segment(dg, e, open_len);
    body << fc.line(a, b, dg.is_open_edge(e) ? "stroke-dasharray=\"2 3\"" : "");
  }
  for (const auto& p : dg.positions()) {
    const Vec2 u = fc.map(p);
    body << "<circle cx=\"" << num(u.x()) << "\" cy=\"" << num(u.y()) << "\" r=\"2.5\" fill=\"black\"/>\n";
  }
  body << "</g>\n";

  if (opt.stress) {
    const Vector& w = *opt.stress;
    if (w.size() != cx.count(1)) throw StaticsError(ErrorCode::InvalidArgument, "stress needs one value per edge");
    const double wmax = w.size() ? w.cwiseAbs().maxCoeff() : 0.0;
    if (wmax > Tolerance{}.absolute) {
      body << "<g id=\"forces\" stroke-linecap=\"round\" opacity=\"0.8\">\n";
      for (Index e = 0; e < cx.count(1); ++e) {
        if (std::abs(w(e)) <= 1e-9 * wmax) continue;
        const auto [a, b] = segment(dg, e, open_len);
        const std::string colour = w(e) > 0 ? "#d62728" : "#1f77b4";
        body << fc.line(a, b, "stroke=\"" + colour + "\" stroke-width=\"" + num(1 + 5 * std::abs(w(e)) / wmax) + "\"");
      }
      body << "</g>\n";
    }
  }

  if (opt.dual) {
    const auto& q = opt.dual->points;
    if (static_cast<Index>(q.size()) != cx.count(2))
      throw StaticsError(ErrorCode::InvalidArgument, "dual realization needs one point per face");
    const double ds = panel / dual.span();
    const Canvas dc(dual, {2 * margin + panel, margin}, ds);
    height = std::max(height, ds * (dual.hi.y() - dual.lo.y()) + 2 * margin);
    body << "<g id=\"dual\" stroke=\"#555555\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\">\n";
    for (Index e = 0; e < cx.count(1); ++e) {
      const auto fs = cx.cofaces_of(1, e);
      if (fs.size() == 2) body << dc.line(q[fs[0].cell], q[fs[1].cell], "");
    }
    body << "</g>\n";
  }

  if (opt.rotations) {
    const Vector& r = *opt.rotations;
    if (r.size() != cx.count(1)) throw StaticsError(ErrorCode::InvalidArgument, "rotations need one value per edge");
    const double rmax = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    body << "<g id=\"rotations\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.2\">\n";
    for (Index e = 0; rmax > Tolerance{}.absolute && e < cx.count(1); ++e) {
      if (std::abs(r(e)) <= 1e-9 * rmax) continue;
      const Vec2 c = fc.map(dg.is_open_edge(e) ? dg.position(cx.faces_of(1, e)[0].cell) : dg.midpoint(e));
      const double rad = 4 + 8 * std::abs(r(e)) / rmax;
      const int sweep = r(e) > 0 ? 0 : 1;  // counterclockwise on screen for positive values
      body << "<path d=\"M " << num(c.x() + rad) << " " << num(c.y()) << " A " << num(rad) << " " << num(rad)
           << " 0 1 " << sweep << " " << num(c.x()) << " " << num(c.y() + (sweep ? rad : -rad)) << "\"/>\n";
    }
    body << "</g>\n";
  }

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(opt.width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(opt.width) << " " << num(height) << "\">\n"
     << body.str() << "</svg>\n";
  return os.str();
}

}  // namespace gstatics
