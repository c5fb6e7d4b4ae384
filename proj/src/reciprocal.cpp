#include "gstatics/reciprocal.hpp"

#include "detail/dual_tree.hpp"

namespace gstatics {

std::string to_string(Convention c) { return c == Convention::Cremona ? "cremona" : "maxwell"; }

Convention parse_convention(const std::string& s) {
  if (s == "cremona") return Convention::Cremona;
  if (s == "maxwell") return Convention::Maxwell;
  throw StaticsError(ErrorCode::InvalidArgument, "unknown convention '" + s + "'");
}

namespace {

Vec2 reference_direction(const Diagram& dg, Index e, Convention c) {
  const Vec2 d = edge_direction(dg, e);
  return c == Convention::Cremona ? d : quarter_turn(d);
}

// Per-edge directions of the dual diagram; edges of zero dual length fall
// back to the primal direction.
std::vector<Vec2> dual_directions(const Diagram& dg, const DualRealization& dual) {
  const auto& cx = dg.complex();
  const double cut = 1e-8 * std::max(dg.scale(), max_dual_edge_length(cx, dual));
  std::vector<Vec2> dirs;
  for (Index e = 0; e < cx.count(1); ++e) {
    Vec2 d = reference_direction(dg, e, dual.convention);
    const auto faces = cx.cofaces_of(1, e);
    if (faces.size() == 2) {
      // Dual edge ~e runs from the face with [e:f] = -1 to the one with [e:f] = +1.
      const auto& head = faces[0].sign > 0 ? faces[0] : faces[1];
      const auto& tail = faces[0].sign > 0 ? faces[1] : faces[0];
      const Vec2 v = dual.points[head.cell] - dual.points[tail.cell];
      if (v.norm() > cut) d = v.normalized();
    }
    dirs.push_back(d);
  }
  return dirs;
}

DualRealization as_cremona(const DualRealization& dual) {
  if (dual.convention == Convention::Cremona) return dual;
  DualRealization out = dual;
  for (auto& p : out.points) p = -quarter_turn(p);
  out.convention = Convention::Cremona;
  return out;
}

}  // namespace

double max_dual_edge_length(const CellComplex& cx, const DualRealization& dual) {
  double best = 0;
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto faces = cx.cofaces_of(1, e);
    if (faces.size() == 2)
      best = std::max(best, (dual.points.at(faces[0].cell) - dual.points.at(faces[1].cell)).norm());
  }
  return best;
}

Diagram dual_diagram(const Diagram& dg, const DualRealization& dual) {
  auto cx = std::make_shared<const CellComplex>(poincare_dual(dg.complex()));
  return Diagram(cx, dual.points);
}

DualRealization reciprocal_diagram(const Diagram& dg, const Vector& w, Convention convention, const Tolerance&) {
  const auto& cx = dg.complex();
  if (cx.closed()) {
    const auto report = validate(cx);
    if (!report.passed()) throw StaticsError(ErrorCode::NotClosedSurface, report.summary());
  }
  if (w.size() != cx.count(1)) throw StaticsError(ErrorCode::InvalidArgument, "one stress value per edge required");
  require_finite(w);

  const Index nf = cx.count(2);
  DualRealization out;
  out.convention = convention;
  out.points.assign(nf, Vec2::Zero());
  if (nf == 0) return out;

  std::vector<Vec2> dirs;
  for (Index e = 0; e < cx.count(1); ++e) dirs.push_back(reference_direction(dg, e, convention));
  const std::function<Vec2(Index)> jump = [&](Index e) { return Vec2(w(e) * dirs[e]); };
  out.points = detail::integrate_over_dual_tree<Vec2>(cx, jump, Vec2::Zero());

  double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  for (const auto& p : out.points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double residual = detail::closure_residual<Vec2>(cx, out.points, jump);
  if (residual > 1e-9 * scale)
    throw StaticsError(ErrorCode::NotACycle,
                       "dual diagram does not close (residual " + std::to_string(residual) + ")");
  return out;
}

Vector stress_from_dual(const Diagram& dg, const DualRealization& dual) {
  const auto& cx = dg.complex();
  Vector w = Vector::Zero(cx.count(1));
  for (Index e = 0; e < cx.count(1); ++e) {
    Vec2 jump = Vec2::Zero();
    for (const auto& f : cx.cofaces_of(1, e)) jump += f.sign * dual.points.at(f.cell);
    w(e) = reference_direction(dg, e, dual.convention).dot(jump);
  }
  return w;
}

ForceEmbedding force_embedding(const Diagram& dg, const Tolerance& tol) {
  auto force = std::make_shared<const CosheafData>(force_cosheaf(dg));
  auto ambient = std::make_shared<const CosheafData>(constant_cosheaf(dg.complex_ptr(), 2));
  CosheafMapData phi(
      force, ambient,
      [&](int d, Index c) -> Matrix {
        if (d == 0) return Matrix::Identity(2, 2);
        return Matrix(edge_direction(dg, c));
      },
      tol);
  auto quotient = quotient_cosheaf(phi, tol);
  return ForceEmbedding{std::move(force), std::move(ambient), std::move(phi), std::move(quotient)};
}

Vector stress_via_connecting_map(const ForceEmbedding& emb, const DualRealization& dual, const Tolerance& tol) {
  const Index nf = emb.ambient->base().count(2);
  Vector y(2 * nf);
  for (Index f = 0; f < nf; ++f) {
    const Vec2 p = dual.convention == Convention::Cremona ? dual.points.at(f) : Vec2(-quarter_turn(dual.points.at(f)));
    y.segment<2>(2 * f) = p;
  }
  const Vector z = emb.quotient.projection.chain_map(2) * y;
  return connecting_homomorphism(emb.phi, emb.quotient.projection, 2, z, tol).chain;
}

GenusCheck genus_existence_check(const Diagram& dg, const Tolerance& tol) {
  GenusCheck out;
  out.genus = genus(dg.complex());
  out.bound = 4 * out.genus;
  const auto emb = force_embedding(dg, tol);
  out.self_stress_dim = homology(*emb.force, 1, tol).dimension();
  out.guaranteed = out.self_stress_dim > out.bound;

  const auto h2 = homology(*emb.quotient.quotient, 2, tol);
  out.nontrivial_dual_dim = std::max<Index>(0, h2.dimension() - 2);
  const auto& cx = dg.complex();
  const Index nf = cx.count(2);
  double best = 0;
  for (Index j = 0; j < h2.dimension(); ++j) {
    // Face stalks of G are all of R^2 (identity basis), so a 2-cycle is a point per face.
    DualRealization q;
    Vec2 mean = Vec2::Zero();
    for (Index f = 0; f < nf; ++f) {
      q.points.push_back(emb.quotient.projection.component(2, f).transpose() * h2.basis.col(j).segment<2>(2 * f));
      mean += q.points.back();
    }
    for (auto& p : q.points) p -= mean / double(nf);
    const double len = max_dual_edge_length(cx, q);
    if (len > best) {
      best = len;
      out.witness_stress = stress_from_dual(dg, q);
    }
  }
  if (best > 1e-8) out.witness = reciprocal_diagram(dg, out.witness_stress, Convention::Cremona, tol);
  return out;
}

Matrix reciprocal_stresses(const Diagram& dg, const Tolerance& tol) {
  const auto& cx = dg.complex();
  const auto emb = force_embedding(dg, tol);
  const auto h2 = homology(*emb.quotient.quotient, 2, tol);
  Matrix stresses(cx.count(1), h2.dimension());
  for (Index j = 0; j < h2.dimension(); ++j) {
    DualRealization q;
    for (Index f = 0; f < cx.count(2); ++f)
      q.points.push_back(emb.quotient.projection.component(2, f).transpose() * h2.basis.col(j).segment<2>(2 * f));
    stresses.col(j) = stress_from_dual(dg, q);
  }
  return range_basis(stresses, tol);
}

EdgeRotationCochain transfer_mechanism(const Diagram& dg, const DualRealization& dual, const FreedomMode& mode,
                                       const Tolerance& tol) {
  const auto& cx = dg.complex();
  if (mode.displacement.size() != 2 * cx.count(0))
    throw StaticsError(ErrorCode::InvalidArgument, "mode has the wrong length");
  const auto emb = force_embedding(dg, tol);
  const auto h0 = homology(*emb.force, 0, tol);

  // Keep the part of the mode with zero net displacement (the kernel of H_0 F -> R^2).
  Vector m = h0.basis * h0.coordinates(mode.displacement);
  Matrix t = Matrix::Zero(m.size(), 2);
  for (Index v = 0; v < cx.count(0); ++v) t(2 * v, 0) = t(2 * v + 1, 1) = 1;
  t /= std::sqrt(double(std::max<Index>(1, cx.count(0))));
  m -= t * (t.transpose() * m);

  const auto& g = *emb.quotient.quotient;
  const auto h1g = homology(g, 1, tol);
  Matrix theta(h0.dimension(), h1g.dimension());
  for (Index j = 0; j < h1g.dimension(); ++j)
    theta.col(j) = connecting_homomorphism(emb.phi, emb.quotient.projection, 1, h1g.basis.col(j), tol).coordinates;
  Vector z = Vector::Zero(g.chain_dim(1));
  if (h1g.dimension() > 0) z = h1g.basis * least_squares_solve(theta, h0.coordinates(m), tol).x;

  const auto dirs = dual_directions(dg, as_cremona(dual));
  EdgeRotationCochain out;
  out.values = Vector::Zero(cx.count(1));
  for (Index e = 0; e < cx.count(1); ++e) {
    if (g.stalk_dim(1, e) == 0) continue;
    const Vec2 v = emb.quotient.projection.component(1, e).transpose() * z.segment(g.offset(1, e), 1);
    out.values(e) = quarter_turn(dirs[e]).dot(v);
  }
  auto dual_cx = std::make_shared<const CellComplex>(poincare_dual(cx));
  const auto h1 = cohomology(position_sheaf(dual_cx, dirs), 1, tol);
  out.harmonic = h1.coordinates(out.values);
  out.harmonic_norm = out.harmonic.norm();
  return out;
}

Vector quarter_turn(const Vector& x) {
  if (x.size() % 2 != 0) throw StaticsError(ErrorCode::InvalidArgument, "pointwise vector needs even length");
  Vector y(x.size());
  for (Index i = 0; i < x.size(); i += 2) {
    y(i) = -x(i + 1);
    y(i + 1) = x(i);
  }
  return y;
}

DualRealization quarter_turn(const DualRealization& dual) {
  DualRealization out = dual;
  for (auto& p : out.points) p = quarter_turn(p);
  out.convention = dual.convention == Convention::Cremona ? Convention::Maxwell : Convention::Cremona;
  return out;
}

bool ReciprocityReport::all_equal() const {
  const Index a = mechanisms_and_rotations;
  return parallel_deformations == a && impossible_rotations == a && self_shear == a && dual_self_stress == a;
}

ReciprocityReport reciprocity_report(const Diagram& dg, const DualRealization& dual, const Tolerance& tol) {
  const auto& cx = dg.complex();
  if (!cx.closed() || genus(cx) != 0)
    throw StaticsError(ErrorCode::NotClosedSurface, "reciprocity report needs a spherical diagram");
  if (static_cast<Index>(dual.points.size()) != cx.count(2))
    throw StaticsError(ErrorCode::InvalidArgument, "one dual point per face required");
  ReciprocityReport rep;
  rep.mechanisms_and_rotations = homology(force_cosheaf(dg), 0, tol).dimension() - 2;
  rep.parallel_deformations = cohomology(position_sheaf(dg), 0, tol).dimension() - 2;

  const auto dirs = dual_directions(dg, as_cremona(dual));
  auto dual_cx = std::make_shared<const CellComplex>(poincare_dual(cx));
  const auto position = position_sheaf(dual_cx, dirs);
  rep.impossible_rotations = cohomology(position, 1, tol).dimension();
  rep.self_shear = homology(linear_dual(position), 1, tol).dimension();
  rep.dual_self_stress = homology(force_cosheaf(dual_cx, dirs), 1, tol).dimension();
  return rep;
}

}  // namespace gstatics
