#include "gstatics/sheaf.hpp"

#include <sstream>

namespace gstatics {

namespace {

std::string shape(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

CosheafData::CosheafData(std::shared_ptr<const CellComplex> base, Variance variance,
                         std::array<std::vector<Index>, 3> stalk_dims, const MapFn& maps)
    : base_(std::move(base)), variance_(variance), stalks_(std::move(stalk_dims)) {
  if (!base_) throw StaticsError(ErrorCode::InvalidArgument, "cosheaf without base complex");
  for (int d = 0; d < 3; ++d) {
    if (static_cast<Index>(stalks_[d].size()) != base_->count(d))
      throw StaticsError(ErrorCode::InvalidArgument, "one stalk dimension per cell required");
    offsets_[d].resize(stalks_[d].size());
    Index acc = 0;
    for (std::size_t i = 0; i < stalks_[d].size(); ++i) {
      if (stalks_[d][i] < 0) throw StaticsError(ErrorCode::InvalidArgument, "negative stalk dimension");
      offsets_[d][i] = acc;
      acc += stalks_[d][i];
    }
    totals_[d] = acc;
  }
  for (int d = 1; d < 3; ++d) {
    maps_[d].resize(base_->count(d));
    for (Index u = 0; u < base_->count(d); ++u) {
      for (const auto& link : base_->faces_of(d, u)) {
        const Index lo = stalks_[d - 1][link.cell], hi = stalks_[d][u];
        const Index rows = variance_ == Variance::Cosheaf ? lo : hi;
        const Index cols = variance_ == Variance::Cosheaf ? hi : lo;
        Matrix m = (lo > 0 && hi > 0) ? maps(d, u, link.cell) : Matrix::Zero(rows, cols);
        if (m.rows() != rows || m.cols() != cols)
          throw StaticsError(ErrorCode::InvalidArgument,
                             "map " + base_->id(d - 1, link.cell) + "/" + base_->id(d, u) + " has shape " +
                                 shape(m) + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
        require_finite(m);
        maps_[d][u].push_back(std::move(m));
      }
    }
  }
}

const Matrix& CosheafData::map(int upper_dim, Index upper, Index lower) const {
  const auto links = base_->faces_of(upper_dim, upper);
  for (std::size_t k = 0; k < links.size(); ++k)
    if (links[k].cell == lower) return maps_[upper_dim][upper][k];
  throw StaticsError(ErrorCode::InvalidArgument, "cells are not incident");
}

Matrix ChainComplexData::outgoing(int degree) const {
  if (variance == Variance::Cosheaf) return degree == 0 ? Matrix(0, dims[0]) : maps.at(degree);
  return degree == 2 ? Matrix(0, dims[2]) : maps.at(degree);
}

Matrix ChainComplexData::incoming(int degree) const {
  if (variance == Variance::Cosheaf) return degree == 2 ? Matrix(dims[2], 0) : maps.at(degree + 1);
  return degree == 0 ? Matrix(dims[0], 0) : maps.at(degree - 1);
}

ChainComplexData assemble_chain_complex(const CosheafData& k, const Tolerance&) {
  ChainComplexData out;
  out.variance = k.variance();
  const auto& cx = k.base();
  for (int d = 0; d < 3; ++d) out.dims[d] = k.chain_dim(d);
  const bool co = k.variance() == Variance::Cosheaf;
  if (co)
    out.maps[0] = Matrix(0, out.dims[0]);
  else
    out.maps[2] = Matrix(0, out.dims[2]);
  for (int d = 1; d < 3; ++d) {
    Matrix m = co ? Matrix::Zero(out.dims[d - 1], out.dims[d]) : Matrix::Zero(out.dims[d], out.dims[d - 1]);
    for (Index u = 0; u < cx.count(d); ++u) {
      const auto links = cx.faces_of(d, u);
      const auto& maps = k.maps_of(d, u);
      for (std::size_t j = 0; j < links.size(); ++j) {
        const auto& blk = maps[j];
        if (blk.size() == 0) continue;
        const double s = links[j].sign;
        if (co)
          m.block(k.offset(d - 1, links[j].cell), k.offset(d, u), blk.rows(), blk.cols()) += s * blk;
        else
          m.block(k.offset(d, u), k.offset(d - 1, links[j].cell), blk.rows(), blk.cols()) += s * blk;
      }
    }
    out.maps[co ? d : d - 1] = std::move(m);
  }
  const Matrix& a = out.maps[1];
  const Matrix& b = co ? out.maps[2] : out.maps[0];
  if (a.size() > 0 && b.size() > 0) {
    const double residual = (a * b).norm();
    if (residual > 1e-12 * std::max(1.0, a.norm() * b.norm()))
      throw StaticsError(ErrorCode::BoundarySquareNonzero,
                         "boundary composed with boundary is nonzero (" + std::to_string(residual) + ")");
  }
  return out;
}

HomologySpace homology(const ChainComplexData& chains, int degree, const Tolerance& tol) {
  if (degree < 0 || degree > 2) throw StaticsError(ErrorCode::InvalidArgument, "degree must be 0, 1 or 2");
  HomologySpace h;
  h.degree = degree;
  h.variance = chains.variance;
  const Matrix out = chains.outgoing(degree);
  const Matrix kernel = out.rows() == 0 ? Matrix(Matrix::Identity(chains.dims[degree], chains.dims[degree]))
                                        : kernel_basis(out, tol);
  h.basis = quotient_basis(kernel, chains.incoming(degree), tol);
  return h;
}

HomologySpace homology(const CosheafData& k, int degree, const Tolerance& tol) {
  if (k.is_sheaf()) throw StaticsError(ErrorCode::InvalidArgument, "homology of a sheaf: use cohomology");
  return homology(assemble_chain_complex(k, tol), degree, tol);
}

HomologySpace cohomology(const CosheafData& k, int degree, const Tolerance& tol) {
  if (!k.is_sheaf()) throw StaticsError(ErrorCode::InvalidArgument, "cohomology of a cosheaf: use homology");
  return homology(assemble_chain_complex(k, tol), degree, tol);
}

std::array<Index, 3> betti(const CosheafData& k, const Tolerance& tol) {
  const auto chains = assemble_chain_complex(k, tol);
  std::array<Index, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = homology(chains, i, tol).dimension();
  return out;
}

CosheafData constant_cosheaf(std::shared_ptr<const CellComplex> base, Index dim) {
  if (dim < 1) throw StaticsError(ErrorCode::InvalidArgument, "constant cosheaf needs dim >= 1");
  std::array<std::vector<Index>, 3> stalks;
  for (int d = 0; d < 3; ++d) stalks[d].assign(base->count(d), dim);
  return CosheafData(std::move(base), Variance::Cosheaf, std::move(stalks),
                     [dim](int, Index, Index) { return Matrix(Matrix::Identity(dim, dim)); });
}

CosheafData linear_dual(const CosheafData& k) {
  const Variance flipped = k.is_sheaf() ? Variance::Cosheaf : Variance::Sheaf;
  std::array<std::vector<Index>, 3> stalks{k.stalk_dims(0), k.stalk_dims(1), k.stalk_dims(2)};
  return CosheafData(k.base_ptr(), flipped, std::move(stalks),
                     [&k](int d, Index u, Index l) { return Matrix(k.map(d, u, l).transpose()); });
}

CosheafData poincare_dual_cosheaf(const CosheafData& k) {
  auto dual = std::make_shared<const CellComplex>(poincare_dual(k.base()));
  const Variance flipped = k.is_sheaf() ? Variance::Cosheaf : Variance::Sheaf;
  std::array<std::vector<Index>, 3> stalks{k.stalk_dims(2), k.stalk_dims(1), k.stalk_dims(0)};
  // Dual cell (dim D, index i) is the original cell (dim 2-D, index i); the
  // dual pair (lower l < upper u) is the original pair (lower u < upper l).
  return CosheafData(std::move(dual), flipped, std::move(stalks),
                     [&k](int d, Index u, Index l) { return k.map(3 - d, l, u); });
}

// ---------------------------------------------------------------------------

CosheafMapData::CosheafMapData(std::shared_ptr<const CosheafData> source, std::shared_ptr<const CosheafData> target,
                               const ComponentFn& components, const Tolerance& tol)
    : source_(std::move(source)), target_(std::move(target)) {
  if (!source_ || !target_) throw StaticsError(ErrorCode::InvalidArgument, "cosheaf map needs source and target");
  if (source_->variance() != target_->variance())
    throw StaticsError(ErrorCode::InvalidArgument, "cosheaf map between different variances");
  const auto& cx = source_->base();
  for (int d = 0; d < 3; ++d)
    if (cx.count(d) != target_->base().count(d))
      throw StaticsError(ErrorCode::InvalidArgument, "cosheaf map between different base complexes");
  for (int d = 0; d < 3; ++d) {
    components_[d].reserve(cx.count(d));
    for (Index c = 0; c < cx.count(d); ++c) {
      const Index rows = target_->stalk_dim(d, c), cols = source_->stalk_dim(d, c);
      Matrix m = (rows > 0 && cols > 0) ? components(d, c) : Matrix::Zero(rows, cols);
      if (m.rows() != rows || m.cols() != cols)
        throw StaticsError(ErrorCode::InvalidArgument, "component at " + cx.id(d, c) + " has shape " + shape(m));
      require_finite(m);
      components_[d].push_back(std::move(m));
    }
  }
  const double r = commutativity_residual();
  if (r > 1e3 * tol.relative)
    throw StaticsError(ErrorCode::InvalidArgument, "cosheaf map does not commute (residual " + std::to_string(r) + ")");
}

double CosheafMapData::commutativity_residual() const {
  const auto& cx = source_->base();
  double worst = 0;
  for (int d = 1; d < 3; ++d)
    for (Index u = 0; u < cx.count(d); ++u)
      for (const auto& link : cx.faces_of(d, u)) {
        const Matrix& ks = source_->map(d, u, link.cell);
        const Matrix& kt = target_->map(d, u, link.cell);
        const Matrix& pl = components_[d - 1][link.cell];
        const Matrix& pu = components_[d][u];
        Matrix diff;
        double scale = 1.0;
        if (source_->variance() == Variance::Cosheaf) {
          diff = pl * ks - kt * pu;
          scale = std::max(1.0, pl.norm() * ks.norm() + kt.norm() * pu.norm());
        } else {
          diff = pu * ks - kt * pl;
          scale = std::max(1.0, pu.norm() * ks.norm() + kt.norm() * pl.norm());
        }
        if (diff.size() > 0) worst = std::max(worst, diff.norm() / scale);
      }
  return worst;
}

Matrix CosheafMapData::chain_map(int degree) const {
  Matrix m = Matrix::Zero(target_->chain_dim(degree), source_->chain_dim(degree));
  const auto& cx = source_->base();
  for (Index c = 0; c < cx.count(degree); ++c) {
    const Matrix& blk = components_[degree][c];
    if (blk.size() > 0)
      m.block(target_->offset(degree, c), source_->offset(degree, c), blk.rows(), blk.cols()) = blk;
  }
  return m;
}

QuotientCosheaf quotient_cosheaf(const CosheafMapData& map, const Tolerance& tol) {
  const auto& tgt = map.target();
  if (tgt.is_sheaf()) throw StaticsError(ErrorCode::InvalidArgument, "quotient of sheaves is not supported");
  const auto& cx = tgt.base();
  std::array<std::vector<Matrix>, 3> q;
  std::array<std::vector<Index>, 3> stalks;
  for (int d = 0; d < 3; ++d)
    for (Index c = 0; c < cx.count(d); ++c) {
      const Matrix& phi = map.component(d, c);
      if (rank(phi, tol) < phi.cols())
        throw StaticsError(ErrorCode::NotInjective, "cosheaf map is not injective on the stalk of " + cx.id(d, c));
      q[d].push_back(complement_basis(phi, tol));
      stalks[d].push_back(q[d].back().cols());
    }
  auto quotient = std::make_shared<const CosheafData>(
      tgt.base_ptr(), Variance::Cosheaf, std::move(stalks),
      [&](int d, Index u, Index l) { return Matrix(q[d - 1][l].transpose() * tgt.map(d, u, l) * q[d][u]); });
  CosheafMapData projection(map.target_ptr(), quotient,
                            [&](int d, Index c) { return Matrix(q[d][c].transpose()); }, tol);
  return {std::move(quotient), std::move(projection)};
}

void require_short_exact(const CosheafMapData& phi, const CosheafMapData& pi, const Tolerance& tol) {
  const auto& cx = phi.source().base();
  for (int d = 0; d < 3; ++d)
    if (phi.target().chain_dim(d) != pi.source().chain_dim(d))
      throw StaticsError(ErrorCode::NotExact, "maps do not compose");
  for (int d = 0; d < 3; ++d)
    for (Index c = 0; c < cx.count(d); ++c) {
      const Matrix& f = phi.component(d, c);
      const Matrix& p = pi.component(d, c);
      const Index k = f.cols(), l = f.rows(), m = p.rows();
      if (p.cols() != l) throw StaticsError(ErrorCode::NotExact, "stalk dimensions disagree at " + cx.id(d, c));
      if (k + m != l || rank(f, tol) != k || rank(p, tol) != m)
        throw StaticsError(ErrorCode::NotExact, "sequence is not exact at the stalk of " + cx.id(d, c));
      if (k > 0 && m > 0 && (p * f).norm() > 1e3 * tol.relative * std::max(1.0, p.norm() * f.norm()))
        throw StaticsError(ErrorCode::NotExact, "composite is nonzero at the stalk of " + cx.id(d, c));
    }
}

ConnectingResult connecting_homomorphism(const CosheafMapData& phi, const CosheafMapData& pi, int degree,
                                         const Vector& cycle, const Tolerance& tol) {
  if (phi.source().is_sheaf())
    throw StaticsError(ErrorCode::InvalidArgument, "connecting homomorphism implemented for cosheaves");
  if (degree < 1 || degree > 2) throw StaticsError(ErrorCode::InvalidArgument, "degree must be 1 or 2");
  require_short_exact(phi, pi, tol);
  const auto& m = pi.target();
  if (cycle.size() != m.chain_dim(degree))
    throw StaticsError(ErrorCode::InvalidArgument, "cycle has the wrong length");
  require_finite(cycle);

  const double scale = std::max(1.0, cycle.norm());
  const auto cm = assemble_chain_complex(m, tol);
  const Matrix bm = cm.outgoing(degree);
  if ((bm * cycle).norm() > 1e-8 * scale * std::max(1.0, bm.norm()))
    throw StaticsError(ErrorCode::NotACycle, "input is not a cycle of the quotient");

  const auto lift = least_squares_solve(pi.chain_map(degree), cycle, tol);
  if (lift.residual > 1e-8 * scale)
    throw StaticsError(ErrorCode::PreimageResidualTooLarge, "no preimage under the projection");
  const auto cl = assemble_chain_complex(pi.source(), tol);
  const Vector pushed = cl.outgoing(degree) * lift.x;
  const auto back = least_squares_solve(phi.chain_map(degree - 1), pushed, tol);
  if (back.residual > 1e-8 * std::max(scale, pushed.norm()))
    throw StaticsError(ErrorCode::PreimageResidualTooLarge,
                       "boundary leaves the sub-cosheaf (residual " + std::to_string(back.residual) + ")");

  ConnectingResult out;
  out.chain = back.x;
  out.target_homology = homology(assemble_chain_complex(phi.source(), tol), degree - 1, tol);
  out.coordinates = out.target_homology.coordinates(out.chain);
  return out;
}

bool LongExactSequence::exact() const {
  for (const auto& n : nodes)
    if (!n.exact()) return false;
  return true;
}

LongExactSequence long_exact_sequence(const CosheafMapData& phi, const CosheafMapData& pi, const Tolerance& tol) {
  require_short_exact(phi, pi, tol);
  const auto ck = assemble_chain_complex(phi.source(), tol);
  const auto cl = assemble_chain_complex(phi.target(), tol);
  const auto cm = assemble_chain_complex(pi.target(), tol);
  std::array<Matrix, 3> hk, hl, hm;
  for (int i = 0; i < 3; ++i) {
    hk[i] = homology(ck, i, tol).basis;
    hl[i] = homology(cl, i, tol).basis;
    hm[i] = homology(cm, i, tol).basis;
  }
  std::array<Matrix, 3> fphi, fpi, theta;
  for (int i = 0; i < 3; ++i) {
    fphi[i] = hl[i].transpose() * phi.chain_map(i) * hk[i];
    fpi[i] = hm[i].transpose() * pi.chain_map(i) * hl[i];
  }
  for (int i = 1; i < 3; ++i) {
    theta[i] = Matrix::Zero(hk[i - 1].cols(), hm[i].cols());
    for (Index j = 0; j < hm[i].cols(); ++j)
      theta[i].col(j) = connecting_homomorphism(phi, pi, i, hm[i].col(j), tol).coordinates;
  }
  auto rk = [&](const Matrix& a) { return a.size() == 0 ? Index{0} : rank(a, tol); };

  LongExactSequence seq;
  for (int i = 2; i >= 0; --i) {
    const Index dk = hk[i].cols(), dl = hl[i].cols(), dm = hm[i].cols();
    const Index in_k = i == 2 ? 0 : rk(theta[i + 1]);
    seq.nodes.push_back({"H" + std::to_string(i) + "(K)", dk, in_k, dk - rk(fphi[i])});
    seq.nodes.push_back({"H" + std::to_string(i) + "(L)", dl, rk(fphi[i]), dl - rk(fpi[i])});
    const Index out_m = i == 0 ? 0 : rk(theta[i]);
    seq.nodes.push_back({"H" + std::to_string(i) + "(M)", dm, rk(fpi[i]), dm - out_m});
  }
  return seq;
}

}  // namespace gstatics
