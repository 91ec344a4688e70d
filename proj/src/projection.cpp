#include "qep/projection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "qep/errors.hpp"
#include "qep/random.hpp"
#include "minimize.hpp"

namespace qep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ===========================================================================
// Feasible-set geometry
// ===========================================================================

// Every supported constraint family is a product of scaled state simplices:
// phi = sum_i B_i phi_i B_i^dagger with phi_i PSD on an r_i-dimensional
// block, block traces either pinned individually (QqJ, QsL) or only in
// total (QL).
struct BlockGeometry {
  int dim = 0;
  std::vector<Matrix> isometries;  // d x r_i, live blocks only
  std::vector<double> pinned;      // per-block traces when per_block_pinned
  bool per_block_pinned = false;
  double total_trace = 1.0;

  int blocks() const { return static_cast<int>(isometries.size()); }
  int block_rank(int i) const {
    return static_cast<int>(isometries[i].cols());
  }
  Matrix assemble(const std::vector<Matrix>& phi_blocks) const {
    Matrix out = Matrix::Zero(dim, dim);
    for (int i = 0; i < blocks(); ++i)
      out += isometries[i] * phi_blocks[i] * isometries[i].adjoint();
    return out;
  }
};

BlockGeometry feasible_geometry(const ConstraintSet& K,
                                const DensityOperator& psi) {
  BlockGeometry g;
  g.dim = constraint_dim(K);
  if (const auto* ql = std::get_if<CommutantQL>(&K)) {
    for (const Projector& P : ql->resolution.members) {
      // Blocks psi never touches are forced to zero and exempted.
      const double w = (P.matrix * psi.matrix).trace().real();
      if (w <= tol::prob) continue;
      g.isometries.push_back(range_isometry(P));
    }
    g.per_block_pinned = false;
  } else if (const auto* qj = std::get_if<TracePinnedQqJ>(&K)) {
    if (qj->weights.size() != qj->resolution.size())
      fail(ErrorCode::WeightMismatch, "weights/resolution length mismatch");
    for (int i = 0; i < qj->resolution.size(); ++i) {
      const double li = qj->weights.weights[i];
      if (li <= 0.0) continue;
      g.isometries.push_back(range_isometry(qj->resolution.members[i]));
      g.pinned.push_back(li);
    }
    g.per_block_pinned = true;
  } else if (const auto* face = std::get_if<FaceQsL>(&K)) {
    g.isometries.push_back(range_isometry(face->projector));
    g.pinned.push_back(1.0);
    g.per_block_pinned = true;
  } else {
    fail(ErrorCode::Infeasible,
         "entropic projection supports commutant, trace-pinned and face "
         "constraints");
  }
  if (g.isometries.empty())
    fail(ErrorCode::Infeasible, "no live blocks in the feasible set");
  return g;
}

double g_total_trace(const BlockGeometry& g) { return g.total_trace; }

Matrix live_span(const BlockGeometry& g) {
  Matrix P = Matrix::Zero(g.dim, g.dim);
  for (const Matrix& B : g.isometries) P += B * B.adjoint();
  return P;
}

// ===========================================================================
// Hermitian block <-> real parameter encoding (HS-isometric)
// ===========================================================================

int param_count(const BlockGeometry& g) {
  int n = 0;
  for (int i = 0; i < g.blocks(); ++i) n += g.block_rank(i) * g.block_rank(i);
  return n;
}

void encode_block(const Matrix& H, double* out) {
  const int r = static_cast<int>(H.rows());
  int k = 0;
  for (int i = 0; i < r; ++i) out[k++] = H(i, i).real();
  const double s = std::sqrt(2.0);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      out[k++] = s * H(i, j).real();
      out[k++] = s * H(i, j).imag();
    }
}

Matrix decode_block(const double* in, int r) {
  Matrix H(r, r);
  int k = 0;
  for (int i = 0; i < r; ++i) H(i, i) = in[k++];
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      const double re = in[k++] * s;
      const double im = in[k++] * s;
      H(i, j) = Complex(re, im);
      H(j, i) = Complex(re, -im);
    }
  return H;
}

std::vector<Matrix> decode_all(const BlockGeometry& g,
                               const Eigen::VectorXd& x) {
  std::vector<Matrix> H;
  int off = 0;
  for (int i = 0; i < g.blocks(); ++i) {
    const int r = g.block_rank(i);
    H.push_back(decode_block(x.data() + off, r));
    off += r * r;
  }
  return H;
}

Eigen::VectorXd encode_all(const BlockGeometry& g,
                           const std::vector<Matrix>& H) {
  Eigen::VectorXd x(param_count(g));
  int off = 0;
  for (int i = 0; i < g.blocks(); ++i) {
    const int r = g.block_rank(i);
    encode_block(H[i], x.data() + off);
    off += r * r;
  }
  return x;
}

// ===========================================================================
// Exponential parametrization
// ===========================================================================

struct Realization {
  std::vector<Matrix> H;     // shifted Hermitian parameters
  std::vector<Matrix> expH;  // exp(H_i)
  std::vector<double> Z;     // tr(expH_i)
  std::vector<Matrix> phi;   // realized blocks
  double Ztot = 0.0;
};

Realization realize(const BlockGeometry& g, const Eigen::VectorXd& x) {
  Realization r;
  r.H = decode_all(g, x);
  if (!g.per_block_pinned) {
    // A single global shift keeps the cross-block softmax overflow-free
    // without changing the realized state.
    double c = -1e300;
    for (const Matrix& H : r.H) c = std::max(c, eigh(H).values.maxCoeff());
    for (Matrix& H : r.H) H -= c * Matrix::Identity(H.rows(), H.cols());
  } else {
    for (Matrix& H : r.H) {
      const double c = eigh(H).values.maxCoeff();
      H -= c * Matrix::Identity(H.rows(), H.cols());
    }
  }
  for (const Matrix& H : r.H) {
    Matrix e = hermitian_exp(H);
    r.Z.push_back(e.trace().real());
    r.Ztot += r.Z.back();
    r.expH.push_back(std::move(e));
  }
  for (int i = 0; i < g.blocks(); ++i) {
    if (g.per_block_pinned)
      r.phi.push_back(g.pinned[i] * r.expH[i] / r.Z[i]);
    else
      r.phi.push_back(g.total_trace * r.expH[i] / r.Ztot);
  }
  return r;
}

// Pulls block gradients G_i (w.r.t. phi_i) back through the exponential
// parametrization to gradients w.r.t. the Hermitian parameters.
std::vector<Matrix> pull_back(const BlockGeometry& g, const Realization& r,
                              const std::vector<Matrix>& G) {
  std::vector<Matrix> out(g.blocks());
  if (g.per_block_pinned) {
    for (int i = 0; i < g.blocks(); ++i) {
      const double li = g.pinned[i];
      const double inner = (G[i] * r.phi[i]).trace().real();
      out[i] = (li / r.Z[i]) * frechet_exp(r.H[i], G[i]) -
               (inner / li) * r.phi[i];
    }
  } else {
    double S = 0.0;
    for (int i = 0; i < g.blocks(); ++i)
      S += (G[i] * r.phi[i]).trace().real();
    S /= g.total_trace;
    for (int i = 0; i < g.blocks(); ++i)
      out[i] = (g.total_trace / r.Ztot) * frechet_exp(r.H[i], G[i]) -
               S * r.phi[i];
  }
  return out;
}

// ===========================================================================
// Smooth objectives
// ===========================================================================

// Ungated divided-difference derivatives: the exponential parametrization
// keeps blocks mathematically positive, so no PD gate is wanted here; an
// underflowed eigenvalue shows up as an infinite objective instead and the
// line search backs off.
Matrix dlog(const Matrix& A, const Matrix& V) {
  return frechet_fn(
      A, V, [](double x) { return std::log(x); },
      [](double x) { return 1.0 / x; });
}

Matrix dsqrt(const Matrix& A, const Matrix& V) {
  return frechet_fn(
      A, V, [](double x) { return std::sqrt(x); },
      [](double x) { return 0.5 / std::sqrt(x); });
}

// sqrt with eigenvalues clamped at zero (transient iterates only).
Matrix psqrt(const Matrix& A) {
  SpectralDecomposition dec = eigh(A);
  Vector s(dec.values.size());
  for (int i = 0; i < dec.values.size(); ++i)
    s(i) = std::sqrt(std::max(0.0, dec.values(i)));
  return dec.vectors * s.asDiagonal() * dec.vectors.adjoint();
}

// Internal smooth surrogate u(phi) per kind; the reported divergence is a
// monotone function of u.
struct SmoothObjective {
  DivergenceKind kind;
  const BlockGeometry* geom;
  DensityOperator psi;
  std::vector<Matrix> psi_blocks;       // B^dagger psi B
  std::vector<Matrix> sqrt_psi_blocks;  // B^dagger sqrt(psi) B
  std::vector<Matrix> log_psi_blocks;   // B^dagger log_supp(psi) B
  double psi_sq_norm = 0.0;

  // tr(W log phi) with an infinite barrier when an eigenvalue underflows.
  static double trace_log(const Matrix& phi, const Matrix& W) {
    SpectralDecomposition dec = eigh(phi);
    double sum = 0.0;
    for (int k = 0; k < dec.values.size(); ++k) {
      const double lam = dec.values(k);
      const double w =
          (dec.vectors.col(k).adjoint() * W * dec.vectors.col(k))(0, 0).real();
      if (lam <= 0.0) {
        if (std::abs(w) > 1e-14) return -kInf;
        continue;
      }
      sum += w * std::log(lam);
    }
    return sum;
  }

  double value(const std::vector<Matrix>& phi) const {
    double u = 0.0;
    switch (kind) {
      case DivergenceKind::D0:
        for (size_t i = 0; i < phi.size(); ++i) {
          const double tl = trace_log(phi[i], psi_blocks[i]);
          if (tl == -kInf) return kInf;
          u += phi[i].trace().real() - tl;
        }
        return u;
      case DivergenceKind::D1_Umegaki:
        for (size_t i = 0; i < phi.size(); ++i) {
          // tr(phi log phi) is continuous at the boundary (x log x -> 0).
          SpectralDecomposition dec = eigh(phi[i]);
          double ent = 0.0;
          for (int k = 0; k < dec.values.size(); ++k)
            if (dec.values(k) > 0.0)
              ent += dec.values(k) * std::log(dec.values(k));
          u += -phi[i].trace().real() + ent -
               (phi[i] * log_psi_blocks[i]).trace().real();
        }
        return u;
      case DivergenceKind::D_half:
      case DivergenceKind::L2_HS_sqrt: {
        double tr_phi = 0.0, cross = 0.0;
        for (size_t i = 0; i < phi.size(); ++i) {
          tr_phi += phi[i].trace().real();
          cross += (psqrt(phi[i]) * sqrt_psi_blocks[i]).trace().real();
        }
        // ||sqrt(phi) - sqrt(psi)||^2; d_half is twice this.
        return tr_phi + psi.trace - 2.0 * cross;
      }
      case DivergenceKind::L2_HS_states: {
        double u2 = psi_sq_norm;
        for (size_t i = 0; i < phi.size(); ++i)
          u2 += phi[i].squaredNorm() -
                2.0 * (phi[i] * psi_blocks[i]).trace().real();
        return u2;
      }
      case DivergenceKind::Bures: {
        const Matrix sphi = assemble_sqrt(phi);
        const Matrix M = sphi * psi.matrix * sphi;
        return -fn_on_support(M, ScalarFunctionKind::Sqrt).trace().real();
      }
      default:
        fail(ErrorCode::InvalidInput, "kind has no smooth objective");
    }
  }

  std::vector<Matrix> block_grads(const std::vector<Matrix>& phi) const {
    const int n = static_cast<int>(phi.size());
    std::vector<Matrix> G(n);
    switch (kind) {
      case DivergenceKind::D0:
        for (int i = 0; i < n; ++i) {
          const int r = static_cast<int>(phi[i].rows());
          G[i] = Matrix::Identity(r, r) - dlog(phi[i], psi_blocks[i]);
        }
        return G;
      case DivergenceKind::D1_Umegaki:
        for (int i = 0; i < n; ++i)
          G[i] = fn_on_support(phi[i], ScalarFunctionKind::Log) -
                 log_psi_blocks[i];
        return G;
      case DivergenceKind::D_half:
      case DivergenceKind::L2_HS_sqrt:
        for (int i = 0; i < n; ++i) {
          const int r = static_cast<int>(phi[i].rows());
          G[i] = Matrix::Identity(r, r) -
                 2.0 * dsqrt(phi[i], sqrt_psi_blocks[i]);
        }
        return G;
      case DivergenceKind::L2_HS_states:
        for (int i = 0; i < n; ++i) G[i] = 2.0 * (phi[i] - psi_blocks[i]);
        return G;
      case DivergenceKind::Bures: {
        const Matrix sphi = assemble_sqrt(phi);
        const Matrix M = sphi * psi.matrix * sphi;
        const Matrix Mih = fn_on_support(M, ScalarFunctionKind::Power, -0.5);
        const Matrix W = psi.matrix * sphi * Mih + Mih * sphi * psi.matrix;
        for (int i = 0; i < n; ++i) {
          const Matrix& B = geom->isometries[i];
          G[i] = -dsqrt(phi[i], 0.5 * (B.adjoint() * W * B));
        }
        return G;
      }
      default:
        fail(ErrorCode::InvalidInput, "kind has no smooth objective");
    }
  }

 private:
  Matrix assemble_sqrt(const std::vector<Matrix>& phi) const {
    Matrix out = Matrix::Zero(geom->dim, geom->dim);
    for (size_t i = 0; i < phi.size(); ++i)
      out += geom->isometries[i] * psqrt(phi[i]) *
             geom->isometries[i].adjoint();
    return out;
  }
};

SmoothObjective make_objective(DivergenceKind kind, const BlockGeometry& g,
                               const DensityOperator& psi) {
  SmoothObjective obj;
  obj.kind = kind;
  obj.geom = &g;
  obj.psi = psi;
  const Matrix sqrt_psi = psi.sqrt();
  const Matrix log_psi = psi.log_on_support();
  for (const Matrix& B : g.isometries) {
    obj.psi_blocks.push_back(B.adjoint() * psi.matrix * B);
    obj.sqrt_psi_blocks.push_back(B.adjoint() * sqrt_psi * B);
    obj.log_psi_blocks.push_back(B.adjoint() * log_psi * B);
  }
  obj.psi_sq_norm = psi.matrix.squaredNorm();
  return obj;
}

// ===========================================================================
// Support compatibility for the extended-real kinds
// ===========================================================================

void check_finiteness(DivergenceKind kind, const BlockGeometry& g,
                      const DensityOperator& psi) {
  if (kind == DivergenceKind::D0) {
    // D0(phi, psi) finite needs psi << phi; interior phi spans exactly the
    // live blocks.
    const Matrix span = live_span(g);
    if (((Matrix::Identity(g.dim, g.dim) - span) * psi.support()).norm() >
        1e-7)
      fail(ErrorCode::InfiniteDivergence,
           "D0 objective is infinite on the whole feasible set (psi is not "
           "dominated by any feasible state)");
  }
  if (kind == DivergenceKind::D1_Umegaki) {
    // D1(phi, psi) finite needs phi << psi.
    const Matrix span = live_span(g);
    if (((Matrix::Identity(g.dim, g.dim) - psi.support()) * span).norm() >
        1e-7)
      fail(ErrorCode::InfiniteDivergence,
           "D1 objective is infinite on the whole feasible set (feasible "
           "states are not dominated by psi)");
  }
}

DensityOperator assemble_state(const BlockGeometry& g,
                               const std::vector<Matrix>& phi_blocks) {
  Matrix M = g.assemble(phi_blocks);
  M = 0.5 * (M + M.adjoint());
  return DensityOperator{M, M.trace().real()};
}

}  // namespace

// ===========================================================================
// entropic_project
// ===========================================================================

ProjectionResult entropic_project(DivergenceKind kind,
                                  const DensityOperator& psi,
                                  const ConstraintSet& K,
                                  const SolverConfig& cfg) {
  if (psi.dim() != constraint_dim(K))
    fail(ErrorCode::DimensionMismatch, "entropic_project: dims differ");
  if (kind == DivergenceKind::WGKL)
    fail(ErrorCode::InvalidInput,
         "WGKL projections act on joint tables; use the classical path");
  if (kind == DivergenceKind::L1_JMGK)
    return sampling_oracle(kind, psi, K, cfg.oracle_budget, cfg.seed);

  const BlockGeometry geom = feasible_geometry(K, psi);
  check_finiteness(kind, geom, psi);
  const SmoothObjective obj = make_objective(kind, geom, psi);

  const detail::ValueFn fval = [&](const Eigen::VectorXd& x) {
    return obj.value(realize(geom, x).phi);
  };
  const detail::GradFn fgrad = [&](const Eigen::VectorXd& x) {
    const Realization r = realize(geom, x);
    return encode_all(geom, pull_back(geom, r, obj.block_grads(r.phi)));
  };

  detail::MinimizeOutcome best;
  bool have_best = false;
  int total_iterations = 0;
  for (int k = 0; k < std::max(1, cfg.restarts); ++k) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Zero(param_count(geom));
    if (k > 0) {
      Rng rng(derive_seed(cfg.seed, 0xA11CEULL, static_cast<std::uint64_t>(k)));
      std::normal_distribution<double> normal(0.0, 1.0);
      for (int i = 0; i < x0.size(); ++i) x0(i) = normal(rng);
    }
    detail::MinimizeOutcome run = detail::minimize_smooth(fval, fgrad, x0, cfg);
    total_iterations += run.iterations;
    if (!have_best || run.f < best.f) {
      best = run;
      have_best = true;
    }
  }

  const Realization r = realize(geom, best.x);
  ProjectionResult out;
  out.minimizer = assemble_state(geom, r.phi);
  out.objective = evaluate_divergence(kind, out.minimizer, psi);
  out.grad_residual = best.grad_norm;
  out.feas_residual = in_constraint(out.minimizer, K, cfg.feas_tol).residual;
  out.iterations = total_iterations;
  out.converged = best.converged && out.feas_residual <= cfg.feas_tol;
  out.objective_trace = std::move(best.trace);
  return out;
}

// ===========================================================================
// sampling_oracle
// ===========================================================================

namespace {

struct OracleCandidate {
  std::vector<double> traces;             // per-block trace
  std::vector<std::vector<double>> eigs;  // per-block spectrum, sums to trace
  std::vector<Matrix> unitaries;          // per-block eigenbasis

  std::vector<Matrix> to_blocks() const {
    std::vector<Matrix> out;
    for (size_t i = 0; i < eigs.size(); ++i) {
      const int r = static_cast<int>(eigs[i].size());
      Vector d(r);
      for (int k = 0; k < r; ++k) d(k) = eigs[i][k];
      out.push_back(unitaries[i] * d.asDiagonal() * unitaries[i].adjoint());
    }
    return out;
  }
};

OracleCandidate sample_candidate(const BlockGeometry& g, Rng& rng) {
  OracleCandidate c;
  const int n = g.blocks();
  if (g.per_block_pinned) {
    c.traces = g.pinned;
  } else {
    c.traces = random_simplex(n, rng);
    for (double& t : c.traces) t *= g.total_trace;
  }
  for (int i = 0; i < n; ++i) {
    const int r = g.block_rank(i);
    std::vector<double> e = random_simplex(r, rng);
    for (double& x : e) x *= c.traces[i];
    c.eigs.push_back(std::move(e));
    c.unitaries.push_back(random_unitary(r, rng));
  }
  return c;
}

// Elementary feasible moves for the refinement search: mass transfers on
// the eigenvalue simplices, elementary rotations of the block eigenbases,
// and (for free-trace sets) trace transfers between blocks.
OracleCandidate apply_eig_transfer(const OracleCandidate& base, int block,
                                   int from, int to, double delta) {
  OracleCandidate c = base;
  const double m = std::min(delta, c.eigs[block][from]);
  c.eigs[block][from] -= m;
  c.eigs[block][to] += m;
  return c;
}

OracleCandidate apply_rotation(const OracleCandidate& base, int block, int p,
                               int q, bool imaginary, double angle) {
  OracleCandidate c = base;
  const int r = static_cast<int>(base.eigs[block].size());
  Matrix K = Matrix::Zero(r, r);
  if (imaginary) {
    K(p, q) = Complex(0.0, -1.0);
    K(q, p) = Complex(0.0, 1.0);
  } else {
    K(p, q) = Complex(1.0, 0.0);
    K(q, p) = Complex(1.0, 0.0);
  }
  c.unitaries[block] = unitary_exp(K, angle) * base.unitaries[block];
  return c;
}

OracleCandidate apply_trace_transfer(const OracleCandidate& base, int from,
                                     int to, double delta) {
  OracleCandidate c = base;
  const double m = std::min(delta, c.traces[from]);
  if (c.traces[from] <= 0.0) return c;
  const double scale_from = (c.traces[from] - m) / c.traces[from];
  const double scale_to =
      c.traces[to] > 0.0 ? (c.traces[to] + m) / c.traces[to] : 1.0;
  for (double& e : c.eigs[from]) e *= scale_from;
  if (c.traces[to] > 0.0) {
    for (double& e : c.eigs[to]) e *= scale_to;
  } else {
    c.eigs[to][0] = m;  // revive an empty block in its first direction
  }
  c.traces[from] -= m;
  c.traces[to] += m;
  return c;
}

}  // namespace

ProjectionResult sampling_oracle(DivergenceKind kind,
                                 const DensityOperator& psi,
                                 const ConstraintSet& K, int budget,
                                 std::uint64_t seed) {
  if (psi.dim() != constraint_dim(K))
    fail(ErrorCode::DimensionMismatch, "sampling_oracle: dims differ");
  if (kind == DivergenceKind::WGKL)
    fail(ErrorCode::InvalidInput, "WGKL oracle acts on joint tables");
  const BlockGeometry geom = feasible_geometry(K, psi);
  Rng rng(derive_seed(seed, 0x0AC1EULL));

  const auto evaluate = [&](const OracleCandidate& c) -> ExtendedReal {
    return evaluate_divergence(kind, assemble_state(geom, c.to_blocks()), psi);
  };
  const auto better = [](const ExtendedReal& a, const ExtendedReal& b) {
    return a.is_finite() && (!b.is_finite() || a.value < b.value);
  };

  OracleCandidate best = sample_candidate(geom, rng);
  ExtendedReal best_val = evaluate(best);
  int used = 1;

  // Exploration: independent feasible draws.
  const int explore = std::max(1, budget / 2);
  for (; used < explore; ++used) {
    OracleCandidate c = sample_candidate(geom, rng);
    const ExtendedReal v = evaluate(c);
    if (better(v, best_val)) {
      best = std::move(c);
      best_val = v;
    }
  }

  // Refinement: coordinate-wise pattern search with a shrinking step. A
  // full sweep without improvement halves the step.
  double sigma = 0.3;
  while (used < budget && sigma > 1e-8) {
    bool improved = false;
    const auto try_move = [&](const OracleCandidate& c) {
      if (used >= budget) return;
      ++used;
      const ExtendedReal v = evaluate(c);
      if (better(v, best_val)) {
        best = c;
        best_val = v;
        improved = true;
      }
    };
    for (int b = 0; b < geom.blocks() && used < budget; ++b) {
      const int r = geom.block_rank(b);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          if (i != j)
            try_move(apply_eig_transfer(best, b, i, j,
                                        sigma * std::max(best.traces[b],
                                                         1e-3)));
      for (int p = 0; p < r; ++p)
        for (int q = p + 1; q < r; ++q)
          for (bool imaginary : {false, true})
            for (double sign : {1.0, -1.0})
              try_move(apply_rotation(best, b, p, q, imaginary, sign * sigma));
    }
    if (!geom.per_block_pinned)
      for (int a = 0; a < geom.blocks(); ++a)
        for (int b = 0; b < geom.blocks() && used < budget; ++b)
          if (a != b)
            try_move(apply_trace_transfer(best, a, b,
                                          sigma * g_total_trace(geom)));
    if (!improved) sigma *= 0.5;
  }

  ProjectionResult out;
  out.minimizer = assemble_state(geom, best.to_blocks());
  out.objective = best_val;
  out.grad_residual = 0.0;
  out.feas_residual = in_constraint(out.minimizer, K).residual;
  out.iterations = used;
  out.converged = out.objective.is_finite();
  return out;
}

// ===========================================================================
// Theorem-support operations
// ===========================================================================

double triangle_residual(DivergenceKind kind, const DensityOperator& phi,
                         const DensityOperator& rho,
                         const DensityOperator& psi) {
  const ExtendedReal a = evaluate_divergence(kind, phi, rho);
  const ExtendedReal b = evaluate_divergence(kind, rho, psi);
  const ExtendedReal c = evaluate_divergence(kind, phi, psi);
  if (!a.is_finite() || !b.is_finite() || !c.is_finite())
    fail(ErrorCode::InfiniteDivergence,
         "triangle residual undefined for infinite divergences");
  return std::abs(a.value + b.value - c.value);
}

DensityOperator sequential_projection(const DensityOperator& psi,
                                      const std::vector<ConstraintSet>& Ks,
                                      DivergenceKind kind,
                                      const SolverConfig& cfg) {
  if (Ks.empty())
    fail(ErrorCode::InvalidInput, "sequential_projection needs constraints");
  DensityOperator current = psi;
  for (const ConstraintSet& K : Ks)
    current = entropic_project(kind, current, K, cfg).minimizer;
  return current;
}

ExtendedReal regularized_d0P(const DensityOperator& phi,
                             const DensityOperator& psi, const Projector& P) {
  if (phi.dim() != P.dim() || psi.dim() != P.dim())
    fail(ErrorCode::DimensionMismatch, "regularized_d0P: dims differ");
  const double prob = (P.matrix * psi.matrix).trace().real();
  if (prob <= tol::prob)
    fail(ErrorCode::ZeroProbability, "tr(P psi) = " + std::to_string(prob));
  const Matrix B = range_isometry(P);
  const Matrix phi_c = B.adjoint() * phi.matrix * B;
  const Matrix psi_c = B.adjoint() * psi.matrix * B;
  return d0(DensityOperator{phi_c, phi_c.trace().real()},
            DensityOperator{psi_c, psi_c.trace().real()});
}

ProjectionResult project_regularized_d0(const DensityOperator& psi,
                                        const Projector& P,
                                        const SolverConfig& cfg) {
  const double prob = (P.matrix * psi.matrix).trace().real();
  if (prob <= tol::prob)
    fail(ErrorCode::ZeroProbability, "tr(P psi) = " + std::to_string(prob));
  const Matrix B = range_isometry(P);
  const int r = static_cast<int>(B.cols());
  const Matrix psi_c = B.adjoint() * psi.matrix * B;
  // Compressed problem: unnormalized D0 against psi's block, minimized over
  // the full state simplex of the reduced space.
  const DensityOperator psi_block{psi_c, psi_c.trace().real()};
  const ConstraintSet block_face = FaceQsL{Projector{Matrix::Identity(r, r)}};
  ProjectionResult reduced =
      entropic_project(DivergenceKind::D0, psi_block, block_face, cfg);

  ProjectionResult out = reduced;
  Matrix embedded = B * reduced.minimizer.matrix * B.adjoint();
  embedded = 0.5 * (embedded + embedded.adjoint());
  out.minimizer = DensityOperator{embedded, embedded.trace().real()};
  out.feas_residual =
      in_constraint(out.minimizer, ConstraintSet{FaceQsL{P}}, cfg.feas_tol)
          .residual;
  return out;
}

ConstraintSet intersect_commutants(const CommutantQL& a,
                                   const CommutantQL& b) {
  if (a.resolution.dim != b.resolution.dim)
    fail(ErrorCode::DimensionMismatch, "intersect_commutants: dims differ");
  std::vector<Matrix> refined;
  for (const Projector& P : a.resolution.members)
    for (const Projector& Q : b.resolution.members) {
      if ((P.matrix * Q.matrix - Q.matrix * P.matrix).cwiseAbs().maxCoeff() >
          1e-9)
        fail(ErrorCode::InvalidInput,
             "intersect_commutants needs commuting generating projectors");
      Matrix R = P.matrix * Q.matrix;
      R = 0.5 * (R + R.adjoint());
      if (R.trace().real() > 0.5) refined.push_back(R);
    }
  return CommutantQL{validate_resolution(refined)};
}

}  // namespace qep
