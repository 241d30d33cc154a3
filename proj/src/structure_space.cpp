#include "bk/structure_space.hpp"

#include <algorithm>
#include <cmath>

namespace bk {

StructurePoint unitary_act(const StructurePoint& p, const CMat& a, const Tolerances& tol) {
  if (a.rows() != p.n || a.cols() != p.n)
    throw parameter_error("unitary_act: dimension mismatch");
  double defect = (a.adjoint() * a - CMat::Identity(p.n, p.n)).cwiseAbs().maxCoeff();
  if (defect > tol.unitary)
    throw error("unitarity", "unitary_act: a*a differs from I by " + std::to_string(defect));
  CMat H = a * p.H * a.adjoint();
  return StructurePoint((H + H.adjoint()) / 2.0, a * p.T, p.V, tol);
}

StructurePoint scale(const StructurePoint& p, double c) {
  if (!(c > 0.0)) throw parameter_error("scale: c must be positive");
  return StructurePoint(p.H / c, p.T / std::pow(c, 1.5), p.V / (c * c));
}

namespace {

struct EigenCluster {
  double value = 0.0;
  std::vector<int> indices;  // positions in the descending eigenvalue list
};

std::vector<EigenCluster> cluster_eigenvalues(const Vec& descending, double tol_cluster) {
  std::vector<EigenCluster> out;
  double scale = 1.0 + descending.cwiseAbs().maxCoeff();
  for (int i = 0; i < descending.size(); ++i) {
    if (!out.empty() && std::abs(descending(i) - out.back().value) <= tol_cluster * scale) {
      out.back().indices.push_back(i);
    } else {
      out.push_back({descending(i), {i}});
    }
  }
  // use cluster means as representative values
  for (EigenCluster& c : out) {
    double sum = 0.0;
    for (int i : c.indices) sum += descending(i);
    c.value = sum / static_cast<double>(c.indices.size());
  }
  return out;
}

// Descending eigendecomposition of a Hermitian matrix.
void eig_descending(const CMat& H, Vec& vals, CMat& vecs) {
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  int n = static_cast<int>(H.rows());
  vals = es.eigenvalues().reverse();
  vecs.resize(n, n);
  for (int i = 0; i < n; ++i) vecs.col(i) = es.eigenvectors().col(n - 1 - i);
}

}  // namespace

ChamberForm normal_form(const StructurePoint& p, const Tolerances& tol) {
  Vec vals;
  CMat q;
  eig_descending(p.H, vals, q);

  // columns of q are the descending eigenbasis; within each cluster rotate so
  // the projected T sits on the first basis vector with a nonnegative entry
  std::vector<EigenCluster> clusters = cluster_eigenvalues(vals, tol.cluster);
  double tscale = 1.0 + p.T.cwiseAbs().maxCoeff();
  for (const EigenCluster& cl : clusters) {
    int k = static_cast<int>(cl.indices.size());
    int i0 = cl.indices.front();
    CMat block = q.middleCols(i0, k);
    CVec tc = block.adjoint() * p.T;  // T in the cluster basis
    double norm = tc.norm();
    if (norm <= tol.zero * tscale) continue;  // leave basis as-is, T is 0 here
    // unitary u (k x k) with u* tc = (norm, 0, ..., 0)
    CMat u = CMat::Identity(k, k);
    u.col(0) = tc / norm;
    // complete by Gram-Schmidt against the remaining identity columns
    int filled = 1;
    for (int j = 0; j < k && filled < k; ++j) {
      CVec cand = CVec::Zero(k);
      cand(j) = 1.0;
      for (int l = 0; l < filled; ++l) cand -= u.col(l).dot(cand) * u.col(l);
      double cn = cand.norm();
      if (cn > 1e-8) u.col(filled++) = cand / cn;
    }
    q.middleCols(i0, k) = block * u;
  }

  CMat a = q.adjoint();
  StructurePoint out = unitary_act(p, a, tol);
  // flatten roundoff: H exactly diagonal with the computed eigenvalues, T real
  out.H = CMat::Zero(p.n, p.n);
  for (int i = 0; i < p.n; ++i) out.H(i, i) = vals(i);
  for (int i = 0; i < p.n; ++i) out.T(i) = std::max(0.0, out.T(i).real());
  // zero the trailing slots of each cluster
  for (const EigenCluster& cl : clusters)
    for (size_t j = 1; j < cl.indices.size(); ++j) out.T(cl.indices[j]) = 0.0;
  return {out, a};
}

InvariantVector invariants_phi(const StructurePoint& p) {
  InvariantVector out;
  out.a.resize(p.n);
  out.b.resize(p.n + 1);
  CMat Hk = CMat::Identity(p.n, p.n);
  out.b(0) = p.V;
  for (int k = 1; k <= p.n; ++k) {
    Hk = (Hk * p.H).eval();
    out.a(k - 1) = Hk.trace().real();
  }
  Hk = CMat::Identity(p.n, p.n);
  for (int k = 0; k < p.n; ++k) {
    out.b(k + 1) = (p.T.adjoint() * Hk * p.T)(0, 0).real();
    Hk = (Hk * p.H).eval();
  }
  return out;
}

Vec newton_to_elementary(const Vec& A) {
  int n = static_cast<int>(A.size());
  Vec h = Vec::Zero(n);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int i = 1; i <= k; ++i) {
      double prev = (k - i == 0) ? 1.0 : h(k - i - 1);
      acc += ((i % 2) ? 1.0 : -1.0) * prev * A(i - 1);
    }
    h(k - 1) = acc / k;
  }
  return h;
}

Vec elementary_to_newton(const Vec& h) {
  int n = static_cast<int>(h.size());
  Vec A = Vec::Zero(n);
  for (int k = 1; k <= n; ++k) {
    double acc = ((k % 2) ? 1.0 : -1.0) * k * h(k - 1);
    for (int i = 1; i < k; ++i) {
      double sign = (((k - i) % 2) ? 1.0 : -1.0);  // (-1)^(k-i-1)
      acc += sign * h(k - i - 1) * A(i - 1);
    }
    A(k - 1) = acc;
  }
  return A;
}

ConservedVector conserved_Ck(const StructurePoint& p) {
  int n = p.n;
  InvariantVector phi = invariants_phi(p);
  Vec h = newton_to_elementary(phi.a);  // h_1..h_n

  // B_0 = 1, B_1 = tr H, B_2 = V, B_k = T* H^{k-3} T for k >= 3
  Vec B = Vec::Zero(n + 3);
  B(0) = 1.0;
  B(1) = phi.a(0);
  B(2) = p.V;
  for (int k = 3; k <= n + 2; ++k) B(k) = phi.b(k - 2);

  auto hj = [&](int j) -> double {
    if (j == 0) return 1.0;
    if (j < 0 || j > n) return 0.0;
    return h(j - 1);
  };
  auto Ck = [&](int k) -> double {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      double Bkj = (k - j <= n + 2) ? B(k - j) : 0.0;
      acc += ((j % 2) ? -1.0 : 1.0) * hj(j) * Bkj;
    }
    return acc;
  };

  ConservedVector out;
  out.C.resize(n + 1);
  for (int k = 2; k <= n + 2; ++k) out.C(k - 2) = Ck(k);
  out.C1_defect = std::abs(Ck(1));
  return out;
}

Vec momentum_h(const StructurePoint& p) {
  return newton_to_elementary(invariants_phi(p).a);
}

RealPolynomial momentum_poly(const StructurePoint& p) {
  Eigen::SelfAdjointEigenSolver<CMat> es(p.H, Eigen::EigenvaluesOnly);
  std::vector<double> roots(es.eigenvalues().data(), es.eigenvalues().data() + p.n);
  return RealPolynomial::from_real_roots(roots);
}

SymmetryDims symmetry_dims(const StructurePoint& p, const Tolerances& tol) {
  Vec vals;
  CMat q;
  eig_descending(p.H, vals, q);
  std::vector<EigenCluster> clusters = cluster_eigenvalues(vals, tol.cluster);

  double trH = p.H.trace().real();
  double vscale = 1.0 + std::abs(p.V) + p.H.cwiseAbs().maxCoeff() * p.H.cwiseAbs().maxCoeff();
  double tscale = 1.0 + p.T.squaredNorm();

  // |T_a|^2 per cluster
  std::vector<double> tsq(clusters.size(), 0.0);
  for (size_t a = 0; a < clusters.size(); ++a) {
    for (int i : clusters[a].indices) {
      Complex c = q.col(i).dot(p.T);
      tsq[a] += std::norm(c);
    }
  }

  SymmetryDims out;
  for (size_t a = 0; a < clusters.size(); ++a) {
    int na = static_cast<int>(clusters[a].indices.size());
    double Ha = clusters[a].value;
    double Va = Ha * Ha + trH * Ha + p.V;
    for (size_t b = 0; b < clusters.size(); ++b)
      if (b != a) Va += tsq[b] / (Ha - clusters[b].value);

    int rho, tau, ma;
    if (tsq[a] > tol.zero * tscale) {
      rho = (na - 1) * (na - 1);
      tau = 1;
      ma = (na > 1) ? 2 : 1;
    } else if (std::abs(Va) > tol.zero * vscale) {
      rho = na * na;
      tau = 0;
      ma = 1;
    } else {
      rho = na * na;
      tau = 2 * na;
      ma = 0;
    }
    out.dim_g0 += rho;
    out.orbit_dim += tau;
    out.cohomogeneity += ma;
  }
  out.dim_g = out.dim_g0 + out.orbit_dim;
  return out;
}

StructurePoint scale_normalize(const StructurePoint& p) {
  InvariantVector phi = invariants_phi(p);
  double mu = 0.0;
  for (int k = 1; k <= p.n; ++k)
    mu = std::max(mu, std::pow(std::abs(phi.a(k - 1)), 1.0 / k));
  for (int k = 2; k <= p.n + 2; ++k)
    mu = std::max(mu, std::pow(std::abs(phi.b(k - 2)), 1.0 / k));
  if (mu == 0.0) return p;
  return scale(p, mu);
}

Vec scale_normalize_h(const Vec& h) {
  double mu = 0.0;
  for (int k = 1; k <= h.size(); ++k)
    mu = std::max(mu, std::pow(std::abs(h(k - 1)), 1.0 / k));
  if (mu == 0.0) return h;
  Vec out = h;
  for (int k = 1; k <= h.size(); ++k) out(k - 1) /= std::pow(mu, k);
  return out;
}

}  // namespace bk
