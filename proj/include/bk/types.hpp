#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bk {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Library-level error with a stable category tag (surfaced by the CLI).
class error : public std::runtime_error {
 public:
  error(std::string category, const std::string& what)
      : std::runtime_error(what), category_(std::move(category)) {}
  const std::string& category() const { return category_; }

 private:
  std::string category_;
};

inline error domain_error(const std::string& what) { return error("domain", what); }
inline error parameter_error(const std::string& what) { return error("parameter", what); }
inline error numerical_error(const std::string& what) { return error("numerical", what); }

/// Tolerance configuration, passed explicitly (no environment state).
struct Tolerances {
  double cluster = 1e-8;     // eigenvalue clustering, relative to 1+|H|
  double zero = 1e-8;        // zero tests for |T_a|^2 and V_a, same family
  double root_imag = 1e-8;   // |Im| threshold for a root to count as real
  double hermitian = 1e-12;  // admissible Hermitian-symmetry defect
  double unitary = 1e-12;    // admissible unitarity defect
};

inline double hermitian_defect(const CMat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// A point (H, T, V) of iu(n) + C^n + R, the structure function's value at a frame.
struct StructurePoint {
  int n = 0;
  CMat H;  // Hermitian n x n
  CVec T;  // complex n-vector
  double V = 0.0;

  StructurePoint() = default;
  StructurePoint(CMat h, CVec t, double v, const Tolerances& tol = {})
      : n(static_cast<int>(h.rows())), H(std::move(h)), T(std::move(t)), V(v) {
    if (n < 1 || H.cols() != n || T.size() != n)
      throw parameter_error("StructurePoint: inconsistent dimensions");
    if (hermitian_defect(H) > tol.hermitian * (1.0 + H.cwiseAbs().maxCoeff()))
      throw parameter_error("StructurePoint: H is not Hermitian");
    H = ((H + H.adjoint()) / 2.0).eval();
  }
};

/// Moduli coordinates phi = (a_1..a_n, b_2, b_3..b_{n+2}) separating the U(n)-orbits.
/// a_k = tr H^k; b_2 = V; b_{k+3} = T* H^k T.
struct InvariantVector {
  Vec a;  // a[k-1] = a_k, k = 1..n
  Vec b;  // b[0] = b_2, b[j] = b_{j+2}, j = 0..n

  Vec flat() const {
    Vec out(a.size() + b.size());
    out << a, b;
    return out;
  }
};

/// Conserved quantities C_k of a connected Bochner-Kahler structure, k = 2..n+2.
struct ConservedVector {
  Vec C;  // C[k-2] = C_k
  double C1_defect = 0.0;  // |C_1| computed by the same formula; must vanish

  double at(int k) const {  // k in 2..n+2
    return C(k - 2);
  }
};
}  // namespace bk
