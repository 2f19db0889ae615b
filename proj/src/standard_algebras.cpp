#include "twostep/standard_algebras.hpp"

#include "twostep/errors.hpp"

namespace twostep {

namespace {
const std::complex<double> kI{0.0, 1.0};

void append_offdiagonal(Eigen::Index n, std::vector<Eigen::MatrixXcd>& out) {
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = p + 1; q < n; ++q) {
      out.push_back(matrix_unit(n, p, q) - matrix_unit(n, q, p));
      out.push_back(kI * (matrix_unit(n, p, q) + matrix_unit(n, q, p)));
    }
  }
}

void require_size(Eigen::Index n, Eigen::Index min) {
  if (n < min) throw Error(ErrorKind::BadInput, "matrix size " + std::to_string(n) + " too small");
}
}  // namespace

Eigen::MatrixXcd matrix_unit(Eigen::Index n, Eigen::Index p, Eigen::Index q) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
  e(p, q) = 1.0;
  return e;
}

std::vector<Eigen::MatrixXcd> su_basis(Eigen::Index n) {
  require_size(n, 2);
  std::vector<Eigen::MatrixXcd> out;
  append_offdiagonal(n, out);
  for (Eigen::Index p = 0; p + 1 < n; ++p) {
    out.push_back(kI * (matrix_unit(n, p, p) - matrix_unit(n, p + 1, p + 1)));
  }
  return out;
}

std::vector<Eigen::MatrixXcd> u_basis(Eigen::Index n) {
  require_size(n, 1);
  std::vector<Eigen::MatrixXcd> out;
  append_offdiagonal(n, out);
  for (Eigen::Index p = 0; p < n; ++p) out.push_back(kI * matrix_unit(n, p, p));
  return out;
}

AlgebraPtr make_su(Eigen::Index n, FormKind form, double tol_alg) {
  return MatrixLieAlgebra::build(su_basis(n), form, tol_alg);
}

AlgebraPtr make_u(Eigen::Index n, FormKind form, double tol_alg) {
  return MatrixLieAlgebra::build(u_basis(n), form, tol_alg);
}

Eigen::Index root_pair_index(Eigen::Index n, Eigen::Index p, Eigen::Index q) {
  Eigen::Index idx = 0;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = a + 1; b < n; ++b) {
      if (a == p && b == q) return idx;
      idx += 2;
    }
  }
  throw Error(ErrorKind::BadInput, "root pair out of range");
}

}  // namespace twostep
