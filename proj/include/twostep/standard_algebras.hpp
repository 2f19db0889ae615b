#pragma once

#include <utility>

#include "twostep/lie_algebra.hpp"

namespace twostep {

// Matrix unit E_pq (zero-based).
Eigen::MatrixXcd matrix_unit(Eigen::Index n, Eigen::Index p, Eigen::Index q);

// Basis ordering shared by su(n) and u(n):
//   for p < q (lexicographic):  E_pq - E_qp,  i(E_pq + E_qp)
//   then diagonal generators:
//     su(n): i(E_pp - E_{p+1,p+1}), p = 0..n-2
//     u(n):  i E_pp,                p = 0..n-1
// For n = 2 the su(2) basis is e1 = [[0,1],[-1,0]], e2 = [[0,i],[i,0]],
// e3 = diag(i,-i).
std::vector<Eigen::MatrixXcd> su_basis(Eigen::Index n);
std::vector<Eigen::MatrixXcd> u_basis(Eigen::Index n);

AlgebraPtr make_su(Eigen::Index n, FormKind form = FormKind::NegKilling, double tol_alg = 1e-9);
AlgebraPtr make_u(Eigen::Index n, FormKind form = FormKind::NegTrace, double tol_alg = 1e-9);

// Position of the first of the two real root vectors for the pair p < q.
Eigen::Index root_pair_index(Eigen::Index n, Eigen::Index p, Eigen::Index q);
// Position of the first diagonal generator.
inline Eigen::Index diagonal_offset(Eigen::Index n) { return n * (n - 1); }

}  // namespace twostep
