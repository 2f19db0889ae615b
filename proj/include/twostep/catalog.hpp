#pragma once

#include <vector>

#include "twostep/homogeneous_space.hpp"
#include "twostep/root_datum.hpp"

namespace twostep {

// Every constructor re-runs the structural checks on its output and raises
// ConditionViolated if one fails. Spaces whose natural split has an empty
// second summand are returned with a single summand and marked degenerate.

// S^{2n+1} = U(n+1)/U(n) fibred over CP^n, with the fibre direction scaled
// by lambda. B = -trace.
HomogeneousSpace hopf_sphere(int n, double lambda);

// G = G/{e} with <,> = B|_m + lambda B|_{k_sub}, m the B-complement of k_sub.
HomogeneousSpace group_as_space(const AlgebraPtr& algebra, const Subspace& k_sub, double lambda,
                                std::string name);

// SU(2) with the Berger left-invariant metric (k_sub = span{e3}).
HomogeneousSpace su2_berger(double lambda);

// U(2) with k_sub the centre; [m_1, m_2] = 0.
HomogeneousSpace u2_center(double lambda);

// SU(n)/S(U(n_1) x ... x U(n_k)); i0 is the one-based simple root at a block
// boundary. m_1 collects the root spaces with odd c_{i0}.
HomogeneousSpace flag_su(const std::vector<int>& partition, int i0, double lambda);

// SU(3)/T with m_2 = n_l and m_1 the other two modules (l = 1, 2, 3). The
// modules are n_1 = m_alpha(1,2), n_2 = m_alpha(1,3), n_3 = m_alpha(2,3).
HomogeneousSpace wallach_su3(int l, double lambda);

// Grading of su(n) by the eigenvalues of phi = Ad(diag(zeta^{a_1}, ...)),
// zeta = exp(2 pi i / order). components[j] is the real form of the
// zeta^{+-j} eigenspaces, j = 0..t with t = order / 2; components[0] = k.
struct GradedDecomposition {
  int order = 0;
  int t = 0;
  std::vector<Subspace> components;
  Subspace m1;  // odd components
  Subspace m2;  // even components j >= 2
  double order_residual = 0.0;  // ||phi^order - id||

  // Max over 0 <= j <= i <= t of the inclusion residual of [n_i, n_j] in
  // n_{i+j} + n_{i-j} (i + j <= t) or n_{order-(i+j)} + n_{i-j} (i + j > t).
  double grading_residual() const;
};

GradedDecomposition k_symmetric_grading(int n, const std::vector<int>& exponents, int order);

HomogeneousSpace k_symmetric_su(int n, const std::vector<int>& exponents, int order, double lambda);

}  // namespace twostep
