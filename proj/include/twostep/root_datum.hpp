#pragma once

#include <optional>
#include <vector>

#include "twostep/subspace.hpp"

namespace twostep {

/// Positive roots written over the simple roots, alpha = sum_i c_i alpha_i,
/// together with the set of simple complementary roots Pi_M (one-based
/// indices) and, optionally, a realization of each root space m_alpha as a
/// two-dimensional subspace of a matrix algebra.
struct RootDatum {
  int rank = 0;
  std::vector<std::vector<int>> positive_roots;
  std::vector<int> complementary_set;
  std::vector<Subspace> realization;  // empty for an abstract datum

  // Throws BadInput on malformed data.
  void validate() const;
  // alpha in R_M^+: some complementary coefficient is nonzero.
  bool in_m(std::size_t root) const;
  bool has_realization() const { return !realization.empty(); }
  // Index of the positive root with these coefficients.
  std::optional<std::size_t> find(const std::vector<int>& coeffs) const;
};

struct ParityClasses {
  std::vector<std::size_t> odd;   // roots of R_M^+ with odd c_{i0}
  std::vector<std::size_t> even;  // roots of R_M^+ with even c_{i0}
};

ParityClasses parity_classes(const RootDatum& datum, int i0);

// Integer-level count of pairs (alpha odd, beta even) for which alpha + beta
// or |alpha - beta| is a positive root outside the odd class. Zero certifies
// [m_1, m_2] in m_1 at the level of root bookkeeping.
int parity_closure_violations(const RootDatum& datum, int i0);

struct ParitySplit {
  ParityClasses classes;
  Subspace m1;
  Subspace m2;
  bool degenerate = false;  // m_2 = {0}
  double inclusion_residual = 0.0;
};

// Splits R_M^+ by the parity of c_{i0} and sums the realized root spaces.
// The inclusion [m_1, m_2] in m_1 is re-certified numerically; a failure
// raises ConditionViolated.
ParitySplit root_parity_split(const RootDatum& datum, int i0);

// Type A datum for SU(n) flag manifolds of the given block partition, with
// root spaces realized in `su` (which must be make_su(n)).
RootDatum type_a_flag_datum(const AlgebraPtr& su, const std::vector<int>& partition);

// Abstract G2 datum (alpha_1 short); with Pi_M = {alpha_1} the coefficient
// c_1 takes the values 1, 2, 3.
RootDatum g2_datum(std::vector<int> complementary_set);

}  // namespace twostep
