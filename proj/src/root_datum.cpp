#include "twostep/root_datum.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "twostep/errors.hpp"
#include "twostep/standard_algebras.hpp"

namespace twostep {

void RootDatum::validate() const {
  if (rank < 1) throw Error(ErrorKind::BadInput, "root datum rank must be positive");
  for (const auto& r : positive_roots) {
    if (static_cast<int>(r.size()) != rank) throw Error(ErrorKind::BadInput, "root coefficient vector of wrong length");
    if (std::any_of(r.begin(), r.end(), [](int c) { return c < 0; })) {
      throw Error(ErrorKind::BadInput, "positive root with a negative coefficient");
    }
    if (std::all_of(r.begin(), r.end(), [](int c) { return c == 0; })) {
      throw Error(ErrorKind::BadInput, "zero root");
    }
  }
  for (int i : complementary_set) {
    if (i < 1 || i > rank) throw Error(ErrorKind::BadInput, "complementary root index out of range");
  }
  if (!realization.empty() && realization.size() != positive_roots.size()) {
    throw Error(ErrorKind::BadInput, "realization does not cover every positive root");
  }
}

bool RootDatum::in_m(std::size_t root) const {
  const auto& c = positive_roots.at(root);
  return std::any_of(complementary_set.begin(), complementary_set.end(),
                     [&](int i) { return c[static_cast<std::size_t>(i - 1)] != 0; });
}

std::optional<std::size_t> RootDatum::find(const std::vector<int>& coeffs) const {
  for (std::size_t i = 0; i < positive_roots.size(); ++i) {
    if (positive_roots[i] == coeffs) return i;
  }
  return std::nullopt;
}

namespace {
void require_complementary(const RootDatum& datum, int i0) {
  if (std::find(datum.complementary_set.begin(), datum.complementary_set.end(), i0) ==
      datum.complementary_set.end()) {
    throw Error(ErrorKind::BadInput,
                "simple root " + std::to_string(i0) + " is not in the set of complementary roots");
  }
}
}  // namespace

ParityClasses parity_classes(const RootDatum& datum, int i0) {
  datum.validate();
  require_complementary(datum, i0);
  ParityClasses out;
  for (std::size_t a = 0; a < datum.positive_roots.size(); ++a) {
    if (!datum.in_m(a)) continue;
    const int c = datum.positive_roots[a][static_cast<std::size_t>(i0 - 1)];
    (c % 2 == 1 ? out.odd : out.even).push_back(a);
  }
  return out;
}

int parity_closure_violations(const RootDatum& datum, int i0) {
  const ParityClasses cls = parity_classes(datum, i0);
  auto is_odd = [&](std::size_t r) { return std::find(cls.odd.begin(), cls.odd.end(), r) != cls.odd.end(); };
  int violations = 0;
  for (std::size_t a : cls.odd) {
    for (std::size_t b : cls.even) {
      const auto& ca = datum.positive_roots[a];
      const auto& cb = datum.positive_roots[b];
      std::vector<int> sum(ca.size()), diff(ca.size()), rdiff(ca.size());
      for (std::size_t i = 0; i < ca.size(); ++i) {
        sum[i] = ca[i] + cb[i];
        diff[i] = ca[i] - cb[i];
        rdiff[i] = -diff[i];
      }
      for (const auto& cand : {sum, diff, rdiff}) {
        if (auto r = datum.find(cand); r && !is_odd(*r)) ++violations;
      }
    }
  }
  return violations;
}

ParitySplit root_parity_split(const RootDatum& datum, int i0) {
  if (!datum.has_realization()) throw Error(ErrorKind::BadInput, "root datum has no realization");
  ParitySplit out;
  out.classes = parity_classes(datum, i0);
  const AlgebraPtr& alg = datum.realization.front().algebra();
  auto sum_of = [&](const std::vector<std::size_t>& roots, const char* label) {
    std::vector<AlgebraVector> vs;
    for (std::size_t r : roots) {
      const Subspace& s = datum.realization[r];
      for (Eigen::Index j = 0; j < s.dim(); ++j) vs.push_back(s.vector(j));
    }
    return Subspace::span(alg, vs, label);
  };
  out.m1 = sum_of(out.classes.odd, "m1");
  out.m2 = sum_of(out.classes.even, "m2");
  out.degenerate = out.m2.empty();
  out.inclusion_residual = bracket_inclusion_residual(out.m1, out.m2, out.m1);
  if (out.inclusion_residual > alg->tol_alg()) {
    std::ostringstream os;
    os << "realized parity split violates [m1, m2] in m1 (residual " << out.inclusion_residual << ")";
    throw Error(ErrorKind::ConditionViolated, os.str());
  }
  return out;
}

RootDatum type_a_flag_datum(const AlgebraPtr& su, const std::vector<int>& partition) {
  if (partition.empty() || std::any_of(partition.begin(), partition.end(), [](int b) { return b < 1; })) {
    throw Error(ErrorKind::BadInput, "partition blocks must be positive");
  }
  const int n = std::accumulate(partition.begin(), partition.end(), 0);
  if (n < 2) throw Error(ErrorKind::BadInput, "partition must sum to at least 2");
  if (su->ambient_dim() != n || su->dim() != n * n - 1) {
    throw Error(ErrorKind::BadInput, "algebra is not su(" + std::to_string(n) + ")");
  }
  RootDatum datum;
  datum.rank = n - 1;
  int boundary = 0;
  for (std::size_t b = 0; b + 1 < partition.size(); ++b) {
    boundary += partition[b];
    datum.complementary_set.push_back(boundary);
  }
  // e_p - e_q = alpha_{p+1} + ... + alpha_q (one-based simple roots).
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      std::vector<int> c(static_cast<std::size_t>(n - 1), 0);
      for (int j = p; j < q; ++j) c[static_cast<std::size_t>(j)] = 1;
      datum.positive_roots.push_back(c);
      const Eigen::Index idx = root_pair_index(n, p, q);
      std::ostringstream label;
      label << "m_alpha(" << p + 1 << "," << q + 1 << ")";
      datum.realization.push_back(
          Subspace::span(su, std::vector<AlgebraVector>{su->unit(idx), su->unit(idx + 1)}, label.str()));
    }
  }
  return datum;
}

RootDatum g2_datum(std::vector<int> complementary_set) {
  RootDatum d;
  d.rank = 2;
  d.positive_roots = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {3, 2}};
  d.complementary_set = std::move(complementary_set);
  d.validate();
  return d;
}

}  // namespace twostep
