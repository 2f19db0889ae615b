#include "twostep/geodesic_ode.hpp"

#include <cmath>
#include <sstream>

#include "twostep/errors.hpp"

namespace twostep {

namespace {

struct State {
  Eigen::MatrixXcd g;
  Eigen::VectorXd u;  // coordinates of x over the orthonormal basis of m
};

}  // namespace

GeodesicTrajectory integrate_geodesic(const HomogeneousSpace& space, const AlgebraVector& v0, double t_end,
                                      double step, double output_stride, double tol_ode) {
  if (!(step > 0.0)) throw Error(ErrorKind::BadInput, "step must be positive");
  if (!(t_end > 0.0)) throw Error(ErrorKind::BadInput, "t_end must be positive");
  space.require_in_m(v0);
  const auto& alg = space.algebra();
  const Subspace& m = space.m();

  const long n_steps = std::max(1L, static_cast<long>(std::ceil(t_end / step - 1e-9)));
  const double h = t_end / static_cast<double>(n_steps);
  long stride = 1;
  if (output_stride > 0.0) stride = std::max(1L, std::lround(output_stride / h));

  auto rhs = [&](const State& s) {
    const AlgebraVector x = m.from_coords(s.u);
    State d;
    d.g = s.g * alg->to_matrix(x);
    d.u = -m.coords(space.nomizu_U(x, x));
    return d;
  };
  auto axpy = [](const State& s, double a, const State& d) {
    return State{s.g + a * d.g, s.u + a * d.u};
  };

  GeodesicTrajectory out;
  out.step = h;
  State s{Eigen::MatrixXcd::Identity(alg->ambient_dim(), alg->ambient_dim()), m.coords(v0)};
  const double e0 = space.deformed_inner(v0, v0);
  out.samples.push_back({0.0, {s.g}, v0});

  for (long i = 1; i <= n_steps; ++i) {
    const State k1 = rhs(s);
    const State k2 = rhs(axpy(s, 0.5 * h, k1));
    const State k3 = rhs(axpy(s, 0.5 * h, k2));
    const State k4 = rhs(axpy(s, h, k3));
    s.g += (h / 6.0) * (k1.g + 2.0 * k2.g + 2.0 * k3.g + k4.g);
    s.u += (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);

    if (i % stride == 0 || i == n_steps) {
      const double t = static_cast<double>(i) * h;
      const AlgebraVector x = m.from_coords(s.u);
      const double drift = std::abs(space.deformed_inner(x, x) - e0) / std::max(1.0, t);
      out.max_speed_drift = std::max(out.max_speed_drift, drift);
      if (!(drift <= 100.0 * tol_ode)) {
        std::ostringstream os;
        os << "speed drift " << drift << " per unit time exceeds " << 100.0 * tol_ode << " with step " << h;
        throw NumericalError(ErrorKind::StepTooLarge, os.str(), t);
      }
      out.samples.push_back({t, {s.g}, x});
    }
  }
  return out;
}

double coset_distance(const GroupElement& g1, const GroupElement& g2, const HomogeneousSpace& space) {
  const auto& alg = space.algebra();
  const AlgebraVector xi = alg->group_log(g1.inverse() * g2, 1e-6);
  return alg->norm(space.project_m(xi));
}

}  // namespace twostep
