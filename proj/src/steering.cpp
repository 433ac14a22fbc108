#include "stablelike/steering.hpp"

#include <cmath>
#include <stdexcept>

namespace stablelike {

Eigen::VectorXd project(const Eigen::VectorXd& v, const Eigen::VectorXd& u) {
  const double un2 = u.squaredNorm();
  if (!(un2 > 0.0)) throw std::invalid_argument("project: u must be nonzero");
  return (v.dot(u) / un2) * u;
}

ProjectionStep best_column_step(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& v) {
  const int d = static_cast<int>(a.cols());
  if (std::abs(a.determinant()) < 1e-300)
    throw std::invalid_argument("best_column_step: singular matrix");
  const Eigen::VectorXd atv = a.transpose() * v;
  int k = 0;
  for (int j = 1; j < d; ++j)
    if (std::abs(atv[j]) > std::abs(atv[k])) k = j;  // ties keep lowest index
  ProjectionStep step;
  step.axis = k;
  const Eigen::VectorXd uk = a.col(k);
  step.coefficient = v.dot(uk) / uk.squaredNorm();
  step.p = step.coefficient * uk;
  step.residual_norm = (v - step.p).norm();
  const double vn = v.norm();
  step.contraction = vn > 0.0 ? step.residual_norm / vn : 0.0;
  return step;
}

std::vector<PlanStage> plan_segment(const MatrixField& field,
                                    const Eigen::VectorXd& x_now,
                                    const Eigen::VectorXd& target,
                                    int n_stages) {
  if (!field.region().contains(target))
    throw std::invalid_argument("plan_segment: target outside field region");
  std::vector<PlanStage> plan;
  Eigen::VectorXd x_pred = x_now;
  for (int stage = 0; stage < n_stages; ++stage) {
    const Eigen::VectorXd v = target - x_pred;
    if (v.norm() == 0.0) break;
    const ProjectionStep step = best_column_step(field.evaluate(x_pred), v);
    plan.push_back({step.axis, step.coefficient});
    x_pred += step.p;
  }
  return plan;
}

void TubeSpec::validate() const {
  if (times.size() != vertices.size() || times.size() < 2)
    throw std::invalid_argument("TubeSpec: need matched times and vertices");
  if (!(eps > 0.0)) throw std::invalid_argument("TubeSpec: eps must be > 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("TubeSpec: vertex times must increase");
}

Eigen::VectorXd TubeSpec::position(double t) const {
  if (t <= times.front()) return vertices.front();
  if (t >= times.back()) return vertices.back();
  std::size_t i = 1;
  while (times[i] < t) ++i;
  const double w = (t - times[i - 1]) / (times[i] - times[i - 1]);
  return (1.0 - w) * vertices[i - 1] + w * vertices[i];
}

TubeSpec subdivide_tube(const TubeSpec& spec) {
  spec.validate();
  TubeSpec out;
  out.eps = spec.eps;
  out.t0 = spec.t0;
  out.times.push_back(spec.times.front());
  out.vertices.push_back(spec.vertices.front());
  for (std::size_t i = 1; i < spec.vertices.size(); ++i) {
    const Eigen::VectorXd& a = spec.vertices[i - 1];
    const Eigen::VectorXd& b = spec.vertices[i];
    const double len = (b - a).norm();
    const int pieces =
        std::max(1, static_cast<int>(std::ceil(len / (spec.eps / 4.0) + 1e-12)));
    for (int p = 1; p <= pieces; ++p) {
      const double w = static_cast<double>(p) / pieces;
      // Endpoints are copied exactly; only interior points are interpolated.
      out.times.push_back(spec.times[i - 1] +
                          w * (spec.times[i] - spec.times[i - 1]));
      out.vertices.push_back(p == pieces
                                 ? b
                                 : Eigen::VectorXd((1.0 - w) * a + w * b));
    }
  }
  return out;
}

}  // namespace stablelike
