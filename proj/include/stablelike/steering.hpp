#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stablelike/field.hpp"

namespace stablelike {

// Projection of v onto the line spanned by u (u nonzero).
Eigen::VectorXd project(const Eigen::VectorXd& v, const Eigen::VectorXd& u);

struct ProjectionStep {
  int axis;                 // chosen column index (0-based)
  Eigen::VectorXd p;        // projection of v onto A e_axis
  double coefficient;       // p = coefficient * A e_axis
  double residual_norm;     // |v - p|
  double contraction;       // |v - p| / |v|
};

// Picks the column k maximizing |(A^T v)_k| (ties: lowest index) and projects
// v onto it. For nonsingular A the contraction is < 1.
ProjectionStep best_column_step(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& v);

struct PlanStage {
  int axis;
  double length;  // signed jump size r; displacement is r * A e_axis
};

// Greedy iterated-projection plan from x_now toward target: at each stage the
// best column step at the predicted location is emitted and the prediction
// advanced by the projection.
std::vector<PlanStage> plan_segment(const MatrixField& field,
                                    const Eigen::VectorXd& x_now,
                                    const Eigen::VectorXd& target,
                                    int n_stages);

struct TubeSpec {
  std::vector<double> times;              // increasing, times[0] = 0
  std::vector<Eigen::VectorXd> vertices;  // polygonal path
  double eps;
  double t0;

  void validate() const;
  // Piecewise-linear position at time t (clamped to [times.front(), t0]).
  Eigen::VectorXd position(double t) const;
};

// Refines the polygonal path so every segment is shorter than eps/4, splitting
// times proportionally. Endpoints are preserved exactly.
TubeSpec subdivide_tube(const TubeSpec& spec);

}  // namespace stablelike
