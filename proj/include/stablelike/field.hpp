#pragma once

#include <Eigen/Dense>
#include <atomic>
#include <functional>
#include <string>
#include <vector>

#include "stablelike/expr.hpp"
#include "stablelike/rng.hpp"
#include "stablelike/stable.hpp"

namespace stablelike {

struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  bool contains(const Eigen::VectorXd& x) const {
    for (int i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }

  static Box cube(int dim, double half_width) {
    Box b;
    b.lo = Eigen::VectorXd::Constant(dim, -half_width);
    b.hi = Eigen::VectorXd::Constant(dim, half_width);
    return b;
  }
};

// The coefficient A(x): a d x d array of entry expressions with a validity
// region. Immutable after construction; safe for concurrent reads.
class MatrixField {
 public:
  MatrixField(int dim, std::vector<Expr::Ptr> entries, Box region);

  static MatrixField identity(int dim, Box region);
  static MatrixField parse(int dim, const std::vector<std::string>& entries,
                           Box region);

  int dim() const { return dim_; }
  const Box& region() const { return region_; }
  const Expr::Ptr& entry(int i, int j) const { return entries_[i * dim_ + j]; }
  const std::vector<Expr::Ptr>& entries() const { return entries_; }

  Eigen::MatrixXd evaluate(const Eigen::VectorXd& x) const;
  bool constant() const { return constant_; }

  // Number of evaluate() calls probed outside the region so far (warning
  // counter, not an error).
  std::uint64_t out_of_region_probes() const { return out_of_region_; }

  // The field x -> A(x/lambda) with region scaled by lambda.
  MatrixField scaled(double lambda) const;

 private:
  int dim_;
  std::vector<Expr::Ptr> entries_;
  Box region_;
  bool constant_;
  Eigen::MatrixXd constant_value_;
  mutable std::atomic<std::uint64_t> out_of_region_{0};
};

struct NondegeneracyReport {
  double min_abs_det;
  Eigen::VectorXd argmin;
  double max_entry;      // bound on |A_ij| over probes
  double max_inv_entry;  // bound on |A^{-1}_ij| over probes
  double lambda;         // max of the two, the empirical Lambda
  int samples;
};

// Probes det(A(x)) at random points of the region. Throws std::runtime_error
// if any probe has |det| < 1e-12.
NondegeneracyReport assert_nondegenerate(const MatrixField& field,
                                         int sample_count, RngStream& rng);

// Symbol sum_j |u . a_j(x)|^alpha with a_j the j-th column of A(x).
double symbol(const MatrixField& field, const Eigen::VectorXd& x,
              const Eigen::VectorXd& u, double alpha);

struct QuadratureSpec {
  double inner_cutoff = 1e-3;     // Taylor surrogate below this radius
  int taylor_order = 2;
  int geometric_panels = 64;      // panels on [inner_cutoff, 1]
  double panel_width = 0.2;       // panel width on [1, tail_radius]
  double tail_radius = 0.0;       // 0 = choose from alpha
  int tail_nodes = 64;            // nodes for the power-law tail substitution
  double fd_step = 1e-5;          // finite-difference step scale
  double tail_tolerance = 2e-4;   // budget used when tail_radius is automatic

  void validate() const;
};

struct GeneratorResult {
  double value;
  double est_error;    // refinement difference on the resolved range
  double tail_bound;   // bound on the unresolved oscillatory tail
  bool converged;
};

// Numerical evaluation of the generator applied to f at x: for each column
// a_j, a symmetrized 1-d quadrature of w -> f(x+a_j w)+f(x-a_j w)-2 f(x)
// against c1 |w|^{-1-alpha} dw. The symmetric compensator integrates to zero
// and is dropped exactly.
GeneratorResult apply_generator(
    const MatrixField& field,
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, const StableParams& params,
    const QuadratureSpec& quad = {});

}  // namespace stablelike
