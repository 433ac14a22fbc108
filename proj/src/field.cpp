#include "stablelike/field.hpp"

#include <cmath>
#include <stdexcept>

namespace stablelike {

namespace {

constexpr double kGlx8[8] = {-0.9602898564975362, -0.7966664774136267,
                             -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975362};
constexpr double kGlw8[8] = {0.1012285362903763, 0.2223810344533745,
                             0.3137066458778873, 0.3626837833783620,
                             0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};

template <class F>
double gl8(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += kGlw8[i] * f(mid + half * kGlx8[i]);
  return s * half;
}

bool is_constant(const Expr& e) {
  if (e.kind == Expr::Kind::Var) return false;
  for (const auto& a : e.args)
    if (!is_constant(*a)) return false;
  return true;
}

}  // namespace

MatrixField::MatrixField(int dim, std::vector<Expr::Ptr> entries, Box region)
    : dim_(dim), entries_(std::move(entries)), region_(std::move(region)) {
  if (dim_ < 1) throw std::invalid_argument("MatrixField: dim must be >= 1");
  if (static_cast<int>(entries_.size()) != dim_ * dim_)
    throw std::invalid_argument("MatrixField: expected d*d entries");
  if (region_.lo.size() != dim_ || region_.hi.size() != dim_)
    throw std::invalid_argument("MatrixField: region dimension mismatch");
  constant_ = true;
  for (const auto& e : entries_) constant_ = constant_ && is_constant(*e);
  if (constant_) {
    constant_value_.resize(dim_, dim_);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        constant_value_(i, j) = entry(i, j)->eval(zero);
  }
}

MatrixField MatrixField::identity(int dim, Box region) {
  std::vector<Expr::Ptr> entries;
  entries.reserve(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      entries.push_back(Expr::make_number(i == j ? 1.0 : 0.0));
  return MatrixField(dim, std::move(entries), std::move(region));
}

MatrixField MatrixField::parse(int dim, const std::vector<std::string>& texts,
                               Box region) {
  std::vector<Expr::Ptr> entries;
  entries.reserve(texts.size());
  for (const auto& t : texts) entries.push_back(parse_expression(t, dim));
  return MatrixField(dim, std::move(entries), std::move(region));
}

Eigen::MatrixXd MatrixField::evaluate(const Eigen::VectorXd& x) const {
  if (!region_.contains(x)) out_of_region_.fetch_add(1, std::memory_order_relaxed);
  if (constant_) return constant_value_;
  Eigen::MatrixXd m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = entry(i, j)->eval(x);
  return m;
}

MatrixField MatrixField::scaled(double lambda) const {
  if (!(lambda > 0.0))
    throw std::invalid_argument("scaled: lambda must be positive");
  std::vector<Expr::Ptr> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_)
    entries.push_back(substitute_scaled(e, lambda));
  Box region;
  region.lo = region_.lo * lambda;
  region.hi = region_.hi * lambda;
  return MatrixField(dim_, std::move(entries), std::move(region));
}

NondegeneracyReport assert_nondegenerate(const MatrixField& field,
                                         int sample_count, RngStream& rng) {
  if (sample_count < 1)
    throw std::invalid_argument("assert_nondegenerate: sample_count < 1");
  const int d = field.dim();
  NondegeneracyReport report;
  report.min_abs_det = std::numeric_limits<double>::infinity();
  report.argmin = Eigen::VectorXd::Zero(d);
  report.max_entry = 0.0;
  report.max_inv_entry = 0.0;
  report.samples = sample_count;
  Eigen::VectorXd x(d);
  for (int s = 0; s < sample_count; ++s) {
    for (int i = 0; i < d; ++i) {
      const double u = rng.uniform01();
      x[i] = field.region().lo[i] +
             u * (field.region().hi[i] - field.region().lo[i]);
    }
    const Eigen::MatrixXd a = field.evaluate(x);
    const double det = std::abs(a.determinant());
    if (det < 1e-12)
      throw std::runtime_error(
          "assert_nondegenerate: |det A(x)| < 1e-12 at a probed point");
    if (det < report.min_abs_det) {
      report.min_abs_det = det;
      report.argmin = x;
    }
    report.max_entry = std::max(report.max_entry, a.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd inv = a.inverse();
    report.max_inv_entry =
        std::max(report.max_inv_entry, inv.cwiseAbs().maxCoeff());
  }
  report.lambda = std::max(report.max_entry, report.max_inv_entry);
  return report;
}

double symbol(const MatrixField& field, const Eigen::VectorXd& x,
              const Eigen::VectorXd& u, double alpha) {
  const Eigen::MatrixXd a = field.evaluate(x);
  double s = 0.0;
  for (int j = 0; j < field.dim(); ++j)
    s += std::pow(std::abs(u.dot(a.col(j))), alpha);
  return s;
}

void QuadratureSpec::validate() const {
  if (geometric_panels < 16 || tail_nodes < 16)
    throw std::invalid_argument("QuadratureSpec: panel counts must be >= 16");
  if (tail_radius != 0.0 && tail_radius < 10.0)
    throw std::invalid_argument("QuadratureSpec: tail radius must be >= 10");
  if (taylor_order != 2)
    throw std::invalid_argument("QuadratureSpec: only Taylor order 2 is supported");
}

namespace {

// One column's contribution at a given panel width; used twice for the
// refinement estimate.
double middle_integral(const std::function<double(double)>& g, double alpha,
                       double eps, double radius, int geometric_panels,
                       double panel_width) {
  double total = 0.0;
  const auto integrand = [&](double w) {
    return g(w) * std::pow(w, -1.0 - alpha);
  };
  // [eps, 1]: geometric panels against the integrable singularity.
  const double ratio = std::pow(1.0 / eps, 1.0 / geometric_panels);
  double prev = eps;
  for (int i = 1; i <= geometric_panels; ++i) {
    const double b = (i == geometric_panels) ? 1.0 : prev * ratio;
    total += gl8(integrand, prev, b);
    prev = b;
  }
  // [1, radius]: short uniform panels so oscillatory integrands stay
  // resolved.
  for (double a = 1.0; a < radius - 1e-12; a += panel_width)
    total += gl8(integrand, a, std::min(a + panel_width, radius));
  return total;
}

}  // namespace

GeneratorResult apply_generator(
    const MatrixField& field,
    const std::function<double(const Eigen::VectorXd&)>& f,
    const Eigen::VectorXd& x, const StableParams& params,
    const QuadratureSpec& quad) {
  quad.validate();
  const double alpha = params.alpha;
  const double c1 = levy_c1(alpha);
  const Eigen::MatrixXd a = field.evaluate(x);
  const double fx = f(x);

  double radius = quad.tail_radius;
  if (radius == 0.0) {
    // Pick the truncation radius so that the worst-case unresolved tail,
    // 4*c1*R^{-alpha}/alpha per column for |f| <= 1, fits the budget.
    radius = std::pow(4.0 * c1 / (alpha * quad.tail_tolerance), 1.0 / alpha);
    radius = std::clamp(radius, 10.0, 2e5);
  }

  GeneratorResult result{0.0, 0.0, 0.0, true};
  for (int j = 0; j < field.dim(); ++j) {
    const Eigen::VectorXd col = a.col(j);
    const auto g = [&](double w) {
      return f(x + w * col) + f(x - w * col) - 2.0 * fx;
    };

    // Inner |w| <= eps: second-order Taylor surrogate. g(w) ~ w^2 f''_col(x).
    const double eps = quad.inner_cutoff;
    const double h = quad.fd_step * std::max(1.0, x.norm());
    const double second_deriv = g(h) / (h * h);
    const double inner =
        second_deriv * std::pow(eps, 2.0 - alpha) / (2.0 - alpha);

    const double coarse = middle_integral(g, alpha, eps, radius,
                                          quad.geometric_panels,
                                          quad.panel_width);
    const double fine = middle_integral(g, alpha, eps, radius,
                                        2 * quad.geometric_panels,
                                        0.5 * quad.panel_width);

    // Tail beyond the radius: the -2 f(x) part is exact; the bounded part is
    // mapped to [0,1] by the power-law substitution v = (R/w)^alpha.
    const double tail_mass = std::pow(radius, -alpha) / alpha;
    double tail_sub = 0.0;
    {
      const int n = quad.tail_nodes;
      for (int i = 0; i < n; ++i) {
        const double v = (i + 0.5) / n;
        const double w = radius * std::pow(v, -1.0 / alpha);
        tail_sub += f(x + w * col) + f(x - w * col);
      }
      tail_sub = tail_mass * (tail_sub / n - 2.0 * fx);
    }

    result.value += c1 * (inner + fine + tail_sub);
    result.est_error += c1 * std::abs(fine - coarse);
    result.tail_bound += 4.0 * c1 * tail_mass;
    if (std::abs(fine - coarse) > 1e-12 &&
        std::abs(fine - coarse) > 0.5 * std::abs(coarse))
      result.converged = false;
  }
  return result;
}

}  // namespace stablelike
