#include "exgrid/polyfit.hpp"

#include <set>

#include <Eigen/Dense>

namespace exgrid {

std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys,
                            int degree) {
  if (degree < 0 || degree > 4) {
    throw std::invalid_argument("polyfit: degree must be in [0, 4]");
  }
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("polyfit: xs and ys sizes differ");
  }
  const int n = static_cast<int>(xs.size());
  if (n <= degree) {
    throw std::invalid_argument("polyfit: need more points than the degree");
  }
  std::set<double> distinct(xs.begin(), xs.end());
  if (static_cast<int>(distinct.size()) < degree + 1) {
    throw DegenerateFit("polyfit: fewer distinct x values than coefficients");
  }

  Eigen::MatrixXd V(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      V(i, j) = p;
      p *= xs[i];
    }
    rhs(i) = ys[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
  if (qr.rank() < degree + 1) {
    throw DegenerateFit("polyfit: rank-deficient Vandermonde system");
  }
  const Eigen::VectorXd sol = qr.solve(rhs);
  return std::vector<double>(sol.data(), sol.data() + sol.size());
}

double polyval(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace exgrid
