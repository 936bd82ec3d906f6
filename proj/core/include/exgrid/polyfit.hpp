#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace exgrid {

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Least-squares polynomial coefficients in ascending powers, computed by QR
// factorisation of the Vandermonde system. degree in [0, 4] and
// xs.size() > degree. Throws DegenerateFit when the xs span fewer than
// degree + 1 distinct values, std::invalid_argument on bad sizes.
std::vector<double> polyfit(std::span<const double> xs, std::span<const double> ys,
                            int degree);

// Evaluate ascending-power coefficients at x.
double polyval(std::span<const double> coeffs, double x);

}  // namespace exgrid
