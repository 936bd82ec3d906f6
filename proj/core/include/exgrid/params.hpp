#pragma once

#include <stdexcept>

namespace exgrid {

// Model constants of the two-variable excitable medium.
//
//   du/dt = c1 * u * (u - a) * (1 - u) - c2 * u * v + I + Du * lap(u)
//   dv/dt = b * (u - v)
//
// c2 controls excitability: 0.09 is fully excitable, values past ~0.127 do
// not propagate. The integration step applies the five-node Laplacian at
// unit node spacing (Du multiplies the raw neighbour-difference sum); dx is
// the physical grid spacing used to convert measured node speeds into
// grid-length per time unit.
struct FhnParams {
  double a = 0.13;    // excitation threshold
  double b = 0.013;   // recovery rate
  double c1 = 0.26;   // activation coefficient
  double c2 = 0.1;    // excitability control, swept in [0.09, 0.127]
  double Du = 1.0;    // conductance
  double I = 0.0;     // external stimulation current
  double dt = 0.015;  // time step
  double dx = 2.0;    // grid spacing

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("FhnParams: dt must be > 0");
    if (!(dx > 0.0)) throw std::invalid_argument("FhnParams: dx must be > 0");
    if (!(Du >= 0.0)) throw std::invalid_argument("FhnParams: Du must be >= 0");
  }
};

}  // namespace exgrid
