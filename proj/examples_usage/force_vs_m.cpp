// Force between a PEC plate and a PEMC plate of parameter M, at L = 100 nm.

#include <iomanip>
#include <iostream>
#include <limits>

#include "pemc/pemc.hpp"

int main() {
  using namespace pemc;
  const double separation = 100e-9;
  const double pec = std::numeric_limits<double>::infinity();

  std::cout << "M,delta_rad,force_N_per_m2,ratio_to_casimir\n" << std::setprecision(10);
  for (double m : {pec, 10.0, 3.0, 1.5, 1.0, 0.5, 0.2, 0.0}) {
    const auto pair = force::PlatePair::from_m({m}, {pec}, separation);
    const auto f = force::force_analytic(pair, force::UnitSystem::si);
    std::cout << m << ',' << pair.delta() << ',' << f.value << ','
              << f.value / force::casimir_reference(separation, force::UnitSystem::si) << '\n';
  }
}
