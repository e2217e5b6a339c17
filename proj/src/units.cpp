#include "vgsd/units.hpp"

#include <cmath>
#include <stdexcept>

namespace vgsd {

void LineParams::validate() const {
  if (!(std::isfinite(v) && v > 0.0)) throw std::invalid_argument("LineParams: v must be positive");
  if (!(std::isfinite(Z0) && Z0 > 0.0)) throw std::invalid_argument("LineParams: Z0 must be positive");
  if (!(std::isfinite(omega_cut) && omega_cut > 0.0))
    throw std::invalid_argument("LineParams: omega_cut must be positive");
}

}  // namespace vgsd
