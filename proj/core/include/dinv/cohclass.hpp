#pragma once

#include <memory>
#include <vector>

#include "dinv/rational.hpp"

namespace dinv {

class Surface;

// A cohomology class on a fixed surface, stored as rational coordinates over
// the surface's declared basis.  Pairings go through the surface's form.
struct CohClass {
  std::shared_ptr<const Surface> surface;
  std::vector<Rational> coords;

  bool operator==(const CohClass& rhs) const {
    return surface == rhs.surface && coords == rhs.coords;
  }
};

}  // namespace dinv
