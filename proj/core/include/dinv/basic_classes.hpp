// Seiberg-Witten basic classes and their multiplicities.
//
// km is the coefficient weight appearing in the structure-theorem form of the
// Donaldson series; it factors as km = witten_factor * sw, with
// witten_factor = 2^(2 + (7e + 11 sigma)/4).  For the elliptic family sw is
// the signed binomial enumeration over the multiple-fiber data; for general
// type the km values are defined by expanding the closed-form series, which
// pins km(-K_X) = 1 on minimal surfaces with K^2 = p_g - 1 and |sw| = 1
// throughout the family.
#pragma once

#include <vector>

#include "dinv/surface.hpp"

namespace dinv {

struct BasicClass {
  CohClass cls;
  Rational sw;
  Rational km;
};

// 2^(2 + (7e + 11 sigma)/4); may be smaller than 1.
Rational witten_factor(const SurfacePtr& surface);

// All basic classes of a minimal elliptic surface over P^1, merged over the
// enumeration (d, a_1..a_n), sorted by F-coefficient.  Classes whose merged
// coefficient vanishes are dropped.
std::vector<BasicClass> basic_classes_elliptic(const SurfacePtr& surface);

// All 2^(r+1) sign patterns +-K_min +- E_i with km read off from the
// closed-form series for determinant class L.
std::vector<BasicClass> basic_classes_general_type(const SurfacePtr& surface, const CohClass& L);

}  // namespace dinv
