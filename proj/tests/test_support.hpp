#pragma once

#include <doctest.h>

#include <dinv/analysis.hpp>
#include <dinv/basic_classes.hpp>
#include <dinv/donaldson.hpp>
#include <dinv/serialize.hpp>
#include <dinv/series.hpp>
#include <dinv/surface.hpp>

#include <functional>
#include <utility>
#include <vector>

namespace ts {

using namespace dinv;

inline SurfacePtr general_type(int p_g, int k_min_sq, int r,
                               std::vector<Rational> h_pairings = {}, Rational h_self = 2,
                               Rational w_self = 1) {
  SurfaceSpec spec;
  spec.variant = Variant::general_type;
  spec.p_g = p_g;
  spec.k_min_sq = k_min_sq;
  spec.num_blowups = r;
  spec.h_pairings = std::move(h_pairings);
  spec.h_self = std::move(h_self);
  spec.w_self = std::move(w_self);
  return Surface::build(spec);
}

inline SurfacePtr elliptic(int p_g, std::vector<int> mults, Rational h_self = 2,
                           Rational w_self = 1) {
  SurfaceSpec spec;
  spec.variant = Variant::elliptic_p1;
  spec.p_g = p_g;
  spec.multiplicities = std::move(mults);
  spec.h_self = std::move(h_self);
  spec.w_self = std::move(w_self);
  return Surface::build(spec);
}

inline void check_errc(Errc want, const std::function<void()>& f) {
  try {
    f();
    FAIL_CHECK("expected a dinv::Error, none was thrown");
  } catch (const Error& e) {
    CHECK_MESSAGE(e.code() == want, "unexpected error class: ", e.what());
  }
}

}  // namespace ts
