#include "dinv/basic_classes.hpp"

#include <algorithm>
#include <map>

namespace dinv {

namespace {

int sign_pow(long n) { return n % 2 == 0 ? 1 : -1; }

long even_half(const Rational& q, const char* what) {
  if (denominator(q) != 1)
    raise(Errc::characteristic_violation, std::string(what) + " is not an integer");
  Int n = numerator(q);
  if (n % 2 != 0)
    raise(Errc::characteristic_violation, std::string(what) + " is odd; class is not characteristic");
  return static_cast<long>(n / 2);
}

}  // namespace

Rational witten_factor(const SurfacePtr& surface) {
  const auto& ch = surface->char_numbers();
  long num = 7 * ch.e + 11 * ch.sigma;
  if (num % 4 != 0)
    raise(Errc::inconsistent_invariants, "7e + 11*sigma is not divisible by 4");
  return pow2(2 + num / 4);
}

std::vector<BasicClass> basic_classes_elliptic(const SurfacePtr& surface) {
  if (surface->variant() != Variant::elliptic_p1)
    raise(Errc::unsupported_surface, "elliptic enumeration requires an elliptic surface");
  if (!surface->minimal())
    raise(Errc::unsupported_surface, "elliptic enumeration requires the minimal surface");
  const int p_g = surface->p_g();
  const auto& mult = surface->spec().multiplicities;
  const Rational wf = witten_factor(surface);

  // K = -K_X + 2(d F + sum_i a_i F_i) as a rational multiple of F; classes
  // that coincide in rational cohomology merge with summed multiplicities.
  std::map<Rational, Rational> merged;
  std::vector<int> a(mult.size(), 0);
  for (int d = 0; d < p_g; ++d) {
    Rational sw = Rational(binomial(p_g - 1, d)) * sign_pow(d);
    std::fill(a.begin(), a.end(), 0);
    while (true) {
      Rational c = 2 * d - (p_g - 1);
      for (std::size_t i = 0; i < mult.size(); ++i)
        c += Rational(2 * a[i] - (mult[i] - 1), mult[i]);
      merged[c] += sw;
      std::size_t pos = 0;
      while (pos < mult.size() && a[pos] == mult[pos] - 1) a[pos++] = 0;
      if (pos == mult.size()) break;
      ++a[pos];
    }
  }

  std::vector<BasicClass> out;
  for (const auto& [c, sw] : merged) {
    if (sw == 0) continue;
    out.push_back(BasicClass{surface->class_fiber(c), sw, wf * sw});
  }
  return out;
}

std::vector<BasicClass> basic_classes_general_type(const SurfacePtr& surface, const CohClass& L) {
  if (surface->variant() != Variant::general_type)
    raise(Errc::unsupported_surface, "sign-pattern enumeration requires a general-type surface");
  auto dec = surface->decompose_L(L);
  const int r = surface->num_blowups();
  const int p_g = surface->p_g();
  const long chi = surface->char_numbers().chi;
  const long k_min_sq = surface->spec().k_min_sq;

  const CohClass k_min = surface->class_k_min();
  const Rational l_min_sq = surface->self_int(dec.l_min);
  const Rational k_dot_l_min = surface->pair(k_min, dec.l_min);

  // closed-form data: constant, exponential-pair sign, and the 2^-r from
  // splitting each sinh/cosh factor into exponentials
  const long sign_exp = even_half(l_min_sq - k_dot_l_min, "L_min.L_min - K_min.L_min");
  const Rational q0 = pow2(2 + k_min_sq - chi) * sign_pow(sign_exp);
  const int pair_sign = sign_pow(1 + p_g + static_cast<long>(numerator(l_min_sq)));
  const Rational half_pow = pow_rational(Rational(1, 2), r);
  const Rational wf = witten_factor(surface);

  std::vector<bool> odd(static_cast<std::size_t>(r) + 1, false);
  for (int i : dec.odd_set) odd[static_cast<std::size_t>(i)] = true;

  std::vector<BasicClass> out;
  for (unsigned long mask = 0; mask < (1UL << (r + 1)); ++mask) {
    auto k_cls = surface->class_zero();
    int eps0 = (mask & 1UL) ? 1 : -1;
    k_cls.coords[0] = eps0;
    Rational coef = q0 * half_pow * (eps0 == -1 ? 1 : pair_sign);
    for (int i = 1; i <= r; ++i) {
      int eps = (mask >> i) & 1UL ? 1 : -1;
      k_cls.coords[static_cast<std::size_t>(i)] = eps;
      if (odd[static_cast<std::size_t>(i)]) coef *= eps;
    }
    const long struct_sign = even_half(surface->self_int(L) + surface->pair(k_cls, L),
                                       "L.L + K.L");
    Rational km = coef * sign_pow(struct_sign);
    out.push_back(BasicClass{std::move(k_cls), km / wf, km});
  }
  std::sort(out.begin(), out.end(), [](const BasicClass& a, const BasicClass& b) {
    return a.cls.coords < b.cls.coords;
  });
  return out;
}

}  // namespace dinv
