#include "dinv/surface.hpp"

#include <algorithm>
#include <numeric>

namespace dinv {

namespace {

bool is_integer(const Rational& q) { return denominator(q) == 1; }

long to_long(const Rational& q, const char* what) {
  if (!is_integer(q)) raise(Errc::characteristic_violation, std::string(what) + " is not an integer");
  return static_cast<long>(numerator(q));
}

}  // namespace

std::shared_ptr<const Surface> Surface::build(const SurfaceSpec& spec) {
  if (spec.p_g < 1) raise(Errc::unsupported_surface, "p_g >= 1 required");
  if (spec.w_self <= 0) raise(Errc::invalid_probe, "W.W > 0 required");

  struct Access : Surface {};
  auto s = std::make_shared<Access>();
  s->spec_ = spec;

  long k_sq_lattice = 0;
  std::size_t lattice = 0;
  if (spec.variant == Variant::general_type) {
    if (spec.k_min_sq < 1)
      raise(Errc::unsupported_surface, "minimal general type requires K_min.K_min >= 1");
    if (spec.num_blowups < 0) raise(Errc::unsupported_surface, "negative blow-up count");
    if (!spec.multiplicities.empty())
      raise(Errc::unsupported_surface, "multiple fibers are an elliptic-surface input");
    s->blowups_ = spec.num_blowups;
    lattice = 1 + static_cast<std::size_t>(spec.num_blowups);
    k_sq_lattice = spec.k_min_sq - spec.num_blowups;
    s->basis_names_.push_back("K_min");
    for (int i = 1; i <= spec.num_blowups; ++i) s->basis_names_.push_back("E" + std::to_string(i));
  } else {
    if (spec.num_blowups != 0)
      raise(Errc::unsupported_surface, "elliptic surfaces are built minimal; use blow_up()");
    for (int p : spec.multiplicities)
      if (p < 2) raise(Errc::unsupported_surface, "fiber multiplicities must be >= 2");
    if (!spec.multiplicities.empty() &&
        std::all_of(spec.multiplicities.begin(), spec.multiplicities.end(),
                    [](int p) { return p % 2 == 0; }))
      raise(Errc::unsupported_surface,
            "gcd of the fiber multiplicities must be odd (not all even)");
    s->blowups_ = 0;
    lattice = 1;
    k_sq_lattice = 0;
    s->basis_names_.push_back("F");
  }
  s->lattice_size_ = lattice;
  s->h_index_ = lattice;
  s->w_index_ = lattice + 1;
  s->basis_names_.push_back("H");
  s->basis_names_.push_back("W");

  const std::size_t n = s->basis_names_.size();
  s->gram_.assign(n, std::vector<Rational>(n, Rational(0)));
  if (spec.variant == Variant::general_type) {
    s->gram_[0][0] = spec.k_min_sq;
    for (std::size_t i = 1; i < lattice; ++i) s->gram_[i][i] = -1;
  }  // elliptic: F.F = 0

  std::vector<Rational> h_pairings = spec.h_pairings;
  if (h_pairings.empty()) {
    h_pairings.assign(lattice, Rational(0));
    h_pairings[0] = 1;
  }
  if (h_pairings.size() != lattice)
    raise(Errc::dimension_mismatch, "polarization needs one pairing per lattice basis class");
  if (spec.variant == Variant::elliptic_p1 && h_pairings[0] <= 0)
    raise(Errc::invalid_probe, "polarization must satisfy H.F > 0");
  for (std::size_t i = 0; i < lattice; ++i) {
    s->gram_[s->h_index_][i] = h_pairings[i];
    s->gram_[i][s->h_index_] = h_pairings[i];
  }
  s->gram_[s->h_index_][s->h_index_] = spec.h_self;
  s->gram_[s->w_index_][s->w_index_] = spec.w_self;

  const long chi = 1 + spec.p_g;
  const long k_sq = k_sq_lattice;
  long e = 12 * chi - k_sq;
  long sigma = k_sq - 8 * chi;
  if (spec.raw_e_sigma) {
    e = spec.raw_e_sigma->first;
    sigma = spec.raw_e_sigma->second;
    if (2 * e + 3 * sigma != k_sq)
      raise(Errc::inconsistent_invariants,
            "raw characteristic numbers violate K^2 = 2e + 3*sigma");
  }
  s->chars_ = CharNumbers{e, sigma, 1 + 2L * spec.p_g, chi, k_sq};

  s->k_x_coords_.assign(n, Rational(0));
  if (spec.variant == Variant::general_type) {
    s->k_x_coords_[0] = 1;
    for (std::size_t i = 1; i < lattice; ++i) s->k_x_coords_[i] = 1;
  } else {
    Rational c = spec.p_g - 1;
    for (int p : spec.multiplicities) c += Rational(p - 1, p);
    s->k_x_coords_[0] = c;
  }
  return s;
}

void Surface::check_same_surface(const CohClass& a) const {
  if (a.surface.get() != this)
    raise(Errc::incompatible_class, "class belongs to a different surface");
  if (a.coords.size() != basis_size())
    raise(Errc::dimension_mismatch, "class coordinate arity mismatch");
}

Rational Surface::pair(const CohClass& a, const CohClass& b) const {
  check_same_surface(a);
  check_same_surface(b);
  Rational acc = 0;
  for (std::size_t i = 0; i < basis_size(); ++i) {
    if (a.coords[i] == 0) continue;
    Rational row = 0;
    for (std::size_t j = 0; j < basis_size(); ++j) {
      if (b.coords[j] == 0) continue;
      row += gram_[i][j] * b.coords[j];
    }
    acc += a.coords[i] * row;
  }
  return acc;
}

CohClass Surface::class_zero() const {
  return CohClass{shared_from_this(), std::vector<Rational>(basis_size(), Rational(0))};
}

CohClass Surface::class_from_coords(std::vector<Rational> coords) const {
  if (coords.size() != basis_size())
    raise(Errc::dimension_mismatch, "class coordinate arity mismatch");
  return CohClass{shared_from_this(), std::move(coords)};
}

CohClass Surface::class_basis(std::size_t index) const {
  if (index >= basis_size()) raise(Errc::dimension_mismatch, "basis index out of range");
  auto c = class_zero();
  c.coords[index] = 1;
  return c;
}

CohClass Surface::class_k_min() const {
  if (spec_.variant != Variant::general_type)
    raise(Errc::unsupported_operation, "K_min is a general-type basis class");
  return class_basis(0);
}

CohClass Surface::class_exceptional(int i) const {
  if (i < 1 || i > blowups_) raise(Errc::dimension_mismatch, "exceptional index out of range");
  // both variants lead the basis with one non-exceptional class (K_min or F)
  return class_basis(static_cast<std::size_t>(i));
}

CohClass Surface::class_fiber(const Rational& multiple) const {
  if (spec_.variant != Variant::elliptic_p1)
    raise(Errc::unsupported_operation, "F is an elliptic-surface basis class");
  auto c = class_zero();
  c.coords[0] = multiple;
  return c;
}

CohClass Surface::class_h() const { return class_basis(h_index_); }
CohClass Surface::class_w() const { return class_basis(w_index_); }

CohClass Surface::class_canonical() const {
  return CohClass{shared_from_this(), k_x_coords_};
}

bool Surface::is_integral_lattice_class(const CohClass& L) const {
  check_same_surface(L);
  if (L.coords[h_index_] != 0 || L.coords[w_index_] != 0) return false;
  if (spec_.variant == Variant::general_type) {
    for (std::size_t i = 0; i < lattice_size_; ++i)
      if (!is_integer(L.coords[i])) return false;
    return true;
  }
  // Elliptic: exceptional coords integral, and the F-multiple must lie in the
  // subgroup of Q generated by 1 and the 1/p_i, which is (g/lcm) Z with
  // lcm = lcm(p_i) and g = gcd(lcm, lcm/p_1, ..., lcm/p_n).
  for (std::size_t i = 1; i < lattice_size_; ++i)
    if (!is_integer(L.coords[i])) return false;
  long lcm = 1;
  for (int p : spec_.multiplicities) lcm = std::lcm(lcm, static_cast<long>(p));
  long g = lcm;
  for (int p : spec_.multiplicities) g = std::gcd(g, lcm / p);
  // lambda integral iff lambda * lcm / g is an integer
  return is_integer(L.coords[0] * Rational(lcm, g));
}

void Surface::validate_determinant_class(const CohClass& L) const {
  check_same_surface(L);
  if (L.coords[h_index_] != 0 || L.coords[w_index_] != 0)
    raise(Errc::unsupported_class,
          "determinant class must lie in the algebraic lattice (no H or W components)");
  if (!is_integral_lattice_class(L))
    raise(Errc::validation, "determinant class must be integral in the lattice");
}

Decomposition Surface::decompose_L(const CohClass& L) const {
  if (spec_.variant != Variant::general_type)
    raise(Errc::unsupported_operation,
          "decomposition against exceptional classes applies to general type");
  validate_determinant_class(L);
  Decomposition d;
  d.l_min = L;
  for (int i = 1; i <= blowups_; ++i) {
    const Rational& b = L.coords[static_cast<std::size_t>(i)];
    d.l_min.coords[static_cast<std::size_t>(i)] = 0;
    if (numerator(b) % 2 != 0) {
      d.odd_set.push_back(i);
      ++d.odd_count;
    }
  }
  return d;
}

long Surface::virtual_dim(const CohClass& L, long k) const {
  validate_determinant_class(L);
  long l_sq = to_long(self_int(L), "L.L");
  return 4 * k - l_sq - 3 * (1 + static_cast<long>(spec_.p_g));
}

std::optional<long> Surface::admissible_k(const CohClass& L, long d) const {
  validate_determinant_class(L);
  long l_sq = to_long(self_int(L), "L.L");
  long num = d + l_sq + 3 * (1 + static_cast<long>(spec_.p_g));
  if (num % 4 != 0) return std::nullopt;
  return num / 4;
}

std::shared_ptr<const Surface> Surface::blow_up() const {
  struct Access : Surface {};
  auto s = std::make_shared<Access>();
  // spec_ keeps the original build recipe; blowups_ tracks the current state
  s->spec_ = spec_;
  s->blowups_ = blowups_ + 1;

  const std::size_t insert_at = lattice_size_;  // new E goes after the lattice block
  s->basis_names_ = basis_names_;
  s->basis_names_.insert(s->basis_names_.begin() + static_cast<std::ptrdiff_t>(insert_at),
                         "E" + std::to_string(s->blowups_));
  s->lattice_size_ = lattice_size_ + 1;
  s->h_index_ = h_index_ + 1;
  s->w_index_ = w_index_ + 1;

  const std::size_t n = basis_size() + 1;
  s->gram_.assign(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < basis_size(); ++i) {
    std::size_t si = i < insert_at ? i : i + 1;
    for (std::size_t j = 0; j < basis_size(); ++j) {
      std::size_t sj = j < insert_at ? j : j + 1;
      s->gram_[si][sj] = gram_[i][j];
    }
  }
  s->gram_[insert_at][insert_at] = -1;

  s->chars_ = chars_;
  s->chars_.e += 1;
  s->chars_.sigma -= 1;
  s->chars_.k_sq -= 1;
  if (s->spec_.raw_e_sigma)
    s->spec_.raw_e_sigma = {s->chars_.e, s->chars_.sigma};

  s->k_x_coords_.assign(n, Rational(0));
  for (std::size_t i = 0; i < basis_size(); ++i) {
    std::size_t si = i < insert_at ? i : i + 1;
    s->k_x_coords_[si] = k_x_coords_[i];
  }
  s->k_x_coords_[insert_at] = 1;

  s->parent_ = shared_from_this();
  return s;
}

CohClass Surface::lift(const CohClass& cls) const {
  if (!parent_) raise(Errc::unsupported_operation, "surface has no blow-down model");
  if (cls.surface != parent_)
    raise(Errc::incompatible_class, "class does not live on the blow-down model");
  const std::size_t insert_at = parent_->lattice_size_;
  std::vector<Rational> coords = cls.coords;
  coords.insert(coords.begin() + static_cast<std::ptrdiff_t>(insert_at), Rational(0));
  return CohClass{shared_from_this(), std::move(coords)};
}

}  // namespace dinv
