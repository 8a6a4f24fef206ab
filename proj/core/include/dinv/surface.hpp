// Model of the two supported families of simply connected algebraic surfaces
// with p_g >= 1: (blown-up) minimal general type, and minimal elliptic
// fibrations over P^1 with multiple fibers.
//
// A Surface fixes a finite basis of cohomology classes with an exact pairing
// matrix: the lattice block (K_min and exceptional classes, or the fiber F),
// a polarization H given by its pairings, and a transcendental probe W with
// W.W > 0 that pairs to zero with every algebraic basis class.  Instances are
// immutable after construction and safe to share across threads.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dinv/cohclass.hpp"
#include "dinv/error.hpp"
#include "dinv/rational.hpp"

namespace dinv {

enum class Variant { general_type, elliptic_p1 };

struct SurfaceSpec {
  Variant variant = Variant::general_type;
  int p_g = 1;

  // general type
  int k_min_sq = 1;
  int num_blowups = 0;

  // elliptic over P^1: multiplicities of the multiple fibers, each >= 2,
  // not all even when nonempty
  std::vector<int> multiplicities;

  // polarization: pairings with the lattice basis (general type: K_min then
  // E_1..E_r; elliptic: F) and the self-intersection H.H
  std::vector<Rational> h_pairings;  // defaulted when empty
  Rational h_self = 2;

  // transcendental probe self-intersection W.W > 0
  Rational w_self = 1;

  // expert override for (e, sigma); validated against K^2 = 2e + 3*sigma
  std::optional<std::pair<long, long>> raw_e_sigma;
};

struct CharNumbers {
  long e = 0;       // topological Euler number
  long sigma = 0;   // signature
  long b_plus = 0;  // 1 + 2 p_g
  long chi = 0;     // 1 + p_g (holomorphic Euler characteristic)
  long k_sq = 0;    // K_X . K_X
};

struct Decomposition {
  CohClass l_min;              // E-components removed
  std::vector<int> odd_set;    // indices i with L.E_i odd
  int odd_count = 0;
};

class Surface : public std::enable_shared_from_this<Surface> {
 public:
  static std::shared_ptr<const Surface> build(const SurfaceSpec& spec);

  Variant variant() const { return spec_.variant; }
  const SurfaceSpec& spec() const { return spec_; }
  int p_g() const { return spec_.p_g; }
  int num_blowups() const { return blowups_; }
  bool minimal() const { return blowups_ == 0; }
  const CharNumbers& char_numbers() const { return chars_; }

  const std::vector<std::string>& basis_names() const { return basis_names_; }
  std::size_t basis_size() const { return basis_names_.size(); }
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }

  Rational pair(const CohClass& a, const CohClass& b) const;
  Rational self_int(const CohClass& a) const { return pair(a, a); }

  // basis class accessors
  CohClass class_zero() const;
  CohClass class_from_coords(std::vector<Rational> coords) const;
  CohClass class_basis(std::size_t index) const;
  CohClass class_k_min() const;              // general type
  CohClass class_exceptional(int i) const;   // 1-based, general type / blow-ups
  CohClass class_fiber(const Rational& multiple) const;  // elliptic: multiple * F
  CohClass class_h() const;
  CohClass class_w() const;
  CohClass class_canonical() const;  // K_X

  std::size_t h_index() const { return h_index_; }
  std::size_t w_index() const { return w_index_; }
  int lattice_rank() const { return static_cast<int>(lattice_size_); }

  // True when the class lies in the modeled algebraic lattice with integral
  // coordinates (general type: integer K_min/E coords; elliptic: an integral
  // vertical class, i.e. an integer combination of F and the F_i).
  bool is_integral_lattice_class(const CohClass& L) const;

  // Requires an integral lattice class; no H or W components.
  void validate_determinant_class(const CohClass& L) const;

  Decomposition decompose_L(const CohClass& L) const;  // general type only

  // d(L,k) = 4k - L.L - 3(1 + p_g)
  long virtual_dim(const CohClass& L, long k) const;

  // The unique k with d(L,k) = d, when 4 | (d + L.L + 3(1+p_g)).
  std::optional<long> admissible_k(const CohClass& L, long d) const;

  // Surface with one more exceptional class appended to the basis
  // (e -> e+1, sigma -> sigma-1, K^2 -> K^2-1, K_X -> K_X + E).
  std::shared_ptr<const Surface> blow_up() const;

  // Re-express a class from the surface this one was blown up from.
  CohClass lift(const CohClass& cls) const;

  const std::shared_ptr<const Surface>& parent() const { return parent_; }

 private:
  Surface() = default;

  SurfaceSpec spec_;
  CharNumbers chars_;
  int blowups_ = 0;  // exceptional classes present (general type: spec r; elliptic: via blow_up)
  std::vector<std::string> basis_names_;
  std::vector<std::vector<Rational>> gram_;
  std::size_t lattice_size_ = 0;  // K_min + E block, or F + E block
  std::size_t h_index_ = 0;
  std::size_t w_index_ = 0;
  std::vector<Rational> k_x_coords_;
  std::shared_ptr<const Surface> parent_;

  void check_same_surface(const CohClass& a) const;
};

using SurfacePtr = std::shared_ptr<const Surface>;

}  // namespace dinv
