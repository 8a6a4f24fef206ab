// Quantitative consequences of a structured Donaldson series: the first
// nonvanishing degree, existence thresholds for semistable bundles, chamber
// independence of the leading coefficient, and the generic rank of the
// canonical two-form with an exact evaluation certificate.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dinv/donaldson.hpp"

namespace dinv {

// First nonvanishing total degree of the series, detected by expanding on a
// small deterministically-chosen generic probe and taking the minimum over a
// few probe choices.  Errc::order_undetermined if everything vanishes up to
// the truncation bound.
int series_order(const StructuredSeries& series, std::optional<int> truncation = std::nullopt);

struct ExistenceReport {
  std::string family;  // "general_type", "elliptic", or "generic"
  int order_n = 0;     // first nonvanishing degree of the series
  int residue_gap = 0; // d_upper - order_n (0 or 2), set by the mod-4 ladder of d(L,k)
  long d_upper = 0;    // smallest realizable degree with a certified nonzero polynomial
  long k_at_bound = 0; // the k with d(L,k) = d_upper; bundles exist for all k >= this
  bool bound_applicable = false;
  long bound_value = 0;
  std::string bound_source;
  bool equality = false;             // d_upper == bound_value
  std::optional<long> d_lower;       // general type: odd(L) - 3(1 + p_g)
  std::string d_lower_hypothesis;    // hypothesis under which d_lower holds
  std::vector<std::string> assumptions;
};

// Existence threshold from the family closed form of (surface, L).
ExistenceReport existence_bound(const SurfacePtr& surface, const CohClass& L,
                                std::optional<int> truncation = std::nullopt);

// Same analysis for an already-built series (e.g. a blow-up transform); the
// family and the comparison bound are recognized from the series' shape.
ExistenceReport existence_bound(const StructuredSeries& series,
                                std::optional<int> truncation = std::nullopt);

struct WallCheck {
  bool good = false;      // H.L odd integer: leading coefficient chamber-independent
  Rational h_dot_l;
  std::string note;
};

WallCheck wall_check(const SurfacePtr& surface, const CohClass& L);

struct TauRankReport {
  long k = 0;
  long d = 0;            // virtual dimension d(L,k)
  int e_divisors = 0;    // number of effective-divisor sinh factors
  long rank = 0;         // generic rank of the canonical two-form: floor((d-e)/2)
  bool degenerate = false;  // d < e: the polynomial vanishes, no rank statement

  // evaluation certificate (tau_certificate only)
  bool certified = false;
  Rational q0_eff;             // leading closed-form coefficient along the polarization
  Rational certificate_value;  // q(W^{d-e}, H^e) through the full expansion
  Rational expected_value;     // bookkeeping * (W.W/2)^((d-e)/2) * q0_eff * prod(H.C_i)
  bool vanishing_checked = false;
  Rational vanishing_value;    // q(W^{d-e+2}, H^{e-2}), exactly zero when rank is tight

  std::vector<std::string> assumptions;
};

// Rank bookkeeping only.
TauRankReport tau_rank(const StructuredSeries& series, long k);

// Rank plus the exact two-route certificate.  Errc::degree_bookkeeping when
// d - e is negative or odd (no top power of the two-form pairs against the
// divisor factors), Errc::invalid_probe when H pairs to zero with a divisor
// factor.
TauRankReport tau_certificate(const StructuredSeries& series, long k);

}  // namespace dinv
