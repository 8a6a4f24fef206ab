// Structured Donaldson series and their exact expansions.
//
// A StructuredSeries is a product
//
//   constant * exp(Q/2)? * (sum_i c_i e^{K_i})? * prod(factors) * num/den?
//
// where each factor is exp/sinh/cosh of a class or a finite sum of
// exponentials, and the optional num/den ratio holds sinh-quotient closed
// forms that are expanded through exact division.  divisor_factors records
// which factors are effective-divisor sinh terms (they control the generic
// rank of the canonical two-form); alt optionally carries an equivalent
// representation used for cross-checking.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dinv/basic_classes.hpp"
#include "dinv/series.hpp"
#include "dinv/surface.hpp"

namespace dinv {

enum class FactorKind { exp, sinh, cosh };

struct FuncFactor {
  FactorKind kind = FactorKind::exp;
  CohClass cls;
};

struct ExpTerm {
  Rational coeff;
  CohClass cls;
};

struct SumFactor {
  std::vector<ExpTerm> terms;
};

using Factor = std::variant<FuncFactor, SumFactor>;

struct StructuredSeries {
  SurfacePtr surface;
  CohClass L;

  Rational constant = 1;
  bool gaussian = true;  // carries the exp(Q/2) normalization of its surface
  std::vector<ExpTerm> exp_terms;
  std::vector<Factor> factors;
  std::vector<FuncFactor> ratio_num;
  std::vector<FuncFactor> ratio_den;
  std::vector<CohClass> divisor_factors;
  std::map<std::string, std::string> metadata;
  std::shared_ptr<const StructuredSeries> alt;

  bool has_ratio() const { return !ratio_den.empty() || !ratio_num.empty(); }
};

// Structure-theorem form: exp(Q/2) * sum_i (-1)^((L.L + K_i.L)/2) km_i e^{K_i}.
StructuredSeries assemble_structure(const SurfacePtr& surface, const CohClass& L,
                                    const std::vector<BasicClass>& basics);

// Minimal-model-constant closed form for (blown-up) general type:
// q0 * exp(Q/2) * (e^{-K_min} + s e^{K_min}) * prod sinh(E_i) * prod cosh(E_j).
StructuredSeries closed_form_general_type(const SurfacePtr& surface, const CohClass& L);

// Minimal elliptic over P^1, L vertical:
// q0 * exp(Q/2) * sinh^(p_g-1+n)(-F) / prod_i sinh(-F_i), with the
// exponential-sum representation attached as alt.
StructuredSeries closed_form_elliptic(const SurfacePtr& surface, const CohClass& L);

enum class BlowupParity { odd, even };

// Series over the once-blown-up surface: multiplies by sinh(E) (odd, with
// L -> L + E) or cosh(E) (even), the Gaussian normalization following the
// enlarged intersection form.
StructuredSeries blowup_transform(const StructuredSeries& series, BlowupParity parity);

// Exact expansion on a probe frame built over the series' surface.
ExpandedSeries expand(const StructuredSeries& series, const FramePtr& frame);
ExpandedSeries expand(const StructuredSeries& series,
                      const std::vector<std::pair<std::string, CohClass>>& probes,
                      int truncation);

struct EvalArgument {
  CohClass cls;
  int power = 0;
};

struct EvalRequest {
  std::vector<EvalArgument> arguments;
  int point_power = 0;
  long k = 0;
};

// Polynomial evaluation q_{L,k}(P_1^{a_1} ... P_m^{a_m}, x^b).  Point classes
// reduce through q(..., x^2) = 4 q_{k-1}(...); a degree mismatch against
// d(L,k) gives exactly zero.
Rational evaluate(const StructuredSeries& series, const EvalRequest& request);

}  // namespace dinv
