#include "dinv/analysis.hpp"

#include <algorithm>
#include <set>

namespace dinv {

namespace {

// Deterministic probe candidates: H plus the lattice basis with spread-out
// weights, one candidate per multiplier.  A candidate is admissible when every
// sinh linear form is nonzero on it and exponential pairings stay distinct, so
// each closed-form factor expands at its minimal order.
std::vector<CohClass> generic_probes(const StructuredSeries& series, int count) {
  const SurfacePtr& surface = series.surface;
  const int lattice = surface->lattice_rank();

  auto admissible = [&](const CohClass& c) {
    auto sinh_ok = [&](const FuncFactor& f) {
      return f.kind != FactorKind::sinh || surface->pair(f.cls, c) != 0;
    };
    auto distinct = [&](const std::vector<ExpTerm>& terms) {
      std::set<Rational> seen;
      for (const auto& t : terms)
        if (!seen.insert(surface->pair(t.cls, c)).second) return false;
      return true;
    };
    if (!distinct(series.exp_terms)) return false;
    for (const auto& f : series.factors) {
      if (std::holds_alternative<FuncFactor>(f)) {
        if (!sinh_ok(std::get<FuncFactor>(f))) return false;
      } else if (!distinct(std::get<SumFactor>(f).terms)) {
        return false;
      }
    }
    for (const auto& f : series.ratio_num)
      if (!sinh_ok(f)) return false;
    for (const auto& f : series.ratio_den)
      if (!sinh_ok(f)) return false;
    return true;
  };

  std::vector<CohClass> probes;
  for (int m = 1; m <= 16 && static_cast<int>(probes.size()) < count; ++m) {
    std::vector<Rational> coords(surface->basis_size(), Rational(0));
    coords[surface->h_index()] = 1;
    for (int i = 0; i < lattice; ++i) coords[static_cast<std::size_t>(i)] = m * (i + 1);
    CohClass c = surface->class_from_coords(std::move(coords));
    if (admissible(c)) probes.push_back(std::move(c));
  }
  if (probes.empty())
    raise(Errc::order_undetermined, "no admissible generic probe for this series");
  return probes;
}

int default_truncation(const StructuredSeries& series) {
  const int base = static_cast<int>(series.divisor_factors.size()) +
                   static_cast<int>(series.ratio_den.size()) + series.surface->p_g();
  return std::max(16, base + 8);
}

std::string family_of(const StructuredSeries& series) {
  auto it = series.metadata.find("form");
  const std::string form = it == series.metadata.end() ? "" : it->second;
  if (form == "general-type closed form") return "general_type";
  if (form.find("elliptic") != std::string::npos && series.surface->minimal() &&
      series.surface->variant() == Variant::elliptic_p1)
    return "elliptic";
  return "generic";
}

}  // namespace

int series_order(const StructuredSeries& series, std::optional<int> truncation) {
  const int D = truncation.value_or(default_truncation(series));
  std::optional<int> best;
  for (const auto& c : generic_probes(series, 3)) {
    ExpandedSeries s = expand(series, {{"c", c}}, D);
    if (s.is_zero()) continue;
    const int n = order(s);
    if (!best || n < *best) best = n;
  }
  if (!best)
    raise(Errc::order_undetermined,
          "series vanishes on every generic probe up to degree " + std::to_string(D));
  return *best;
}

ExistenceReport existence_bound(const SurfacePtr& surface, const CohClass& L,
                                std::optional<int> truncation) {
  StructuredSeries series = surface->variant() == Variant::general_type
                                ? closed_form_general_type(surface, L)
                                : closed_form_elliptic(surface, L);
  return existence_bound(series, truncation);
}

ExistenceReport existence_bound(const StructuredSeries& series,
                                std::optional<int> truncation) {
  const SurfacePtr& surface = series.surface;
  surface->validate_determinant_class(series.L);
  const int D = truncation.value_or(default_truncation(series));

  ExistenceReport rep;
  rep.family = family_of(series);
  rep.order_n = series_order(series, D);

  // degrees realizable as d(L,k) form one residue class mod 4
  const Rational l_sq = surface->self_int(series.L);
  const long chi = surface->char_numbers().chi;
  const long r_target =
      (((-static_cast<long>(numerator(l_sq)) - 3 * chi) % 4) + 4) % 4;
  const long gap = (((r_target - rep.order_n) % 4) + 4) % 4;
  if (gap != 0 && gap != 2)
    raise(Errc::internal_check, "first nonvanishing degree breaks the parity law");
  rep.residue_gap = static_cast<int>(gap);
  rep.d_upper = rep.order_n + gap;

  if (gap == 2) {
    // certify a nonzero coefficient two above the order on some generic probe
    if (D < rep.d_upper)
      raise(Errc::truncation_exceeded,
            "truncation too small to certify the degree above the order");
    bool certified = false;
    for (const auto& c : generic_probes(series, 3)) {
      ExpandedSeries s = expand(series, {{"c", c}}, D);
      if (s.coefficient(Monomial{static_cast<int>(rep.d_upper)}) != 0) {
        certified = true;
        break;
      }
    }
    if (!certified)
      raise(Errc::internal_check,
            "could not certify a nonzero coefficient at the realizable degree");
  }

  const auto k = surface->admissible_k(series.L, rep.d_upper);
  if (!k) raise(Errc::internal_check, "realizable degree is not of the form d(L,k)");
  rep.k_at_bound = *k;

  if (rep.family == "general_type") {
    rep.bound_applicable = true;
    rep.bound_value = static_cast<long>(series.divisor_factors.size()) + 3;
    rep.bound_source = "general-type closed bound: odd(L) + 3";
    rep.d_lower = static_cast<long>(series.divisor_factors.size()) -
                  3 * (1 + static_cast<long>(surface->p_g()));
    rep.d_lower_hypothesis =
        "holds for a polarization sufficiently close to a class pulled back "
        "from the minimal model (closeness not quantified)";
  } else if (rep.family == "elliptic") {
    // family_of only labels minimal elliptic models "elliptic", so the
    // multiple-fiber comparison bound is stated for the right surface
    const int n_fib = static_cast<int>(surface->spec().multiplicities.size());
    rep.bound_value = n_fib + surface->p_g() - 1;
    rep.bound_source = "multiple-fiber bound: n + p_g - 1";
    rep.bound_applicable = n_fib >= 2;
    if (!rep.bound_applicable)
      rep.assumptions.push_back(
          "comparison bound needs an odd gcd over at least two multiple fibers; "
          "not applicable here");
  }
  if (rep.bound_applicable && rep.d_upper > rep.bound_value)
    raise(Errc::internal_check, "existence threshold exceeds the family bound");
  rep.equality = rep.bound_applicable && rep.d_upper == rep.bound_value;

  rep.assumptions.push_back("surface of simple type; series taken in the exp(Q/2) normalization");
  rep.assumptions.push_back(
      "order read off deterministic generic probes (sinh pairings nonzero, "
      "exponential pairings distinct)");
  if (rep.family == "generic")
    rep.assumptions.push_back("no family comparison bound applies to this series shape");
  return rep;
}

WallCheck wall_check(const SurfacePtr& surface, const CohClass& L) {
  surface->validate_determinant_class(L);
  WallCheck w;
  w.h_dot_l = surface->pair(surface->class_h(), L);
  w.good = denominator(w.h_dot_l) == 1 && numerator(w.h_dot_l) % 2 != 0;
  w.note = w.good
               ? "H.L is an odd integer: the sufficient wall criterion holds (assuming H "
                 "is an integral class), so the evaluation is chamber-independent"
               : "H.L is not an odd integer: the sufficient criterion is inconclusive; "
                 "the full wall condition over Pic is not decidable from lattice data";
  return w;
}

TauRankReport tau_rank(const StructuredSeries& series, long k) {
  if (!series.gaussian)
    raise(Errc::validation, "two-form analysis requires the Gaussian normalization");
  TauRankReport rep;
  rep.k = k;
  rep.d = series.surface->virtual_dim(series.L, k);
  rep.e_divisors = static_cast<int>(series.divisor_factors.size());
  rep.degenerate = rep.d < rep.e_divisors;
  rep.rank = rep.degenerate ? 0 : (rep.d - rep.e_divisors) / 2;

  if (family_of(series) == "elliptic" && !rep.degenerate) {
    const long expected = 2 * k - 2 * series.surface->p_g() - 1;
    if (rep.rank != expected)
      raise(Errc::internal_check, "elliptic rank identity 2k - 2 p_g - 1 failed");
  }
  rep.assumptions.push_back(
      "polarization H assumed ample; moduli spaces smooth of expected dimension for large k");
  return rep;
}

TauRankReport tau_certificate(const StructuredSeries& series, long k) {
  TauRankReport rep = tau_rank(series, k);
  const SurfacePtr& surface = series.surface;
  if (rep.degenerate)
    raise(Errc::degree_bookkeeping, "d(L,k) below the divisor factor count");
  const long de = rep.d - rep.e_divisors;
  if (de % 2 != 0)
    raise(Errc::degree_bookkeeping,
          "d - e odd: the two-form top power does not pair against the divisor factors");

  const CohClass H = surface->class_h();
  const CohClass W = surface->class_w();
  Rational prod_hc = 1;
  for (const auto& c : series.divisor_factors) {
    const Rational p = surface->pair(H, c);
    if (p == 0)
      raise(Errc::invalid_probe, "polarization pairs to zero with a divisor factor");
    prod_hc *= p;
  }

  const int e = rep.e_divisors;
  ExpandedSeries along_h = expand(series, {{"H", H}}, e);
  const Rational lead = along_h.coefficient(Monomial{e});
  if (lead == 0)
    raise(Errc::internal_check, "leading coefficient vanished along the polarization");
  rep.q0_eff = lead / prod_hc;

  const long m = de / 2;
  const Rational w_self = surface->self_int(W);
  const Rational bookkeeping(factorial(static_cast<int>(de)) * factorial(e),
                             factorial(static_cast<int>(m)));
  rep.expected_value = bookkeeping * pow_rational(w_self / 2, m) * rep.q0_eff * prod_hc;

  EvalRequest req;
  req.arguments = {EvalArgument{W, static_cast<int>(de)}, EvalArgument{H, e}};
  req.k = k;
  rep.certificate_value = evaluate(series, req);
  rep.certified = rep.certificate_value == rep.expected_value && rep.certificate_value != 0;

  if (e >= 2) {
    EvalRequest slide;
    slide.arguments = {EvalArgument{W, static_cast<int>(de) + 2}, EvalArgument{H, e - 2}};
    slide.k = k;
    rep.vanishing_value = evaluate(series, slide);
    rep.vanishing_checked = true;
    rep.certified = rep.certified && rep.vanishing_value == 0;
  }
  if (e == 0)
    rep.assumptions.push_back("definiteness of the two-form follows the sign of q0_eff = " +
                              to_string(rep.q0_eff));
  rep.assumptions.push_back("certificate pairs the transcendental probe W against H only");
  return rep;
}

}  // namespace dinv
