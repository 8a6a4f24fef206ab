#include "dinv/donaldson.hpp"

#include <algorithm>

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

void base_conventions(StructuredSeries& s) {
  s.metadata["gaussian"] = "exp(Q/2)";
  s.metadata["polarized"] = "q_d(P^a) = (prod a_i!) * coefficient of prod t_i^a_i";
  s.metadata["two_form_rank"] = "rank statements read the Gaussian factor as exp(Q/2)";
}

ExpandedSeries expand_linear(const SurfacePtr& surface, const FramePtr& frame, int trunc,
                             const CohClass& cls) {
  std::vector<Rational> pairings(frame->size());
  for (std::size_t j = 0; j < frame->size(); ++j)
    pairings[j] = surface->pair(cls, frame->classes[j]);
  return linear_form(frame, pairings, trunc);
}

ExpKind to_exp_kind(FactorKind k) {
  switch (k) {
    case FactorKind::exp: return ExpKind::exp;
    case FactorKind::sinh: return ExpKind::sinh;
    case FactorKind::cosh: return ExpKind::cosh;
  }
  raise(Errc::internal_check, "unknown factor kind");
}

ExpandedSeries expand_func(const SurfacePtr& surface, const FramePtr& frame, int trunc,
                           const FuncFactor& f) {
  return exp_like(expand_linear(surface, frame, trunc, f.cls), to_exp_kind(f.kind));
}

ExpandedSeries expand_exp_sum(const SurfacePtr& surface, const FramePtr& frame, int trunc,
                              const std::vector<ExpTerm>& terms) {
  ExpandedSeries acc(frame, trunc);
  for (const auto& t : terms)
    acc += exp_like(expand_linear(surface, frame, trunc, t.cls), ExpKind::exp) * t.coeff;
  return acc;
}

}  // namespace

StructuredSeries assemble_structure(const SurfacePtr& surface, const CohClass& L,
                                    const std::vector<BasicClass>& basics) {
  surface->validate_determinant_class(L);
  if (basics.empty()) raise(Errc::validation, "no basic classes to assemble");
  StructuredSeries s;
  s.surface = surface;
  s.L = L;
  s.constant = 1;
  s.gaussian = true;
  const Rational l_sq = surface->self_int(L);
  for (const auto& b : basics) {
    const long sgn = even_half(l_sq + surface->pair(b.cls, L), "L.L + K.L");
    s.exp_terms.push_back(ExpTerm{b.km * sign_pow(sgn), b.cls});
  }
  base_conventions(s);
  s.metadata["form"] = "structure-theorem sum";
  return s;
}

StructuredSeries closed_form_general_type(const SurfacePtr& surface, const CohClass& L) {
  if (surface->variant() != Variant::general_type)
    raise(Errc::unsupported_surface, "general-type closed form requires a general-type surface");
  const auto dec = surface->decompose_L(L);
  const int r = surface->num_blowups();
  const int p_g = surface->p_g();
  const long chi = surface->char_numbers().chi;
  const long k_min_sq = surface->spec().k_min_sq;

  const CohClass k_min = surface->class_k_min();
  const Rational l_min_sq = surface->self_int(dec.l_min);
  const long sign_exp = even_half(l_min_sq - surface->pair(k_min, dec.l_min),
                                  "L_min.L_min - K_min.L_min");

  StructuredSeries s;
  s.surface = surface;
  s.L = L;
  s.constant = pow2(2 + k_min_sq - chi) * sign_pow(sign_exp);
  s.gaussian = true;

  auto neg_k = k_min;
  for (auto& c : neg_k.coords) c = -c;
  const int pair_sign = sign_pow(1 + p_g + static_cast<long>(numerator(l_min_sq)));
  s.exp_terms.push_back(ExpTerm{Rational(1), neg_k});
  s.exp_terms.push_back(ExpTerm{Rational(pair_sign), k_min});

  std::vector<bool> odd(static_cast<std::size_t>(r) + 1, false);
  for (int i : dec.odd_set) odd[static_cast<std::size_t>(i)] = true;
  for (int i = 1; i <= r; ++i) {
    const CohClass e_i = surface->class_exceptional(i);
    if (odd[static_cast<std::size_t>(i)]) {
      s.factors.push_back(FuncFactor{FactorKind::sinh, e_i});
      s.divisor_factors.push_back(e_i);
    } else {
      s.factors.push_back(FuncFactor{FactorKind::cosh, e_i});
    }
  }
  base_conventions(s);
  s.metadata["form"] = "general-type closed form";
  s.metadata["sw_normalization"] =
      "km defined by this expansion; sw = km / witten_factor, |sw| = 1";
  return s;
}

StructuredSeries closed_form_elliptic(const SurfacePtr& surface, const CohClass& L) {
  if (surface->variant() != Variant::elliptic_p1)
    raise(Errc::unsupported_surface, "elliptic closed form requires an elliptic surface");
  if (!surface->minimal())
    raise(Errc::unsupported_surface, "elliptic closed form requires the minimal surface");
  surface->validate_determinant_class(L);

  const int p_g = surface->p_g();
  const auto& mult = surface->spec().multiplicities;
  const int n = static_cast<int>(mult.size());
  const Rational wf = witten_factor(surface);

  StructuredSeries s;
  s.surface = surface;
  s.L = L;
  s.constant = wf * pow2(p_g - 1);
  s.gaussian = true;
  for (int i = 0; i < p_g - 1 + n; ++i)
    s.ratio_num.push_back(FuncFactor{FactorKind::sinh, surface->class_fiber(-1)});
  for (int p : mult)
    s.ratio_den.push_back(FuncFactor{FactorKind::sinh, surface->class_fiber(Rational(-1, p))});
  for (int i = 0; i < p_g - 1; ++i) s.divisor_factors.push_back(surface->class_fiber(1));
  base_conventions(s);
  s.metadata["form"] = "elliptic sinh-ratio closed form";
  s.metadata["base_curve"] = "rational base, fiber multiple-cover genus 0";

  auto alt = std::make_shared<StructuredSeries>();
  alt->surface = surface;
  alt->L = L;
  alt->constant = wf;
  alt->gaussian = true;
  for (int i = 0; i < p_g - 1; ++i)
    alt->factors.push_back(SumFactor{{ExpTerm{Rational(1), surface->class_fiber(-1)},
                                      ExpTerm{Rational(-1), surface->class_fiber(1)}}});
  for (int p : mult) {
    SumFactor f;
    for (int a = 0; a < p; ++a)
      f.terms.push_back(ExpTerm{Rational(1), surface->class_fiber(Rational(-(2 * a - p + 1), p))});
    alt->factors.push_back(std::move(f));
  }
  alt->divisor_factors = s.divisor_factors;
  base_conventions(*alt);
  alt->metadata["form"] = "elliptic exponential-sum closed form";
  alt->metadata["base_curve"] = s.metadata["base_curve"];
  s.alt = std::move(alt);
  return s;
}

namespace {

// transform onto an already-constructed blow-up, so a series and its alt
// representation land on the same surface object
StructuredSeries blowup_onto(const StructuredSeries& series, const SurfacePtr& blown,
                             BlowupParity parity) {
  const std::size_t e_index = static_cast<std::size_t>(series.surface->lattice_rank());
  const CohClass e_new = blown->class_exceptional(blown->num_blowups());

  StructuredSeries out;
  out.surface = blown;
  out.L = blown->lift(series.L);
  out.constant = series.constant;
  out.gaussian = series.gaussian;
  for (const auto& t : series.exp_terms)
    out.exp_terms.push_back(ExpTerm{t.coeff, blown->lift(t.cls)});
  for (const auto& f : series.factors) {
    if (std::holds_alternative<FuncFactor>(f)) {
      const auto& ff = std::get<FuncFactor>(f);
      out.factors.push_back(FuncFactor{ff.kind, blown->lift(ff.cls)});
    } else {
      SumFactor sf;
      for (const auto& t : std::get<SumFactor>(f).terms)
        sf.terms.push_back(ExpTerm{t.coeff, blown->lift(t.cls)});
      out.factors.push_back(std::move(sf));
    }
  }
  for (const auto& f : series.ratio_num)
    out.ratio_num.push_back(FuncFactor{f.kind, blown->lift(f.cls)});
  for (const auto& f : series.ratio_den)
    out.ratio_den.push_back(FuncFactor{f.kind, blown->lift(f.cls)});
  for (const auto& c : series.divisor_factors) out.divisor_factors.push_back(blown->lift(c));
  out.metadata = series.metadata;

  if (parity == BlowupParity::odd) {
    out.L.coords[e_index] += 1;
    out.factors.push_back(FuncFactor{FactorKind::sinh, e_new});
    out.divisor_factors.push_back(e_new);
    out.metadata["blowup"] = "odd (L -> L + E, sinh factor)";
  } else {
    out.factors.push_back(FuncFactor{FactorKind::cosh, e_new});
    out.metadata["blowup"] = "even (L unchanged, cosh factor)";
  }
  if (series.alt) {
    out.alt = std::make_shared<StructuredSeries>(blowup_onto(*series.alt, blown, parity));
  }
  return out;
}

}  // namespace

StructuredSeries blowup_transform(const StructuredSeries& series, BlowupParity parity) {
  return blowup_onto(series, series.surface->blow_up(), parity);
}

ExpandedSeries expand(const StructuredSeries& series, const FramePtr& frame) {
  if (frame->classes.size() != frame->size())
    raise(Errc::invalid_probe, "frame must carry probe classes to expand a structured series");
  for (const auto& c : frame->classes)
    if (c.surface != series.surface)
      raise(Errc::invalid_probe, "probe classes live on a different surface");
  const SurfacePtr& surface = series.surface;
  const int T = frame->truncation;

  ExpandedSeries acc = ExpandedSeries::constant(frame, T, series.constant);
  if (series.gaussian) {
    ExpandedSeries q_half(frame, T);
    for (std::size_t i = 0; i < frame->size(); ++i) {
      for (std::size_t j = i; j < frame->size(); ++j) {
        Rational c = frame->pairing(i, j);
        if (i == j) c /= 2;
        if (c == 0) continue;
        Monomial m(frame->size(), 0);
        m[i] += 1;
        m[j] += 1;
        if (total_degree(m) <= T) q_half.add_term(m, c);
      }
    }
    acc = acc * exp_like(q_half, ExpKind::exp);
  }
  if (!series.exp_terms.empty())
    acc = acc * expand_exp_sum(surface, frame, T, series.exp_terms);
  for (const auto& f : series.factors) {
    if (std::holds_alternative<FuncFactor>(f))
      acc = acc * expand_func(surface, frame, T, std::get<FuncFactor>(f));
    else
      acc = acc * expand_exp_sum(surface, frame, T, std::get<SumFactor>(f).terms);
  }
  if (series.has_ratio()) {
    int pad = 0;
    for (const auto& f : series.ratio_den)
      if (f.kind == FactorKind::sinh) pad += 1;
    auto padded = ProbeFrame::raw(frame->names, frame->gram, T + pad);
    std::const_pointer_cast<ProbeFrame>(padded)->classes = frame->classes;
    ExpandedSeries num = ExpandedSeries::constant(padded, T + pad, 1);
    for (const auto& f : series.ratio_num)
      num = num * expand_func(surface, padded, T + pad, f);
    ExpandedSeries den = ExpandedSeries::constant(padded, T + pad, 1);
    for (const auto& f : series.ratio_den)
      den = den * expand_func(surface, padded, T + pad, f);
    ExpandedSeries quot = exact_divide(num, den);
    if (quot.truncation() != T)
      raise(Errc::internal_check, "ratio quotient has unexpected truncation");
    // quotient shares the probe layout; rebuild on the caller's frame object
    ExpandedSeries on_frame(frame, T);
    for (const auto& [m, c] : quot.terms()) on_frame.add_term(m, c);
    acc = acc * on_frame;
  }
  return acc;
}

ExpandedSeries expand(const StructuredSeries& series,
                      const std::vector<std::pair<std::string, CohClass>>& probes,
                      int truncation) {
  return expand(series, ProbeFrame::over(series.surface, probes, truncation));
}

Rational evaluate(const StructuredSeries& series, const EvalRequest& request) {
  const SurfacePtr& surface = series.surface;
  if (request.point_power < 0) raise(Errc::validation, "negative point power");
  int total = 0;
  for (const auto& a : request.arguments) {
    if (a.power < 0) raise(Errc::validation, "negative argument multiplicity");
    if (a.cls.surface != surface)
      raise(Errc::incompatible_class, "evaluation argument lives on a different surface");
    total += a.power;
  }
  const long j = request.point_power / 2;
  const int residual = request.point_power % 2;
  const long d_reduced = surface->virtual_dim(series.L, request.k - j);
  const long needed = residual == 0 ? d_reduced : d_reduced - 2;
  if (needed < 0 || total != needed) return 0;

  std::vector<std::pair<std::string, CohClass>> probes;
  std::vector<int> exponents;
  probes.reserve(request.arguments.size());
  for (std::size_t i = 0; i < request.arguments.size(); ++i) {
    probes.emplace_back("P" + std::to_string(i + 1), request.arguments[i].cls);
    exponents.push_back(request.arguments[i].power);
  }
  ExpandedSeries s = expand(series, probes, total);
  Rational value = polarized_coefficient(s, exponents);
  value *= pow2(2 * j);          // each point-class pair contributes a factor 4
  if (residual == 1) value *= 2; // odd case reads twice the polarized coefficient
  return value;
}

}  // namespace dinv
