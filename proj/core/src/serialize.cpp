#include "dinv/serialize.hpp"

namespace dinv {

namespace {

json factor_to_json(const Factor& f) {
  if (std::holds_alternative<FuncFactor>(f)) {
    const auto& ff = std::get<FuncFactor>(f);
    json j;
    j["kind"] = ff.kind == FactorKind::exp    ? "exp"
                : ff.kind == FactorKind::sinh ? "sinh"
                                              : "cosh";
    j["class"] = class_to_json(ff.cls);
    return j;
  }
  json terms = json::array();
  for (const auto& t : std::get<SumFactor>(f).terms) {
    json jt;
    jt["coeff"] = rational_to_json(t.coeff);
    jt["class"] = class_to_json(t.cls);
    terms.push_back(std::move(jt));
  }
  json j;
  j["sum"] = std::move(terms);
  return j;
}

FactorKind kind_from_json(const json& j) {
  const std::string k = j.get<std::string>();
  if (k == "exp") return FactorKind::exp;
  if (k == "sinh") return FactorKind::sinh;
  if (k == "cosh") return FactorKind::cosh;
  raise(Errc::validation, "unknown factor kind '" + k + "'");
}

FuncFactor func_from_json(const SurfacePtr& surface, const json& j) {
  return FuncFactor{kind_from_json(j.at("kind")), class_from_json(surface, j.at("class"))};
}

std::vector<ExpTerm> exp_terms_from_json(const SurfacePtr& surface, const json& j) {
  std::vector<ExpTerm> out;
  for (const auto& jt : j)
    out.push_back(ExpTerm{rational_from_json(jt.at("coeff")),
                          class_from_json(surface, jt.at("class"))});
  return out;
}

// series body without the surface (shared between a series and its alt form)
json series_body_to_json(const StructuredSeries& s) {
  json j;
  j["L"] = class_to_json(s.L);
  j["constant"] = rational_to_json(s.constant);
  j["gaussian"] = s.gaussian;
  json terms = json::array();
  for (const auto& t : s.exp_terms) {
    json jt;
    jt["coeff"] = rational_to_json(t.coeff);
    jt["class"] = class_to_json(t.cls);
    terms.push_back(std::move(jt));
  }
  j["exp_terms"] = std::move(terms);
  json factors = json::array();
  for (const auto& f : s.factors) factors.push_back(factor_to_json(f));
  j["factors"] = std::move(factors);
  json num = json::array(), den = json::array();
  for (const auto& f : s.ratio_num) num.push_back(factor_to_json(Factor(f)));
  for (const auto& f : s.ratio_den) den.push_back(factor_to_json(Factor(f)));
  j["ratio_num"] = std::move(num);
  j["ratio_den"] = std::move(den);
  json divisors = json::array();
  for (const auto& c : s.divisor_factors) divisors.push_back(class_to_json(c));
  j["divisor_factors"] = std::move(divisors);
  j["metadata"] = s.metadata;
  return j;
}

StructuredSeries series_body_from_json(const SurfacePtr& surface, const json& j) {
  StructuredSeries s;
  s.surface = surface;
  s.L = class_from_json(surface, j.at("L"));
  s.constant = rational_from_json(j.at("constant"));
  s.gaussian = j.at("gaussian").get<bool>();
  s.exp_terms = exp_terms_from_json(surface, j.at("exp_terms"));
  for (const auto& jf : j.at("factors")) {
    if (jf.contains("sum"))
      s.factors.push_back(SumFactor{exp_terms_from_json(surface, jf.at("sum"))});
    else
      s.factors.push_back(func_from_json(surface, jf));
  }
  for (const auto& jf : j.at("ratio_num")) s.ratio_num.push_back(func_from_json(surface, jf));
  for (const auto& jf : j.at("ratio_den")) s.ratio_den.push_back(func_from_json(surface, jf));
  for (const auto& jc : j.at("divisor_factors"))
    s.divisor_factors.push_back(class_from_json(surface, jc));
  if (j.contains("metadata"))
    s.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  return s;
}

}  // namespace

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      raise(Errc::validation, e.what());
    }
  }
  raise(Errc::validation, "expected a rational as \"p/q\" string or integer");
}

json surface_to_json(const SurfacePtr& surface) {
  const SurfaceSpec& spec = surface->spec();
  json j;
  j["variant"] = spec.variant == Variant::general_type ? "general_type" : "elliptic_p1";
  j["p_g"] = spec.p_g;
  if (spec.variant == Variant::general_type) {
    j["k_min_sq"] = spec.k_min_sq;
    j["num_blowups"] = spec.num_blowups;
  } else {
    j["multiplicities"] = spec.multiplicities;
  }
  const int extra = surface->num_blowups() - spec.num_blowups;
  if (extra > 0) j["extra_blowups"] = extra;
  if (!spec.h_pairings.empty()) {
    json hp = json::array();
    for (const auto& q : spec.h_pairings) hp.push_back(rational_to_json(q));
    j["h_pairings"] = std::move(hp);
  }
  j["h_self"] = rational_to_json(spec.h_self);
  j["w_self"] = rational_to_json(spec.w_self);
  if (spec.raw_e_sigma) {
    // report the base recipe's override; blow-ups re-derive their shift
    j["raw_e_sigma"] = {spec.raw_e_sigma->first, spec.raw_e_sigma->second};
  }
  j["basis"] = surface->basis_names();
  const CharNumbers& c = surface->char_numbers();
  j["char_numbers"] = {{"e", c.e},
                       {"sigma", c.sigma},
                       {"b_plus", c.b_plus},
                       {"chi", c.chi},
                       {"k_sq", c.k_sq}};
  return j;
}

SurfacePtr surface_from_json(const json& j) {
  SurfaceSpec spec;
  const std::string variant = j.at("variant").get<std::string>();
  if (variant == "general_type")
    spec.variant = Variant::general_type;
  else if (variant == "elliptic_p1")
    spec.variant = Variant::elliptic_p1;
  else
    raise(Errc::validation, "unknown surface variant '" + variant + "'");
  spec.p_g = j.at("p_g").get<int>();
  if (j.contains("k_min_sq")) spec.k_min_sq = j.at("k_min_sq").get<int>();
  if (j.contains("num_blowups")) spec.num_blowups = j.at("num_blowups").get<int>();
  if (j.contains("multiplicities"))
    spec.multiplicities = j.at("multiplicities").get<std::vector<int>>();
  if (j.contains("h_pairings"))
    for (const auto& q : j.at("h_pairings")) spec.h_pairings.push_back(rational_from_json(q));
  if (j.contains("h_self")) spec.h_self = rational_from_json(j.at("h_self"));
  if (j.contains("w_self")) spec.w_self = rational_from_json(j.at("w_self"));
  if (j.contains("raw_e_sigma"))
    spec.raw_e_sigma = {j.at("raw_e_sigma").at(0).get<long>(),
                        j.at("raw_e_sigma").at(1).get<long>()};
  SurfacePtr surface = Surface::build(spec);
  if (j.contains("extra_blowups")) {
    const int extra = j.at("extra_blowups").get<int>();
    if (extra < 0) raise(Errc::validation, "extra_blowups must be >= 0");
    for (int i = 0; i < extra; ++i) surface = surface->blow_up();
  }
  return surface;
}

json class_to_json(const CohClass& cls) {
  json j = json::array();
  for (const auto& q : cls.coords) j.push_back(rational_to_json(q));
  return j;
}

CohClass class_from_json(const SurfacePtr& surface, const json& j) {
  std::vector<Rational> coords;
  for (const auto& q : j) coords.push_back(rational_from_json(q));
  return surface->class_from_coords(std::move(coords));
}

json basic_classes_to_json(const SurfacePtr& surface, const std::vector<BasicClass>& basics) {
  json j;
  j["surface"] = surface_to_json(surface);
  j["count"] = basics.size();
  json list = json::array();
  for (const auto& b : basics) {
    json jb;
    jb["class"] = class_to_json(b.cls);
    jb["sw"] = rational_to_json(b.sw);
    jb["km"] = rational_to_json(b.km);
    list.push_back(std::move(jb));
  }
  j["basic_classes"] = std::move(list);
  return j;
}

json series_to_json(const StructuredSeries& series) {
  json j;
  j["surface"] = surface_to_json(series.surface);
  json body = series_body_to_json(series);
  for (auto& [k, v] : body.items()) j[k] = std::move(v);
  if (series.alt) j["alt"] = series_body_to_json(*series.alt);
  return j;
}

StructuredSeries series_from_json(const json& j) {
  SurfacePtr surface = surface_from_json(j.at("surface"));
  StructuredSeries s = series_body_from_json(surface, j);
  if (j.contains("alt"))
    s.alt = std::make_shared<StructuredSeries>(series_body_from_json(surface, j.at("alt")));
  return s;
}

json expansion_to_json(const ExpandedSeries& s) {
  json j;
  j["names"] = s.frame()->names;
  j["truncation"] = s.truncation();
  json terms = json::array();
  for (const auto& [m, c] : s.terms()) {
    json jt;
    jt["monomial"] = m;
    jt["coeff"] = rational_to_json(c);
    terms.push_back(std::move(jt));
  }
  j["terms"] = std::move(terms);
  return j;
}

json existence_to_json(const ExistenceReport& rep) {
  json j;
  j["family"] = rep.family;
  j["order"] = rep.order_n;
  j["case"] = rep.residue_gap == 0 ? "n" : "n_plus_2";
  j["d_upper"] = rep.d_upper;
  j["k_at_bound"] = rep.k_at_bound;
  j["bound_applicable"] = rep.bound_applicable;
  if (rep.bound_applicable) {
    j["bound_value"] = rep.bound_value;
    j["bound_source"] = rep.bound_source;
    j["equality"] = rep.equality;
  }
  if (rep.d_lower) {
    j["d_lower"] = *rep.d_lower;
    j["d_lower_hypothesis"] = rep.d_lower_hypothesis;
  }
  j["assumptions"] = rep.assumptions;
  return j;
}

json wall_to_json(const WallCheck& w) {
  json j;
  j["good"] = w.good;
  j["h_dot_l"] = rational_to_json(w.h_dot_l);
  j["note"] = w.note;
  return j;
}

json tau_to_json(const TauRankReport& rep) {
  json j;
  j["k"] = rep.k;
  j["d"] = rep.d;
  j["divisor_factors"] = rep.e_divisors;
  j["rank"] = rep.rank;
  j["degenerate"] = rep.degenerate;
  if (rep.certified || rep.certificate_value != 0 || rep.expected_value != 0) {
    j["certified"] = rep.certified;
    j["q0_eff"] = rational_to_json(rep.q0_eff);
    j["certificate_value"] = rational_to_json(rep.certificate_value);
    j["expected_value"] = rational_to_json(rep.expected_value);
    if (rep.vanishing_checked) j["vanishing_value"] = rational_to_json(rep.vanishing_value);
  }
  j["assumptions"] = rep.assumptions;
  return j;
}

}  // namespace dinv
