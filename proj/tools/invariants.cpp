// invariants: command-line front end for the exact Donaldson-series engine.
//
// Subcommands operate on a JSON job description (--config):
//   sw        basic classes with Seiberg-Witten and structure coefficients
//   series    closed-form / structure-theorem series, optional expansion
//   evaluate  one polynomial value q_{L,k}(S_1^{a_1}..., x^b)
//   bounds    existence threshold report plus the chamber (wall) check
//   tau       generic rank of the canonical two-form, with certificate
//   blowup    transform a series under a blow-up (odd or even parity)
//
// --check re-derives each result along an independent route and fails with
// exit code 3 when the routes disagree.  Output is deterministic: equal
// inputs produce byte-identical output.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dinv/analysis.hpp"
#include "dinv/basic_classes.hpp"
#include "dinv/donaldson.hpp"
#include "dinv/serialize.hpp"

namespace {

using dinv::json;
using dinv::Rational;

struct Options {
  std::string config_path;
  std::string format = "table";
  int decimal = 0;
  bool check = false;
  std::string form = "closed";
  long k = 0;
  bool k_set = false;
  int truncation = 0;
  bool truncation_set = false;
  std::string parity = "odd";
  int count = 1;
};

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) dinv::raise(dinv::Errc::validation, "cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    dinv::raise(dinv::Errc::validation, std::string("config is not valid JSON: ") + e.what());
  }
}

// truncated decimal expansion, marked approximate with a leading '~'
std::string decimal_string(const Rational& q, int digits) {
  dinv::Int num = numerator(q), den = denominator(q);
  std::string sign = num < 0 ? "-" : "";
  if (num < 0) num = -num;
  std::string out = "~" + sign + dinv::Int(num / den).str();
  num %= den;
  if (digits > 0) {
    out += ".";
    for (int i = 0; i < digits; ++i) {
      num *= 10;
      out += dinv::Int(num / den).str();
      num %= den;
    }
  }
  return out;
}

std::string rat_str(const Rational& q, const Options& opt) {
  std::string s = dinv::to_string(q);
  if (opt.decimal > 0) s += " (" + decimal_string(q, opt.decimal) + ")";
  return s;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_kv_table(const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      emit_kv_table(value, prefix + key + ".");
    } else if (value.is_array() && !value.empty() && value.front().is_primitive()) {
      std::cout << prefix << key << ": " << value.dump() << "\n";
    } else if (value.is_array()) {
      std::cout << prefix << key << ": " << value.dump() << "\n";
    } else if (value.is_string()) {
      std::cout << prefix << key << ": " << value.get<std::string>() << "\n";
    } else {
      std::cout << prefix << key << ": " << value.dump() << "\n";
    }
  }
}

void emit_kv_csv(const json& j, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      emit_kv_csv(value, prefix + key + ".");
    } else if (value.is_string()) {
      std::cout << prefix << key << "," << value.get<std::string>() << "\n";
    } else {
      std::cout << prefix << key << "," << value.dump() << "\n";
    }
  }
}

void emit_report(const json& j, const Options& opt) {
  if (opt.format == "json")
    emit_json(j);
  else if (opt.format == "csv")
    emit_kv_csv(j);
  else
    emit_kv_table(j);
}

dinv::SurfacePtr surface_of(const json& cfg) {
  if (!cfg.contains("surface"))
    dinv::raise(dinv::Errc::validation, "config needs a \"surface\" object");
  return dinv::surface_from_json(cfg.at("surface"));
}

dinv::CohClass determinant_of(const json& cfg, const dinv::SurfacePtr& surface) {
  if (!cfg.contains("L")) return surface->class_zero();
  if (cfg.at("L").is_string() && cfg.at("L").get<std::string>() == "canonical")
    return surface->class_canonical();
  return dinv::class_from_json(surface, cfg.at("L"));
}

std::vector<dinv::BasicClass> basics_of(const dinv::SurfacePtr& surface,
                                        const dinv::CohClass& L) {
  return surface->variant() == dinv::Variant::general_type
             ? dinv::basic_classes_general_type(surface, L)
             : dinv::basic_classes_elliptic(surface);
}

dinv::StructuredSeries build_series(const json& cfg, const Options& opt) {
  if (cfg.contains("series")) return dinv::series_from_json(cfg.at("series"));
  dinv::SurfacePtr surface = surface_of(cfg);
  dinv::CohClass L = determinant_of(cfg, surface);
  std::string form = opt.form;
  if (form == "closed" && cfg.contains("form")) form = cfg.at("form").get<std::string>();
  if (form == "structure") return dinv::assemble_structure(surface, L, basics_of(surface, L));
  if (form != "closed")
    dinv::raise(dinv::Errc::validation, "form must be \"closed\" or \"structure\"");
  return surface->variant() == dinv::Variant::general_type
             ? dinv::closed_form_general_type(surface, L)
             : dinv::closed_form_elliptic(surface, L);
}

// independent representation of the same series, for --check
std::optional<dinv::StructuredSeries> alternate_route(const dinv::StructuredSeries& s) {
  if (s.alt) {
    dinv::StructuredSeries a = *s.alt;
    a.alt.reset();
    return a;
  }
  const auto it = s.metadata.find("form");
  const std::string form = it == s.metadata.end() ? "" : it->second;
  if (form == "general-type closed form")
    return dinv::assemble_structure(s.surface, s.L,
                                    dinv::basic_classes_general_type(s.surface, s.L));
  if (form == "structure-theorem sum") {
    if (s.surface->variant() == dinv::Variant::general_type)
      return dinv::closed_form_general_type(s.surface, s.L);
    if (s.surface->minimal()) return dinv::closed_form_elliptic(s.surface, s.L);
  }
  return std::nullopt;
}

dinv::FramePtr check_frame(const dinv::StructuredSeries& s, int truncation) {
  const auto& surface = s.surface;
  std::vector<Rational> coords(surface->basis_size(), Rational(0));
  coords[surface->h_index()] = 1;
  for (int i = 0; i < surface->lattice_rank(); ++i)
    coords[static_cast<std::size_t>(i)] = i + 1;
  return dinv::ProbeFrame::over(surface, {{"c", surface->class_from_coords(coords)}},
                                truncation);
}

void cross_check_series(const dinv::StructuredSeries& s, int truncation) {
  const auto other = alternate_route(s);
  if (!other) {
    std::cout << "check: skipped (no independent representation for this series shape)\n";
    return;
  }
  const auto frame = check_frame(s, truncation);
  if (!(dinv::expand(s, frame) == dinv::expand(*other, frame)))
    dinv::raise(dinv::Errc::internal_check,
                "independent series representations disagree on the check probe");
  std::cout << "check: ok (representations agree)\n";
}

int cmd_sw(const json& cfg, const Options& opt) {
  dinv::SurfacePtr surface = surface_of(cfg);
  dinv::CohClass L = determinant_of(cfg, surface);
  const auto basics = basics_of(surface, L);

  if (opt.check) {
    const Rational wf = dinv::witten_factor(surface);
    std::map<std::vector<Rational>, Rational> by_coords;
    for (const auto& b : basics) {
      if (b.km != wf * b.sw)
        dinv::raise(dinv::Errc::internal_check, "km != witten_factor * sw");
      if (surface->variant() == dinv::Variant::general_type &&
          (b.sw != 1 && b.sw != -1))
        dinv::raise(dinv::Errc::internal_check, "general-type |sw| != 1");
      by_coords[b.cls.coords] = b.sw;
    }
    for (const auto& [coords, sw] : by_coords) {
      std::vector<Rational> neg;
      for (const auto& c : coords) neg.push_back(-c);
      auto it = by_coords.find(neg);
      if (it == by_coords.end() || abs(it->second) != abs(sw))
        dinv::raise(dinv::Errc::internal_check, "basic classes not symmetric under negation");
    }
  }

  if (opt.format == "json") {
    emit_json(dinv::basic_classes_to_json(surface, basics));
    return 0;
  }
  const char sep = opt.format == "csv" ? ',' : ' ';
  if (opt.format == "csv") std::cout << "class,sw,km\n";
  for (const auto& b : basics) {
    std::ostringstream cls;
    cls << "[";
    for (std::size_t i = 0; i < b.cls.coords.size(); ++i)
      cls << (i ? " " : "") << dinv::to_string(b.cls.coords[i]);
    cls << "]";
    std::cout << cls.str() << sep << rat_str(b.sw, opt) << sep << rat_str(b.km, opt) << "\n";
  }
  if (opt.format != "csv") std::cout << "count: " << basics.size() << "\n";
  return 0;
}

int cmd_series(const json& cfg, const Options& opt) {
  const auto series = build_series(cfg, opt);
  const int trunc = opt.truncation_set ? opt.truncation
                    : cfg.contains("truncation") ? cfg.at("truncation").get<int>()
                                                 : 8;
  if (opt.check) cross_check_series(series, trunc);

  json out = dinv::series_to_json(series);
  if (cfg.contains("probes")) {
    std::vector<std::pair<std::string, dinv::CohClass>> probes;
    for (const auto& p : cfg.at("probes"))
      probes.emplace_back(p.at("name").get<std::string>(),
                          dinv::class_from_json(series.surface, p.at("class")));
    out["expansion"] = dinv::expansion_to_json(dinv::expand(series, probes, trunc));
  }
  emit_report(out, opt);
  return 0;
}

int cmd_evaluate(const json& cfg, const Options& opt) {
  const auto series = build_series(cfg, opt);
  if (!cfg.contains("evaluate"))
    dinv::raise(dinv::Errc::validation, "config needs an \"evaluate\" object");
  const json& je = cfg.at("evaluate");
  dinv::EvalRequest req;
  if (je.contains("arguments"))
    for (const auto& a : je.at("arguments"))
      req.arguments.push_back(dinv::EvalArgument{
          dinv::class_from_json(series.surface, a.at("class")), a.at("power").get<int>()});
  if (je.contains("point_power")) req.point_power = je.at("point_power").get<int>();
  req.k = je.at("k").get<long>();

  const Rational value = dinv::evaluate(series, req);
  json out;
  out["k"] = req.k;
  out["d"] = series.surface->virtual_dim(series.L, req.k);
  out["value"] = dinv::rational_to_json(value);
  if (opt.decimal > 0) out["value_decimal"] = decimal_string(value, opt.decimal);

  if (opt.check) {
    const auto other = alternate_route(series);
    if (other) {
      if (dinv::evaluate(*other, req) != value)
        dinv::raise(dinv::Errc::internal_check, "evaluation routes disagree");
      out["check"] = "ok (independent representation agrees)";
    } else {
      out["check"] = "skipped (no independent representation)";
    }
  }
  emit_report(out, opt);
  return 0;
}

int cmd_bounds(const json& cfg, const Options& opt) {
  const auto series = build_series(cfg, opt);
  std::optional<int> trunc;
  if (opt.truncation_set) trunc = opt.truncation;
  else if (cfg.contains("truncation")) trunc = cfg.at("truncation").get<int>();

  const auto rep = dinv::existence_bound(series, trunc);
  json out = dinv::existence_to_json(rep);
  out["wall"] = dinv::wall_to_json(dinv::wall_check(series.surface, series.L));

  // existence_bound itself verifies d_upper against the family bound
  if (opt.check)
    out["check"] = rep.bound_applicable ? "ok (d_upper within the family bound)"
                                        : "ok (no family bound applies)";
  emit_report(out, opt);
  return 0;
}

int cmd_tau(const json& cfg, const Options& opt) {
  const auto series = build_series(cfg, opt);
  long k = 0;
  if (opt.k_set) k = opt.k;
  else if (cfg.contains("k")) k = cfg.at("k").get<long>();
  else dinv::raise(dinv::Errc::validation, "tau needs k (config \"k\" or --k)");

  const auto rep = opt.check ? dinv::tau_certificate(series, k) : dinv::tau_rank(series, k);
  if (opt.check && !rep.certified)
    dinv::raise(dinv::Errc::internal_check, "two-form certificate failed");
  emit_report(dinv::tau_to_json(rep), opt);
  return 0;
}

int cmd_blowup(const json& cfg, const Options& opt) {
  auto series = build_series(cfg, opt);
  std::string parity = opt.parity;
  int count = opt.count;
  if (cfg.contains("blowup")) {
    const json& jb = cfg.at("blowup");
    if (jb.contains("parity")) parity = jb.at("parity").get<std::string>();
    if (jb.contains("count")) count = jb.at("count").get<int>();
  }
  if (parity != "odd" && parity != "even")
    dinv::raise(dinv::Errc::validation, "blow-up parity must be \"odd\" or \"even\"");
  if (count < 1) dinv::raise(dinv::Errc::validation, "blow-up count must be >= 1");
  const auto p = parity == "odd" ? dinv::BlowupParity::odd : dinv::BlowupParity::even;
  for (int i = 0; i < count; ++i) series = dinv::blowup_transform(series, p);

  if (opt.check) {
    const int trunc = opt.truncation_set ? opt.truncation : 8;
    cross_check_series(series, trunc);
  }
  emit_report(dinv::series_to_json(series), opt);
  return 0;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact Donaldson-series engine for algebraic surfaces"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "JSON job description")->required();
  app.add_option("--format", opt.format, "Output format: table, json, csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--decimal", opt.decimal, "Digits of approximate decimal output");
  app.add_flag("--check", opt.check, "Cross-check results along an independent route");
  app.add_option("--form", opt.form, "Series form: closed or structure")
      ->check(CLI::IsMember({"closed", "structure"}))
      ->capture_default_str();
  auto* k_opt = app.add_option("--k", opt.k, "Instanton number for tau");
  app.add_option("--truncation", opt.truncation, "Expansion truncation degree");
  app.add_option("--parity", opt.parity, "Blow-up parity: odd or even")
      ->check(CLI::IsMember({"odd", "even"}));
  app.add_option("--count", opt.count, "Number of blow-ups to apply");

  auto* sw = app.add_subcommand("sw", "Basic classes with sw and structure coefficients");
  auto* series = app.add_subcommand("series", "Closed-form or structure-theorem series");
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate one polynomial exactly");
  auto* bounds = app.add_subcommand("bounds", "Existence threshold and wall check");
  auto* tau = app.add_subcommand("tau", "Generic rank of the canonical two-form");
  auto* blowup = app.add_subcommand("blowup", "Blow-up transform of a series");

  CLI11_PARSE(app, argc, argv);
  opt.k_set = k_opt->count() > 0;
  opt.truncation_set = app.count("--truncation") > 0;

  const json cfg = load_config(opt.config_path);
  if (sw->parsed()) return cmd_sw(cfg, opt);
  if (series->parsed()) return cmd_series(cfg, opt);
  if (evaluate->parsed()) return cmd_evaluate(cfg, opt);
  if (bounds->parsed()) return cmd_bounds(cfg, opt);
  if (tau->parsed()) return cmd_tau(cfg, opt);
  if (blowup->parsed()) return cmd_blowup(cfg, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dinv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return dinv::exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
