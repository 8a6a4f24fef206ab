// Black-box tests for the `invariants` command-line tool.  argv[1] is the
// path to the built binary; exit status is the number of failed checks.
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "dinv/donaldson.hpp"
#include "dinv/serialize.hpp"
#include "dinv/surface.hpp"

namespace fs = std::filesystem;
using dinv::json;

namespace {

std::string g_bin;
fs::path g_dir;
int g_failures = 0;
int g_runs = 0;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args) {
  ++g_runs;
  fs::path out = g_dir / ("stdout_" + std::to_string(g_runs) + ".txt");
  fs::path err = g_dir / ("stderr_" + std::to_string(g_runs) + ".txt");
  std::string cmd = "\"" + g_bin + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                    err.string() + "\"";
  int rc = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(rc)) r.code = WEXITSTATUS(rc);
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

void check(bool cond, const std::string& what) {
  if (cond) {
    std::cout << "ok: " << what << "\n";
  } else {
    ++g_failures;
    std::cout << "FAIL: " << what << "\n";
  }
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_config(const std::string& name, const json& j) {
  fs::path p = g_dir / name;
  std::ofstream(p) << j.dump(2) << "\n";
  return "\"" + p.string() + "\"";
}

json parse_json_tail(const std::string& text) {
  auto pos = text.find('{');
  if (pos == std::string::npos) return json();
  return json::parse(text.substr(pos));
}

json dolgachev_surface() {
  return json{{"variant", "elliptic_p1"}, {"p_g", 1}, {"multiplicities", {2, 3}}};
}

json k3_surface() {
  return json{{"variant", "elliptic_p1"}, {"p_g", 1}, {"multiplicities", json::array()}};
}

json gt_surface() {
  return json{{"variant", "general_type"}, {"p_g", 2}, {"k_min_sq", 1}, {"num_blowups", 0}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-invariants-binary>\n";
    return 1;
  }
  g_bin = argv[1];
  g_dir = fs::temp_directory_path() / "dinv_cli_tests";
  std::error_code ec;
  fs::remove_all(g_dir, ec);
  fs::create_directories(g_dir);

  const std::string dol = write_config("dolgachev.json", json{{"surface", dolgachev_surface()}});

  // ---- sw: table, csv, json, determinism, self-check
  {
    auto r = run_cli("sw --config " + dol);
    check(r.code == 0, "sw exits cleanly");
    check(contains(r.out, "count: 6"), "sw table reports six basic classes");
    check(contains(r.out, "[-7/6 0 0]"), "sw table lists the extreme class");

    auto r2 = run_cli("sw --config " + dol);
    check(r.out == r2.out, "identical runs are byte-identical");

    auto rc = run_cli("sw --config " + dol + " --format csv");
    check(rc.code == 0 && contains(rc.out, "class,sw,km"), "sw csv header present");
    int lines = 0;
    for (char ch : rc.out)
      if (ch == '\n') ++lines;
    check(lines == 7, "sw csv prints header plus six rows");

    auto rj = run_cli("sw --config " + dol + " --format json --check");
    check(rj.code == 0, "sw --check passes on a symmetric table");
    auto j = parse_json_tail(rj.out);
    check(j.at("count") == 6 && j.at("basic_classes").size() == 6, "sw json count matches");
    check(j.at("basic_classes")[0].at("sw") == "1", "sw json multiplicities are +1");
  }

  // ---- invalid configs and exit code 1
  {
    auto bad = write_config("bad_mults.json",
                            json{{"surface",
                                  json{{"variant", "elliptic_p1"},
                                       {"p_g", 1},
                                       {"multiplicities", {2, 4}}}}});
    auto r = run_cli("sw --config " + bad);
    check(r.code == 1, "even-gcd fiber multiplicities exit with code 1");
    check(contains(r.err, "gcd"), "the error message names the gcd constraint");

    auto r2 = run_cli("sw --config \"" + (g_dir / "missing.json").string() + "\"");
    check(r2.code == 1 && contains(r2.err, "cannot open"), "missing config file is reported");

    auto r3 = run_cli("sw");
    check(r3.code != 0, "missing --config is rejected");

    auto notjson = g_dir / "broken.json";
    std::ofstream(notjson) << "{ not json";
    auto r4 = run_cli("sw --config \"" + notjson.string() + "\"");
    check(r4.code == 1 && contains(r4.err, "JSON"), "malformed config is reported");
  }

  // ---- series: cross-check and JSON round-trip
  const std::string gt = write_config("gt.json", json{{"surface", gt_surface()}});
  {
    auto r = run_cli("series --config " + gt + " --check");
    check(r.code == 0 && contains(r.out, "check: ok (representations agree)"),
          "series --check verifies closed form against the structure sum");

    auto r1 = run_cli("series --config " + gt + " --format json");
    check(r1.code == 0, "series emits json");
    auto j1 = parse_json_tail(r1.out);
    const std::string fed = write_config("gt_series.json", json{{"series", j1}});
    auto r2 = run_cli("series --config " + fed + " --format json");
    check(r2.code == 0 && r1.out == r2.out, "series json round-trips byte-identically");

    // expansion block through config probes
    json cfg = json{{"surface", dolgachev_surface()},
                    {"truncation", 6},
                    {"probes", json::array({json{{"name", "h"}, {"class", {"0", "1", "0"}}}})}};
    auto rp = run_cli("series --config " + write_config("dol_probe.json", cfg) +
                      " --format json");
    check(rp.code == 0, "series expands on config probes");
    auto jp = parse_json_tail(rp.out);
    check(jp.contains("expansion") && jp.at("expansion").at("truncation") == 6,
          "expansion block carries the requested truncation");
    check(jp.at("expansion").at("terms")[0].at("coeff") == "6",
          "leading coefficient is the multiplicity product");
  }

  // ---- series --check exit code 3 on a tampered alternate representation
  {
    auto s = dinv::surface_from_json(dolgachev_surface());
    auto q = dinv::closed_form_elliptic(s, s->class_zero());
    json j = dinv::series_to_json(q);
    j["alt"]["constant"] = "2";
    const std::string cfg = write_config("tampered.json", json{{"series", j}});
    auto r = run_cli("series --config " + cfg + " --check");
    check(r.code == 3, "disagreeing representations exit with code 3");
    check(contains(r.err, "disagree"), "the disagreement is reported");
  }

  // ---- evaluate
  {
    json cfg = json{{"surface", k3_surface()},
                    {"evaluate",
                     json{{"arguments", json::array({json{{"class", {"0", "1", "0"}},
                                                          {"power", 6}}})},
                          {"k", 3}}}};
    const std::string path = write_config("k3_eval.json", cfg);
    auto r = run_cli("evaluate --config " + path + " --format json --check");
    check(r.code == 0, "evaluate exits cleanly");
    auto j = parse_json_tail(r.out);
    check(j.at("value") == "120", "degree-six Gaussian value is 120");
    check(j.at("d") == 6, "virtual dimension is reported");
    check(contains(j.at("check").get<std::string>(), "ok"), "independent route agrees");

    auto rd = run_cli("evaluate --config " + path + " --format json --decimal 2");
    auto jd = parse_json_tail(rd.out);
    check(jd.at("value_decimal") == "~120.00", "decimal output is marked approximate");
  }

  // ---- bounds
  {
    auto r = run_cli("bounds --config " + dol + " --format json --check");
    check(r.code == 0, "bounds exits cleanly");
    auto j = parse_json_tail(r.out);
    check(j.at("d_upper") == 2 && j.at("equality") == true && j.at("case") == "n_plus_2",
          "multiple-fiber threshold is sharp");
    check(j.at("wall").at("good") == false, "wall check flags the trivial determinant");
    check(contains(j.at("check").get<std::string>(), "ok"), "bounds --check reports ok");

    json cfg = json{{"surface", gt_surface()}, {"L", "canonical"}};
    auto rg = run_cli("bounds --config " + write_config("gt_canonical.json", cfg) +
                      " --format json");
    auto jg = parse_json_tail(rg.out);
    check(jg.at("d_upper") == 2 && jg.at("equality") == false && jg.at("family") == "general_type",
          "canonical determinant lowers the threshold below the bound");
    check(jg.at("wall").at("good") == true, "canonical determinant passes the wall check");

    json big = json{{"surface",
                     json{{"variant", "elliptic_p1"}, {"p_g", 3},
                          {"multiplicities", json::array()}}}};
    auto rt = run_cli("bounds --config " + write_config("el3.json", big) + " --truncation 1");
    check(rt.code == 2, "insufficient truncation exits with code 2");
  }

  // ---- tau
  {
    json cfg = json{{"surface", k3_surface()}, {"k", 3}};
    auto r = run_cli("tau --config " + write_config("k3_tau.json", cfg) +
                     " --format json --check");
    check(r.code == 0, "tau exits cleanly");
    auto j = parse_json_tail(r.out);
    check(j.at("rank") == 3 && j.at("certified") == true && j.at("certificate_value") == "15",
          "two-form certificate value is exact");

    auto rk = run_cli("tau --config " + dol + " --k 4 --format json");
    auto jk = parse_json_tail(rk.out);
    check(jk.at("rank") == 5 && !jk.contains("certified"), "--k overrides and rank-only omits "
                                                           "the certificate");
  }

  // ---- blowup pipeline
  {
    auto r = run_cli("blowup --config " + gt + " --parity odd --count 2 --check --format json");
    check(r.code == 0 && contains(r.out, "check: ok"), "blow-up transform cross-checks");
    auto j = parse_json_tail(r.out);
    check(j.at("surface").at("extra_blowups") == 2, "two blow-ups recorded on the surface");
    check(j.at("L")[1] == "1" && j.at("L")[2] == "1", "odd parity shifts L by each "
                                                      "exceptional class");

    auto rb = run_cli("blowup --config " + gt + " --parity sideways");
    check(rb.code != 0, "invalid parity is rejected");
  }

  if (g_failures == 0)
    std::cout << "all cli checks passed (" << g_runs << " runs)" << std::endl;
  else
    std::cout << g_failures << " cli checks failed" << std::endl;
  return g_failures;
}
