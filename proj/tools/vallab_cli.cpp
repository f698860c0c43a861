// Command-line front end: every verification in the library as a subcommand
// with reproducible seeds and machine-readable output.
//
// Exit codes: 0 all checks pass, 1 a verified inequality or sign check
// failed, 2 input error, 3 numerical error.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vallab/geometry.hpp"
#include "vallab/grassmann.hpp"
#include "vallab/harmonics.hpp"
#include "vallab/inequalities.hpp"
#include "vallab/mixed_volumes.hpp"
#include "vallab/rng.hpp"
#include "vallab/valuations.hpp"

namespace {

using nlohmann::json;
using namespace vallab;

struct RunConfig {
  std::uint64_t seed = 42;
  int samples = 200000;
  double tol = 1e-6;
  std::string format = "json";
  std::string output;
  int threads = 1;

  json to_json() const {
    return json{{"seed", seed}, {"samples", samples}, {"tol", tol}, {"threads", threads}};
  }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  cmd->add_option("--samples", cfg.samples, "Monte-Carlo sample count")->capture_default_str();
  cmd->add_option("--tol", cfg.tol, "Relative tolerance")->capture_default_str();
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  cmd->add_option("--output", cfg.output, "Write output to this path instead of stdout");
}

int read_threads_env() {
  const char* env = std::getenv("VALLAB_THREADS");
  if (env == nullptr) return 1;
  int value = 0;
  std::istringstream in(env);
  if (!(in >> value) || value < 1)
    throw std::invalid_argument("VALLAB_THREADS must be a positive integer");
  return value;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output);
    if (!out) throw std::invalid_argument("cannot open output path: " + cfg.output);
    out << text;
  } else {
    std::cout << text;
  }
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

std::vector<Polytope> load_bodies(const std::string& path) {
  json j = load_json_file(path);
  if (!j.is_array()) throw std::invalid_argument("expected a JSON array of bodies: " + path);
  std::vector<Polytope> bodies;
  for (const auto& item : j) bodies.push_back(Polytope::from_json(item));
  return bodies;
}

Polytope load_body(const std::string& path) { return Polytope::from_json(load_json_file(path)); }

std::vector<int> parse_weight(const std::string& text) {
  std::vector<int> m;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) m.push_back(std::stoi(part));
  if (m.empty()) throw std::invalid_argument("empty weight tuple");
  return m;
}

BodyKind batch_kind(std::uint64_t index) {
  switch (index % 3) {
    case 0: return BodyKind::Box;
    case 1: return BodyKind::RandomHull;
    default: return BodyKind::Zonotope;
  }
}

std::string af_csv(const std::vector<InequalityReport>& reports, std::uint64_t seed) {
  std::ostringstream out;
  out << InequalityReport::csv_header() << ",seed\n";
  for (const auto& r : reports) out << r.csv_row() << ',' << seed << '\n';
  return out.str();
}

// ---- subcommand bodies ------------------------------------------------

int run_mixedvol(const RunConfig& cfg, const std::string& bodies_path) {
  std::vector<Polytope> bodies = load_bodies(bodies_path);
  double v = mixed_volume(bodies);
  emit_json(cfg, json{{"op", "mixedvol"},
                      {"n", bodies.empty() ? 0 : bodies.front().dim()},
                      {"value", v},
                      {"config", cfg.to_json()}});
  return 0;
}

int run_intrinsic(const RunConfig& cfg, const std::string& body_path, int ball_resolution) {
  Polytope p = load_body(body_path);
  SteinerCoefficients sc = intrinsic_volumes(p, ball_resolution);
  json mu = json::array();
  for (double m : sc.mu) mu.push_back(m);
  emit_json(cfg, json{{"op", "intrinsic"},
                      {"n", sc.n},
                      {"mu", mu},
                      {"ball_resolution", ball_resolution},
                      {"config", cfg.to_json()}});
  return 0;
}

int run_af(const RunConfig& cfg, const std::string& bodies_path, const std::vector<int>& random) {
  IneqConfig icfg;
  icfg.tol = cfg.tol;
  std::vector<InequalityReport> reports;
  if (!random.empty()) {
    if (random.size() != 2) throw std::invalid_argument("--random expects: n count");
    const int n = random[0];
    const int count = random[1];
    if (n < 2 || count < 1) throw std::invalid_argument("--random needs n >= 2, count >= 1");
    Rng root(cfg.seed);
    for (int i = 0; i < count; ++i) {
      Rng rng = root.substream(static_cast<std::uint64_t>(i));
      std::vector<Polytope> bodies;
      for (int b = 0; b < n; ++b)
        bodies.push_back(random_body(n, batch_kind(i + b), rng));
      InequalityReport rep = af_check(bodies, icfg);
      rep.inputs["instance"] = i;
      reports.push_back(std::move(rep));
    }
  } else {
    reports.push_back(af_check(load_bodies(bodies_path), icfg));
  }

  bool all_pass = true;
  for (const auto& r : reports) all_pass = all_pass && r.pass;
  if (cfg.format == "csv") {
    emit(cfg, af_csv(reports, cfg.seed));
  } else if (cfg.format == "text") {
    std::ostringstream out;
    for (const auto& r : reports)
      out << r.name << " slack=" << r.slack << (r.pass ? " PASS" : " FAIL") << '\n';
    emit(cfg, out.str());
  } else {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    emit_json(cfg, json{{"op", "af"}, {"reports", arr}, {"config", cfg.to_json()}});
  }
  return all_pass ? 0 : 1;
}

int run_iso(const RunConfig& cfg, const std::string& body_path, int ball_resolution) {
  IneqConfig icfg;
  icfg.tol = cfg.tol;
  icfg.ball_resolution = ball_resolution;
  IsoChainReport rep = iso_chain(load_body(body_path), icfg);
  json j = rep.to_json();
  j["op"] = "iso";
  j["ball_resolution"] = ball_resolution;
  j["config"] = cfg.to_json();
  emit_json(cfg, j);
  return (rep.monotone && rep.log_concave) ? 0 : 1;
}

int run_hr_sign(const RunConfig& cfg, const std::string& valuation_path,
                const std::vector<int>& random_harmonic) {
  SphericalValuation v;
  if (!random_harmonic.empty()) {
    if (random_harmonic.size() != 2)
      throw std::invalid_argument("--random-harmonic expects: n q");
    const int n = random_harmonic[0];
    const int q = random_harmonic[1];
    if (n < 2 || q < 2) throw std::invalid_argument("--random-harmonic needs n >= 2, q >= 2");
    Rng rng(cfg.seed);
    HarmonicExpansion e = HarmonicExpansion::zeros(n, q);
    for (int j = 0; j < sph_dim(n, q); ++j) e.coeffs[q][j] = rng.gauss();
    v = make_valuation(n, 1, std::move(e));
  } else {
    v = SphericalValuation::from_json(load_json_file(valuation_path));
  }
  HRCertificate cert = hr_form(v);
  json j = cert.to_json();
  j["op"] = "hr-sign";
  j["config"] = cfg.to_json();
  emit_json(cfg, j);
  return cert.pass ? 0 : 1;
}

int run_cosine_eig(const RunConfig& cfg, int n, int k, const std::string& weight_text) {
  std::vector<int> m = parse_weight(weight_text);
  if (static_cast<int>(m.size()) != k)
    throw std::invalid_argument("--weight must list k half-coordinates");
  for (int& mi : m) {
    if (mi % 2 != 0) throw std::invalid_argument("weights must have even entries");
    mi /= 2;
  }
  HighestWeight w(n, k, m);
  double eig = cosine_eigenvalue(n, k, w);
  emit_json(cfg, json{{"op", "cosine-eig"},
                      {"n", n},
                      {"k", k},
                      {"weight", parse_weight(weight_text)},
                      {"eigenvalue", eig},
                      {"sign", eig > 0.0 ? 1 : (eig < 0.0 ? -1 : 0)},
                      {"in_pi", w.in_pi()},
                      {"config", cfg.to_json()}});
  return 0;
}

json sign_report_json(const TransformSignReport& r) {
  return json{{"n", r.n},
              {"k", r.k},
              {"m", r.m},
              {"mean_scale", r.mean_scale},
              {"sign", r.sign},
              {"expected_sign", r.expected_sign},
              {"rel_stddev", r.rel_stddev},
              {"samples", r.samples},
              {"verdict_valid", r.verdict_valid},
              {"pass", r.pass}};
}

int run_grassmann_verify(const RunConfig& cfg, const std::string& lemma, int n, int k, int m,
                         int test_points) {
  json j;
  bool pass = false;
  bool valid = true;
  if (lemma == "signT") {
    // Exact eigenvalue sign on the weight (2m, 2, ..., 2); no sampling.
    HighestWeight w = HighestWeight::sign_lemma_weight(n, k, m);
    double eig = cosine_eigenvalue(n, k, w);
    int expected = (m - 1) % 2 == 0 ? 1 : -1;
    int sign = eig > 0.0 ? 1 : (eig < 0.0 ? -1 : 0);
    pass = sign == expected;
    j = json{{"n", n},       {"k", k},
             {"m", m},       {"eigenvalue", eig},
             {"sign", sign}, {"expected_sign", expected},
             {"pass", pass}};
  } else {
    Rng rng(cfg.seed);
    TransformSignReport rep = lemma == "signR"
                                  ? verify_sign_radon(n, k, m, cfg.samples, test_points, rng)
                                  : verify_sign_tr(n, k, m, cfg.samples, test_points, rng);
    pass = rep.pass;
    valid = rep.verdict_valid;
    j = sign_report_json(rep);
  }
  j["op"] = "grassmann-verify";
  j["lemma"] = lemma;
  j["config"] = cfg.to_json();
  emit_json(cfg, j);
  if (!valid) return 3;
  return pass ? 0 : 1;
}

int run_crofton(const RunConfig& cfg, const std::string& body_path, int cube_n, int k,
                const std::string& density, const std::string& weight_text) {
  Polytope body = body_path.empty() ? Polytope::unit_cube(cube_n) : load_body(body_path);
  const int n = body.dim();
  if (k < 1 || k > n) throw std::invalid_argument("crofton: need 1 <= k <= n");

  GrassFn f;
  if (density == "constant") {
    f = [](const Frame&) { return std::complex<double>(1.0, 0.0); };
  } else if (density == "hw") {
    std::vector<int> m = parse_weight(weight_text);
    if (static_cast<int>(m.size()) != k)
      throw std::invalid_argument("--weight must list k half-coordinates");
    HighestWeight w(n, k, m);
    f = [w](const Frame& e) { return hw_vector(w, e); };
  } else {
    throw std::invalid_argument("unknown density: " + density);
  }

  Rng rng(cfg.seed);
  double value = crofton_evaluate(f, k, body, cfg.samples, rng);
  emit_json(cfg, json{{"op", "crofton"},
                      {"n", n},
                      {"k", k},
                      {"density", density},
                      {"value", value},
                      {"config", cfg.to_json()}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale checks of mixed volumes, Grassmannian transform signs, the degree-1 "
               "Hodge-Riemann form, and the classical convexity inequalities"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto* mixedvol = app.add_subcommand("mixedvol", "Mixed volume of n bodies from a JSON file");
  std::string mixedvol_file;
  mixedvol->add_option("bodies", mixedvol_file, "JSON array of bodies")->required();
  add_common(mixedvol, cfg);

  auto* intrinsic = app.add_subcommand("intrinsic", "Intrinsic volumes of a body");
  std::string intrinsic_file;
  int intrinsic_res = 128;
  intrinsic->add_option("body", intrinsic_file, "JSON body")->required();
  intrinsic->add_option("--ball-resolution", intrinsic_res, "Polytopal ball resolution")
      ->capture_default_str();
  add_common(intrinsic, cfg);

  auto* af = app.add_subcommand("af", "Aleksandrov-Fenchel check");
  std::string af_file;
  std::vector<int> af_random;
  af->add_option("bodies", af_file, "JSON array of n bodies");
  af->add_option("--random", af_random, "Generate random instances: n count")->expected(2);
  add_common(af, cfg);

  auto* iso = app.add_subcommand("iso", "Isoperimetric ratio chain of a body");
  std::string iso_file;
  int iso_res = 128;
  iso->add_option("body", iso_file, "JSON body")->required();
  iso->add_option("--ball-resolution", iso_res, "Polytopal ball resolution")
      ->capture_default_str();
  add_common(iso, cfg);

  auto* hr = app.add_subcommand("hr-sign", "Hodge-Riemann sign certificate of a valuation");
  std::string hr_file;
  std::vector<int> hr_random;
  hr->add_option("valuation", hr_file, "JSON valuation");
  hr->add_option("--random-harmonic", hr_random, "Random pure-degree valuation: n q")
      ->expected(2);
  add_common(hr, cfg);

  auto* ce = app.add_subcommand("cosine-eig", "Cosine-transform eigenvalue of a weight");
  int ce_n = 0, ce_k = 0;
  std::string ce_weight;
  ce->add_option("--n", ce_n, "Ambient dimension")->required();
  ce->add_option("--k", ce_k, "Grassmannian rank")->required();
  ce->add_option("--weight", ce_weight, "Comma-separated even weight, e.g. 2,2")->required();
  add_common(ce, cfg);

  auto* gv = app.add_subcommand("grassmann-verify", "Verify a transform sign identity");
  std::string gv_lemma;
  int gv_n = 0, gv_k = 0, gv_m = 0, gv_points = 8;
  gv->add_option("--lemma", gv_lemma, "signR, signT, or signTR")
      ->check(CLI::IsMember({"signR", "signT", "signTR"}))
      ->required();
  gv->add_option("--n", gv_n, "Ambient dimension")->required();
  gv->add_option("--k", gv_k, "Grassmannian rank")->required();
  gv->add_option("--m", gv_m, "Leading half-weight")->required();
  gv->add_option("--test-points", gv_points, "Test frames per verdict")->capture_default_str();
  add_common(gv, cfg);

  auto* cr = app.add_subcommand("crofton", "Crofton valuation of a body");
  std::string cr_file, cr_density = "constant", cr_weight;
  int cr_cube = 0, cr_k = 1;
  cr->add_option("body", cr_file, "JSON body");
  cr->add_option("--cube", cr_cube, "Use the unit cube in this dimension instead of a file");
  cr->add_option("--k", cr_k, "Homogeneity degree")->capture_default_str();
  cr->add_option("--density", cr_density, "constant or hw")->capture_default_str();
  cr->add_option("--weight", cr_weight, "Half-weight tuple for --density hw");
  add_common(cr, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.threads = read_threads_env();
    if (cfg.samples < 1) throw std::invalid_argument("--samples must be positive");

    if (mixedvol->parsed()) return run_mixedvol(cfg, mixedvol_file);
    if (intrinsic->parsed()) return run_intrinsic(cfg, intrinsic_file, intrinsic_res);
    if (af->parsed()) {
      if (af_file.empty() && af_random.empty())
        throw std::invalid_argument("af: give a bodies file or --random n count");
      return run_af(cfg, af_file, af_random);
    }
    if (iso->parsed()) return run_iso(cfg, iso_file, iso_res);
    if (hr->parsed()) {
      if (hr_file.empty() && hr_random.empty())
        throw std::invalid_argument("hr-sign: give a valuation file or --random-harmonic n q");
      return run_hr_sign(cfg, hr_file, hr_random);
    }
    if (ce->parsed()) return run_cosine_eig(cfg, ce_n, ce_k, ce_weight);
    if (gv->parsed()) return run_grassmann_verify(cfg, gv_lemma, gv_n, gv_k, gv_m, gv_points);
    if (cr->parsed()) {
      if (cr_file.empty() && cr_cube < 1)
        throw std::invalid_argument("crofton: give a body file or --cube n");
      return run_crofton(cfg, cr_file, cr_cube, cr_k, cr_density, cr_weight);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
