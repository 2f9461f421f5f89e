#include "lcgeom_cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lcgeom/berwald.hpp"
#include "lcgeom/functionals.hpp"
#include "lcgeom/presets.hpp"
#include "lcgeom/report_io.hpp"
#include "lcgeom/verify.hpp"

namespace lcg::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string out_path;
  std::string format = "text";
  std::string body_file;
  std::string config_file;
  std::uint64_t seed = 42;
  double tol = 0.0;
  bool tol_from_config = false;
  int directions = 0;

  std::string suite = "all";
  int dim = 2;
  bool timing = false;
  bool only_listed = false;
  std::int64_t mc_samples = 4'000'000;

  std::string target;
  std::string gamma;
  std::string function;
  std::string witness;
  std::string shape;
  std::string integrand;
  std::string p_grid;

  std::string compute = "all";
  int grid = 21;
  double extent = 0.0;
};

// Writes to --out when given, else to the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::map<std::string, Body> extra_bodies(const Options& o) {
  if (o.body_file.empty()) return {};
  return load_body_file(o.body_file);
}

Body resolve_body(const std::string& name, const std::map<std::string, Body>& bodies) {
  const auto it = bodies.find(name);
  if (it != bodies.end()) return it->second;
  return preset_body(name);
}

std::vector<double> numbers_after(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

// Concave integrands on a body: x, 1-x, sqrt (of the first coordinate),
// affine:a1,..,an,c and chord:e1|u1,..,un.
std::function<double(const Vec&)> parse_integrand(const std::string& d, const Body& K) {
  if (d == "x") return [](const Vec& x) { return x[0]; };
  if (d == "1-x") return [](const Vec& x) { return 1.0 - x[0]; };
  if (d == "sqrt") return [](const Vec& x) { return std::sqrt(std::max(0.0, x[0])); };
  const auto colon = d.find(':');
  const std::string kind = d.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : d.substr(colon + 1);
  const int n = K.dim();
  if (kind == "affine") {
    const std::vector<double> xs = numbers_after(arg);
    if (static_cast<int>(xs.size()) != n + 1) throw UsageError("affine integrand takes dim + 1 numbers");
    Vec a;
    for (int k = 0; k < n; ++k) a[k] = xs[k];
    const double c = xs[n];
    return [a, c](const Vec& x) { return dot(a, x) + c; };
  }
  if (kind == "chord") {
    const ConcaveWitness w = parse_witness(d, n);
    const Vec u = std::get<OneSidedChord>(w).u;
    return [K, u](const Vec& x) { return one_sided_chord(K, x, u); };
  }
  throw UsageError("unknown integrand '" + d + "'");
}

std::pair<std::string, std::string> split_first(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {s, ""};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

// "kind:arg[:rest]" -> ("kind:arg", rest)
std::pair<std::string, std::string> split_function(const std::string& s) {
  const auto first = s.find(':');
  if (first == std::string::npos) throw UsageError("function descriptor must look like kind:argument");
  const auto second = s.find(':', first + 1);
  if (second == std::string::npos) return {s, ""};
  return {s.substr(0, second), s.substr(second + 1)};
}

void apply_config(Options& o, const CLI::App& verify) {
  if (o.config_file.empty()) return;
  std::ifstream in(o.config_file);
  if (!in) throw UsageError("cannot read config '" + o.config_file + "'");
  for (const ConfigSection& s : parse_config(in)) {
    if (!s.name.empty() && s.name != "verify") continue;
    auto given = [&](const char* flag) { return verify.count(flag) > 0; };
    try {
      if (const auto* v = s.find("suite"); v && !given("--suite")) o.suite = *v;
      if (const auto* v = s.find("dim"); v && !given("--dim")) o.dim = std::stoi(*v);
      if (const auto* v = s.find("seed"); v && !given("--seed")) o.seed = std::stoull(*v);
      if (const auto* v = s.find("tol"); v && !given("--tol")) {
        o.tol = std::stod(*v);
        o.tol_from_config = true;
      }
      if (const auto* v = s.find("mc_samples"); v && !given("--mc-samples")) o.mc_samples = std::stoll(*v);
      if (const auto* v = s.find("timing"); v && !given("--timing")) o.timing = *v == "true" || *v == "1";
    } catch (const std::logic_error&) {
      throw UsageError("bad value in config section [" + s.name + "]");
    }
  }
}

std::map<std::string, Body> config_bodies(const Options& o) {
  if (o.config_file.empty()) return {};
  std::ifstream in(o.config_file);
  std::map<std::string, Body> out;
  for (const ConfigSection& s : parse_config(in))
    if (!s.name.empty() && s.name != "verify") out.emplace(s.name, body_from_section(s));
  return out;
}

void apply_seed_env(Options& o) {
  const char* env = std::getenv("LCG_SEED");
  if (env == nullptr || *env == '\0') return;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument("trailing");
    o.seed = v;
  } catch (const std::logic_error&) {
    throw UsageError(std::string("LCG_SEED is not an unsigned integer: ") + env);
  }
}

VerifyOptions verify_options(const Options& o, const CLI::App& sub) {
  VerifyOptions v;
  v.seed = RngSeed{o.seed};
  v.timing = o.timing;
  v.mc_samples = o.mc_samples;
  const CLI::Option* tol = sub.get_option_no_throw("--tol");
  if ((tol != nullptr && tol->count() > 0) || o.tol_from_config) {
    if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
    v.tolerance = o.tol;
  }
  if (o.directions > 0) {
    v.grid_2d = o.directions;
    v.grid_3d = o.directions;
  }
  return v;
}

int cmd_verify(Options& o, const CLI::App& sub, std::ostream& out) {
  apply_config(o, sub);
  apply_seed_env(o);
  SuiteConfig config;
  config.suite = o.suite;
  config.dim = o.dim;
  config.only_listed = o.only_listed;
  config.options = verify_options(o, sub);
  for (auto& [name, K] : config_bodies(o)) config.bodies.emplace_back(name, K);
  for (auto& [name, K] : extra_bodies(o)) config.bodies.emplace_back(name, K);
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), config.suite) == names.end())
    throw UsageError("unknown suite '" + config.suite + "'");
  if (config.dim != 2 && config.dim != 3) throw UsageError("--dim must be 2 or 3");
  if (config.options.mc_samples < 1000) throw UsageError("--mc-samples must be at least 1000");

  const std::vector<CheckReport> reports = run_suite(config);
  Sink sink(o.out_path, out);
  write_report_json(*sink, reports);
  return aggregate_pass(reports) ? kOk : kCheckFailed;
}

int cmd_sweep(Options& o, std::ostream& out) {
  if (o.p_grid.empty()) throw UsageError("sweep needs --p");
  std::vector<double> ps;
  try {
    ps = parse_p_grid(o.p_grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto [kind, inline_arg] = split_first(o.target);
  const std::map<std::string, Body> bodies = extra_bodies(o);
  std::vector<SweepRow> rows;
  QuadratureSpec spec;

  if (kind == "phi") {
    const std::string desc = !inline_arg.empty() ? inline_arg : o.gamma;
    if (desc.empty()) throw UsageError("sweep phi needs --gamma");
    const MomentProfile gamma = parse_profile(desc);
    for (double p : ps) rows.push_back({p, guarded([&] { return phi_gamma(gamma, p, spec); })});
  } else if (kind == "berwald") {
    std::string fdesc = o.function, hdesc = o.witness;
    if (!inline_arg.empty()) std::tie(fdesc, hdesc) = split_function(inline_arg);
    if (fdesc.empty() || hdesc.empty()) throw UsageError("sweep berwald needs --f and --h");
    const Epigraph L(parse_function(fdesc, bodies), spec);
    const ConcaveWitness h = parse_witness(hdesc, L.function().dim());
    validate_witness(L, h);
    for (double p : ps) rows.push_back({p, guarded([&] { return berwald_epigraph(L, h, p, spec); })});
  } else if (kind == "classical" || kind == "holder") {
    std::string bdesc = o.shape, idesc = o.integrand;
    if (!inline_arg.empty()) std::tie(bdesc, idesc) = split_first(inline_arg);
    if (bdesc.empty() || idesc.empty()) throw UsageError("sweep " + kind + " needs --body and --phi");
    const Body K = resolve_body(bdesc, bodies);
    const auto phi = parse_integrand(idesc, K);
    if (kind == "classical") validate_concave_on(K, phi);
    for (double p : ps) {
      if (!(p > 0.0)) throw UsageError(kind + " sweeps need p > 0");
      rows.push_back({p, guarded([&] {
                        return kind == "classical" ? berwald_classical(K, phi, p, spec)
                                                   : holder_mean(K, phi, p, spec);
                      })});
    }
  } else {
    throw UsageError("unknown sweep target '" + o.target + "'");
  }
  Sink sink(o.out_path, out);
  write_sweep_csv(*sink, rows);
  return kOk;
}

void emit(std::ostream& out, const std::string& format, const std::vector<std::pair<std::string, double>>& kv) {
  if (format == "json") {
    out << "{";
    for (std::size_t i = 0; i < kv.size(); ++i)
      out << (i ? ", " : "") << '"' << kv[i].first << "\": " << csv_number(kv[i].second);
    out << "}\n";
    return;
  }
  for (const auto& [k, v] : kv) out << k << ' ' << csv_number(v) << '\n';
}

bool wants(const std::string& compute, const char* key) { return compute == "all" || compute == key; }

int cmd_body(Options& o, const CLI::App& sub, std::ostream& out) {
  static const std::vector<std::string> keys{"all", "volume", "polar-volume", "zhang-product", "bounds"};
  if (std::find(keys.begin(), keys.end(), o.compute) == keys.end())
    throw UsageError("unknown --compute '" + o.compute + "'");
  if (o.shape.empty()) throw UsageError("body needs --shape");
  const Body K = resolve_body(o.shape, extra_bodies(o));
  const VerifyOptions v = verify_options(o, sub);
  const int n = K.dim();
  std::vector<std::pair<std::string, double>> kv;
  if (wants(o.compute, "volume")) kv.emplace_back("volume", volume(K));
  if (n >= 2) {
    if (wants(o.compute, "polar-volume"))
      kv.emplace_back("polar_projection_volume", star_volume(polar_projection_body(K, v.volume_grid(n))));
    if (wants(o.compute, "zhang-product")) kv.emplace_back("zhang_product", projection_product(K, v));
    if (wants(o.compute, "bounds")) {
      const auto [lo, hi] = projection_product_bounds(n);
      kv.emplace_back("lower_bound", lo);
      kv.emplace_back("upper_bound", hi);
    }
  } else if (o.compute != "all" && o.compute != "volume") {
    throw UsageError("projection quantities need a body of dimension 2 or 3");
  }
  Sink sink(o.out_path, out);
  emit(*sink, o.format, kv);
  return kOk;
}

int cmd_fn(Options& o, const CLI::App& sub, std::ostream& out) {
  static const std::vector<std::string> keys{"all", "l1", "polar-volume", "zhang-lhs", "zhang-rhs", "zhang-ratio"};
  if (std::find(keys.begin(), keys.end(), o.compute) == keys.end())
    throw UsageError("unknown --compute '" + o.compute + "'");
  if (o.function.empty()) throw UsageError("fn needs --f");
  const LogConcaveFunction f = parse_function(o.function, extra_bodies(o));
  const VerifyOptions v = verify_options(o, sub);
  const int n = f.dim();
  std::vector<std::pair<std::string, double>> kv;
  const double l1 = l1_norm(f, v.spec);
  if (wants(o.compute, "l1")) kv.emplace_back("l1_norm", l1);
  if (n >= 2) {
    const double polar = star_volume(polar_projection_fn(f, v.volume_grid(n), v.spec));
    if (wants(o.compute, "polar-volume")) kv.emplace_back("polar_projection_volume", polar);
    const bool need_sides = o.compute == "all" || o.compute.rfind("zhang", 0) == 0;
    if (need_sides) {
      const CheckReport r = check_functional_zhang(f, std::nullopt, 1e-2, std::nullopt, v);
      if (r.details.rfind("error:", 0) == 0 || r.details.rfind("quadrature", 0) == 0 ||
          r.details.rfind("diverged", 0) == 0)
        throw std::runtime_error(r.details);
      if (wants(o.compute, "zhang-lhs")) kv.emplace_back("zhang_lhs", r.lhs);
      if (wants(o.compute, "zhang-rhs")) kv.emplace_back("zhang_rhs", r.rhs);
      if (wants(o.compute, "zhang-ratio")) kv.emplace_back("zhang_ratio", r.lhs / r.rhs);
    }
  } else if (o.compute != "all" && o.compute != "l1") {
    throw UsageError("projection quantities need a function of dimension 2 or 3");
  }
  Sink sink(o.out_path, out);
  emit(*sink, o.format, kv);
  return kOk;
}

int cmd_covariogram(Options& o, std::ostream& out) {
  if (o.function.empty()) throw UsageError("covariogram needs --f");
  if (o.grid < 3) throw UsageError("--grid must be at least 3");
  const LogConcaveFunction f = parse_function(o.function, extra_bodies(o));
  const CovariogramFn g(f);
  const int n = f.dim();
  const double reach = f.kind() == FunctionKind::indicator ? 1.0 : level_radius(f, 12.0);
  double half[3] = {0, 0, 0};
  for (int k = 0; k < n; ++k)
    half[k] = o.extent > 0.0 ? o.extent : reach * support_value(g.difference(), axis(k));
  auto coord = [&](int k, int i) { return -half[k] + 2.0 * half[k] * i / (o.grid - 1); };

  Sink sink(o.out_path, out);
  std::ostream& s = *sink;
  for (int k = 0; k < n; ++k) s << 'x' << (k + 1) << ',';
  s << "g_f\n";
  const int m = o.grid;
  const int total = n == 1 ? m : n == 2 ? m * m : m * m * m;
  for (int idx = 0; idx < total; ++idx) {
    Vec x;
    int rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      x[k] = coord(k, rest % m);
      rest /= m;
    }
    // Centre samples land exactly on 0 when m is odd.
    for (int k = 0; k < n; ++k)
      if (std::abs(x[k]) < 1e-14 * std::max(1.0, half[k])) x[k] = 0.0;
    for (int k = 0; k < n; ++k) s << csv_number(x[k]) << ',';
    s << csv_number(g(x)) << '\n';
  }
  return kOk;
}

// "--p -0.9:4:25" would read the value as a flag; glue such values on.
std::vector<std::string> normalize_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    const bool long_opt = a.size() > 2 && a[0] == '-' && a[1] == '-' && a.find('=') == std::string::npos;
    if (long_opt && i + 1 < argc) {
      const std::string next = argv[i + 1];
      if (next.size() > 1 && next[0] == '-' &&
          (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        args.push_back(a + "=" + next);
        ++i;
        continue;
      }
    }
    args.push_back(std::move(a));
  }
  return args;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Computational convex geometry: projection bodies, covariograms and Berwald functionals"};
  app.name("lcgeom");
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "Output file (default: standard output)");
    sub->add_option("--body-file", o.body_file, "Sectioned key = value file with extra bodies");
  };

  CLI::App* verify = app.add_subcommand("verify", "Run the verification suite and write a JSON report");
  add_common(verify);
  verify->add_option("--suite", o.suite, "all, zhang, affine, berwald, ball or inclusion");
  verify->add_option("--dim", o.dim, "Ambient dimension (2 or 3)");
  verify->add_option("--seed", o.seed, "Seed for random bodies and Monte Carlo (LCG_SEED overrides)");
  verify->add_option("--tol", o.tol, "Replace every check's slack");
  verify->add_option("--mc-samples", o.mc_samples, "Monte Carlo samples for the cross-path checks");
  verify->add_option("--directions", o.directions, "Direction grid size for star-body volumes");
  verify->add_option("--config", o.config_file, "Config file with a [verify] section and body sections");
  verify->add_flag("--timing", o.timing, "Record runtime_ms");
  verify->add_flag("--only-listed", o.only_listed, "Check only bodies from --body-file / --config");

  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate a moment functional over a p grid (CSV)");
  add_common(sweep);
  sweep->set_help_flag("--help", "Print this help message and exit");
  sweep->add_option("target", o.target, "phi, berwald, classical or holder (optionally with :arguments)")
      ->required();
  sweep->add_option("--p", o.p_grid, "min:max:steps or a comma list");
  sweep->add_option("--gamma", o.gamma, "Profile: linear:c, power:a, constant:c, pwl:r,v;...");
  sweep->add_option("--f", o.function, "Function: indicator:<body>, expnorm:<body>, gaussian:<d>");
  sweep->add_option("--h", o.witness, "Witness: affine:..., chord:...");
  sweep->add_option("--body", o.shape, "Body for classical and holder sweeps");
  sweep->add_option("--phi", o.integrand, "Integrand: x, 1-x, sqrt, affine:a..,c, chord:e1");

  CLI::App* body = app.add_subcommand("body", "Volume and projection quantities of a body");
  add_common(body);
  body->add_option("--shape", o.shape, "Preset or body-file section name")->required();
  body->add_option("--compute", o.compute, "all, volume, polar-volume, zhang-product or bounds");
  body->add_option("--format", o.format, "text or json");
  body->add_option("--directions", o.directions, "Direction grid size");

  CLI::App* fn = app.add_subcommand("fn", "Norm, polar projection and covariogram inequality of a function");
  add_common(fn);
  fn->add_option("--f", o.function, "Function descriptor")->required();
  fn->add_option("--compute", o.compute, "all, l1, polar-volume, zhang-lhs, zhang-rhs or zhang-ratio");
  fn->add_option("--format", o.format, "text or json");
  fn->add_option("--directions", o.directions, "Direction grid size");

  CLI::App* cov = app.add_subcommand("covariogram", "Sample the covariogram functional on a centred grid (CSV)");
  add_common(cov);
  cov->add_option("--f", o.function, "Function descriptor")->required();
  cov->add_option("--grid", o.grid, "Points per axis (>= 3)");
  cov->add_option("--extent", o.extent, "Half-width of the sampled box (default: covers the support)");

  std::vector<std::string> args = normalize_args(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lcgeom: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (o.format != "text" && o.format != "json") throw UsageError("--format must be text or json");
    if (verify->parsed()) return cmd_verify(o, *verify, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    if (body->parsed()) return cmd_body(o, *body, out);
    if (fn->parsed()) return cmd_fn(o, *fn, out);
    return cmd_covariogram(o, out);
  } catch (const UsageError& e) {
    err << "lcgeom: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "lcgeom: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "lcgeom: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "lcgeom: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace lcg::cli
