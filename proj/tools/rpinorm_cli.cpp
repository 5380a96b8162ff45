// rpinorm-cli: batch front end over the rpinorm C API.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure (including a
// failed `verify`). Payload on stdout, diagnostics as JSON on stderr.

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpinorm/rpinorm.h"

namespace {

using json = nlohmann::ordered_json;

constexpr double kDefaultTol = 1e-7;

struct CliError {
  int exit_code;
  std::string message;
  std::string status;
};

[[noreturn]] void input_error(std::string msg) { throw CliError{1, std::move(msg), "invalid_input"}; }

void check(rpi_status s) {
  if (s == RPI_OK) return;
  int code = (s == RPI_ERR_INVALID_ARGUMENT || s == RPI_ERR_DOMAIN) ? 1 : 2;
  throw CliError{code, rpi_last_error(), rpi_status_name(s)};
}

struct FunctionDeleter {
  void operator()(rpi_function* f) const { rpi_function_destroy(f); }
};
struct ProfileDeleter {
  void operator()(rpi_profile* p) const { rpi_profile_destroy(p); }
};
struct WeightsDeleter {
  void operator()(rpi_weights* w) const { rpi_weights_destroy(w); }
};
struct ReportDeleter {
  void operator()(rpi_report* r) const { rpi_report_destroy(r); }
};
using FunctionPtr = std::unique_ptr<rpi_function, FunctionDeleter>;
using ProfilePtr = std::unique_ptr<rpi_profile, ProfileDeleter>;
using WeightsPtr = std::unique_ptr<rpi_weights, WeightsDeleter>;
using ReportPtr = std::unique_ptr<rpi_report, ReportDeleter>;

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) input_error("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    input_error("'" + path + "': " + e.what());
  }
}

std::vector<double> number_list(const json& j, const std::string& what) {
  if (!j.is_array()) input_error(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) input_error(what + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

template <typename Get>
std::vector<double> fetch(Get&& get) {
  size_t n = 0;
  check(get(nullptr, 0, &n));
  std::vector<double> out(n);
  check(get(out.data(), out.size(), &n));
  return out;
}

std::vector<double> weight_values(const rpi_weights* w) {
  return fetch([&](double* b, size_t c, size_t* n) { return rpi_weights_values(w, b, c, n); });
}

struct LoadedFunction {
  FunctionPtr function;
  ProfilePtr profile;
};

LoadedFunction function_from(const json& doc, const std::string& where) {
  const json& fn = doc.at("function");
  const std::string format = fn.value("format", "");
  std::vector<double> t, v;
  if (format == "breakpoints") {
    if (!fn.contains("points") || !fn["points"].is_array()) input_error(where + ": missing points");
    for (const auto& p : fn["points"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        input_error(where + ": each point must be [t, v]");
      }
      t.push_back(p[0].get<double>());
      v.push_back(p[1].get<double>());
    }
  } else if (format == "profile") {
    if (!fn.contains("values")) input_error(where + ": missing values");
    v = number_list(fn["values"], where + ": values");
    if (v.empty()) input_error(where + ": profile values must be nonempty");
    for (size_t i = 0; i < v.size(); ++i) t.push_back(static_cast<double>(i));
  } else {
    input_error(where + ": function format must be 'breakpoints' or 'profile'");
  }
  LoadedFunction out;
  rpi_function* f = nullptr;
  check(rpi_function_create(t.data(), v.data(), t.size(), &f));
  out.function.reset(f);
  rpi_profile* p = nullptr;
  check(rpi_function_canonicalize(f, &p));
  out.profile.reset(p);
  return out;
}

LoadedFunction load_function(const std::string& path) {
  json doc = read_json(path);
  if (!doc.is_object() || !doc.contains("function")) input_error("'" + path + "': expected a function document");
  try {
    return function_from(doc, path);
  } catch (const json::exception& e) {
    input_error("'" + path + "': " + e.what());
  }
}

std::optional<std::string> env_string(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  return std::string(v);
}

double default_tol() {
  if (auto s = env_string("RPINORM_TOL")) {
    try {
      double t = std::stod(*s);
      if (t > 0 && std::isfinite(t)) return t;
    } catch (const std::exception&) {
    }
    input_error("RPINORM_TOL must be a positive number");
  }
  return kDefaultTol;
}

WeightsPtr named(const std::string& name, size_t n, const std::vector<double>& e) {
  rpi_weights* w = nullptr;
  check(rpi_weights_named(name.c_str(), n, e.data(), e.size(), &w));
  return WeightsPtr(w);
}

// A norm selected on the command line: either standard weights or a classic name.
struct NormChoice {
  WeightsPtr weights;
  std::string classic;
};

NormChoice norm_from_descriptor(const json& d, const std::string& where) {
  NormChoice out;
  const std::string kind = d.value("kind", "");
  if (kind == "weights") {
    auto w = number_list(d.at("weights"), where + ": weights");
    rpi_weights* h = nullptr;
    check(rpi_weights_create(w.data(), w.size(), &h));
    out.weights.reset(h);
  } else if (kind == "named") {
    std::vector<double> e;
    if (d.contains("e")) e = number_list(d["e"], where + ": e");
    out.weights = named(d.value("name", ""), d.value("n", size_t{0}), e);
  } else if (kind == "classic") {
    out.classic = d.value("name", "");
  } else {
    input_error(where + ": norm kind must be 'weights', 'named' or 'classic'");
  }
  return out;
}

NormChoice norm_from_file(const std::string& path) {
  json doc = read_json(path);
  try {
    if (doc.contains("norm")) return norm_from_descriptor(doc["norm"], path);
    if (doc.contains("function")) {
      LoadedFunction psi = function_from(doc, path);
      NormChoice out;
      rpi_weights* w = nullptr;
      check(rpi_weights_of_profile(psi.profile.get(), &w));
      out.weights.reset(w);
      return out;
    }
  } catch (const json::exception& e) {
    input_error("'" + path + "': " + e.what());
  }
  input_error("'" + path + "': expected a norm or function document");
}

std::vector<double> parse_csv(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      input_error("--e: '" + item + "' is not a number");
    }
  }
  return out;
}

double evaluate(const rpi_profile* phi, const NormChoice& norm) {
  double v = 0.0;
  if (norm.weights) {
    check(rpi_standard_norm(phi, norm.weights.get(), &v));
  } else {
    check(rpi_classic_norm(phi, norm.classic.c_str(), &v));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Commands

struct NormArgs {
  std::string phi, psi, named_norm, classic, e;
  size_t n = 0;
};

int cmd_norm(const NormArgs& a) {
  LoadedFunction phi = load_function(a.phi);
  int chosen = !a.psi.empty() + !a.named_norm.empty() + !a.classic.empty();
  if (chosen != 1) input_error("norm: give exactly one of --psi, --named, --classic");
  NormChoice norm;
  if (!a.psi.empty()) {
    norm = norm_from_file(a.psi);
  } else if (!a.named_norm.empty()) {
    norm.weights = named(a.named_norm, a.n, a.e.empty() ? std::vector<double>{} : parse_csv(a.e));
  } else {
    norm.classic = a.classic;
  }
  json out;
  out["value"] = evaluate(phi.profile.get(), norm);
  std::cout << out.dump() << "\n";
  return 0;
}

struct SpectrumArgs {
  std::string phi, family = "S", format = "csv";
  size_t max_n = 8;
};

int cmd_spectrum(const SpectrumArgs& a) {
  LoadedFunction phi = load_function(a.phi);
  if (a.max_n == 0) input_error("spectrum: --max-n must be >= 1");
  std::string name;
  if (a.family == "S") name = "S_n";
  else if (a.family == "L") name = "L_n";
  else input_error("spectrum: --family must be S or L");
  std::vector<double> values;
  for (size_t n = 1; n <= a.max_n; ++n) {
    NormChoice c;
    c.weights = named(name, n, {});
    values.push_back(evaluate(phi.profile.get(), c));
  }
  if (a.format == "json") {
    json rows = json::array();
    for (size_t i = 0; i < values.size(); ++i) rows.push_back({{"n", i + 1}, {"value", values[i]}});
    std::cout << json{{"family", a.family}, {"spectrum", rows}}.dump() << "\n";
  } else {
    std::cout << "n,value\n";
    for (size_t i = 0; i < values.size(); ++i) std::cout << i + 1 << "," << format_double(values[i]) << "\n";
  }
  return 0;
}

struct CountingOracle {
  const rpi_profile* hidden;
  uint64_t calls = 0;
};

int oracle_callback(void* user, const double* weights, size_t k, double* value) {
  auto* o = static_cast<CountingOracle*>(user);
  ++o->calls;
  rpi_weights* w = nullptr;
  if (rpi_weights_create(weights, k, &w) != RPI_OK) return 1;
  WeightsPtr guard(w);
  return rpi_standard_norm(o->hidden, w, value) == RPI_OK ? 0 : 1;
}

struct ReconstructArgs {
  std::string phi;
  std::optional<double> tol;
  size_t paranoid = 0;
  size_t n_cap = 64;
};

int cmd_reconstruct(const ReconstructArgs& a) {
  LoadedFunction phi = load_function(a.phi);
  const rpi_profile* p = phi.profile.get();
  if (rpi_profile_is_zero(p)) input_error("reconstruction requires a nonzero function");
  if (!rpi_profile_compact(p)) input_error("reconstruction requires compact support");
  const double tol = a.tol ? *a.tol : default_tol();
  if (!(tol > 0)) input_error("--tol must be positive");

  CountingOracle oracle{p};
  rpi_report* r = nullptr;
  check(rpi_reconstruct(&oracle_callback, &oracle, tol, a.n_cap, a.paranoid, &r));
  ReportPtr report(r);

  const double V = rpi_profile_total_variation(p);
  int match = 0;
  check(rpi_verify_reconstruction(p, r, 1e-6 * std::max(1.0, V), &match));

  json out;
  out["profile"] = fetch([&](double* b, size_t c, size_t* n) { return rpi_report_profile(r, b, c, n); });
  out["l"] = rpi_report_l(r);
  out["derivatives"] =
      fetch([&](double* b, size_t c, size_t* n) { return rpi_report_derivatives(r, b, c, n); });
  out["oracle_calls"] = oracle.calls;
  out["epsilon_used"] = rpi_report_epsilon(r);
  out["sign_ambiguous"] = rpi_report_sign_ambiguous(r) != 0;
  out["match"] = match != 0;
  std::cout << out.dump() << "\n";
  return 0;
}

struct CompareArgs {
  std::string phi, psi;
  size_t refine = 128;
};

int cmd_compare(const CompareArgs& a) {
  LoadedFunction f1 = load_function(a.phi);
  LoadedFunction f2 = load_function(a.psi);
  double lower = 0.0, upper = 0.0;
  char witness[64] = {0};
  check(rpi_sandwich(f1.function.get(), f2.function.get(), a.refine, &lower, &upper, witness,
                     sizeof(witness)));
  json out;
  out["lower"] = lower;
  out["upper"] = upper;
  out["refinement"] = a.refine;
  out["witness"] = std::string(witness);
  std::cout << out.dump() << "\n";
  return 0;
}

struct VerifyArgs {
  std::string phi;
  uint64_t seed = 0;
};

int cmd_verify(const VerifyArgs& a) {
  LoadedFunction f = load_function(a.phi);
  size_t needed = 0;
  int passed = 0;
  check(rpi_verify_suite(f.function.get(), a.seed, nullptr, 0, &needed, &passed));
  std::string buf(needed, '\0');
  check(rpi_verify_suite(f.function.get(), a.seed, buf.data(), buf.size(), &needed, &passed));
  buf.resize(needed - 1);
  std::cout << buf << "\n";
  if (!passed) throw CliError{2, "one or more invariant checks failed", "numerical"};
  return 0;
}

int cmd_catalog() {
  json standard = json::array();
  for (size_t i = 0; i < rpi_catalog_size(); ++i) {
    const char* name = nullptr;
    rpi_weights* w = nullptr;
    check(rpi_catalog_entry(i, &name, &w));
    WeightsPtr guard(w);
    standard.push_back({{"name", name}, {"weights", weight_values(w)}});
  }
  json out;
  out["standard"] = standard;
  out["families"] = {"S", "Lambda", "S_n", "S_n_e", "L_n"};
  out["classic"] = {"sup", "range", "tv", "tail", "asym"};
  std::cout << out.dump(2) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reparametrization-invariant norms of piecewise-linear functions"};
  app.require_subcommand(1);

  NormArgs norm_args;
  auto* norm = app.add_subcommand("norm", "Evaluate a standard or classic norm");
  norm->add_option("--phi", norm_args.phi, "Function document")->required();
  norm->add_option("--psi", norm_args.psi, "Function or norm document defining the norm");
  norm->add_option("--named", norm_args.named_norm, "S, Lambda, S_n, S_n_e or L_n");
  norm->add_option("--classic", norm_args.classic, "sup, range, tv, tail or asym");
  norm->add_option("--n", norm_args.n, "Family index for S_n, S_n_e, L_n");
  norm->add_option("--e", norm_args.e, "Comma-separated perturbation vector for S_n_e");

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "Emit the S_n or L_n norm sequence");
  spectrum->add_option("--phi", spec_args.phi, "Function document")->required();
  spectrum->add_option("--family", spec_args.family, "S or L");
  spectrum->add_option("--max-n", spec_args.max_n, "Largest n");
  spectrum->add_option("--format", spec_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "Recover a profile from standard norms only");
  rec->add_option("--phi", rec_args.phi, "Function document (hidden behind an oracle)")->required();
  rec->add_option("--tol", rec_args.tol, "Relative tolerance (default: RPINORM_TOL or 1e-7)");
  rec->add_option("--paranoid", rec_args.paranoid, "Extra plateau steps when detecting l");
  rec->add_option("--n-cap", rec_args.n_cap, "Largest l considered");

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "Bound the natural pseudo-distance");
  cmp->add_option("--phi", cmp_args.phi, "First function document")->required();
  cmp->add_option("--psi", cmp_args.psi, "Second function document")->required();
  cmp->add_option("--refine", cmp_args.refine, "Number of value levels for the upper estimate");

  VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Run the invariant suites against a function");
  ver->add_option("--phi", ver_args.phi, "Function document")->required();
  ver->add_option("--seed", ver_args.seed, "Seed for random partners");

  auto* cat = app.add_subcommand("catalog", "List named norms and their weights");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*norm) return cmd_norm(norm_args);
    if (*spectrum) return cmd_spectrum(spec_args);
    if (*rec) return cmd_reconstruct(rec_args);
    if (*cmp) return cmd_compare(cmp_args);
    if (*ver) return cmd_verify(ver_args);
    if (*cat) return cmd_catalog();
  } catch (const CliError& e) {
    std::cerr << json{{"error", e.message}, {"status", e.status}}.dump() << "\n";
    return e.exit_code;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", e.what()}, {"status", "invalid_input"}}.dump() << "\n";
    return 1;
  }
  return 1;
}
