#include "rpinorm/rpinorm.h"

#include <cstring>
#include <exception>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpinorm/error.hpp"
#include "rpinorm/norms.hpp"
#include "rpinorm/profiles.hpp"
#include "rpinorm/pseudodist.hpp"
#include "rpinorm/reconstruct.hpp"
#include "rpinorm/verify.hpp"

struct rpi_function {
  rpinorm::PiecewiseLinearFunction value;
};
struct rpi_profile {
  rpinorm::CriticalProfile value;
};
struct rpi_weights {
  rpinorm::WeightSequence value;
};
struct rpi_report {
  rpinorm::ReconstructionReport value;
};

namespace {

thread_local std::string g_last_error;

rpi_status fail(rpi_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

// Runs `body`, translating library exceptions into status codes.
template <typename F>
rpi_status guarded(F&& body) {
  try {
    body();
    return RPI_OK;
  } catch (const rpinorm::ValidationError& e) {
    return fail(RPI_ERR_INVALID_ARGUMENT, e.what());
  } catch (const rpinorm::DomainError& e) {
    return fail(RPI_ERR_DOMAIN, e.what());
  } catch (const rpinorm::NumericalError& e) {
    return fail(RPI_ERR_NUMERICAL, e.what());
  } catch (const rpinorm::CapacityError& e) {
    return fail(RPI_ERR_CAPACITY, e.what());
  } catch (const std::bad_alloc&) {
    return fail(RPI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RPI_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(RPI_ERR_INTERNAL, "unknown error");
  }
}

rpi_status copy_out(std::span<const double> src, double* buf, size_t cap, size_t* needed) {
  if (needed) *needed = src.size();
  if (cap < src.size()) {
    if (!buf && cap == 0) return RPI_OK;
    return fail(RPI_ERR_CAPACITY, "output buffer too small");
  }
  if (!src.empty()) std::memcpy(buf, src.data(), src.size() * sizeof(double));
  return RPI_OK;
}

rpi_status null_arg(const char* what) {
  return fail(RPI_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

const std::vector<rpinorm::NamedWeights>& catalog() {
  static const auto c = rpinorm::default_catalog();
  return c;
}

// Error raised from inside a user oracle callback.
struct OracleFailure : rpinorm::NumericalError {
  using rpinorm::NumericalError::NumericalError;
};

} // namespace

extern "C" {

const char* rpi_version(void) { return "1.0.0"; }

const char* rpi_last_error(void) { return g_last_error.c_str(); }

const char* rpi_status_name(rpi_status status) {
  switch (status) {
  case RPI_OK: return "ok";
  case RPI_ERR_INVALID_ARGUMENT: return "invalid_argument";
  case RPI_ERR_DOMAIN: return "domain";
  case RPI_ERR_NUMERICAL: return "numerical";
  case RPI_ERR_CAPACITY: return "capacity";
  case RPI_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

rpi_status rpi_function_create(const double* t, const double* v, size_t n, rpi_function** out) {
  if (!out) return null_arg("out");
  if (n > 0 && (!t || !v)) return null_arg("t/v");
  return guarded([&] {
    std::vector<rpinorm::Point> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i] = {t[i], v[i]};
    *out = new rpi_function{rpinorm::PiecewiseLinearFunction(std::move(pts))};
  });
}

void rpi_function_destroy(rpi_function* f) { delete f; }

rpi_status rpi_function_canonicalize(const rpi_function* f, rpi_profile** out) {
  if (!f || !out) return null_arg("f/out");
  return guarded([&] { *out = new rpi_profile{rpinorm::canonicalize(f->value)}; });
}

rpi_status rpi_profile_from_values(const double* values, size_t n, rpi_profile** out) {
  if (!out) return null_arg("out");
  if (n > 0 && !values) return null_arg("values");
  return guarded([&] {
    *out = new rpi_profile{rpinorm::CriticalProfile::reduce(std::span<const double>(values, n))};
  });
}

void rpi_profile_destroy(rpi_profile* p) { delete p; }

rpi_status rpi_profile_values(const rpi_profile* p, double* buf, size_t cap, size_t* needed) {
  if (!p) return null_arg("p");
  return copy_out(p->value.values(), buf, cap, needed);
}

int rpi_profile_is_zero(const rpi_profile* p) { return p && p->value.is_zero() ? 1 : 0; }
int rpi_profile_compact(const rpi_profile* p) { return p && p->value.compact_support() ? 1 : 0; }
size_t rpi_profile_l(const rpi_profile* p) { return p ? rpinorm::l_of(p->value) : 0; }
double rpi_profile_total_variation(const rpi_profile* p) {
  return p ? rpinorm::total_variation(p->value) : 0.0;
}
double rpi_profile_separation_margin(const rpi_profile* p) {
  return p ? rpinorm::separation_margin(p->value) : 0.0;
}

rpi_status rpi_weights_create(const double* m, size_t k, rpi_weights** out) {
  if (!out) return null_arg("out");
  if (k > 0 && !m) return null_arg("m");
  return guarded([&] { *out = new rpi_weights{rpinorm::WeightSequence({m, m + k})}; });
}

rpi_status rpi_weights_named(const char* name, size_t n, const double* e, size_t e_len,
                             rpi_weights** out) {
  if (!name || !out) return null_arg("name/out");
  if (e_len > 0 && !e) return null_arg("e");
  return guarded([&] {
    *out = new rpi_weights{rpinorm::named_weights(name, n, std::span<const double>(e, e_len))};
  });
}

rpi_status rpi_weights_of_profile(const rpi_profile* psi, rpi_weights** out) {
  if (!psi || !out) return null_arg("psi/out");
  return guarded([&] { *out = new rpi_weights{rpinorm::weights_of(psi->value)}; });
}

void rpi_weights_destroy(rpi_weights* w) { delete w; }

rpi_status rpi_weights_values(const rpi_weights* w, double* buf, size_t cap, size_t* needed) {
  if (!w) return null_arg("w");
  return copy_out(w->value.values(), buf, cap, needed);
}

size_t rpi_catalog_size(void) { return catalog().size(); }

rpi_status rpi_catalog_entry(size_t i, const char** name, rpi_weights** out) {
  if (i >= catalog().size()) return fail(RPI_ERR_INVALID_ARGUMENT, "catalog index out of range");
  if (name) *name = catalog()[i].name.c_str();
  if (out) {
    return guarded([&] { *out = new rpi_weights{catalog()[i].weights}; });
  }
  return RPI_OK;
}

rpi_status rpi_standard_norm(const rpi_profile* phi, const rpi_weights* psi, double* out) {
  if (!phi || !psi || !out) return null_arg("phi/psi/out");
  return guarded([&] { *out = rpinorm::standard_norm(phi->value, psi->value); });
}

rpi_status rpi_classic_norm(const rpi_profile* phi, const char* name, double* out) {
  if (!phi || !name || !out) return null_arg("phi/name/out");
  const std::string n = name;
  if (n == "sup") *out = rpinorm::sup_norm(phi->value);
  else if (n == "range") *out = rpinorm::range_norm(phi->value);
  else if (n == "tv") *out = rpinorm::tv_norm(phi->value);
  else if (n == "tail") *out = rpinorm::tail_seminorm(phi->value);
  else if (n == "asym") *out = rpinorm::asym_norm(phi->value);
  else return fail(RPI_ERR_INVALID_ARGUMENT, "unknown classic norm '" + n + "'");
  return RPI_OK;
}

rpi_status rpi_reconstruct(rpi_oracle_fn oracle, void* user, double tol, size_t n_cap,
                           size_t paranoid, rpi_report** out) {
  if (!oracle || !out) return null_arg("oracle/out");
  return guarded([&] {
    rpinorm::NormOracle wrapped([&](const rpinorm::WeightSequence& w) {
      double v = 0.0;
      if (oracle(user, w.values().data(), w.size(), &v) != 0) {
        throw OracleFailure("oracle callback reported failure");
      }
      return v;
    });
    rpinorm::ReconstructionOptions opts;
    if (tol > 0.0) opts.tol = tol;
    if (n_cap > 0) opts.n_cap = n_cap;
    opts.paranoid = paranoid;
    *out = new rpi_report{rpinorm::reconstruct(wrapped, opts)};
  });
}

void rpi_report_destroy(rpi_report* r) { delete r; }

rpi_status rpi_report_profile(const rpi_report* r, double* buf, size_t cap, size_t* needed) {
  if (!r) return null_arg("r");
  return copy_out(r->value.profile.values(), buf, cap, needed);
}

rpi_status rpi_report_derivatives(const rpi_report* r, double* buf, size_t cap, size_t* needed) {
  if (!r) return null_arg("r");
  return copy_out(r->value.derivatives, buf, cap, needed);
}

size_t rpi_report_l(const rpi_report* r) { return r ? r->value.l : 0; }
uint64_t rpi_report_oracle_calls(const rpi_report* r) { return r ? r->value.oracle_calls : 0; }
double rpi_report_epsilon(const rpi_report* r) { return r ? r->value.epsilon_used : 0.0; }
int rpi_report_sign_ambiguous(const rpi_report* r) { return r && r->value.sign_ambiguous ? 1 : 0; }

rpi_status rpi_verify_reconstruction(const rpi_profile* phi, const rpi_report* r, double eps,
                                     int* match) {
  if (!phi || !r || !match) return null_arg("phi/r/match");
  return guarded([&] { *match = rpinorm::verify_reconstruction(phi->value, r->value, eps) ? 1 : 0; });
}

rpi_status rpi_sandwich(const rpi_function* f1, const rpi_function* f2, size_t refinement,
                        double* lower, double* upper, char* witness, size_t witness_cap) {
  if (!f1 || !f2 || !lower || !upper) return null_arg("f1/f2/lower/upper");
  return guarded([&] {
    auto s = rpinorm::sandwich(f1->value, f2->value, refinement, catalog());
    *lower = s.lower;
    *upper = s.upper;
    if (witness && witness_cap > 0) {
      size_t n = std::min(witness_cap - 1, s.witness_psi.size());
      std::memcpy(witness, s.witness_psi.data(), n);
      witness[n] = '\0';
    }
  });
}

rpi_status rpi_verify_suite(const rpi_function* f, uint64_t seed, char* buf, size_t cap,
                            size_t* needed, int* all_passed) {
  if (!f) return null_arg("f");
  std::string text;
  bool ok = false;
  rpi_status s = guarded([&] {
    auto rep = rpinorm::run_invariant_suite(f->value, seed);
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["all_passed"] = rep.all_passed();
    auto& checks = j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : rep.checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["passed"] = c.passed;
      e["cases"] = c.cases;
      e["worst"] = c.worst;
      if (!c.detail.empty()) e["detail"] = c.detail;
      checks.push_back(std::move(e));
    }
    text = j.dump(2);
    ok = rep.all_passed();
  });
  if (s != RPI_OK) return s;
  if (all_passed) *all_passed = ok ? 1 : 0;
  if (needed) *needed = text.size() + 1;
  if (cap < text.size() + 1) {
    if (!buf && cap == 0) return RPI_OK;
    return fail(RPI_ERR_CAPACITY, "output buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return RPI_OK;
}

} // extern "C"
