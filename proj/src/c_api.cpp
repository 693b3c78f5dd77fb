#include "gradelast/gradelast.h"

#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "gradelast/acceptance.hpp"
#include "gradelast/constitutive.hpp"
#include "gradelast/errors.hpp"
#include "gradelast/harness.hpp"
#include "gradelast/oracle.hpp"
#include "gradelast/parallel.hpp"

struct ge_hexadic {
  gradelast::HexadicH h;
};

namespace {

thread_local std::string last_error;

ge_status fail(ge_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
ge_status guarded(F&& fn) {
  try {
    last_error.clear();
    fn();
    return GE_OK;
  } catch (const gradelast::Error& e) {
    return fail(static_cast<ge_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GE_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GE_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

gradelast::GradientParams params_from(const double a[5]) {
  if (!a) throw gradelast::InvalidArgument("parameter array is null");
  gradelast::GradientParams p;
  for (int i = 0; i < 5; ++i) p.a[i] = a[i];
  return p;
}

void require(const void* p, const char* what) {
  if (!p) throw gradelast::InvalidArgument(std::string(what) + " is null");
}

std::string read_file(const char* path) {
  std::ifstream in(path);
  if (!in) throw gradelast::IoError(std::string("cannot read ") + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void run_config(const gradelast::CaseConfig& parsed, const char* out_dir, int timing, char** summary) {
  gradelast::CaseConfig c = parsed;
  if (timing) c.timing = true;
  const std::filesystem::path dir = out_dir ? out_dir : (c.output.empty() ? "." : c.output);
  gradelast::ensure_writable(dir);
  std::string samples;
  const auto report = gradelast::run_case(c, &samples);
  gradelast::write_report(report, dir, c.case_id);
  gradelast::write_solution(samples, dir, c.case_id);
  if (summary) *summary = dup(read_file((dir / (c.case_id + "_summary.json")).c_str()));
}

}  // namespace

extern "C" {

const char* ge_status_string(ge_status status) {
  if (status == GE_OK) return "ok";
  if (status < GE_INVALID_ARGUMENT || status > GE_CONFIG) return "unknown";
  return gradelast::to_string(static_cast<gradelast::ErrorCode>(status));
}

const char* ge_last_error(void) { return last_error.c_str(); }

void ge_free_string(char* s) { std::free(s); }

ge_status ge_set_threads(int n) {
  return guarded([&] { gradelast::set_thread_count(n); });
}

ge_status ge_hexadic_create(int dim, const double a[5], ge_hexadic** out) {
  return guarded([&] {
    require(out, "out");
    if (dim < 1 || dim > 3) throw gradelast::InvalidArgument("dim must be 1, 2 or 3");
    *out = new ge_hexadic{gradelast::build_H(params_from(a), dim)};
  });
}

ge_status ge_hexadic_from_components(int dim, const double a[5], const double* components, size_t count,
                                     ge_hexadic** out) {
  return guarded([&] {
    require(out, "out");
    require(components, "components");
    if (dim < 1 || dim > 3) throw gradelast::InvalidArgument("dim must be 1, 2 or 3");
    const size_t n = size_t(dim) * dim * dim * dim * dim * dim;
    if (count != n) throw gradelast::InvalidArgument("expected dim^6 components");
    gradelast::Tensor t(6, dim, std::vector<double>(components, components + n));
    *out = new ge_hexadic{gradelast::HexadicH::from_components(params_from(a), std::move(t))};
  });
}

void ge_hexadic_destroy(ge_hexadic* h) { delete h; }

ge_status ge_hexadic_dim(const ge_hexadic* h, int* dim) {
  return guarded([&] {
    require(h, "handle");
    require(dim, "dim");
    *dim = h->h.dim();
  });
}

ge_status ge_hexadic_apply(const ge_hexadic* h, const double* nu, double* mu) {
  return guarded([&] {
    require(h, "handle");
    require(nu, "nu");
    require(mu, "mu");
    const int d = h->h.dim();
    const size_t n = size_t(d) * d * d;
    const gradelast::Tensor in(3, d, std::vector<double>(nu, nu + n));
    const gradelast::Tensor res = h->h.apply(in);
    std::copy(res.data().begin(), res.data().end(), mu);
  });
}

ge_status ge_hexadic_symmetry_defect(const ge_hexadic* h, double* defect) {
  return guarded([&] {
    require(h, "handle");
    require(defect, "defect");
    *defect = gradelast::symmetry_defect(h->h);
  });
}

ge_status ge_hexadic_coercivity(const ge_hexadic* h, uint64_t seed, double* constant) {
  return guarded([&] {
    require(h, "handle");
    require(constant, "constant");
    *constant = gradelast::coercivity_certificate(h->h, seed);
  });
}

ge_status ge_closed_form_1d(double f, double g, double length, double lambda, double mu, const double* x, size_t n,
                            double* u) {
  return guarded([&] {
    if (n > 0) {
      require(x, "x");
      require(u, "u");
    }
    const gradelast::ClosedForm1D cf(f, g, length, gradelast::LameParams{lambda, mu});
    for (size_t i = 0; i < n; ++i) u[i] = cf.value(x[i]);
  });
}

ge_status ge_run_case(const char* config_path, const char* out_dir, int timing, char** summary) {
  return guarded([&] {
    require(config_path, "config path");
    run_config(gradelast::load_config(config_path), out_dir, timing, summary);
  });
}

ge_status ge_run_case_text(const char* config_json, const char* out_dir, int timing, char** summary) {
  return guarded([&] {
    require(config_json, "config");
    run_config(gradelast::parse_config(config_json), out_dir, timing, summary);
  });
}

ge_status ge_run_cases(const char* const* config_paths, size_t count, const char* out_dir, int timing,
                       ge_status* statuses, char** messages) {
  return guarded([&] {
    if (count > 0) require(config_paths, "config paths");
    std::vector<ge_status> st(count, GE_OK);
    std::vector<std::string> msg(count);
    gradelast::parallel_for(static_cast<int>(count), [&](int i) {
      st[i] = ge_run_case(config_paths[i], out_dir, timing, nullptr);
      if (st[i] != GE_OK) msg[i] = ge_last_error();
    });
    for (size_t i = 0; i < count; ++i) {
      if (statuses) statuses[i] = st[i];
      if (messages) messages[i] = st[i] == GE_OK ? nullptr : dup(msg[i]);
    }
  });
}

int ge_criterion_count(void) { return gradelast::kCriterionCount; }

ge_status ge_verify_criterion(int id, uint64_t seed, int break_h_symmetry, char** entry, char** line, int* pass) {
  return guarded([&] {
    require(pass, "pass");
    gradelast::VerifyOptions opt;
    opt.seed = seed;
    opt.break_h_symmetry = break_h_symmetry != 0;
    const auto r = gradelast::run_criterion(id, opt);
    *pass = r.pass ? 1 : 0;
    if (entry) *entry = dup(nlohmann::json::parse(gradelast::acceptance_json({r})).at(0).dump(2));
    if (line) *line = dup(gradelast::acceptance_line(r));
  });
}

ge_status ge_plot(const char* csv_path, const char* out_dir, int* written, char** warnings) {
  return guarded([&] {
    require(csv_path, "csv path");
    const auto report = gradelast::parse_report_csv(read_file(csv_path));
    std::vector<std::string> warn;
    const auto files = gradelast::emit_plots(report, out_dir ? out_dir : ".", &warn);
    if (written) *written = static_cast<int>(files.size());
    if (warnings) {
      std::string s;
      for (const auto& w : warn) s += w + "\n";
      *warnings = dup(s);
    }
  });
}

}  // extern "C"
