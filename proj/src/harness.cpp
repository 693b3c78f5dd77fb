#include "gradelast/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "gradelast/errors.hpp"
#include "gradelast/pdo_strip.hpp"

namespace gradelast {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

Profile parse_profile(const json& j) {
  Profile p;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "sine") p.kind = Profile::Kind::Sine;
    else if (s == "cosine") p.kind = Profile::Kind::Cosine;
    else throw ConfigError("unknown profile '" + s + "'");
    return p;
  }
  require_keys(j, {"kind", "n", "coeffs"}, "profile");
  const std::string kind = j.value("kind", "sine");
  if (kind == "sine") p.kind = Profile::Kind::Sine;
  else if (kind == "cosine") p.kind = Profile::Kind::Cosine;
  else if (kind == "polynomial") p.kind = Profile::Kind::Polynomial;
  else throw ConfigError("unknown profile kind '" + kind + "'");
  p.n = j.value("n", 1);
  if (j.contains("coeffs")) p.coeffs = j.at("coeffs").get<std::vector<double>>();
  if (p.kind == Profile::Kind::Polynomial && p.coeffs.empty()) throw ConfigError("polynomial profile needs coeffs");
  return p;
}

double poly(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

[[noreturn]] void rethrow_with_triple(const Error& e, const std::string& k, double g, int n) {
  if (e.code() == ErrorCode::Config || e.code() == ErrorCode::Io) throw;
  if (std::string(e.what()).find("(k=") != std::string::npos) throw;
  std::ostringstream os;
  os << e.what() << " (k=" << k << ", g=" << g << ", n=" << n << ")";
  throw Error(e.code(), os.str());
}


class Stopwatch {
 public:
  explicit Stopwatch(bool on) : on_(on), start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    if (!on_) return 0.0;
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  bool on_;
  std::chrono::steady_clock::time_point start_;
};

std::string sample_interval(const DiscreteField<double>& u, double length) {
  std::string out = "x,u\n";
  char buf[96];
  for (int i = 0; i <= 200; ++i) {
    const double x = length * i / 200.0;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, u.evaluate(x, 0, 0));
    out += buf;
  }
  return out;
}

std::string sample_strip(const StripField& u) {
  std::string out = "x,y,u1,u2\n";
  char buf[128];
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j <= 32; ++j) {
      const double x = 2.0 * M_PI * i / 64.0, y = j / 32.0;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, y, u.evaluate(x, y, 0), u.evaluate(x, y, 1));
      out += buf;
    }
  return out;
}

const char* domain_name(Domain d) { return d == Domain::Interval ? "interval" : "strip"; }
const char* method_name(Method m) {
  switch (m) {
    case Method::Oracle: return "oracle";
    case Method::Mixed: return "mixed";
    case Method::Pdo: return "pdo";
  }
  return "?";
}

}  // namespace

void CaseConfig::validate() const {
  if (case_id.empty() || case_id.find_first_of("/\\,\n") != std::string::npos) throw ConfigError("invalid case_id");
  try {
    lame.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (method == Method::Pdo && domain != Domain::Strip) throw ConfigError("method pdo requires the strip domain");
  if (boundary == BoundarySet::Set2 && !(domain == Domain::Interval && method == Method::Mixed))
    throw ConfigError("boundary set2 is available for the mixed method on the interval");
  if (params && domain != Domain::Interval) throw ConfigError("explicit a1..a5 are supported on the interval only");
  if (params) {
    try {
      params->validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  const std::vector<double> gs = g_list.empty() ? std::vector<double>{g} : g_list;
  for (double v : gs) {
    if (!std::isfinite(v) || v < 0.0) throw ConfigError("g values must be finite and >= 0");
    if (v == 0.0 && (method == Method::Pdo || (method == Method::Mixed && domain == Domain::Strip)))
      throw ConfigError("this method needs g > 0");
  }
  if (!(length > 0.0)) throw ConfigError("length must be positive");
  if (domain == Domain::Strip) {
    if (modes < 1 || ny < 8) throw ConfigError("strip needs modes >= 1 and ny >= 8");
    if (strip_load.terms.empty()) throw ConfigError("strip domain needs a load mode table");
    for (const auto& t : strip_load.terms)
      if (t.k < 0 || t.k > modes || t.comp < 0 || t.comp > 1) throw ConfigError("strip load term outside 0..K or comp 0..1");
    if (domain == Domain::Strip && length != 1.0) throw ConfigError("the strip transverse width is fixed to 1");
  } else if (polynomial.empty()) {
    throw ConfigError("interval load needs at least one coefficient");
  }
  for (int r : resolutions)
    if (r < (domain == Domain::Strip ? 8 : 2)) throw ConfigError("resolution below the minimum");
  for (int t : norms) {
    if (t < 0 || t > 2) throw ConfigError("norm indices must be 0, 1 or 2");
    if (t == 2 && method == Method::Mixed) throw ConfigError("mixed displacements are H1-conforming; norms 0 and 1 only");
  }
  if (compare_closed_form && (domain != Domain::Interval || polynomial.size() != 1 || boundary != BoundarySet::Set1 || params))
    throw ConfigError("closed-form reference needs an interval, a constant load, set1 and g");
}

CaseConfig parse_config(const std::string& text) {
  CaseConfig c;
  try {
    const json j = json::parse(text);
    require_keys(j, {"case_id", "domain", "method", "length", "modes", "ny", "lame", "gradient", "g_list", "boundary",
                     "load", "resolutions", "norms", "reference", "timing", "output"},
                 "config");
    c.case_id = j.value("case_id", c.case_id);
    const std::string domain = j.value("domain", "interval");
    if (domain == "interval") c.domain = Domain::Interval;
    else if (domain == "strip") c.domain = Domain::Strip;
    else throw ConfigError("unknown domain '" + domain + "'");
    const std::string method = j.value("method", "oracle");
    if (method == "oracle") c.method = Method::Oracle;
    else if (method == "mixed") c.method = Method::Mixed;
    else if (method == "pdo") c.method = Method::Pdo;
    else throw ConfigError("unknown method '" + method + "'");
    c.length = j.value("length", 1.0);
    c.modes = j.value("modes", c.modes);
    c.ny = j.value("ny", c.ny);
    if (j.contains("lame")) {
      require_keys(j.at("lame"), {"lambda", "mu"}, "lame");
      c.lame.lambda = j.at("lame").value("lambda", c.lame.lambda);
      c.lame.mu = j.at("lame").value("mu", c.lame.mu);
    }
    if (j.contains("gradient")) {
      const json& gj = j.at("gradient");
      require_keys(gj, {"g", "a"}, "gradient");
      if (gj.contains("g") && gj.contains("a")) throw ConfigError("give either g or a1..a5, not both");
      if (gj.contains("g")) c.g = gj.at("g").get<double>();
      if (gj.contains("a")) {
        const auto a = gj.at("a").get<std::vector<double>>();
        if (a.size() != 5) throw ConfigError("gradient.a needs five entries");
        GradientParams p;
        std::copy(a.begin(), a.end(), p.a.begin());
        c.params = p;
      }
    }
    if (j.contains("g_list")) c.g_list = j.at("g_list").get<std::vector<double>>();
    const std::string boundary = j.value("boundary", "set1");
    if (boundary == "set1") c.boundary = BoundarySet::Set1;
    else if (boundary == "set2") c.boundary = BoundarySet::Set2;
    else throw ConfigError("unknown boundary set '" + boundary + "'");
    if (j.contains("load")) {
      const json& lj = j.at("load");
      require_keys(lj, {"constant", "polynomial", "modes"}, "load");
      if (lj.size() != 1) throw ConfigError("load needs exactly one of constant, polynomial, modes");
      if (lj.contains("constant")) c.polynomial = {lj.at("constant").get<double>()};
      if (lj.contains("polynomial")) c.polynomial = lj.at("polynomial").get<std::vector<double>>();
      if (lj.contains("modes")) {
        for (const auto& t : lj.at("modes")) {
          require_keys(t, {"k", "comp", "cos", "sin", "profile"}, "load mode");
          StripLoadTerm term;
          term.k = t.value("k", 0);
          term.comp = t.value("comp", 0);
          term.cos_amp = t.value("cos", 1.0);
          term.sin_amp = t.value("sin", 0.0);
          if (t.contains("profile")) term.profile = parse_profile(t.at("profile"));
          c.strip_load.terms.push_back(term);
        }
      }
    }
    if (j.contains("resolutions")) c.resolutions = j.at("resolutions").get<std::vector<int>>();
    if (j.contains("norms")) c.norms = j.at("norms").get<std::vector<int>>();
    const std::string reference = j.value("reference", "self");
    if (reference == "closed-form") c.compare_closed_form = true;
    else if (reference != "self") throw ConfigError("reference must be self or closed-form");
    c.timing = j.value("timing", false);
    c.output = j.value("output", "");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

CaseConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ConvergenceReport run_case(const CaseConfig& c, std::string* solution_csv) {
  c.validate();
  ConvergenceReport report;
  const std::vector<double> gs = c.g_list.empty() ? std::vector<double>{c.g} : c.g_list;
  std::vector<int> res = c.resolutions;
  if (res.empty()) res = {c.domain == Domain::Strip ? c.ny : 64};
  const char* dom = domain_name(c.domain);
  const char* meth = method_name(c.method);
  auto row = [&](double g, int n, int t, double err, double ms) {
    report.rows.push_back({c.case_id, dom, meth, g, n, t, err, ms});
  };

  if (c.domain == Domain::Interval) {
    const double e_mod = c.lame.p_modulus();
    const auto f = [&](double x) { return poly(c.polynomial, x); };
    for (double g : gs)
      for (int n : res) {
        const double g_eff = c.params ? std::sqrt(c.params->one_d_modulus() / e_mod) : g;
        const GradientParams params = c.params ? *c.params : one_d_gradient_params(g, e_mod);
        try {
          const IntervalMesh mesh(c.length, n);
          const Stopwatch sw(c.timing);
          DiscreteField<double> u;
          if (c.method == Method::Oracle) {
            u = solve_1d_hermite(f, g_eff, mesh, c.lame).u;
          } else {
            MixedOptions opt;
            opt.boundary = c.boundary;
            u = solve_mixed(assemble_mixed(mesh, c.lame, params, opt, f)).u();
          }
          const double ms = sw.ms();
          if (solution_csv) *solution_csv = sample_interval(u, c.length);
          ExactFn ref;
          std::optional<IntervalSolution> fine;
          if (c.compare_closed_form) {
            const ClosedForm1D cf(c.polynomial[0], g_eff, c.length, c.lame);
            ref = [cf](double x) { return cf.jet(x); };
          } else if (c.method == Method::Oracle) {
            const DiscreteField<double> diff(u.space_ptr(), u.coeffs() - u.coeffs());
            for (int t : c.norms) row(g, n, t, interval_norm(diff, 0, t), ms);
            continue;
          } else if (c.boundary == BoundarySet::Set1) {
            fine = solve_1d_hermite(f, g_eff, IntervalMesh(c.length, 4 * *std::max_element(res.begin(), res.end())), c.lame);
            ref = [&fine](double x) {
              return Jet1{fine->u.evaluate(x, 0, 0), fine->u.evaluate(x, 0, 1), fine->u.evaluate(x, 0, 2)};
            };
          } else {
            const IntervalMesh fm(c.length, 4 * *std::max_element(res.begin(), res.end()));
            MixedOptions opt;
            opt.boundary = c.boundary;
            const auto fs_state = solve_mixed(assemble_mixed(fm, c.lame, params, opt, f));
            auto uf = std::make_shared<DiscreteField<double>>(fs_state.u());
            ref = [uf](double x) { return Jet1{uf->evaluate(x, 0, 0), uf->evaluate(x, 0, 1), 0.0}; };
          }
          for (int t : c.norms) row(g, n, t, interval_norm(u, 0, t, ref), ms);
        } catch (const Error& e) {
          rethrow_with_triple(e, "0", g, n);
        }
      }
  } else {
    const bool rates = c.method == Method::Pdo && gs.size() >= 4;
    const std::vector<int> norms = rates ? std::vector<int>{0, 1, 2} : c.norms;
    for (int n : res) {
      const StripGrid grid{c.modes, n};
      std::optional<StripSolution> classical;
      if (rates || c.method == Method::Oracle) classical = solve_strip_classical(c.strip_load, c.lame, grid);
      for (double g : gs) {
        try {
          const Stopwatch sw(c.timing);
          StripField u;
          if (c.method == Method::Oracle) u = solve_strip_fourth(c.strip_load, g, c.lame, grid).u;
          else if (c.method == Method::Mixed) u = solve_strip_mixed(c.strip_load, g, c.lame, grid).u;
          else u = solve_problem_III(c.strip_load, g, c.lame, grid).u;
          const double ms = sw.ms();
          if (solution_csv) *solution_csv = sample_strip(u);
          const StripField ref = classical ? classical->u : solve_strip_fourth(c.strip_load, g, c.lame, grid).u;
          for (int t : norms) row(g, n, t, strip_norm(u, &ref, t), ms);
        } catch (const Error& e) {
          rethrow_with_triple(e, "*", g, n);
        }
      }
    }
    if (rates) {
      report.sort_rows();
      report.fits = {report.fit(0, std::nullopt), report.fit(1, 1.4), report.fit(2, 0.45)};
      return report;
    }
  }
  report.sort_rows();
  if (gs.size() >= 2)
    for (int t : c.norms) report.fits.push_back(report.fit(t, std::nullopt));
  return report;
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".gradelast_write_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

void write_report(const ConvergenceReport& report, const fs::path& dir, const std::string& case_id) {
  ensure_writable(dir);
  {
    std::ofstream out(dir / (case_id + ".csv"), std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / (case_id + ".csv")).string());
    out << report.csv();
  }
  json summary;
  summary["case_id"] = case_id;
  summary["fits"] = json::array();
  for (const auto& f : report.fits) {
    json jf;
    jf["t"] = f.t;
    jf["slope"] = f.slope ? json(*f.slope) : json(nullptr);
    jf["half_width95"] = f.half_width95;
    jf["target"] = f.target ? json(*f.target) : json(nullptr);
    jf["monotone"] = f.monotone;
    jf["pass"] = f.pass;
    summary["fits"].push_back(jf);
  }
  std::ofstream out(dir / (case_id + "_summary.json"), std::ios::binary);
  if (!out) throw IoError("cannot write summary for " + case_id);
  out << summary.dump(2) << '\n';
}

void write_solution(const std::string& csv, const fs::path& dir, const std::string& case_id) {
  ensure_writable(dir);
  std::ofstream out(dir / (case_id + "_solution.csv"), std::ios::binary);
  if (!out) throw IoError("cannot write solution samples for " + case_id);
  out << csv;
}

ConvergenceReport parse_report_csv(const std::string& text) {
  ConvergenceReport r;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("case_id,domain,method,g,h_or_ny,t,error,runtime_ms", 0) != 0)
    throw InvalidArgument("report CSV header is missing or wrong");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw InvalidArgument("report CSV row needs 8 columns");
    try {
      r.rows.push_back({f[0], f[1], f[2], std::stod(f[3]), std::stoi(f[4]), std::stoi(f[5]), std::stod(f[6]), std::stod(f[7])});
    } catch (const std::exception&) {
      throw InvalidArgument("report CSV row is not numeric: " + line);
    }
  }
  return r;
}

std::vector<fs::path> emit_plots(const ConvergenceReport& report, const fs::path& dir,
                                 std::vector<std::string>* warnings) {
  std::map<std::pair<std::string, int>, std::vector<const ReportRow*>> groups;
  for (const auto& r : report.rows) groups[{r.case_id, r.t}].push_back(&r);
  std::vector<fs::path> written;
  auto warn = [&](const std::string& w) {
    if (warnings) warnings->push_back(w);
  };
  for (const auto& [key, rows] : groups) {
    const auto& [case_id, t] = key;
    if (rows.size() < 2) {
      warn("plot skipped for " + case_id + " t=" + std::to_string(t) + ": fewer than two rows");
      continue;
    }
    std::set<double> gset;
    for (const auto* r : rows) gset.insert(r->g);
    const bool over_g = gset.size() > 1;
    std::vector<double> x, y;
    for (const auto* r : rows) {
      x.push_back(over_g ? r->g : 1.0 / r->h_or_ny);
      y.push_back(r->error);
    }
    const SlopeFit fit = fit_loglog(x, y);
    const bool flat = std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; });
    if (!flat && !fit.slope) {
      warn("plot skipped for " + case_id + " t=" + std::to_string(t) + ": degenerate data");
      continue;
    }
    const double w = 480, h = 360, ml = 60, mr = 20, mt = 30, mb = 50;
    double x0 = std::log10(*std::min_element(x.begin(), x.end())), x1 = std::log10(*std::max_element(x.begin(), x.end()));
    double y0 = 0.0, y1 = 1.0;
    if (!flat) {
      y0 = std::log10(*std::min_element(y.begin(), y.end()));
      y1 = std::log10(*std::max_element(y.begin(), y.end()));
    }
    if (x1 - x0 < 1e-12) { x0 -= 0.5; x1 += 0.5; }
    if (y1 - y0 < 1e-12) { y0 -= 0.5; y1 += 0.5; }
    auto px = [&](double v) { return ml + (std::log10(v) - x0) / (x1 - x0) * (w - ml - mr); };
    auto py = [&](double v) {
      const double lv = flat ? 0.5 : std::log10(v);
      return h - mb - (lv - y0) / (y1 - y0) * (h - mt - mb);
    };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb << "\" stroke=\"black\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    for (std::size_t i : order) svg << px(x[i]) << ',' << py(y[i]) << ' ';
    svg << "\"/>\n";
    for (std::size_t i : order) svg << "<circle cx=\"" << px(x[i]) << "\" cy=\"" << py(y[i]) << "\" r=\"3\" fill=\"steelblue\"/>\n";
    std::ostringstream label;
    label.precision(3);
    if (fit.slope && !flat) label << "slope " << *fit.slope << " ± " << fit.half_width95;
    else label << "slope undefined";
    svg << "<text x=\"" << ml + 10 << "\" y=\"" << mt - 10 << "\" font-size=\"14\">" << case_id << " t=" << t << ": "
        << label.str() << "</text>\n";
    svg << "<text x=\"" << (w / 2) << "\" y=\"" << h - 15 << "\" font-size=\"12\" text-anchor=\"middle\">"
        << (over_g ? "log10 g" : "log10 h") << "</text>\n";
    svg << "<text x=\"15\" y=\"" << h / 2 << "\" font-size=\"12\" transform=\"rotate(-90 15 " << h / 2
        << ")\" text-anchor=\"middle\">log10 error</text>\n";
    svg << "</svg>\n";
    ensure_writable(dir);
    const fs::path file = dir / (case_id + "_t" + std::to_string(t) + ".svg");
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file.string());
    out << svg.str();
    written.push_back(file);
  }
  return written;
}

}  // namespace gradelast
