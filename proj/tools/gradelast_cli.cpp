#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gradelast/gradelast.h"

namespace {

int exit_code(ge_status s) {
  switch (s) {
    case GE_OK: return 0;
    case GE_CONFIG:
    case GE_INVALID_ARGUMENT: return 2;
    case GE_IO: return 4;
    default: return 3;
  }
}

int report(ge_status s) {
  if (s != GE_OK) std::fprintf(stderr, "error (%s): %s\n", ge_status_string(s), ge_last_error());
  return exit_code(s);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  ge_free_string(s);
  return out;
}

bool writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) return false;
  const auto probe = dir / ".gradelast_write_probe";
  const bool ok = static_cast<bool>(std::ofstream(probe));
  std::filesystem::remove(probe, ec);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradelast: strain-gradient elasticity solvers and verification"};
  app.require_subcommand(1);
  std::string out;
  int threads = 1;
  std::uint64_t seed = 1;
  bool timing = false;
  app.add_option("--out", out, "output directory (GRADELAST_OUT overrides)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for random property sampling");
  app.add_flag("--timing", timing, "record runtimes in reports");

  auto* verify = app.add_subcommand("verify", "run acceptance criteria (all, or the given ids)");
  std::vector<int> ids;
  bool perturb = false;
  verify->add_option("ids", ids, "criterion ids 1..11")->check(CLI::Range(1, 11));
  verify->add_flag("--perturb-h", perturb, "break one symmetry of H in the constitutive criteria");

  auto* run = app.add_subcommand("run", "run a JSON case configuration");
  std::vector<std::string> configs;
  run->add_option("config", configs, "case files (run concurrently with --threads)")->required();

  auto* plot = app.add_subcommand("plot", "write SVG plots for a report CSV");
  std::string csv;
  plot->add_option("csv", csv, "report CSV")->required();

  CLI11_PARSE(app, argc, argv);

  if (const char* env = std::getenv("GRADELAST_OUT"); env && *env) out = env;
  if (ge_status s = ge_set_threads(threads); s != GE_OK) return report(s);

  if (*verify) {
    const std::filesystem::path dir = out.empty() ? "." : out;
    if (!writable(dir)) {
      std::fprintf(stderr, "error (io): output directory is not writable: %s\n", dir.c_str());
      return 4;
    }
    if (ids.empty())
      for (int i = 1; i <= ge_criterion_count(); ++i) ids.push_back(i);
    std::string json = "[\n";
    int failed = 0;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      char *entry = nullptr, *line = nullptr;
      int pass = 0;
      if (ge_status s = ge_verify_criterion(ids[i], seed, perturb ? 1 : 0, &entry, &line, &pass); s != GE_OK)
        return report(s);
      std::printf("%s\n", take(line).c_str());
      std::fflush(stdout);
      json += take(entry) + (i + 1 < ids.size() ? ",\n" : "\n");
      if (!pass) ++failed;
    }
    json += "]\n";
    std::ofstream(dir / "verify_summary.json") << json;
    std::printf("%zu/%zu criteria passed\n", ids.size() - failed, ids.size());
    return failed ? 1 : 0;
  }
  if (*run) {
    const char* dir = out.empty() ? nullptr : out.c_str();
    if (configs.size() == 1) {
      char* summary = nullptr;
      const ge_status s = ge_run_case(configs[0].c_str(), dir, timing ? 1 : 0, &summary);
      if (s != GE_OK) return report(s);
      std::printf("%s", take(summary).c_str());
      return 0;
    }
    std::vector<const char*> paths;
    for (const auto& c : configs) paths.push_back(c.c_str());
    std::vector<ge_status> statuses(paths.size());
    std::vector<char*> messages(paths.size());
    if (ge_status s = ge_run_cases(paths.data(), paths.size(), dir, timing ? 1 : 0, statuses.data(), messages.data());
        s != GE_OK)
      return report(s);
    int code = 0;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const std::string m = take(messages[i]);
      if (statuses[i] == GE_OK) {
        std::printf("ok %s\n", paths[i]);
      } else {
        std::fprintf(stderr, "error (%s) %s: %s\n", ge_status_string(statuses[i]), paths[i], m.c_str());
        if (!code) code = exit_code(statuses[i]);
      }
    }
    return code;
  }
  int written = 0;
  char* warnings = nullptr;
  const ge_status s = ge_plot(csv.c_str(), out.empty() ? "." : out.c_str(), &written, &warnings);
  if (s != GE_OK) return report(s);
  const std::string w = take(warnings);
  if (!w.empty()) std::fprintf(stderr, "warning: %s", w.c_str());
  std::printf("%d plot(s) written\n", written);
  return 0;
}
