// endslab - build discrete multi-ended models, solve their Schrodinger
// Dirichlet problems, and verify growth / mean-value / soliton diagnostics.

#include <cstdio>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "endslab/errors.hpp"
#include "endslab/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"endslab: end-separating solutions on discrete model manifolds"};
  app.require_subcommand(1);

  std::string config;
  endslab::CliOverrides overrides;
  std::string out_dir;
  std::uint64_t seed = 0;
  int jobs = 0;

  auto* run = app.add_subcommand("run", "run a pipeline from a config file or preset name");
  auto* pos_opt = run->add_option("target", config, "config path, model preset, or soliton name");
  auto* cfg_opt =
      run->add_option("--config", config, "config path (alternative to the positional)")
          ->excludes(pos_opt);
  auto* out_opt = run->add_option("--out", out_dir, "output directory");
  auto* seed_opt = run->add_option("--seed", seed, "seed for random trial functions");
  auto* jobs_opt = run->add_option("--jobs", jobs, "worker threads (ENDSLAB_JOBS as fallback)");

  auto* list = app.add_subcommand("list", "list shipped model presets and soliton examples");

  std::string report_path;
  auto* report = app.add_subcommand("report", "re-render report.md from an existing report.json");
  report->add_option("report_json", report_path, "path to report.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (list->parsed()) {
    std::fputs(endslab::list_text().c_str(), stdout);
    return 0;
  }
  if (report->parsed()) {
    try {
      std::ifstream in(report_path, std::ios::binary);
      if (!in) {
        std::fprintf(stderr, "cannot open %s\n", report_path.c_str());
        return 1;
      }
      const auto j = nlohmann::ordered_json::parse(in);
      std::printf("# endslab report: %s\n\n", j.value("name", "?").c_str());
      for (const auto& c : j.at("checks")) {
        std::printf("[%s] %s: %s\n", c.at("pass").get<bool>() ? "PASS" : "FAIL",
                    c.at("name").get<std::string>().c_str(),
                    c.at("detail").get<std::string>().c_str());
      }
      return j.value("all_pass", false) ? 0 : 2;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "report error: %s\n", e.what());
      return 1;
    }
  }

  if (!*pos_opt && !*cfg_opt) {
    std::fprintf(stderr, "run: a config path or preset name is required\n");
    return 1;
  }
  if (*out_opt) overrides.out = out_dir;
  if (*seed_opt) overrides.seed = seed;
  if (*jobs_opt) overrides.jobs = jobs;
  return endslab::run_command(config, overrides);
}
