#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "sirgraph/sirgraph.h"

namespace {

int fail(sg_status status) {
  std::fprintf(stderr, "error: %s\n", sg_last_error());
  // Exit codes: 1 config/input (incl. I/O), 2 stability, 3 numerical.
  if (status == SG_ERR_IO) return 1;
  return static_cast<int>(status);
}

int load(const std::string& path, sg_config** cfg) {
  sg_status s = sg_config_load(path.c_str(), cfg);
  if (s != SG_OK) return fail(s);
  return 0;
}

void print_owned(char* text) {
  if (!text) return;
  std::fputs(text, stdout);
  std::fputc('\n', stdout);
  sg_string_free(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epidemic dynamics on metric graphs"};
  app.require_subcommand(1);

  std::string config_path;
  bool quiet = false;

  auto* validate = app.add_subcommand(
      "validate", "Check a configuration against the model hypotheses");
  validate->add_option("config", config_path, "JSON config file")->required();

  auto* run = app.add_subcommand(
      "run", "Integrate the model and write trajectory/summary outputs");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_flag("-q,--quiet", quiet, "suppress the summary on stdout");

  auto* analyze = app.add_subcommand(
      "analyze", "Final-size asymptotics without PDE integration");
  analyze->add_option("config", config_path, "JSON config file")->required();

  auto* sweep = app.add_subcommand(
      "sweep", "Run the configured parameter sweep and write the table");
  sweep->add_option("config", config_path, "JSON config file")->required();
  sweep->add_flag("-q,--quiet", quiet, "suppress the table on stdout");

  CLI11_PARSE(app, argc, argv);

  sg_config* cfg = nullptr;
  if (int rc = load(config_path, &cfg)) return rc;

  int rc = 0;
  if (validate->parsed()) {
    char* report = nullptr;
    sg_status s = sg_validate(cfg, &report);
    if (s != SG_OK) {
      rc = fail(s);
    } else {
      // Non-zero exit when the hypotheses fail, so scripts can gate on it.
      rc = (std::string(report).find("\"ok\": true") == std::string::npos)
               ? static_cast<int>(SG_ERR_CONFIG)
               : 0;
      print_owned(report);
      report = nullptr;
    }
  } else if (run->parsed()) {
    char* summary = nullptr;
    sg_status s = sg_run(cfg, quiet ? nullptr : &summary);
    if (s != SG_OK)
      rc = fail(s);
    else
      print_owned(summary);
  } else if (analyze->parsed()) {
    char* report = nullptr;
    sg_status s = sg_analyze(cfg, &report);
    if (s != SG_OK)
      rc = fail(s);
    else
      print_owned(report);
  } else if (sweep->parsed()) {
    char* table = nullptr;
    sg_status s = sg_sweep(cfg, quiet ? nullptr : &table);
    if (s != SG_OK) {
      if (table) print_owned(table);
      rc = fail(s);
    } else {
      print_owned(table);
    }
  }

  sg_config_free(cfg);
  return rc;
}
