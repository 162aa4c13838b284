#include "sirgraph/sirgraph.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "sirgraph/config.hpp"
#include "sirgraph/lambert_w.hpp"
#include "sirgraph/runner.hpp"

struct sg_config {
  sirgraph::SimulationConfig cfg;
};

namespace {

thread_local std::string g_last_error;

sg_status status_of(const sirgraph::Error& e) {
  switch (e.kind()) {
    case sirgraph::ErrorKind::Stability:
      return SG_ERR_STABILITY;
    case sirgraph::ErrorKind::Numerical:
      return SG_ERR_NUMERICAL;
    case sirgraph::ErrorKind::Io:
      return SG_ERR_IO;
    case sirgraph::ErrorKind::Config:
    case sirgraph::ErrorKind::Domain:
      return SG_ERR_CONFIG;
  }
  return SG_ERR_CONFIG;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
sg_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SG_OK;
  } catch (const sirgraph::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SG_ERR_CONFIG;
  }
}

}  // namespace

extern "C" {

sg_status sg_config_load(const char* path, sg_config** out) {
  if (!path || !out) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sg_config{sirgraph::parse_config(path)};
    *out = handle;
  });
}

sg_status sg_config_parse(const char* json_text, sg_config** out) {
  if (!json_text || !out) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  *out = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw sirgraph::config_error(std::string("ParseError: ") + e.what());
    }
    *out = new sg_config{sirgraph::parse_config_json(doc)};
  });
}

void sg_config_free(sg_config* config) { delete config; }

sg_status sg_validate(const sg_config* config, char** report_json) {
  if (!config || !report_json) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  return guarded([&] {
    sirgraph::PresetScenario sc = sirgraph::materialize(config->cfg);
    *report_json = dup_string(sirgraph::validation_json(sc).dump(2));
  });
}

sg_status sg_run(const sg_config* config, char** summary_json) {
  if (!config) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  return guarded([&] {
    sirgraph::RunArtifacts art = sirgraph::run_simulation(config->cfg);
    if (summary_json) *summary_json = dup_string(art.summary.dump(2));
  });
}

sg_status sg_analyze(const sg_config* config, char** report_json) {
  if (!config || !report_json) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  return guarded([&] {
    *report_json = dup_string(sirgraph::analyze(config->cfg).dump(2));
  });
}

sg_status sg_sweep(const sg_config* config, char** table_csv) {
  if (!config) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  std::vector<sirgraph::SweepRow> rows;
  sg_status status = guarded([&] {
    try {
      rows = sirgraph::run_sweep(config->cfg);
    } catch (...) {
      // The table (with error rows) is still produced for the caller.
      if (table_csv) *table_csv = dup_string(sirgraph::sweep_table_csv(rows));
      throw;
    }
  });
  if (status == SG_OK && table_csv)
    *table_csv = dup_string(sirgraph::sweep_table_csv(rows));
  return status;
}

sg_status sg_lambert_w(int branch, double x, double* out) {
  if (!out) {
    g_last_error = "null argument";
    return SG_ERR_CONFIG;
  }
  if (branch != 0 && branch != -1) {
    g_last_error = "branch must be 0 or -1";
    return SG_ERR_CONFIG;
  }
  return guarded([&] {
    *out = sirgraph::lambert_w(branch == -1 ? sirgraph::WBranch::Lower
                                            : sirgraph::WBranch::Principal,
                               x);
  });
}

const char* sg_last_error(void) { return g_last_error.c_str(); }

void sg_string_free(char* s) { std::free(s); }

}  // extern "C"
