// Copyright 2026 The Guwen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Talks to the library only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "guwen/guwen.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

int exit_code(gw_status status) {
  switch (status) {
    case GW_OK: return kExitOk;
    case GW_ERR_FORMAT:
    case GW_ERR_VALIDATION: return kExitValidation;
    case GW_ERR_IO:
    case GW_ERR_CLIENT: return kExitIo;
    case GW_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitInternal;
  }
}

class Context {
 public:
  Context() {
    if (gw_context_new(&ctx_) != GW_OK) throw std::runtime_error("cannot allocate a context");
  }
  ~Context() { gw_context_free(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  gw_context* get() { return ctx_; }

 private:
  gw_context* ctx_ = nullptr;
};

// Owns a string returned through the C API.
class Owned {
 public:
  Owned() = default;
  ~Owned() { gw_string_free(ptr_); }
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;

  char** out() { return &ptr_; }
  bool empty() const { return ptr_ == nullptr; }
  const char* c_str() const { return ptr_ ? ptr_ : ""; }

 private:
  char* ptr_ = nullptr;
};

struct Common {
  std::string config;
  std::optional<std::int64_t> seed;
  std::string out = ".";
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--config", common.config, "JSON config file");
  cmd->add_option("--seed", common.seed, "Seed for sampling and shuffling");
  cmd->add_option("--out", common.out, "Output directory")->capture_default_str();
}

std::string absolute(const std::string& path) { return fs::absolute(path).lexically_normal().string(); }

const char* config_arg(const Common& common) { return common.config.empty() ? nullptr : common.config.c_str(); }

int finish(Context& ctx, gw_status status, const Owned& output) {
  if (!output.empty()) std::cout << output.c_str() << (output.c_str()[0] ? "\n" : "");
  if (status != GW_OK) std::cerr << "guwen: " << gw_status_name(status) << ": " << gw_last_error(ctx.get()) << "\n";
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical Chinese benchmark harness and instruction-data pipeline"};
  app.set_version_flag("--version", std::string(gw_version()));
  app.require_subcommand(1);

  Common clean_opts;
  std::string clean_input;
  auto* clean = app.add_subcommand("clean", "Ingest, normalize, clean and deduplicate a raw corpus");
  add_common(clean, clean_opts);
  clean->add_option("--input", clean_input, "Corpus directory (overrides input_dir)");

  Common datagen_opts;
  std::vector<std::string> stages;
  auto* datagen = app.add_subcommand("datagen", "Run instruction-data pipeline stages");
  add_common(datagen, datagen_opts);
  datagen->add_option("--stages", stages, "Stages to run, in pipeline order")->delimiter(',');

  Common eval_opts;
  std::string bench_file, cache_dir;
  std::vector<std::string> models;
  std::optional<std::int64_t> sample;
  auto* eval = app.add_subcommand("eval", "Query models on benchmark items and score the answers");
  add_common(eval, eval_opts);
  eval->add_option("--bench", bench_file, "Benchmark item file");
  eval->add_option("--model", models, "Model name from the config; repeatable. 'mock' needs no config");
  eval->add_option("--cache", cache_dir, "Response cache directory");
  eval->add_option("--sample", sample, "Evaluate a seeded sample of this many items")->check(CLI::NonNegativeNumber);

  Common report_opts;
  std::vector<std::string> runs;
  std::string format;
  auto* report = app.add_subcommand("report", "Build result tables and radar data from EvalRun files");
  add_common(report, report_opts);
  report->add_option("runs", runs, "EvalRun files");
  report->add_option("--format", format, "all, markdown, csv or json")
      ->check(CLI::IsMember({"all", "markdown", "csv", "json"}));

  Common validate_opts;
  std::vector<std::string> files;
  std::string kind = "bench";
  bool official = false;
  auto* validate = app.add_subcommand("validate", "Check benchmark or instruction-record files");
  add_common(validate, validate_opts);
  validate->add_option("files", files, "Files to check")->required();
  validate->add_option("--kind", kind, "bench or records")->check(CLI::IsMember({"bench", "records"}));
  validate->add_flag("--official", official, "Compare per-task counts with the official split");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  Context ctx;
  Owned output;
  gw_status status = GW_OK;
  const auto seeded = [](json& o, const Common& c) {
    if (c.seed) o["seed"] = *c.seed;
  };

  if (*clean) {
    json o = json::object();
    if (!clean_input.empty()) o["input_dir"] = absolute(clean_input);
    status = gw_run_clean(ctx.get(), config_arg(clean_opts), o.dump().c_str(), clean_opts.out.c_str(), output.out());
  } else if (*datagen) {
    if (datagen_opts.config.empty()) {
      std::cerr << "datagen needs --config\n" << datagen->help();
      return kExitUsage;
    }
    json o = json::object();
    seeded(o, datagen_opts);
    if (!stages.empty()) o["stages"] = stages;
    status = gw_run_datagen(ctx.get(), config_arg(datagen_opts), o.dump().c_str(), datagen_opts.out.c_str(),
                            output.out());
  } else if (*eval) {
    json o = json::object();
    seeded(o, eval_opts);
    if (!bench_file.empty()) o["bench"] = absolute(bench_file);
    if (!cache_dir.empty()) o["cache_dir"] = absolute(cache_dir);
    if (!models.empty()) o["select_models"] = models;
    if (sample) o["sample"] = *sample;
    status = gw_run_eval(ctx.get(), config_arg(eval_opts), o.dump().c_str(), eval_opts.out.c_str(), output.out());
  } else if (*report) {
    json o = json::object();
    if (!runs.empty()) {
      json paths = json::array();
      for (const auto& r : runs) paths.push_back(absolute(r));
      o["runs"] = paths;
    }
    if (!format.empty()) o["format"] = format;
    status = gw_run_report(ctx.get(), config_arg(report_opts), o.dump().c_str(), report_opts.out.c_str(),
                           output.out());
  } else if (*validate) {
    std::string combined;
    for (const auto& file : files) {
      Owned text;
      const auto s = gw_validate(ctx.get(), file.c_str(), kind.c_str(), config_arg(validate_opts), official ? 1 : 0,
                                 text.out());
      combined += text.c_str();
      if (s != GW_OK) {
        std::cerr << "guwen: " << file << ": " << gw_last_error(ctx.get()) << "\n";
        if (status == GW_OK || exit_code(s) > exit_code(status)) status = s;
      }
    }
    std::cout << combined;
    if (validate_opts.out != ".") {
      std::error_code ec;
      fs::create_directories(validate_opts.out, ec);
      std::ofstream(fs::path(validate_opts.out) / "validation.txt") << combined;
    }
    return exit_code(status);
  }
  return finish(ctx, status, output);
}
