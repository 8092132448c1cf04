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


#include "guwen/guwen.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <string>

#include "bench/answer.hpp"
#include "bench/pipeline.hpp"
#include "clients/chat.hpp"
#include "corpus/pipeline.hpp"
#include "datagen/pipeline.hpp"
#include "formats/error.hpp"
#include "formats/slash_tags.hpp"
#include "metrics/bleu.hpp"
#include "metrics/embed.hpp"
#include "textnorm/normalize.hpp"
#include "textnorm/punct.hpp"
#include "util/config.hpp"
#include "util/io.hpp"

struct gw_context {
  std::string error;
};

namespace {

namespace fs = std::filesystem;
using guwen::config::Json;

char* dup(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

// Runs fn, translating exceptions into a status and the context's message.
gw_status guarded(gw_context* ctx, const std::function<gw_status()>& fn) {
  if (!ctx) return GW_ERR_INVALID_ARGUMENT;
  ctx->error.clear();
  auto fail = [&](gw_status status, const char* what) {
    ctx->error = what;
    return status;
  };
  try {
    return fn();
  } catch (const guwen::formats::FormatError& e) {
    return fail(GW_ERR_FORMAT, e.what());
  } catch (const guwen::IoError& e) {
    return fail(GW_ERR_IO, e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(GW_ERR_IO, e.what());
  } catch (const guwen::clients::ClientError& e) {
    return fail(GW_ERR_CLIENT, e.what());
  } catch (const guwen::metrics::ProviderError& e) {
    return fail(GW_ERR_CLIENT, e.what());
  } catch (const guwen::ConfigError& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const guwen::datagen::DatagenError& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const guwen::bench::BenchError& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const guwen::textnorm::InventoryError& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const guwen::textnorm::ScriptTableError& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const guwen::metrics::MetricError& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const Json::exception& e) {
    return fail(GW_ERR_VALIDATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GW_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GW_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GW_ERR_INTERNAL, "unknown error");
  }
}

gw_status invalid(gw_context* ctx, const std::string& what) {
  ctx->error = what;
  return GW_ERR_INVALID_ARGUMENT;
}

void set_out(char** out, const std::string& value) {
  if (out) *out = dup(value);
}

struct LoadedConfig {
  Json obj;
  fs::path base;
};

LoadedConfig load_config(const char* config_path, const char* overrides_json) {
  LoadedConfig out;
  if (config_path && *config_path) {
    const fs::path path(config_path);
    out.obj = guwen::config::load(path);
    out.base = fs::absolute(path).parent_path();
  } else {
    out.obj = Json::object();
    out.base = fs::current_path();
  }
  if (overrides_json && *overrides_json) {
    const auto patch = guwen::config::parse(overrides_json);
    out.obj.merge_patch(patch);
  }
  return out;
}

fs::path out_path(const char* out_dir) { return out_dir && *out_dir ? fs::path(out_dir) : fs::current_path(); }

}  // namespace

extern "C" {

const char* gw_version(void) { return "0.1.0"; }

const char* gw_status_name(gw_status status) {
  switch (status) {
    case GW_OK: return "ok";
    case GW_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GW_ERR_FORMAT: return "format error";
    case GW_ERR_VALIDATION: return "validation failure";
    case GW_ERR_IO: return "I/O failure";
    case GW_ERR_CLIENT: return "client failure";
    case GW_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

gw_status gw_context_new(gw_context** out) {
  if (!out) return GW_ERR_INVALID_ARGUMENT;
  *out = new (std::nothrow) gw_context();
  return *out ? GW_OK : GW_ERR_INTERNAL;
}

void gw_context_free(gw_context* ctx) { delete ctx; }

const char* gw_last_error(const gw_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

void gw_string_free(char* s) { std::free(s); }

gw_status gw_normalize(gw_context* ctx, const char* text, char** out) {
  return guarded(ctx, [&] {
    if (!text || !out) return invalid(ctx, "text and out are required");
    *out = dup(guwen::textnorm::normalize_text(text));
    return GW_OK;
  });
}

gw_status gw_strip_punctuation(gw_context* ctx, const char* text, char** out) {
  return guarded(ctx, [&] {
    if (!text || !out) return invalid(ctx, "text and out are required");
    *out = dup(guwen::textnorm::strip_punctuation(text).base_text);
    return GW_OK;
  });
}

gw_status gw_parse_slash_tags(gw_context* ctx, const char* line, char** out_json) {
  return guarded(ctx, [&] {
    if (!line || !out_json) return invalid(ctx, "line and out_json are required");
    auto arr = Json::array();
    for (const auto& item : guwen::formats::parse_slash_tags(line)) arr.push_back({item.segment, item.tag});
    *out_json = dup(arr.dump());
    return GW_OK;
  });
}

gw_status gw_parse_entities(gw_context* ctx, const char* text, char** out_json) {
  return guarded(ctx, [&] {
    if (!text || !out_json) return invalid(ctx, "text and out_json are required");
    const auto set = guwen::formats::parse_entity_output(text);
    auto obj = Json::object();
    for (auto cat : guwen::formats::kEntityCategories) obj[std::string(guwen::formats::key(cat))] = set[cat];
    *out_json = dup(obj.dump());
    return GW_OK;
  });
}

gw_status gw_score(gw_context* ctx, const char* task_name, const char* gold, const char* response,
                   char** out_json) {
  return guarded(ctx, [&] {
    if (!task_name || !gold || !response || !out_json) return invalid(ctx, "all arguments are required");
    const auto task = guwen::formats::task_from_string(task_name);
    if (!task || *task == guwen::formats::Task::kOther) return invalid(ctx, std::string("unknown task: ") + task_name);
    guwen::metrics::MockEmbeddingProvider embedder(16);
    const auto pred = guwen::bench::extract_answer(*task, response);
    const auto score = guwen::bench::score_item(*task, gold, pred, guwen::formats::Resources::defaults(), {},
                                                &embedder);
    Json out{{"extracted", pred.extracted}, {"scored", score.scored}};
    if (*task == guwen::formats::Task::kReverseDictionary) {
      out["precision"] = score.embed.precision;
      out["recall"] = score.embed.recall;
      out["f1"] = score.embed.f1;
    } else {
      const auto prf = score.prf.score();
      out["precision"] = prf.precision;
      out["recall"] = prf.recall;
      out["f1"] = prf.f1;
    }
    out["bleu"] = score.bleu_scores.bleu;
    out["headline"] = guwen::bench::headline(*task, score);
    *out_json = dup(out.dump());
    return GW_OK;
  });
}

gw_status gw_bleu(gw_context* ctx, const char* candidate, const char* reference, double out[4]) {
  return guarded(ctx, [&] {
    if (!candidate || !reference || !out) return invalid(ctx, "all arguments are required");
    namespace m = guwen::metrics;
    const auto stats = m::bleu_stats(m::bleu_tokenize(candidate), m::bleu_tokenize(reference));
    const auto scores = m::score_bleu(stats, m::Smoothing::kNone);
    for (int k = 0; k < 4; ++k) out[k] = scores.bleu[k];
    return GW_OK;
  });
}

gw_status gw_training_config(gw_context* ctx, const char* stage, char** out) {
  return guarded(ctx, [&] {
    if (!stage || !out) return invalid(ctx, "stage and out are required");
    const auto parsed = guwen::datagen::training_stage_from_string(stage);
    if (!parsed) return invalid(ctx, std::string("unknown training stage: ") + stage);
    *out = dup(guwen::datagen::training_config_text(*parsed));
    return GW_OK;
  });
}

gw_status gw_run_clean(gw_context* ctx, const char* config_path, const char* overrides_json, const char* out_dir,
                       char** summary_json) {
  return guarded(ctx, [&] {
    const auto cfg = load_config(config_path, overrides_json);
    const auto clean = guwen::corpus::clean_config_from_json(cfg.obj, cfg.base);
    const auto report = guwen::corpus::run_clean_to(clean, out_path(out_dir));
    set_out(summary_json, guwen::corpus::report_to_json(report).dump(2));
    return GW_OK;
  });
}

gw_status gw_run_datagen(gw_context* ctx, const char* config_path, const char* overrides_json, const char* out_dir,
                         char** summary_json) {
  return guarded(ctx, [&] {
    const auto cfg = load_config(config_path, overrides_json);
    const auto dg = guwen::datagen::datagen_config_from_json(cfg.obj, cfg.base);
    const auto summary = guwen::datagen::run_datagen(dg, out_path(out_dir));
    const Json out{{"stages_run", summary.stages_run},
                   {"pairs", summary.pairs},
                   {"pair_issues", summary.pair_issues},
                   {"candidates", summary.candidates},
                   {"accepted", summary.accepted},
                   {"rejected", summary.rejected},
                   {"generated", summary.generated},
                   {"generation_rejects", summary.generation_rejects},
                   {"dataset", summary.dataset}};
    set_out(summary_json, out.dump(2));
    return GW_OK;
  });
}

gw_status gw_run_eval(gw_context* ctx, const char* config_path, const char* overrides_json, const char* out_dir,
                      char** summary_json) {
  return guarded(ctx, [&] {
    const auto cfg = load_config(config_path, overrides_json);
    const auto ec = guwen::bench::eval_config_from_json(cfg.obj, cfg.base);
    const auto selected = guwen::config::get_strings(cfg.obj, "select_models");
    const auto summary = guwen::bench::run_eval(ec, out_path(out_dir), selected);
    auto malformed = Json::array();
    for (const auto& m : summary.malformed) malformed.push_back({{"line", m.line}, {"reason", m.reason}});
    auto files = Json::array();
    for (const auto& p : summary.run_files) files.push_back(p.string());
    const Json out{{"items", summary.items},         {"models", summary.models},
                   {"run_files", files},             {"cached", summary.cached},
                   {"unanswered", summary.unanswered}, {"malformed", malformed},
                   {"count_mismatches", summary.count_mismatches}};
    set_out(summary_json, out.dump(2));
    if (!summary.malformed.empty() || !summary.count_mismatches.empty()) {
      ctx->error = std::to_string(summary.malformed.size()) + " malformed items, " +
                   std::to_string(summary.count_mismatches.size()) + " count mismatches";
      return GW_ERR_VALIDATION;
    }
    return GW_OK;
  });
}

gw_status gw_run_report(gw_context* ctx, const char* config_path, const char* overrides_json, const char* out_dir,
                        char** summary_json) {
  return guarded(ctx, [&] {
    const auto cfg = load_config(config_path, overrides_json);
    const auto rc = guwen::bench::report_config_from_json(cfg.obj, cfg.base);
    const auto files = guwen::bench::run_report(rc, out_path(out_dir));
    set_out(summary_json, Json{{"files", files}}.dump(2));
    return GW_OK;
  });
}

gw_status gw_validate(gw_context* ctx, const char* path, const char* kind, const char* config_path,
                      int check_official, char** report) {
  return guarded(ctx, [&] {
    if (!path || !kind) return invalid(ctx, "path and kind are required");
    guwen::bench::FileKind file_kind;
    if (std::strcmp(kind, "bench") == 0) {
      file_kind = guwen::bench::FileKind::kBench;
    } else if (std::strcmp(kind, "records") == 0) {
      file_kind = guwen::bench::FileKind::kRecords;
    } else {
      return invalid(ctx, std::string("unknown file kind: ") + kind);
    }
    const auto cfg = load_config(config_path, nullptr);
    const auto res = guwen::bench::resources_from_json(cfg.obj, cfg.base);
    const auto result = guwen::bench::validate_file(path, file_kind, res, check_official != 0);
    set_out(report, guwen::bench::format_validation(result));
    if (!result.ok()) {
      ctx->error = std::to_string(result.problems.size()) + " invalid lines, " +
                   std::to_string(result.count_mismatches.size()) + " count mismatches";
      return GW_ERR_VALIDATION;
    }
    return GW_OK;
  });
}

}  // extern "C"
