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


#include "bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include <json.hpp>

#include "util/io.hpp"

namespace guwen::bench {
namespace {

using Ordered = nlohmann::ordered_json;

constexpr Task kUnderstanding[] = {Task::kPunctuation, Task::kPos, Task::kNer};
constexpr Task kBleuTasks[] = {Task::kTranslation, Task::kWordExplanation};

std::string display_name(Task task) {
  switch (task) {
    case Task::kPunctuation: return "Punctuation";
    case Task::kPos: return "POS";
    case Task::kNer: return "NER";
    case Task::kTranslation: return "Translation";
    case Task::kWordExplanation: return "Word explanation";
    case Task::kReverseDictionary: return "Reverse dictionary";
    default: return "Other";
  }
}

std::string metric_name(Task task) {
  switch (task) {
    case Task::kTranslation:
    case Task::kWordExplanation: return "bleu1";
    case Task::kReverseDictionary: return "embed_f1";
    default: return "f1";
  }
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const TaskAggregate* find(const EvalRun& run, Task task) {
  const auto it = run.aggregates.find(task);
  return it == run.aggregates.end() ? nullptr : &it->second;
}

// Cell values for one run, or nullopt where the task was not evaluated.
std::vector<std::optional<double>> understanding_cells(const EvalRun& run) {
  std::vector<std::optional<double>> out;
  for (Task task : kUnderstanding) {
    const auto* agg = find(run, task);
    if (!agg || agg->prf.items == 0) {
      out.insert(out.end(), 3, std::nullopt);
      continue;
    }
    const auto prf = agg->prf.micro();
    out.insert(out.end(), {prf.precision * 100, prf.recall * 100, prf.f1 * 100});
  }
  return out;
}

std::vector<std::optional<double>> generation_cells(const EvalRun& run, bool sentence) {
  std::vector<std::optional<double>> out;
  for (Task task : kBleuTasks) {
    const auto* agg = find(run, task);
    if (!agg || agg->bleu.items == 0) {
      out.insert(out.end(), 4, std::nullopt);
      continue;
    }
    const auto scores = sentence ? agg->bleu.sentence_mean() : agg->bleu.corpus().bleu;
    out.insert(out.end(), scores.begin(), scores.end());
  }
  if (sentence) return out;
  const auto* agg = find(run, Task::kReverseDictionary);
  if (!agg || agg->embed.items == 0) {
    out.insert(out.end(), 3, std::nullopt);
  } else {
    const auto mean = agg->embed.mean();
    out.insert(out.end(), {mean.precision * 100, mean.recall * 100, mean.f1 * 100});
  }
  return out;
}

std::vector<std::string> understanding_header() {
  std::vector<std::string> out{"Model"};
  for (Task task : kUnderstanding) {
    for (const char* m : {"P(%)", "R(%)", "F1(%)"}) out.push_back(display_name(task) + " " + m);
  }
  return out;
}

std::vector<std::string> generation_header(bool sentence) {
  std::vector<std::string> out{"Model"};
  for (Task task : kBleuTasks) {
    for (int n = 1; n <= 4; ++n) out.push_back(display_name(task) + " Bleu" + std::to_string(n));
  }
  if (!sentence) {
    for (const char* m : {"P(%)", "R(%)", "F1(%)"}) out.push_back(display_name(Task::kReverseDictionary) + " " + m);
  }
  return out;
}

std::string md_row(const std::vector<std::string>& cells) {
  std::string out = "|";
  for (const auto& c : cells) out += " " + c + " |";
  return out + "\n";
}

std::string md_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out = md_row(header);
  out += "|";
  for (std::size_t i = 0; i < header.size(); ++i) out += i == 0 ? " --- |" : " ---: |";
  out += "\n";
  for (const auto& row : rows) out += md_row(row);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += csv_field(cells[i]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out;
}

// Percent columns and BLEU columns differ in scale, hence the two precisions.
std::vector<std::string> render_cells(const std::string& model, const std::vector<std::optional<double>>& cells,
                                      const std::vector<std::string>& header, int pct_digits, int bleu_digits) {
  std::vector<std::string> out{model};
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i]) {
      out.push_back("-");
      continue;
    }
    const bool bleu = header[i + 1].find("Bleu") != std::string::npos;
    out.push_back(fixed(*cells[i], bleu ? bleu_digits : pct_digits));
  }
  return out;
}

std::vector<std::vector<std::string>> table_rows(const std::vector<EvalRun>& runs, int table, int pct, int bleu) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& run : runs) {
    std::vector<std::optional<double>> cells;
    std::vector<std::string> header;
    if (table == 0) {
      cells = understanding_cells(run);
      header = understanding_header();
    } else {
      cells = generation_cells(run, table == 2);
      header = generation_header(table == 2);
    }
    rows.push_back(render_cells(run.model, cells, header, pct, bleu));
  }
  return rows;
}

std::set<std::string> categories_of(const std::vector<EvalRun>& runs, Task task) {
  std::set<std::string> out;
  for (const auto& run : runs) {
    if (const auto* agg = find(run, task)) {
      for (const auto& [name, counts] : agg->prf.category_counts) out.insert(name);
    }
  }
  return out;
}

}  // namespace

const std::vector<Task>& report_tasks() {
  static const std::vector<Task> kTasks = {Task::kPunctuation,     Task::kPos,
                                           Task::kNer,             Task::kTranslation,
                                           Task::kWordExplanation, Task::kReverseDictionary};
  return kTasks;
}

std::vector<std::optional<double>> min_max_normalize(const std::vector<std::optional<double>>& values) {
  std::optional<double> lo, hi;
  for (const auto& v : values) {
    if (!v) continue;
    lo = lo ? std::min(*lo, *v) : *v;
    hi = hi ? std::max(*hi, *v) : *v;
  }
  std::vector<std::optional<double>> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) continue;
    out[i] = *hi == *lo ? 1.0 : (*values[i] - *lo) / (*hi - *lo);
  }
  return out;
}

RadarData compute_radar(const std::vector<EvalRun>& runs) {
  RadarData radar;
  radar.normalized = runs.size() > 1;
  const auto& tasks = report_tasks();
  for (const auto& run : runs) {
    radar.models.push_back(run.model);
    std::vector<std::optional<double>> row;
    for (Task task : tasks) {
      const auto* agg = find(run, task);
      row.push_back(agg ? headline(task, *agg) : std::nullopt);
    }
    radar.raw.push_back(std::move(row));
  }
  radar.values = radar.raw;
  if (!radar.normalized) return radar;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    std::vector<std::optional<double>> column;
    for (const auto& row : radar.raw) column.push_back(row[t]);
    const auto norm = min_max_normalize(column);
    for (std::size_t m = 0; m < runs.size(); ++m) radar.values[m][t] = norm[m];
  }
  return radar;
}

std::string format_radar_json(const RadarData& radar) {
  Ordered out;
  out["normalized"] = radar.normalized;
  Ordered metrics = Ordered::object();
  for (Task task : report_tasks()) metrics[std::string(formats::to_string(task))] = metric_name(task);
  out["metrics"] = std::move(metrics);
  Ordered models = Ordered::array();
  for (std::size_t m = 0; m < radar.models.size(); ++m) {
    Ordered raw = Ordered::object();
    Ordered values = Ordered::object();
    for (std::size_t t = 0; t < report_tasks().size(); ++t) {
      const std::string name(formats::to_string(report_tasks()[t]));
      raw[name] = radar.raw[m][t] ? Ordered(*radar.raw[m][t]) : Ordered(nullptr);
      values[name] = radar.values[m][t] ? Ordered(*radar.values[m][t]) : Ordered(nullptr);
    }
    models.push_back(Ordered{{"model", radar.models[m]}, {"raw", std::move(raw)}, {"values", std::move(values)}});
  }
  out["models"] = std::move(models);
  return out.dump(2) + "\n";
}

std::string format_report_markdown(const std::vector<EvalRun>& runs) {
  std::string out = "# Evaluation report\n\n## Understanding tasks\n\n";
  out += md_table(understanding_header(), table_rows(runs, 0, 2, 4));
  out += "\n## Generation tasks\n\nBLEU is corpus-level; reverse dictionary is the mean embedding score.\n\n";
  out += md_table(generation_header(false), table_rows(runs, 1, 2, 4));
  out += "\n## Sentence-level BLEU\n\nMean of per-item BLEU with add-one smoothing of empty higher orders.\n\n";
  out += md_table(generation_header(true), table_rows(runs, 2, 2, 4));

  out += "\n## Subcategory F1 (%)\n";
  for (Task task : kUnderstanding) {
    const auto cats = categories_of(runs, task);
    if (cats.empty()) continue;
    std::vector<std::string> header{"Category"};
    for (const auto& run : runs) header.push_back(run.model);
    std::vector<std::vector<std::string>> rows;
    for (const auto& cat : cats) {
      std::vector<std::string> row{cat};
      for (const auto& run : runs) {
        const auto* agg = find(run, task);
        const auto per = agg ? agg->prf.per_category() : std::map<std::string, metrics::PRF>{};
        const auto it = per.find(cat);
        row.push_back(it == per.end() ? "-" : fixed(it->second.f1 * 100, 2));
      }
      rows.push_back(std::move(row));
    }
    out += "\n### " + display_name(task) + "\n\n" + md_table(header, rows);
  }

  out += "\n## Flags\n\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& run : runs) {
    for (const auto& [task, agg] : run.aggregates) {
      rows.push_back({run.model, display_name(task), std::to_string(agg.items), std::to_string(agg.unanswered),
                      std::to_string(agg.unextracted), std::to_string(agg.unscored),
                      std::to_string(agg.base_mismatch)});
    }
  }
  out += md_table({"Model", "Task", "Items", "Unanswered", "Unextracted", "Unscored", "Base mismatch"}, rows);
  return out;
}

std::string format_understanding_csv(const std::vector<EvalRun>& runs) {
  return csv_table(understanding_header(), table_rows(runs, 0, 4, 6));
}

std::string format_generation_csv(const std::vector<EvalRun>& runs) {
  return csv_table(generation_header(false), table_rows(runs, 1, 4, 6));
}

std::string format_sentence_bleu_csv(const std::vector<EvalRun>& runs) {
  return csv_table(generation_header(true), table_rows(runs, 2, 4, 6));
}

std::string format_subcategory_csv(const std::vector<EvalRun>& runs) {
  std::vector<std::vector<std::string>> rows;
  for (Task task : kUnderstanding) {
    for (const auto& run : runs) {
      const auto* agg = find(run, task);
      if (!agg) continue;
      for (const auto& [cat, prf] : agg->prf.per_category()) {
        rows.push_back({std::string(formats::to_string(task)), cat, run.model, fixed(prf.precision * 100, 4),
                        fixed(prf.recall * 100, 4), fixed(prf.f1 * 100, 4), std::to_string(prf.counts.tp),
                        std::to_string(prf.counts.predicted), std::to_string(prf.counts.gold)});
      }
    }
  }
  return csv_table({"task", "category", "model", "precision", "recall", "f1", "tp", "predicted", "gold"}, rows);
}

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
  if (name == "all") return ReportFormat::kAll;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  return std::nullopt;
}

std::vector<std::string> write_report(const std::vector<EvalRun>& runs, const std::filesystem::path& out_dir,
                                      ReportFormat format) {
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    io::write_file(out_dir / name, content);
    written.push_back(name);
  };
  const bool all = format == ReportFormat::kAll;
  if (all || format == ReportFormat::kMarkdown) emit("report.md", format_report_markdown(runs));
  if (all || format == ReportFormat::kCsv) {
    emit("understanding.csv", format_understanding_csv(runs));
    emit("generation.csv", format_generation_csv(runs));
    emit("sentence_bleu.csv", format_sentence_bleu_csv(runs));
    emit("subcategories.csv", format_subcategory_csv(runs));
  }
  if (all || format == ReportFormat::kJson) emit("radar.json", format_radar_json(compute_radar(runs)));
  return written;
}

}  // namespace guwen::bench
