// Copyright 2026 The camus-bench Authors. All Rights Reserved.
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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "camus/error.hpp"
#include "camus/folds.hpp"
#include "camus/geometry.hpp"
#include "camus/harness.hpp"
#include "camus/mhd_io.hpp"
#include "camus/number_format.hpp"
#include "camus/report.hpp"
#include "camus/stats.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace camus;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// Bad flag values are usage errors, not data errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& bytes) {
  if (path.empty() || path == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << bytes)) throw IoError("cannot write '" + path + "'");
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const auto comma = std::min(item.find(',', start), item.size());
      const std::string token(trim(std::string_view(item).substr(start, comma - start)));
      if (!token.empty()) out.push_back(token);
      start = comma + 1;
    }
  }
  return out;
}

template <typename E, typename Parser>
std::vector<E> parse_list(const std::vector<std::string>& raw, Parser parse, const std::string& flag) {
  std::vector<E> out;
  for (const auto& token : split_list(raw)) {
    const auto value = parse(token);
    if (!value) throw UsageError("invalid value '" + token + "' for " + flag);
    if (std::find(out.begin(), out.end(), *value) == out.end()) out.push_back(*value);
  }
  return out;
}

std::vector<int> parse_folds(const std::vector<std::string>& raw) {
  std::vector<int> out;
  for (const auto& token : split_list(raw)) {
    const auto value = parse_int(token);
    if (!value || *value < 1) throw UsageError("invalid fold '" + token + "' for --folds");
    out.push_back(static_cast<int>(*value));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ReportFormat format_for_path(const std::string& path, const std::string& explicit_format) {
  if (!explicit_format.empty()) {
    const auto f = parse_report_format(explicit_format);
    if (!f) throw UsageError("unknown format '" + explicit_format + "'");
    return *f;
  }
  const std::string ext = to_lower(fs::path(path).extension().string());
  if (ext == ".csv") return ReportFormat::kCsv;
  if (ext == ".md" || ext == ".markdown") return ReportFormat::kMarkdown;
  return ReportFormat::kJson;
}

std::vector<CaseScore> load_cases(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
  if (first != std::string::npos && text[first] == '{') return parse_report(text, ReportFormat::kJson).cases;
  if (text.rfind("section,", 0) == 0) return parse_report(text, ReportFormat::kCsv).cases;
  return parse_cases_csv(text);
}

Contour load_contour(const fs::path& path) {
  if (to_lower(path.extension().string()) == ".mhd") {
    const LabelMask mask = read_mask(path, {.strict_labels = true});
    return trace_contour(keep_largest_fill_holes(region_of(mask, StructureId::kLvEndo)), mask.spacing());
  }
  std::vector<Point2> points;
  std::istringstream lines(read_file(path));
  std::size_t line_no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    const auto x = comma == std::string_view::npos ? std::nullopt : parse_double(t.substr(0, comma));
    const auto z = comma == std::string_view::npos ? std::nullopt : parse_double(t.substr(comma + 1));
    if (!x || !z) {
      if (points.empty() && to_lower(t) == "x,z") continue;
      throw FormatError(path.string() + " line " + std::to_string(line_no) + ": expected 'x,z'");
    }
    points.push_back({*x, *z});
  }
  return Contour(std::move(points));
}

void write_bland_altman(const fs::path& dir, const MethodReport& report) {
  fs::create_directories(dir);
  for (ClinicalIndex index : kAllClinicalIndices) {
    std::vector<double> user, ref;
    for (const auto& p : report.patients) {
      if (!p.ok) continue;
      const auto pick = [&](const ClinicalScores& s) {
        return index == ClinicalIndex::kEDV ? s.edv : index == ClinicalIndex::kESV ? s.esv : s.ef;
      };
      user.push_back(pick(p.pred));
      ref.push_back(pick(p.ref));
    }
    if (user.empty()) continue;
    write_output((dir / ("bland_altman_" + to_lower(to_string(index)) + ".csv")).string(),
                 render_bland_altman_csv(bland_altman(user, ref)));
  }
}

struct ScoreArgs {
  std::string pred, ref, manifest, out, format, cases_out, fold_map, bland_altman_dir;
  std::string method = "submission";
  std::string outlier_mode = "any";
  std::vector<std::string> quality, folds, views, instants;
  bool no_postprocess = false;
  std::size_t workers = 1;
  std::size_t discs = 20;
};

int run_score(const ScoreArgs& a) {
  CohortFilter filter;
  filter.qualities = parse_list<Quality>(a.quality, parse_quality, "--quality");
  filter.folds = parse_folds(a.folds);
  filter.views = parse_list<View>(a.views, parse_view, "--views");
  filter.instants = parse_list<Instant>(a.instants, parse_instant, "--instants");
  const auto mode = parse_outlier_mode(a.outlier_mode);
  if (!mode) throw UsageError("invalid --outlier-mode '" + a.outlier_mode + "'");
  if (a.workers == 0) throw UsageError("--workers must be at least 1");
  if (a.discs == 0) throw UsageError("--discs must be at least 1");
  const ReportFormat format = format_for_path(a.out, a.format);

  auto manifest = load_manifest(a.manifest);
  if (!a.fold_map.empty()) manifest = with_folds(manifest, parse_folds_csv(read_file(a.fold_map)));

  EvaluationOptions options;
  options.method_name = a.method;
  options.postprocess = !a.no_postprocess;
  options.outlier_mode = *mode;
  options.workers = a.workers;
  options.axis.discs = a.discs;
  const MethodReport report = evaluate_submission(a.pred, a.ref, manifest, filter, options);

  write_output(a.out, render_report(report, format));
  if (!a.cases_out.empty()) write_output(a.cases_out, render_cases_csv(report.cases));
  if (!a.bland_altman_dir.empty()) write_bland_altman(a.bland_altman_dir, report);
  return 0;
}

struct FoldsArgs {
  std::string manifest, out;
  std::size_t k = 10;
  std::uint64_t seed = 0;
};

int run_folds(const FoldsArgs& a) {
  const auto manifest = load_manifest(a.manifest);
  write_output(a.out, format_folds_csv(make_folds(manifest, a.k, a.seed)));
  return 0;
}

struct CompareArgs {
  std::string a, b, out, structure, view, instant;
  std::string metric = "dm";
};

int run_compare(const CompareArgs& a) {
  ComparisonSelection sel;
  const auto metric = parse_compare_metric(a.metric);
  if (!metric) throw UsageError("invalid --metric '" + a.metric + "' (dice, dm, dh)");
  sel.metric = *metric;
  if (!a.structure.empty() && !(sel.structure = parse_structure(a.structure))) {
    throw UsageError("invalid --structure '" + a.structure + "'");
  }
  if (!a.view.empty() && !(sel.view = parse_view(a.view))) throw UsageError("invalid --view '" + a.view + "'");
  if (!a.instant.empty() && !(sel.instant = parse_instant(a.instant))) {
    throw UsageError("invalid --instant '" + a.instant + "'");
  }
  const WilcoxonResult r = compare_methods(load_cases(a.a), load_cases(a.b), sel);
  nlohmann::ordered_json j;
  j["metric"] = std::string(to_string(sel.metric));
  j["structure"] = sel.structure ? nlohmann::ordered_json(std::string(to_string(*sel.structure))) : nullptr;
  j["view"] = sel.view ? nlohmann::ordered_json(std::string(to_string(*sel.view))) : nullptr;
  j["instant"] = sel.instant ? nlohmann::ordered_json(std::string(to_string(*sel.instant))) : nullptr;
  j["n_effective"] = r.n_effective;
  j["w_plus"] = r.w_plus;
  j["p_value"] = r.p_value;
  j["method"] = std::string(to_string(r.method));
  write_output(a.out, j.dump(2) + "\n");
  return 0;
}

struct SimpsonArgs {
  std::string c2ch, c4ch;
  std::size_t discs = 20;
};

int run_simpson(const SimpsonArgs& a) {
  if (a.discs == 0) throw UsageError("--discs must be at least 1");
  const double ml = simpson_biplane(BiplaneCase{load_contour(a.c2ch), load_contour(a.c4ch), Instant::kED},
                                    {.discs = a.discs});
  std::cout << format_double(ml) << "\n";
  return 0;
}

struct RenderArgs {
  std::string in, format = "markdown", out;
};

int run_render(const RenderArgs& a) {
  const auto out_format = parse_report_format(a.format);
  if (!out_format) throw UsageError("invalid --format '" + a.format + "' (json, csv, markdown)");
  const std::string text = read_file(a.in);
  const ReportFormat in_format =
      to_lower(fs::path(a.in).extension().string()) == ".csv" ? ReportFormat::kCsv : ReportFormat::kJson;
  write_output(a.out, render_report(parse_report(text, in_format), *out_format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Segmentation benchmark engine for apical echocardiography", std::string(kEngineName)};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "Score a prediction directory against references");
  score_cmd->add_option("--pred", score.pred, "Prediction directory")->required()->check(CLI::ExistingDirectory);
  score_cmd->add_option("--ref", score.ref, "Reference directory")->required()->check(CLI::ExistingDirectory);
  score_cmd->add_option("--manifest", score.manifest, "Cohort manifest CSV")->required();
  score_cmd->add_option("--quality", score.quality, "Quality filter, e.g. good,medium");
  score_cmd->add_option("--folds", score.folds, "Fold filter, e.g. 5 or 1,2");
  score_cmd->add_option("--views", score.views, "View filter, e.g. 2ch,4ch");
  score_cmd->add_option("--instants", score.instants, "Instant filter, e.g. ed,es");
  score_cmd->add_option("--out", score.out, "Report path (.json, .csv, .md); '-' for stdout")->required();
  score_cmd->add_option("--format", score.format, "Override the report format (json, csv, markdown)");
  score_cmd->add_flag("--no-postprocess", score.no_postprocess, "Score raw predictions");
  score_cmd->add_option("--workers", score.workers, "Worker threads")->capture_default_str();
  score_cmd->add_option("--method", score.method, "Method name recorded in the report")->capture_default_str();
  score_cmd->add_option("--outlier-mode", score.outlier_mode, "any (d_m or d_H) or all")->capture_default_str();
  score_cmd->add_option("--discs", score.discs, "Simpson disc count")->capture_default_str();
  score_cmd->add_option("--fold-map", score.fold_map, "folds.csv to tag manifest rows");
  score_cmd->add_option("--cases-out", score.cases_out, "Also write per-case scores CSV");
  score_cmd->add_option("--bland-altman", score.bland_altman_dir, "Directory for EDV/ESV/EF Bland-Altman CSVs");

  FoldsArgs folds;
  auto* folds_cmd = app.add_subcommand("folds", "Generate a stratified fold assignment");
  folds_cmd->add_option("--manifest", folds.manifest, "Cohort manifest CSV")->required();
  folds_cmd->add_option("--k", folds.k, "Number of folds")->capture_default_str();
  folds_cmd->add_option("--seed", folds.seed, "Shuffle seed")->capture_default_str();
  folds_cmd->add_option("--out", folds.out, "Output CSV; stdout if omitted");

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Wilcoxon signed-rank test between two methods");
  compare_cmd->add_option("--a", compare.a, "Cases CSV or report of method A")->required();
  compare_cmd->add_option("--b", compare.b, "Cases CSV or report of method B")->required();
  compare_cmd->add_option("--metric", compare.metric, "dice, dm or dh")->capture_default_str();
  compare_cmd->add_option("--structure", compare.structure, "Restrict to LV_endo, LV_epi or LA");
  compare_cmd->add_option("--view", compare.view, "Restrict to 2CH or 4CH");
  compare_cmd->add_option("--instant", compare.instant, "Restrict to ED or ES");
  compare_cmd->add_option("--out", compare.out, "Output JSON; stdout if omitted");

  SimpsonArgs simpson;
  auto* simpson_cmd = app.add_subcommand("simpson", "Biplane LV volume (ml) from two contours");
  simpson_cmd->add_option("--c2ch", simpson.c2ch, "2CH mask (.mhd) or x,z contour CSV")->required();
  simpson_cmd->add_option("--c4ch", simpson.c4ch, "4CH mask (.mhd) or x,z contour CSV")->required();
  simpson_cmd->add_option("--discs", simpson.discs, "Disc count")->capture_default_str();

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Re-render a JSON or CSV report");
  render_cmd->add_option("--in", render.in, "Report file (.json or .csv)")->required();
  render_cmd->add_option("--format", render.format, "json, csv or markdown")->capture_default_str();
  render_cmd->add_option("--out", render.out, "Output path; stdout if omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*score_cmd) return run_score(score);
    if (*folds_cmd) return run_folds(folds);
    if (*compare_cmd) return run_compare(compare);
    if (*simpson_cmd) return run_simpson(simpson);
    if (*render_cmd) return run_render(render);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
