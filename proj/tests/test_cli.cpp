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

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "camus/folds.hpp"
#include "camus/harness.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/oracles.hpp"
#include "support/phantom.hpp"

namespace fs = std::filesystem;
using namespace camus;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const fs::path& dir, const std::string& args) {
  const fs::path out = dir / "stdout.txt";
  const std::string cmd = std::string("\"") + CAMUS_BENCH_EXE + "\" " + args + " > \"" + out.string() + "\" 2> \"" +
                          (dir / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out)};
}

struct Fixture {
  fs::path dir;
  std::vector<PatientCase> cases;

  explicit Fixture(const std::string& name) : dir(phantom::scratch_dir("cli-" + name)) {
    cases = phantom::write_cohort(dir / "ref", 3, 7);
    phantom::write_cohort(dir / "pred", 3, 13);
    std::ofstream(dir / "manifest.csv") << format_manifest(cases);
  }

  std::string score_args() const {
    return "score --pred " + (dir / "pred").string() + " --ref " + (dir / "ref").string() + " --manifest " +
           (dir / "manifest.csv").string();
  }
};

}  // namespace

TEST_CASE("usage errors exit with 1") {
  const auto dir = phantom::scratch_dir("cli-usage");
  CHECK(run(dir, "").code == 1);
  CHECK(run(dir, "bogus").code == 1);
  CHECK(run(dir, "score --pred x").code == 1);
  CHECK(run(dir, "folds").code == 1);
  CHECK(run(dir, "simpson --c2ch a.csv").code == 1);
  CHECK(run(dir, "--help").code == 0);
}

TEST_CASE("score writes a report identical to the library") {
  const Fixture f("score");
  const auto r1 = run(f.dir, f.score_args() + " --out " + (f.dir / "r1.json").string() + " --cases-out " +
                                 (f.dir / "cases.csv").string() + " --bland-altman " + (f.dir / "ba").string());
  REQUIRE(r1.code == 0);
  const MethodReport expected = evaluate_submission(f.dir / "pred", f.dir / "ref", f.cases, {});
  CHECK(slurp(f.dir / "r1.json") == render_report(expected, ReportFormat::kJson));
  CHECK(slurp(f.dir / "cases.csv") == render_cases_csv(expected.cases));
  CHECK(slurp(f.dir / "ba" / "bland_altman_ef.csv").rfind("mean,difference\n", 0) == 0);

  REQUIRE(run(f.dir, f.score_args() + " --workers 8 --out " + (f.dir / "r8.json").string()).code == 0);
  CHECK(slurp(f.dir / "r8.json") == slurp(f.dir / "r1.json"));

  const auto md = run(f.dir, f.score_args() + " --quality good,medium --instants ed --out -  --format markdown");
  CHECK(md.code == 0);
  CHECK(md.out.find("LV_endo") != std::string::npos);
}

TEST_CASE("score reports data problems with exit 2") {
  const Fixture f("score-errors");
  CHECK(run(f.dir, f.score_args() + " --quality excellent --out x.json").code == 1);
  CHECK(run(f.dir, f.score_args() + " --folds zero --out x.json").code == 1);
  CHECK(run(f.dir, "score --pred " + (f.dir / "pred").string() + " --ref " + (f.dir / "ref").string() +
                       " --manifest " + (f.dir / "missing.csv").string() + " --out x.json")
            .code == 2);
  std::ofstream(f.dir / "bad.csv") << "patient_id,view,instant,quality,ef_group,fold\np,5CH,ED,Good,le45,1\n";
  CHECK(run(f.dir, "score --pred " + (f.dir / "pred").string() + " --ref " + (f.dir / "ref").string() +
                       " --manifest " + (f.dir / "bad.csv").string() + " --out x.json")
            .code == 2);
  fs::remove(case_file(f.dir / "ref", key_of(f.cases[0])));
  CHECK(run(f.dir, f.score_args() + " --out " + (f.dir / "x.json").string()).code == 2);
}

TEST_CASE("folds subcommand") {
  const Fixture f("folds");
  const auto r = run(f.dir, "folds --manifest " + (f.dir / "manifest.csv").string() + " --k 3 --seed 4");
  REQUIRE(r.code == 0);
  CHECK(r.out == format_folds_csv(make_folds(f.cases, 3, 4)));
  CHECK(run(f.dir, "folds --manifest " + (f.dir / "manifest.csv").string() + " --k 4").code == 2);
  CHECK(run(f.dir, "folds --manifest " + (f.dir / "manifest.csv").string() + " --k many").code == 1);

  // The generated map can drive a fold-filtered scoring run.
  std::ofstream(f.dir / "folds.csv") << r.out;
  const auto scored = run(f.dir, f.score_args() + " --fold-map " + (f.dir / "folds.csv").string() +
                                     " --folds 2 --out " + (f.dir / "fold2.json").string());
  REQUIRE(scored.code == 0);
  const auto j = nlohmann::json::parse(slurp(f.dir / "fold2.json"));
  CHECK(j.at("cohort").at("patients") == 1);
}

TEST_CASE("compare subcommand") {
  const Fixture f("compare");
  REQUIRE(run(f.dir, f.score_args() + " --out " + (f.dir / "a.json").string() + " --cases-out " +
                         (f.dir / "a.csv").string())
              .code == 0);
  const auto same = run(f.dir, "compare --a " + (f.dir / "a.csv").string() + " --b " + (f.dir / "a.json").string() +
                                   " --metric dm");
  REQUIRE(same.code == 0);
  const auto j = nlohmann::json::parse(same.out);
  CHECK(j.at("p_value") == 1.0);
  CHECK(j.at("n_effective") == 0);

  std::ofstream(f.dir / "other.csv") << "patient_id,view,instant,structure,status,dice,dm,dh,reason\n"
                                        "zz,2CH,ED,LV_endo,ok,0.9,1,2,\n";
  CHECK(run(f.dir, "compare --a " + (f.dir / "a.csv").string() + " --b " + (f.dir / "other.csv").string()).code == 2);
  CHECK(run(f.dir, "compare --a " + (f.dir / "a.csv").string() + " --b " + (f.dir / "a.csv").string() +
                       " --structure RV")
            .code == 1);
}

TEST_CASE("simpson subcommand") {
  const auto dir = phantom::scratch_dir("cli-simpson");
  {
    std::ofstream out(dir / "ellipse.csv");
    out.precision(17);
    out << "x,z\n";
    for (const auto& p : oracle::ellipse(40.0, 25.0, 4096)) out << p.x << "," << p.z << "\n";
  }
  const auto r = run(dir, "simpson --c2ch " + (dir / "ellipse.csv").string() + " --c4ch " +
                              (dir / "ellipse.csv").string() + " --discs 200");
  REQUIRE(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(4.0 / 3.0 * M_PI * 40 * 25 * 25 / 1000.0).epsilon(1e-3));

  write_mask(phantom::render({}), dir / "lv.mhd");
  const auto m = run(dir, "simpson --c2ch " + (dir / "lv.mhd").string() + " --c4ch " + (dir / "lv.mhd").string());
  REQUIRE(m.code == 0);
  CHECK(std::stod(m.out) > 0.0);

  std::ofstream(dir / "bad.csv") << "x,z\n1,2\nthree,4\n";
  CHECK(run(dir, "simpson --c2ch " + (dir / "bad.csv").string() + " --c4ch " + (dir / "bad.csv").string()).code == 2);
}

TEST_CASE("render subcommand") {
  const Fixture f("render");
  REQUIRE(run(f.dir, f.score_args() + " --out " + (f.dir / "r.json").string()).code == 0);
  const MethodReport report = parse_report(slurp(f.dir / "r.json"), ReportFormat::kJson);
  const auto md = run(f.dir, "render --in " + (f.dir / "r.json").string() + " --format markdown");
  REQUIRE(md.code == 0);
  CHECK(md.out == render_report(report, ReportFormat::kMarkdown));
  REQUIRE(run(f.dir, "render --in " + (f.dir / "r.json").string() + " --format csv --out " +
                         (f.dir / "r.csv").string())
              .code == 0);
  const auto back = run(f.dir, "render --in " + (f.dir / "r.csv").string() + " --format json");
  CHECK(back.out == slurp(f.dir / "r.json"));
  CHECK(run(f.dir, "render --in " + (f.dir / "r.json").string() + " --format pdf").code == 1);
  std::ofstream(f.dir / "junk.json") << "not json";
  CHECK(run(f.dir, "render --in " + (f.dir / "junk.json").string()).code == 2);
}
