// Copyright 2026 The hazkw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"
#include "support.hpp"

namespace hazkw {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::dispatch(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return testing::fixture(name); }

TEST(Cli, SynthesisPipesIntoHazardCheck) {
  for (const char* variant : {"size", "depth", "alt2", "alt2-huffman"}) {
    const CliRun synth = run({"synth-mux", "--n", "2", "--variant", variant});
    ASSERT_EQ(synth.code, cli::kExitOk) << synth.err;
    const CliRun check = run({"hazards", "--truth", "mux2", "--stdin"}, synth.out);
    EXPECT_EQ(check.code, cli::kExitOk) << variant << check.err;
    EXPECT_EQ(check.out, "");
  }
}

TEST(Cli, KraftThreshold) {
  const CliRun bad = run({"kraft", "--n", "5", "--d", "11"});
  EXPECT_EQ(bad.code, cli::kExitFailed);
  EXPECT_EQ(bad.out, "infeasible\n");
  const CliRun good = run({"kraft", "--n", "5", "--d", "12"});
  EXPECT_EQ(good.code, cli::kExitOk);
  EXPECT_EQ(good.out, "feasible\n");
}

TEST(Cli, EvalPlainMux) {
  const CliRun r = run({"eval", "--formula", fixture("mux1_plain.sexp"), "--input", "u11"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "u\n");
  const CliRun j = run({"eval", "--expr", "(or v1 v2)", "--input", "u1", "--json"});
  EXPECT_EQ(nlohmann::json::parse(j.out)["value"], "1");
}

TEST(Cli, HazardReport) {
  const CliRun r = run({"hazards", "--formula", fixture("mux1_plain.sexp")});
  EXPECT_EQ(r.code, cli::kExitFailed);
  EXPECT_EQ(r.out, "u11 formula=u extension=1\n");
  const CliRun c = run({"hazards", "--formula", fixture("mux1_plain.sexp"), "--certify"});
  EXPECT_EQ(c.out, r.out);
  const CliRun clean = run({"hazards", "--formula", fixture("mux1_consensus.sexp"), "--truth", "mux1"});
  EXPECT_EQ(clean.code, cli::kExitOk);
  const CliRun wrong = run({"hazards", "--expr", "(and s x0)"});
  EXPECT_EQ(wrong.code, cli::kExitFailed);
  EXPECT_EQ(wrong.out.rfind("functional error at ", 0), 0u);
  const std::vector<std::string> mux_like = {
      "hazards", "--expr", "(or (and v1 v2) (and (not v1) v3))", "--truth", "0xca"};
  const CliRun full = run(mux_like);
  EXPECT_EQ(full.code, cli::kExitFailed) << full.err;
  EXPECT_EQ(full.out, "u11 formula=u extension=1\n");
  auto bounded_args = mux_like;
  bounded_args.insert(bounded_args.end(), {"--max-u", "0"});
  EXPECT_EQ(run(bounded_args).code, cli::kExitOk);
}

TEST(Cli, CertifyModeForLargeMux) {
  const CliRun synth = run({"synth-mux", "--n", "4", "--variant", "depth"});
  const CliRun check = run({"hazards", "--truth", "mux4", "--stdin", "--json"}, synth.out);
  EXPECT_EQ(check.code, cli::kExitOk) << check.err;
  const auto j = nlohmann::json::parse(check.out);
  EXPECT_EQ(j["mode"], "certify");
  EXPECT_EQ(j["hazard_free"], true);
}

TEST(Cli, Primes) {
  const CliRun r = run({"primes", "--truth", "mux1"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(r.out,
            "# prime implicants: 3\nu11\n01u\n1u1\n"
            "# prime implicates: 3\nu00\n00u\n1u0\n");
  const CliRun f = run({"primes", "--truth", fixture("mux1.truth"), "--json"});
  EXPECT_EQ(nlohmann::json::parse(f.out)["implicates"].size(), 3u);
}

TEST(Cli, MatrixAndPartition) {
  const CliRun m = run({"kw-matrix", "--truth", "mux1", "--json"});
  ASSERT_EQ(m.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(m.out)["rows"].size(), 3u);

  const CliRun p = run({"verify-partition", "--truth", "mux1", "--protocol",
                     fixture("mux1_five_rect_protocol.json")});
  EXPECT_EQ(p.code, cli::kExitOk) << p.err;
  EXPECT_EQ(p.out, "valid 5\n");
  const CliRun rects = run({"verify-partition", "--truth", "mux1", "--rectangles",
                         fixture("mux1_five_rect_rectangles.json")});
  EXPECT_EQ(rects.out, "valid 5\n");
  const CliRun formula = run({"verify-partition", "--truth", "mux1", "--formula",
                           fixture("mux1_consensus.sexp")});
  EXPECT_EQ(formula.out, "valid 6\n");
  const CliRun stuck = run({"verify-partition", "--truth", "mux1", "--formula",
                         fixture("mux1_plain.sexp")});
  EXPECT_EQ(stuck.code, cli::kExitFailed);
}

TEST(Cli, Play) {
  const CliRun r = run({"play", "--truth", "mux1", "--protocol", fixture("mux1_five_rect_protocol.json"),
                     "--alpha", "1u1", "--beta", "00u"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "s\n");
  const CliRun f = run({"play", "--truth", "mux1", "--formula", fixture("mux1_optimal.sexp"),
                     "--alpha", "111", "--beta", "000", "--json"});
  EXPECT_EQ(f.code, cli::kExitOk) << f.err;
  EXPECT_EQ(nlohmann::json::parse(f.out)["valid"], true);
}

TEST(Cli, BoundsCommands) {
  EXPECT_EQ(run({"rank", "--subcube", "3"}).out, "27\n");
  EXPECT_EQ(run({"rank", "--limited"}).out, "16\n");
  EXPECT_EQ(run({"lower-bound", "--n", "3"}).out, "53\n");
}

TEST(Cli, ReportTable) {
  const CliRun r = run({"report", "--n", "2", "--json"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["consistent"], true);
  EXPECT_EQ(j["size_optimal"]["size"], 17);
  EXPECT_EQ(j["lower_bound"]["monorect"], 17);
  EXPECT_EQ(j["depth_optimal"]["depth"], 5);
  const CliRun text = run({"report", "--n", "1"});
  EXPECT_EQ(text.code, cli::kExitOk);
  EXPECT_NE(text.out.find("all checks: yes"), std::string::npos);
}

TEST(Cli, DerivativeAndUniversal) {
  const CliRun d = run({"derivative", "--n", "1", "--point", "101"});
  EXPECT_EQ(d.code, cli::kExitOk) << d.err;
  EXPECT_EQ(d.out, "(or x1 s)\n");
  EXPECT_EQ(run({"derivative", "--n", "1", "--point", "1011"}).code, cli::kExitUsage);
  const CliRun u = run({"synth-universal", "--truth", "maj3", "--json"});
  EXPECT_EQ(u.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(u.out)["certified"], true);
}

TEST(Cli, Transforms) {
  const CliRun synth = run({"synth-mux", "--n", "2"});
  const CliRun dr = run({"depth-reduce", "--stdin", "--truth", "mux2", "--json"}, synth.out);
  EXPECT_EQ(dr.code, cli::kExitOk) << dr.err;
  const auto j = nlohmann::json::parse(dr.out);
  EXPECT_EQ(j["hazard_free_output"], true);
  EXPECT_EQ(j["input"]["size"], 17);

  const CliRun kb = run({"kbit", "--k", "1", "--formula", fixture("mux1_plain.sexp"), "--stats"});
  EXPECT_EQ(kb.code, cli::kExitOk) << kb.err;
  EXPECT_EQ(kb.out, "size 4 -> 29, depth 2 -> 6\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--input", "u11"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--expr", "(and s", "--input", "u11"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--expr", "(and s x0)", "--input", "u1"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--expr", "(and s x0)", "--input", "u1z"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"hazards", "--expr", "(and v1 v2)"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"primes", "--truth", "nonsense"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"synth-mux", "--n", "2", "--variant", "tiny"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"rank", "--subcube", "2", "--limited"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"synth-mux", "--n", "3", "--variant", "alt2"},
        std::vector<std::string>{"kw-matrix", "--truth", "mux2"},
        std::vector<std::string>{"report", "--n", "3", "--json"}}) {
    EXPECT_EQ(run(args).out, run(args).out);
  }
}

}  // namespace
}  // namespace hazkw
