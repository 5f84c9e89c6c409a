#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "cherednik/jobs.hpp"

using namespace cherednik;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Run {
  int status = -1;
  std::string out;
};

Run cher(const std::string& args) {
  const std::string out_path = "cher_test_stdout.txt";
  const std::string cmd = std::string("\"") + CHER_BINARY + "\" " + args + " > " + out_path + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

}  // namespace

TEST_SUITE("jobs") {
  TEST_CASE("elements survive a JSON round trip") {
    const auto ctx = context_from_json(Json{{"group", "cyclic:3"}, {"c", {"1/2", "-1/3"}}});
    for (const char* s : {"x1*y1", "y1^2*x1 - 3*g1", "g2*x1^3 + (1/2)*y1", "0"}) {
      const auto e = parse_expression(s, *ctx);
      const auto j = element_to_json(e);
      CHECK(element_from_json(*ctx, j) == e);
      CHECK(element_to_json(element_from_json(*ctx, j)) == j);
    }
  }

  TEST_CASE("normalization is idempotent") {
    const Json jobs[] = {
        {{"command", "params"}, {"degrees", {2, 3}}, {"c", "1/3"}},
        {{"command", "rank1"}, {"op", "cycle"}, {"m", 3}, {"c", "1/7"}, {"p", "x^-1"}, {"budgets", {{"window", 12}}}},
        {{"command", "algebra"}, {"context", {{"group", "s3-reflection"}, {"c", "1/2"}}}, {"expr", "x1*y2"}},
    };
    for (const auto& j : jobs) {
      const auto n = normalize_job(j);
      CHECK(normalize_job(n) == n);
      CHECK(n.at("schema") == schema_tag);
    }
    CHECK_THROWS_AS(normalize_job(Json{{"command", "nope"}}), InvalidInput);
    CHECK_THROWS_AS(normalize_job(Json{{"command", "rank1"}, {"op", "nope"}}), InvalidInput);
    CHECK_THROWS_AS(normalize_job(Json{{"command", "rank1"}, {"budgets", {{"window", 0}}}}), InvalidInput);
    CHECK_THROWS_AS(normalize_job(Json{{"command", "rank1"}, {"budgets", {{"time", 3}}}}), InvalidInput);
  }

  TEST_CASE("reports are deterministic") {
    const Json job = {{"command", "algebra"},
                      {"op", "associativity"},
                      {"context", {{"group", "cyclic:3"}, {"c", {"1/2", "2/5"}}}},
                      {"samples", 30}};
    const auto a = run_job(job, {7, 1, false}).dump(2);
    const auto b = run_job(job, {7, 1, false}).dump(2);
    CHECK(a == b);
    CHECK(run_job(job, {7, 1, true}).contains("timing_ms"));
    CHECK_FALSE(run_job(job, {7, 1, false}).contains("timing_ms"));
  }

  TEST_CASE("grid results do not depend on the thread count") {
    const Json job = {{"command", "rank1"},
                      {"op", "grid"},
                      {"m", 2},
                      {"c", "1/7"},
                      {"ps", {"0", "x^-1", "-2*x^-1", "x + 3*x^-1", "x^-3", "1/2*x^-1"}}};
    const auto a = run_job(job, {1, 1, false});
    const auto b = run_job(job, {1, 3, false});
    CHECK(a == b);
    CHECK(a["result"]["discrepancies"].empty());
  }

  TEST_CASE("command examples") {
    auto r = run_job(Json{{"command", "params"}, {"degrees", {2, 3}}, {"c", "1/3"}})["result"];
    CHECK(r["regular"] == false);
    CHECK(r["witness"]["m"] == "1");
    CHECK(r["witness"]["d"] == 3);

    r = run_job(Json{{"command", "rank1"}, {"op", "reducible"}, {"m", 3}, {"c", "1/7"}, {"p", "0"}})["result"];
    CHECK(r["reducible"] == true);
    CHECK(r["k"] == 0);

    r = run_job(Json{{"command", "module"},
                     {"op", "gk"},
                     {"context", {{"group", "cyclic:2"}, {"c", "1/3"}}},
                     {"module", {{"kind", "verma"}, {"character", 0}}}})["result"];
    CHECK(r["gk"]["gk"] == 1);
    CHECK(r["holonomic"] == true);
  }

  TEST_CASE("errors become reports with exit codes") {
    auto r = run_job_checked(Json{{"command", "algebra"}, {"context", {{"group", "cyclic:2"}}}, {"expr", "x1*("}});
    CHECK(r.exit_code == ExitCode::invalid_input);
    CHECK(r.report["error"]["kind"] == "invalid-input");
    r = run_job_checked(Json{{"command", "group"},
                             {"group", {{"cyclotomic_order", 6}, {"rank", 1}, {"generators", {{"z6"}}}, {"cap", 3}}}});
    CHECK(r.exit_code == ExitCode::budget_exceeded);
    CHECK(r.report["error"]["exit_code"] == 2);
    r = run_job_checked(Json{{"command", "rank1"}, {"op", "pushforward"}, {"m", 2}, {"c", "1/2"}, {"p", "0"}});
    CHECK(r.exit_code == ExitCode::invalid_input);
  }

  TEST_CASE("cher exit codes") {
    auto r = cher("params --degrees 2,3 --c 1/3");
    CHECK(r.status == 0);
    CHECK(Json::parse(r.out)["result"]["regular"] == false);
    r = cher("algebra --group cyclic:2 --c 1/3 --op normal-form --expr 'y1*x1'");
    CHECK(r.status == 0);
    CHECK(Json::parse(r.out)["result"]["expression"] == "y1*x1");
    CHECK(cher("algebra --group cyclic:2 --expr 'x1*('").status == 1);
    CHECK(cher("rank1 --op nope --m 2 --c 1/3 --p 0").status == 1);
    CHECK(cher("--format yaml group --group cyclic:2").status == 1);
    {
      std::ofstream f("cher_capped_job.json");
      f << R"({"command":"group","group":{"cyclotomic_order":6,"rank":1,"generators":[["z6"]],"cap":3}})";
    }
    CHECK(cher("group --job cher_capped_job.json").status == 2);
    std::remove("cher_capped_job.json");
    r = cher("rank1 --op pushforward --m 2 --c 1/3 --p x^-1 --window 12");
    CHECK(r.status == 0);
    CHECK(Json::parse(r.out)["result"]["alarm"].is_null());
  }

  TEST_CASE("text output") {
    const auto r = cher("--format text rank1 --op reducible --m 2 --c 1/3 --p 0");
    CHECK(r.status == 0);
    CHECK(r.out.find("reducible: true") != std::string::npos);
  }
}
