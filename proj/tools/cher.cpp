// cher: command-line front end for the Cherednik algebra kernel.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cherednik/jobs.hpp"

using cherednik::Json;

namespace {

struct Inline {
  std::string job_file, op, group, expr, a, b, module, p, v, mode, filtration;
  std::vector<std::string> c, degrees;
  int m = 0, truncation = 0, window = 0, bound = 0, samples = 0, max_degree = 0, T = 0;
};

Json parse_json_arg(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw cherednik::InvalidInput(std::string("malformed ") + what + ": " + e.what());
  }
}

Json build_job(const std::string& command, const Inline& in) {
  Json job = Json::object();
  if (!in.job_file.empty()) {
    std::ifstream f(in.job_file);
    if (!f) throw cherednik::InvalidInput("cannot read job file " + in.job_file);
    std::stringstream ss;
    ss << f.rdbuf();
    job = parse_json_arg(ss.str(), "job file");
    if (job.contains("command") && job["command"] != command)
      throw cherednik::InvalidInput("job file is for '" + job["command"].get<std::string>() + "', not '" + command + "'");
  }
  job["command"] = command;
  if (!in.op.empty()) job["op"] = in.op;
  Json c;
  if (in.c.size() == 1) c = in.c.front();
  else if (!in.c.empty()) c = in.c;
  if (command == "group" && !in.group.empty()) job["group"] = in.group;
  if (command == "algebra" || command == "module" || (command == "params" && in.mode == "context")) {
    if (!in.group.empty()) job["context"]["group"] = in.group;
    if (!c.is_null()) job["context"]["c"] = c;
  } else if (!c.is_null()) {
    job["c"] = c;
  }
  if (!in.expr.empty()) job["expr"] = in.expr;
  if (!in.a.empty()) job["a"] = in.a;
  if (!in.b.empty()) job["b"] = in.b;
  if (!in.module.empty()) job["module"] = parse_json_arg(in.module, "module record");
  if (!in.p.empty()) job["p"] = in.p;
  if (!in.v.empty()) job["v"] = in.v;
  if (!in.mode.empty()) job["mode"] = in.mode;
  if (!in.filtration.empty()) job["filtration"] = in.filtration;
  if (!in.degrees.empty()) {
    job["degrees"] = Json::array();
    for (const auto& d : in.degrees) job["degrees"].push_back(std::stoi(d));
  }
  if (in.m) job["m"] = in.m;
  if (in.samples) job["samples"] = in.samples;
  if (in.max_degree) job["max_degree"] = in.max_degree;
  if (in.T) job["T"] = in.T;
  if (in.truncation) job["budgets"]["truncation"] = in.truncation;
  if (in.window) job["budgets"]["window"] = in.window;
  if (in.bound) job["budgets"]["bound"] = in.bound;
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in rational Cherednik algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  bool timing = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "Seed for randomized property checks");
  app.add_option("--jobs", jobs, "Worker threads for grid searches")->check(CLI::PositiveNumber);
  app.add_flag("--timing", timing, "Include wall-clock timing in the report");

  Inline in;
  const std::vector<std::pair<std::string, std::string>> subs = {
      {"group", "Group closure, reflections, parabolic classes, characters"},
      {"algebra", "Normal forms, products, symbols, structure maps, associativity"},
      {"module", "Hilbert data, GK dimension, holonomicity, singular vectors"},
      {"rank1", "Laurent modules over H_c(Z/m, C)"},
      {"params", "Regularity of parameters"}};
  for (const auto& [name, help] : subs) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--job", in.job_file, "JSON job file")->check(CLI::ExistingFile);
    sub->add_option("--op", in.op, "Operation");
    sub->add_option("--group", in.group, "Group family (cyclic:m, s3-reflection, minus-id:r, trivial:r)");
    sub->add_option("--c", in.c, "Parameter value(s)");
    sub->add_option("--expr", in.expr, "Element expression");
    sub->add_option("--a", in.a, "First operand");
    sub->add_option("--b", in.b, "Second operand");
    sub->add_option("--module", in.module, "Module record (JSON)");
    sub->add_option("--m", in.m, "Cyclic order");
    sub->add_option("--p", in.p, "Twist, a Laurent polynomial in x");
    sub->add_option("--v", in.v, "Laurent vector");
    sub->add_option("--mode", in.mode, "Regularity mode (degrees, probe, context)");
    sub->add_option("--degrees", in.degrees, "Degrees of W")->delimiter(',');
    sub->add_option("--filtration", in.filtration, "bernstein or geometric");
    sub->add_option("--samples", in.samples, "Random samples");
    sub->add_option("--max-degree", in.max_degree, "Degree bound for relation checks");
    sub->add_option("--ladder-bound", in.T, "Ladder search bound");
    sub->add_option("--truncation", in.truncation, "Module truncation degree");
    sub->add_option("--window", in.window, "Filtration window J");
    sub->add_option("--bound", in.bound, "Search bound");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : static_cast<int>(cherednik::ExitCode::invalid_input);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  cherednik::JobResult result;
  try {
    result = cherednik::run_job_checked(build_job(command, in), {seed, jobs, timing});
  } catch (const cherednik::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(cherednik::ExitCode::invalid_input);
  }
  if (format == "json") {
    std::cout << result.report.dump(2) << "\n";
  } else {
    std::cout << cherednik::render_text(result.report);
  }
  if (result.report.contains("error")) std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << "\n";
  if (result.exit_code == cherednik::ExitCode::internal_inconsistency && !result.report.contains("error"))
    std::cerr << "FALSIFICATION alarm raised\n";
  return static_cast<int>(result.exit_code);
}
