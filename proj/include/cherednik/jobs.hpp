#pragma once

// JSON job specifications and reports for the `cher` front end.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cherednik/errors.hpp"
#include "cherednik/modules.hpp"
#include "cherednik/params.hpp"
#include "cherednik/pbw.hpp"
#include "cherednik/rank1.hpp"

namespace cherednik {

using Json = nlohmann::ordered_json;

inline constexpr const char* schema_tag = "cherednik-kernel/1";

struct JobOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;     // worker threads for grid operations
  bool timing = false;   // adds wall-clock timing (breaks byte-identical output)
};

struct JobResult {
  Json report;
  ExitCode exit_code = ExitCode::ok;
};

// Serialization helpers.
Json scalar_to_json(const Cyclo& a);
Json element_to_json(const PBWElement& e);
PBWElement element_from_json(const AlgebraContext& ctx, const Json& records);
ReflectionGroup group_from_json(const Json& spec);
Parameter parameter_from_json(const ReflectionGroup& group, const Json& c);
// {"group": name or GroupSpec object, "c": scalar, list by class, or {class: scalar}}.
ContextPtr context_from_json(const Json& context);
// Module records: verma, regular, quotient, tensor, sum.
ModulePtr module_from_json(const ContextPtr& ctx, const Json& spec, int truncation);

// Fills defaults and validates; normalize_job(normalize_job(j)) == normalize_job(j).
Json normalize_job(const Json& job);
// Runs a job; errors propagate as exceptions.
Json run_job(const Json& job, const JobOptions& options = {});
// Runs a job and folds errors and alarms into the report and exit code.
JobResult run_job_checked(const Json& job, const JobOptions& options = {});

std::string render_text(const Json& report);

}  // namespace cherednik
