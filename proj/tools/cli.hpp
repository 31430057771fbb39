#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <padyn/json.hpp>

namespace padyn::cli {

/// One command invocation. `inputs` holds the command's series and scalars;
/// series may be written in the expression language understood by eval_series.
struct JobSpec {
    std::string command;
    std::optional<PrimeContext> ctx;
    json inputs = json::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_path;
};

struct JobResult {
    int exit_code = 0; // 0 verdict, 1 malformed input, 2 precondition or precision failure
    json report;
};

/// Builds a JobSpec from a JSON document:
///   {"command": ..., "ctx": {"p","N","K"}, "seed": ..., <inputs>...}
/// Fields of `base` that are already set win over the document.
JobSpec job_from_json(const json& doc, const JobSpec& base = {});

/// Series expressions:
///   "x" | {"binom": a} | {"coeffs": [...], "ring": ..., "ctx": ...}
///   {"add": [A, B]} | {"sub": [A, B]} | {"compose": [A, B]}
///   {"iterate": A, "n": k} | {"inverse": A} | {"reduce": A}
AnySeries eval_series(const json& expr, const PrimeContext& ctx);

/// Never throws: every failure becomes {"error": {"code", "message"}}.
JobResult run(const JobSpec& job);

/// Human-readable rendering; polygons get an ASCII plot.
std::string render_text(const std::string& command, const json& report);

} // namespace padyn::cli
