#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cartierlab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_invalid = 2;
inline constexpr int exit_resource = 3;
inline constexpr int report_schema = 1;

struct RunSettings {
  /// Used when the job does not set options.spair_cap.
  std::optional<std::size_t> default_spair_cap;
};

struct Outcome {
  int exit_code = exit_ok;
  nlohmann::json report;
};

/// Validates and executes one job. Never throws for job-level problems: they
/// come back as {"error": {"kind", "message"}} with exit code 2 or 3.
Outcome run_job(const nlohmann::json& job, const RunSettings& settings = {});

/// Canonical text of a report: sorted keys, two-space indent, trailing newline.
std::string render(const nlohmann::json& report);

/// The report without its timing fields; this is what goldens store.
nlohmann::json stable_part(const nlohmann::json& report);

/// Line diff in unified style with full context, empty when equal.
std::string unified_diff(const std::string& expected, const std::string& actual,
                         const std::string& name);

struct CorpusEntry {
  std::string name;
  bool passed = false;
  std::string message;
  std::string diff;
};

struct CorpusSummary {
  std::vector<CorpusEntry> entries;
  std::size_t failed() const;
};

/// Runs every NAME.job.json in `dir` and compares against NAME.expected.json.
/// With `update`, goldens are (re)written instead of compared.
CorpusSummary run_corpus(const std::filesystem::path& dir, unsigned workers, bool update,
                         const RunSettings& settings = {});

void print_summary(const CorpusSummary& summary, std::ostream& out);

}  // namespace cartierlab::cli
