#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cartierlab/cli.hpp"

namespace {

using json = nlohmann::json;
namespace cli = cartierlab::cli;

struct InlineFlags {
  std::optional<std::int64_t> p;
  std::vector<std::string> vars;
  std::optional<std::string> relation, g, t, h, f;
  std::optional<std::int64_t> e;
  std::optional<std::int64_t> cover_n;
  std::optional<std::string> cover_f, cover_var;
  std::optional<std::int64_t> e_max, window, spair_cap, N, denominator_bound;
  std::optional<std::string> scheme, c;
};

void add_inline_flags(CLI::App* sub, InlineFlags& fl) {
  sub->set_help_flag("--help", "Print this help message and exit");
  sub->add_option("-p,--prime", fl.p, "Characteristic");
  sub->add_option("--vars", fl.vars, "Variable names")->delimiter(',');
  sub->add_option("--relation", fl.relation, "Hypersurface relation w");
  sub->add_option("--g", fl.g, "Polynomial g");
  sub->add_option("--t", fl.t, "Exponent t as a or a/b");
  sub->add_option("--e", fl.e, "Frobenius iteration count");
  sub->add_option("--h", fl.h, "Premultiplier h");
  sub->add_option("--f", fl.f, "Input polynomial f");
  sub->add_option("--cover-n", fl.cover_n, "Kummer cover degree");
  sub->add_option("--cover-f", fl.cover_f, "Kummer branch element");
  sub->add_option("--cover-var", fl.cover_var, "Kummer cover variable");
  sub->add_option("--e-max", fl.e_max, "Largest e tried");
  sub->add_option("--window", fl.window, "Stability window");
  sub->add_option("--spair-cap", fl.spair_cap, "S-pair cap for Groebner bases");
  sub->add_option("--scheme", fl.scheme, "classical or premultiplied");
  sub->add_option("--c", fl.c, "Premultiplier base c");
  sub->add_option("--N", fl.N, "Power of c");
  sub->add_option("--denominator-bound", fl.denominator_bound, "fpt candidate denominators");
}

json job_from_flags(const std::string& command, const InlineFlags& fl) {
  json job{{"command", command}};
  if (fl.p) job["p"] = *fl.p;
  if (!fl.vars.empty()) job["vars"] = fl.vars;
  if (fl.relation) job["relation"] = *fl.relation;
  if (fl.g) job["g"] = *fl.g;
  if (fl.t) job["t"] = *fl.t;
  if (fl.e) job["e"] = *fl.e;
  if (fl.h) job["h"] = *fl.h;
  if (fl.f) job["f"] = *fl.f;
  if (fl.cover_n || fl.cover_f || fl.cover_var) {
    json cover = json::object();
    if (fl.cover_n) cover["n"] = *fl.cover_n;
    if (fl.cover_f) cover["f"] = *fl.cover_f;
    if (fl.cover_var) cover["var"] = *fl.cover_var;
    job["cover"] = cover;
  }
  // fpt takes e_max at top level; everything else reads it from options.
  if (command == "fpt" && fl.e_max) job["e_max"] = *fl.e_max;
  if (fl.denominator_bound) job["denominator_bound"] = *fl.denominator_bound;
  json options = json::object();
  if (fl.e_max && command != "fpt") options["e_max"] = *fl.e_max;
  if (fl.window) options["window"] = *fl.window;
  if (fl.spair_cap) options["spair_cap"] = *fl.spair_cap;
  if (fl.scheme) options["scheme"] = *fl.scheme;
  if (fl.c) options["c"] = *fl.c;
  if (fl.N) options["N"] = *fl.N;
  if (!options.empty()) job["options"] = options;
  return job;
}

std::optional<std::size_t> spair_cap_from_env() {
  const char* raw = std::getenv("CARTIERLAB_SPAIR_CAP");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    auto v = std::stoull(raw, &used);
    if (used == std::string(raw).size() && v > 0) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  std::cerr << "cartierlab: ignoring invalid CARTIERLAB_SPAIR_CAP\n";
  return std::nullopt;
}

int emit_outcome(const cli::Outcome& outcome) {
  std::cout << cli::render(outcome.report);
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test ideals of principal pairs over F_p"};
  app.require_subcommand(0, 1);

  std::string job_file;
  app.add_option("--job", job_file, "Run a JSON job file ('-' for stdin)");

  const std::vector<std::string> commands = {
      "tau",     "fpt",        "cartier",    "nu",      "verify-transform",
      "verify-multiplier-transform", "trace-image", "multiplier", "compare"};
  InlineFlags flags;
  std::vector<CLI::App*> subs;
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " command");
    add_inline_flags(sub, flags);
    subs.push_back(sub);
  }

  std::string corpus_dir;
  unsigned workers = 1;
  bool update = false;
  auto* corpus = app.add_subcommand("corpus", "Run a directory of jobs against golden reports");
  corpus->add_option("dir", corpus_dir, "Corpus directory")->required();
  corpus->add_option("--jobs", workers, "Worker threads")->check(CLI::Range(1u, 256u));
  corpus->add_flag("--update", update, "Rewrite golden reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_invalid;
  }

  cli::RunSettings settings;
  settings.default_spair_cap = spair_cap_from_env();

  if (corpus->parsed()) {
    try {
      auto summary = cli::run_corpus(corpus_dir, workers, update, settings);
      cli::print_summary(summary, std::cout);
      return summary.failed() == 0 ? cli::exit_ok : cli::exit_mismatch;
    } catch (const std::exception& e) {
      std::cerr << "cartierlab: " << e.what() << '\n';
      return cli::exit_invalid;
    }
  }

  if (!job_file.empty()) {
    json job;
    try {
      std::stringstream text;
      if (job_file == "-") {
        text << std::cin.rdbuf();
      } else {
        std::ifstream in(job_file);
        if (!in) throw std::runtime_error("cannot read " + job_file);
        text << in.rdbuf();
      }
      job = json::parse(text.str());
    } catch (const std::exception& e) {
      json report{{"schema", cli::report_schema},
                  {"error", {{"kind", "io_error"}, {"message", e.what()}}}};
      std::cout << cli::render(report);
      return cli::exit_invalid;
    }
    return emit_outcome(cli::run_job(job, settings));
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) return emit_outcome(cli::run_job(job_from_flags(commands[i], flags), settings));
  }
  std::cout << app.help();
  return cli::exit_invalid;
}
