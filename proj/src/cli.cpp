#include "cartierlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <new>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "cartierlab/covers.hpp"
#include "cartierlab/frobenius.hpp"
#include "cartierlab/multoracle.hpp"
#include "cartierlab/testideal.hpp"

namespace cartierlab::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::invalid_argument, message);
}

struct CommandFields {
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, CommandFields>& command_table() {
  static const std::map<std::string, CommandFields> table = {
      {"tau", {{"p", "vars", "g", "t"}, {"relation", "options"}}},
      {"fpt", {{"p", "vars", "g"}, {"e_max", "denominator_bound", "options"}}},
      {"cartier", {{"p", "vars", "e", "h", "f"}, {}}},
      {"nu", {{"p", "vars", "g", "e"}, {}}},
      {"verify-transform", {{"p", "vars", "cover", "g", "t"}, {"options"}}},
      {"verify-multiplier-transform", {{"p", "vars", "cover", "g", "t"}, {"options"}}},
      {"trace-image", {{"p", "vars", "cover"}, {"relation", "options"}}},
      {"multiplier", {{"p", "vars", "g", "t"}, {}}},
      {"compare", {{"p", "vars", "g", "t"}, {"options"}}},
      {"corpus", {{"path"}, {"jobs"}}},
  };
  return table;
}

void check_keys(const json& object, const std::set<std::string>& required,
                const std::set<std::string>& optional, const std::string& where) {
  if (!object.is_object()) invalid(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!required.contains(key) && !optional.contains(key)) {
      invalid("unknown field '" + key + "' in " + where);
    }
  }
  for (const auto& key : required) {
    if (!object.contains(key)) invalid("missing field '" + key + "' in " + where);
  }
}

std::int64_t get_int(const json& object, const std::string& key, std::int64_t lo, std::int64_t hi) {
  const auto& v = object.at(key);
  if (!v.is_number_integer()) invalid("field '" + key + "' must be an integer");
  auto x = v.get<std::int64_t>();
  if (x < lo || x > hi) {
    invalid("field '" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
            "]");
  }
  return x;
}

std::string get_string(const json& object, const std::string& key) {
  const auto& v = object.at(key);
  if (!v.is_string()) invalid("field '" + key + "' must be a string");
  return v.get<std::string>();
}

RationalExponent get_rational(const json& object, const std::string& key) {
  const auto& v = object.at(key);
  if (v.is_number_integer()) {
    auto x = v.get<std::int64_t>();
    if (x < 0) invalid("field '" + key + "' must be nonnegative");
    return RationalExponent(x);
  }
  if (!v.is_string()) invalid("field '" + key + "' must be a string \"a/b\" or an integer");
  return RationalExponent::parse(v.get<std::string>());
}

RingPtr ring_of(const json& job) {
  auto p = get_int(job, "p", 2, (std::int64_t{1} << 31) - 1);
  const auto& vars = job.at("vars");
  if (!vars.is_array() || vars.empty()) invalid("field 'vars' must be a nonempty array");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) invalid("field 'vars' must contain strings");
    names.push_back(v.get<std::string>());
  }
  return make_ring(static_cast<std::uint64_t>(p), std::move(names));
}

Polynomial get_poly(const json& object, const std::string& key, const RingPtr& ring) {
  return parse_polynomial(get_string(object, key), ring);
}

AmbientRing ambient_of(const json& job, const RingPtr& ring) {
  if (job.contains("relation")) return AmbientRing::quotient(get_poly(job, "relation", ring));
  return AmbientRing::polynomial(ring);
}

TauOptions options_of(const json& job, const RingPtr& ring, const RunSettings& settings) {
  TauOptions o;
  if (settings.default_spair_cap) o.groebner.spair_cap = *settings.default_spair_cap;
  if (!job.contains("options")) return o;
  const auto& opts = job.at("options");
  check_keys(opts, {}, {"e_max", "window", "spair_cap", "scheme", "c", "N"}, "options");
  if (opts.contains("e_max")) {
    o.e_max = static_cast<unsigned>(get_int(opts, "e_max", 0, default_max_frobenius_iterations));
  }
  if (opts.contains("window")) o.window = static_cast<unsigned>(get_int(opts, "window", 1, 16));
  if (opts.contains("spair_cap")) {
    o.groebner.spair_cap = static_cast<std::size_t>(get_int(opts, "spair_cap", 1, 1'000'000'000));
  }
  if (opts.contains("scheme")) {
    auto s = get_string(opts, "scheme");
    if (s == "classical") {
      o.scheme = ExponentScheme::classical;
    } else if (s == "premultiplied") {
      o.scheme = ExponentScheme::premultiplied;
    } else {
      invalid("options.scheme must be \"classical\" or \"premultiplied\"");
    }
  }
  if (opts.contains("c")) o.c = get_poly(opts, "c", ring);
  if (opts.contains("N")) o.N = static_cast<unsigned>(get_int(opts, "N", 1, 64));
  return o;
}

KummerCover cover_of(const json& job, const AmbientRing& base) {
  const auto& c = job.at("cover");
  check_keys(c, {"n", "f"}, {"var", "assume_irreducible"}, "cover");
  CoverOptions options;
  if (c.contains("var")) options.variable = get_string(c, "var");
  if (c.contains("assume_irreducible")) {
    if (!c.at("assume_irreducible").is_boolean()) invalid("cover.assume_irreducible must be a boolean");
    options.assume_irreducible = c.at("assume_irreducible").get<bool>();
  }
  auto n = static_cast<unsigned>(get_int(c, "n", 2, 64));
  return KummerCover(base, n, get_poly(c, "f", base.ring()), options);
}

json ideal_json(const Ideal& ideal, const GroebnerOptions& gb) {
  return json{{"generators", ideal.generator_strings(gb)}, {"text", ideal.to_string(gb)}};
}

json fractional_json(const FractionalIdeal& f, const GroebnerOptions& gb) {
  return json{{"numerator", ideal_json(f.numerator(), gb)},
              {"denominator", emit(f.denominator())},
              {"exponent", f.exponent()},
              {"text", f.to_string(gb)}};
}

json tau_json(const TauResult& r, const TauOptions& o, bool quotient) {
  json counts = json::array();
  for (const auto& t : r.terms) counts.push_back(t.generators().size());
  std::string scheme =
      quotient || o.scheme == ExponentScheme::premultiplied ? "premultiplied" : "classical";
  return json{{"ideal", ideal_json(r.ideal, o.groebner)},
              {"stabilized_at_e", r.stabilized_at_e},
              {"term_counts", counts},
              {"scheme", scheme}};
}

json transform_json(const TransformReport& r, const GroebnerOptions& gb) {
  return json{{"equal", r.equal},
              {"lhs", r.lhs.to_string(gb)},
              {"rhs", r.rhs.to_string(gb)},
              {"lhs_detail", fractional_json(r.lhs, gb)},
              {"rhs_detail", fractional_json(r.rhs, gb)}};
}

json corpus_json(const CorpusSummary& s) {
  json entries = json::array();
  for (const auto& e : s.entries) {
    entries.push_back(json{{"name", e.name}, {"passed", e.passed}, {"message", e.message}});
  }
  return json{{"jobs", s.entries.size()}, {"failed", s.failed()}, {"entries", entries}};
}

json execute(const std::string& command, const json& job, const RunSettings& settings,
             int& exit_code) {
  if (command == "corpus") {
    unsigned workers = job.contains("jobs") ? static_cast<unsigned>(get_int(job, "jobs", 1, 256)) : 1;
    auto summary = run_corpus(get_string(job, "path"), workers, false, settings);
    if (summary.failed() > 0) exit_code = exit_mismatch;
    return corpus_json(summary);
  }
  auto ring = ring_of(job);
  auto ambient = ambient_of(job, ring);
  auto options = options_of(job, ring, settings);
  const auto& gb = options.groebner;

  if (command == "tau") {
    PrincipalPair pair(ambient, get_poly(job, "g", ring), get_rational(job, "t"));
    return tau_json(tau(pair, options), options, ambient.is_quotient());
  }
  if (command == "fpt") {
    unsigned e_max = job.contains("e_max") ? static_cast<unsigned>(get_int(job, "e_max", 1, 8)) : 2;
    std::uint64_t bound = job.contains("denominator_bound")
                              ? static_cast<std::uint64_t>(get_int(job, "denominator_bound", 0, 1000))
                              : 0;
    auto r = fpt_search(get_poly(job, "g", ring), e_max, bound, options);
    return json{{"lo", r.lo.to_string()}, {"hi", r.hi.to_string()}, {"nu", r.nu}};
  }
  if (command == "cartier") {
    auto e = static_cast<unsigned>(get_int(job, "e", 1, default_max_frobenius_iterations));
    CartierMap m(e, get_poly(job, "h", ring));
    return json{{"value", emit(m(get_poly(job, "f", ring)))}};
  }
  if (command == "nu") {
    auto e = static_cast<unsigned>(get_int(job, "e", 1, 8));
    return json{{"nu", nu_value(get_poly(job, "g", ring), e)}};
  }
  if (command == "verify-transform") {
    auto cover = cover_of(job, ambient);
    PrincipalPair pair(ambient, get_poly(job, "g", ring), get_rational(job, "t"));
    return transform_json(verify_tau_transform(cover, pair, options), gb);
  }
  if (command == "verify-multiplier-transform") {
    auto cover = cover_of(job, ambient);
    PrincipalPair pair(ambient, get_poly(job, "g", ring), get_rational(job, "t"));
    return transform_json(verify_multiplier_transform(cover, pair, gb), gb);
  }
  if (command == "trace-image") {
    auto cover = cover_of(job, ambient);
    auto image = trace_image(cover, gb);
    return json{{"image", fractional_json(image.ideal, gb)},
                {"phi_stable", image.phi_stable},
                {"tau_contained", verify_containment_tau_in_image(cover, options)}};
  }
  if (command == "multiplier") {
    auto data = newton_data(get_poly(job, "g", ring), get_rational(job, "t"));
    return json{{"ideal", ideal_json(howald_multiplier(ring, data), gb)}};
  }
  if (command == "compare") {
    PrincipalPair pair(ambient, get_poly(job, "g", ring), get_rational(job, "t"));
    auto r = compare_tau_multiplier(pair, options);
    return json{{"tau", ideal_json(r.tau, gb)},
                {"multiplier", ideal_json(r.multiplier, gb)},
                {"contained", r.contained},
                {"equal", r.equal}};
  }
  invalid("unknown command '" + command + "'");
}

json error_json(ErrorKind kind, const std::string& message) {
  return json{{"kind", std::string(to_string(kind))}, {"message", message}};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io_error, "cannot write " + path.string());
  out << text;
}

}  // namespace

Outcome run_job(const json& job, const RunSettings& settings) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  out.report = json{{"schema", report_schema}, {"job", job}, {"command", nullptr}};
  try {
    if (!job.is_object()) invalid("job must be a JSON object");
    if (!job.contains("command") || !job.at("command").is_string()) {
      invalid("job needs a string field 'command'");
    }
    auto command = job.at("command").get<std::string>();
    out.report["command"] = command;
    auto it = command_table().find(command);
    if (it == command_table().end()) invalid("unknown command '" + command + "'");
    auto required = it->second.required;
    auto optional = it->second.optional;
    optional.insert("command");
    check_keys(job, required, optional, "job");
    out.report["result"] = execute(command, job, settings, out.exit_code);
  } catch (const NotStabilizedError& e) {
    json err = error_json(e.kind(), e.what());
    json chain = json::array();
    for (const auto& s : e.chain()) chain.push_back(s.to_string());
    err["chain"] = chain;
    out.report["error"] = err;
    out.exit_code = exit_resource;
  } catch (const Error& e) {
    out.report["error"] = error_json(e.kind(), e.what());
    bool resource = e.kind() == ErrorKind::resource_cap || e.kind() == ErrorKind::overflow ||
                    e.kind() == ErrorKind::not_stabilized;
    out.exit_code = resource ? exit_resource : exit_invalid;
  } catch (const std::bad_alloc&) {
    out.report["error"] = error_json(ErrorKind::resource_cap, "out of memory");
    out.exit_code = exit_resource;
  } catch (const std::exception& e) {
    out.report["error"] = error_json(ErrorKind::invalid_argument, e.what());
    out.exit_code = exit_invalid;
  }
  auto elapsed = std::chrono::steady_clock::now() - start;
  out.report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return out;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

json stable_part(const json& report) {
  json copy = report;
  if (copy.is_object()) copy.erase("wall_time_ms");
  return copy;
}

std::string unified_diff(const std::string& expected, const std::string& actual,
                         const std::string& name) {
  if (expected == actual) return {};
  auto a = split_lines(expected);
  auto b = split_lines(actual);
  const std::size_t n = a.size(), m = b.size();
  // lcs[i][j] = LCS length of a[i..] and b[j..].
  std::vector<std::vector<std::uint32_t>> lcs(n + 1, std::vector<std::uint32_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::ostringstream out;
  out << "--- expected/" << name << "\n+++ actual/" << name << "\n";
  out << "@@ -1," << n << " +1," << m << " @@\n";
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      out << ' ' << a[i++] << '\n';
      ++j;
    } else if (i < n && (j == m || lcs[i + 1][j] >= lcs[i][j + 1])) {
      out << '-' << a[i++] << '\n';
    } else {
      out << '+' << b[j++] << '\n';
    }
  }
  if (expected.size() && expected.back() != '\n') out << "\\ expected has no trailing newline\n";
  return out.str();
}

std::size_t CorpusSummary::failed() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const CorpusEntry& e) { return !e.passed; }));
}

CorpusSummary run_corpus(const std::filesystem::path& dir, unsigned workers, bool update,
                         const RunSettings& settings) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::io_error, "not a directory: " + dir.string());
  const std::string suffix = ".job.json";
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto file = entry.path().filename().string();
    if (entry.is_regular_file() && file.size() > suffix.size() && file.ends_with(suffix)) {
      names.push_back(file.substr(0, file.size() - suffix.size()));
    }
  }
  std::sort(names.begin(), names.end());

  CorpusSummary summary;
  summary.entries.resize(names.size());
  auto process = [&](std::size_t k) {
    CorpusEntry& entry = summary.entries[k];
    entry.name = names[k];
    try {
      json job = json::parse(read_file(dir / (names[k] + suffix)));
      if (job.is_object() && job.value("command", "") == "corpus") {
        throw Error(ErrorKind::invalid_argument, "corpus jobs cannot be nested");
      }
      std::string actual = render(stable_part(run_job(job, settings).report));
      auto golden = dir / (names[k] + ".expected.json");
      if (update) {
        write_file(golden, actual);
        entry.passed = true;
        entry.message = "updated";
        return;
      }
      if (!fs::exists(golden)) {
        entry.message = "missing golden " + golden.filename().string();
        return;
      }
      std::string expected = read_file(golden);
      entry.diff = unified_diff(expected, actual, names[k] + ".expected.json");
      entry.passed = entry.diff.empty();
      entry.message = entry.passed ? "ok" : "output differs from golden";
    } catch (const std::exception& e) {
      entry.message = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  unsigned count = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(names.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < names.size(); k = next++) process(k);
      });
    }
  }
  return summary;
}

void print_summary(const CorpusSummary& summary, std::ostream& out) {
  for (const auto& e : summary.entries) {
    out << (e.passed ? "PASS " : "FAIL ") << e.name;
    if (!e.passed) out << ": " << e.message;
    out << '\n' << e.diff;
  }
  out << summary.entries.size() << " jobs, " << summary.failed() << " failed\n";
}

}  // namespace cartierlab::cli
