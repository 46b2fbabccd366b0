#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "loopalg/loopalg.hpp"

namespace fs = std::filesystem;
using namespace loopalg;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kTooLarge = 2, kMismatch = 3, kInternal = 4 };

// C(m, m/2) must fit in 64 bits.
constexpr int kMaxBoundsM = 60;

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::TooLarge: return kTooLarge;
    case ErrorKind::OracleMismatch: return kMismatch;
    case ErrorKind::InternalAssertion:
    case ErrorKind::NegativeExponent: return kInternal;
    default: return kInvalid;
  }
}

struct Options {
  std::string field = "q";
  RunConfig config;
  std::string out;
  std::string format = "json";
  bool timing = false;

  // per-command inputs
  std::string input;
  std::string g_file, x_file;
  std::vector<long long> spheres;
  int rank = -1;
  std::optional<int> m;
  std::string batch_command;
};

// Human summary: one "path: value" line per scalar, arrays of scalars inline.
void render_text(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

std::string serialise(const Json& report, const std::string& format) {
  if (format == "text") {
    std::ostringstream os;
    render_text(report, "", os);
    return os.str();
  }
  return report.dump(2) + "\n";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + path);
  out << text;
}

struct Outcome {
  Json report;
  int code = kOk;
};

// Runs one command on one input. Errors become a report with an "error" field.
Outcome run_command(const std::string& command, const std::string& input, const Options& o, const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (command == "fan") {
      const Fan f = parse_fan(parse_json_text(read_file(input), input), c.max_vertices);
      out.report = cmd_fan(f, c);
    } else if (command == "bounds" && input.empty()) {
      if (!o.m) throw Error(ErrorKind::InvalidInput, "bounds needs --m or a complex");
      if (*o.m > kMaxBoundsM) throw Error(ErrorKind::TooLarge, "bounds are computed for m <= " + std::to_string(kMaxBoundsM));
      out.report = cmd_bounds(*o.m, std::nullopt, c);
    } else {
      const SimplicialComplex k = load_complex(input, c.max_vertices);
      if (command == "bb") {
        out.report = cmd_bb(k, c);
      } else if (command == "series") {
        out.report = cmd_series(k, c);
      } else if (command == "decompose") {
        out.report = cmd_decompose(k, c);
      } else if (command == "oracle") {
        auto [report, ok] = cmd_oracle(k, c);
        out.report = std::move(report);
        if (!ok) out.code = kMismatch;
      } else if (command == "pp") {
        const auto g = series_list_from_json(parse_json_text(read_file(o.g_file), o.g_file), c.trunc);
        const auto x = series_list_from_json(parse_json_text(read_file(o.x_file), o.x_file), c.trunc);
        std::optional<SphereCounts> sc;
        if (!o.spheres.empty()) sc = SphereCounts{o.spheres[0], o.spheres[1], o.spheres[2]};
        out.report = cmd_pp(k, g, x, sc, c);
      } else if (command == "quotient") {
        out.report = cmd_quotient(k, o.rank, c);
      } else if (command == "bounds") {
        out.report = cmd_bounds(k.vertex_count(), k, c);
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown command '" + command + "'");
      }
    }
  } catch (const ReportedError& e) {
    out.report = e.report();
    out.report["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    out.code = exit_code(e.kind());
  } catch (const Error& e) {
    out.report = report_header(command, c);
    out.report["error"] = Json{{"kind", to_string(e.kind())}, {"message", e.what()}};
    out.code = exit_code(e.kind());
  } catch (const std::exception& e) {
    out.report = report_header(command, c);
    out.report["error"] = Json{{"kind", "InternalAssertion"}, {"message", e.what()}};
    out.code = kInternal;
  }
  if (o.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out.report["timing_ms"] = ms;
  }
  return out;
}

int run_batch(const Options& o, const RunConfig& c) {
  static const std::vector<std::string> allowed{"bb", "series", "decompose", "oracle", "fan", "quotient", "bounds"};
  if (std::find(allowed.begin(), allowed.end(), o.batch_command) == allowed.end()) {
    std::cerr << "loopalg: batch does not support '" << o.batch_command << "'\n";
    return kInvalid;
  }
  if (o.out.empty() || o.out == "-") {
    std::cerr << "loopalg: batch needs --out <directory>\n";
    return kInvalid;
  }
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(o.input)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && !name.empty() && name[0] != '.') inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  fs::create_directories(o.out);

  // Parallel across inputs; each command runs single-threaded.
  RunConfig inner = c;
  inner.jobs = 1;
  const std::string ext = o.format == "text" ? ".txt" : ".json";
  const auto outcomes = parallel_map(inputs.size(), c.jobs, [&](std::size_t i) {
    Outcome r = run_command(o.batch_command, inputs[i].string(), o, inner);
    r.report["input_file"] = inputs[i].filename().string();
    emit(serialise(r.report, o.format), (fs::path(o.out) / (inputs[i].filename().string() + ext)).string());
    return r;
  });

  Json rows = Json::array();
  int worst = kOk;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Outcome& r = outcomes[i];
    Json row{{"file", inputs[i].filename().string()}, {"report", inputs[i].filename().string() + ext},
             {"exit_code", r.code}, {"status", r.code == kOk ? "ok" : "failed"}};
    if (r.report.contains("error")) row["error"] = r.report["error"]["kind"];
    rows.push_back(std::move(row));
    worst = std::max(worst, r.code);
  }
  Json index = report_header("batch", c);
  index["batch_command"] = o.batch_command;
  index["count"] = inputs.size();
  index["rows"] = std::move(rows);
  emit(index.dump(2) + "\n", (fs::path(o.out) / "index.json").string());
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Loop homology and loops-on-spheres exponents of moment-angle complexes"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--field", o.field, "coefficient field: q or fp:<p>")->envname("LOOPALG_FIELD")->capture_default_str();
  app.add_option("--trunc", o.config.trunc, "series truncation degree")->envname("LOOPALG_TRUNC")->capture_default_str();
  app.add_option("--jobs", o.config.jobs, "worker threads")->envname("LOOPALG_JOBS")->capture_default_str();
  app.add_option("--max-vertices", o.config.max_vertices, "vertex cap")->envname("LOOPALG_MAX_VERTICES")->capture_default_str();
  app.add_option("--max-mf", o.config.max_mf, "missing-face cap")->envname("LOOPALG_MAX_MF")->capture_default_str();
  app.add_option("--oracle-cap", o.config.oracle_cap, "largest |J| sent to the bar oracle")
      ->envname("LOOPALG_ORACLE_CAP")
      ->capture_default_str();
  app.add_option("--out", o.out, "output file (directory for batch); stdout by default")->envname("LOOPALG_OUT");
  app.add_option("--format", o.format, "json or text")
      ->envname("LOOPALG_FORMAT")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_flag("--timing", o.timing, "add timing_ms to reports (breaks byte-identical output)")->envname("LOOPALG_TIMING");

  auto complex_cmd = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("complex", o.input, "complex file (JSON or facet list)")->required()->check(CLI::ExistingFile);
    return sub;
  };
  complex_cmd("bb", "Backelin-Berglund polynomials of every full subcomplex");
  complex_cmd("series", "loop homology series for Z_K, DJ(K) and R_K");
  complex_cmd("decompose", "exponents D_n and the primes to invert");
  complex_cmd("oracle", "cross-check the table against the bar construction");
  CLI::App* pp = complex_cmd("pp", "loop homology series of a general polyhedral product");
  pp->add_option("--g", o.g_file, "JSON array of fibre series, one per vertex")->required()->check(CLI::ExistingFile);
  pp->add_option("--x", o.x_file, "JSON array of loop-space series, one per vertex")->required()->check(CLI::ExistingFile);
  pp->add_option("--spheres", o.spheres, "sphere counts A B C (S^1, S^3, S^7 factors)")->expected(3);
  CLI::App* fan = app.add_subcommand("fan", "toric orbifold from a rational simplicial fan");
  fan->add_option("fan", o.input, "fan JSON")->required()->check(CLI::ExistingFile);
  CLI::App* quotient = complex_cmd("quotient", "partial quotient Z_K/T^r");
  quotient->add_option("--rank", o.rank, "rank r of the freely acting torus")->required();
  CLI::App* bounds = app.add_subcommand("bounds", "prime bounds for m vertices or a given complex");
  auto* m_opt = bounds->add_option("--m", o.m, "vertex count");
  bounds->add_option("complex", o.input, "complex file")->check(CLI::ExistingFile)->excludes(m_opt);
  CLI::App* batch = app.add_subcommand("batch", "run a command over every file in a directory");
  batch->add_option("dir", o.input, "input directory")->required()->check(CLI::ExistingDirectory);
  batch->add_option("--command", o.batch_command, "command to run")->required();
  batch->add_option("--rank", o.rank, "rank for quotient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    o.config.field = parse_field(o.field);
    o.config.check();
  } catch (const Error& e) {
    std::cerr << "loopalg: " << e.what() << "\n";
    return exit_code(e.kind());
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "batch") return run_batch(o, o.config);
    const Outcome r = run_command(command, o.input, o, o.config);
    emit(serialise(r.report, o.format), o.out);
    if (r.report.contains("error")) std::cerr << "loopalg: " << r.report["error"]["message"].get<std::string>() << "\n";
    return r.code;
  } catch (const Error& e) {
    std::cerr << "loopalg: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "loopalg: " << e.what() << "\n";
    return kInternal;
  }
}
