#include "dmn/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmn/correctness.hpp"
#include "dmn/errors.hpp"
#include "dmn/semantics.hpp"
#include "dmn/synth.hpp"

namespace dmn {

using json = nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i != 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string describe(const Error& e) {
  std::string out = e.what();
  std::vector<std::string> where;
  if (!e.rule_id().empty()) where.push_back("rule " + e.rule_id());
  if (!e.column().empty()) where.push_back("column " + e.column());
  if (!where.empty()) out += " (" + join(where, ", ") + ")";
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("cannot write " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& path, const std::string& format, const std::string& only, std::ostream& out) {
  const DecisionTable table = load_table_file(path);
  const CheckScope scope = only == "overlap" ? CheckScope::Overlap
                           : only == "missing" ? CheckScope::Missing
                                               : CheckScope::All;
  const CorrectnessReport rep = check_correct(table, scope);

  if (format == "structured") {
    json diags = json::array();
    for (const auto& d : rep.diagnostics) {
      diags.push_back({{"severity", std::string(severity_name(d.severity))},
                       {"code", std::string(code_name(d.code))},
                       {"rules", d.rules},
                       {"columns", d.columns},
                       {"message", d.message},
                       {"detail", d.detail}});
    }
    json doc = {{"table", table.name},
                {"hitPolicy", std::string(1, hit_policy_letter(table.hit_policy))},
                {"completeness",
                 {{"declared", std::string(1, completeness_letter(rep.completeness.declared))},
                  {"actual", scope == CheckScope::Overlap ? json(nullptr) : json(rep.completeness.actual)}}},
                {"correct", rep.correct},
                {"diagnostics", diags}};
    out << doc.dump(2) << "\n";
  } else {
    std::size_t errors = 0;
    std::size_t warnings = 0;
    for (const auto& d : rep.diagnostics) {
      (d.severity == Severity::Error ? errors : warnings) += 1;
      out << severity_name(d.severity) << " " << code_name(d.code);
      if (!d.rules.empty()) out << " [" << join(d.rules, ", ") << "]";
      out << ": " << d.message << "\n";
      if (!d.detail.empty()) out << "    " << join(d.columns, " | ") << "\n    " << join(d.detail, " | ") << "\n";
    }
    if (rep.correct && errors + warnings == 0) {
      out << "correct\n";
    } else {
      out << (rep.correct ? "correct" : "incorrect") << " (" << errors << " error" << (errors == 1 ? "" : "s")
          << ", " << warnings << " warning" << (warnings == 1 ? "" : "s") << ")\n";
    }
  }
  return rep.correct ? kExitOk : kExitFinding;
}

int cmd_eval(const std::string& path, const std::string& input, std::ostream& out) {
  const DecisionTable table = load_table_file(path);
  const EvalResult res = evaluate(table, make_input(table, parse_assignments(input)));
  switch (res.outcome) {
    case EvalResult::Outcome::Matched: {
      std::vector<std::string> cols;
      for (std::size_t j = 0; j < table.outputs.size(); ++j) {
        cols.push_back(table.outputs[j].name + "=" + render_value(res.output.values[j]));
      }
      out << "Matched rule " << table.rules[res.fired].id << ": " << join(cols, ", ") << "\n";
      return kExitOk;
    }
    case EvalResult::Outcome::NoMatch:
      out << "No rule matched\n";
      return kExitOk;
    case EvalResult::Outcome::PolicyViolation: {
      std::vector<std::string> ids;
      for (std::size_t r : res.violating) ids.push_back(table.rules[r].id);
      out << "Hit policy " << hit_policy_letter(table.hit_policy) << " violated by rules " << join(ids, ", ")
          << "\n";
      return kExitFinding;
    }
  }
  return kExitOk;
}

int cmd_generate(const std::string& columns, std::size_t rules, std::uint64_t seed, const std::string& inject,
                 double fraction, const std::string& path, std::ostream& out) {
  GenSpec spec;
  spec.columns = parse_column_spec(columns);
  spec.target_rules = rules;
  spec.seed = seed;
  DecisionTable table = generate_table(spec);
  if (inject == "overlap" || inject == "both") {
    table = inject_noise(table, NoiseMode::Overlap, fraction, noise_seed(seed, NoiseMode::Overlap));
  }
  if (inject == "missing" || inject == "both") {
    table = inject_noise(table, NoiseMode::Missing, fraction, noise_seed(seed, NoiseMode::Missing));
  }
  write_file(path, save_table(table));
  out << "wrote " << table.rules.size() << " rules over " << table.inputs.size() << " columns to " << path << "\n";
  return kExitOk;
}

int cmd_bench(const std::string& suite_path, const std::string& report_path, std::ostream& out) {
  const BenchSuite suite = load_suite(read_file(suite_path));
  const BenchReport report = run_benchmark(suite.specs, suite.noise_fraction, suite.runs);
  write_file(report_path, report.to_json());
  out << report.to_text();
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> parse_assignments(std::string_view text) {
  std::map<std::string, std::string> out;
  std::vector<std::string> items(1);
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted && c == '\\' && i + 1 < text.size()) {
      items.back() += c;
      items.back() += text[++i];
      continue;
    }
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) {
      items.emplace_back();
    } else {
      items.back() += c;
    }
  }
  if (quoted) throw SchemaError("unterminated quote in input assignments");
  for (const auto& item : items) {
    if (trim(item).empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw SchemaError("expected name=value, got '" + trim(item) + "'");
    std::string name = trim(std::string_view(item).substr(0, eq));
    if (!out.emplace(name, trim(std::string_view(item).substr(eq + 1))).second) {
      throw SchemaError("input attribute '" + name + "' given twice");
    }
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification of DMN decision tables"};
  app.name("dmncheck");
  app.require_subcommand(1);

  std::string file, format = "text", only = "all";
  auto* check = app.add_subcommand("check", "Check a table for correctness");
  check->add_option("file", file, "Table document")->required();
  check->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  check->add_option("--only", only, "Analyses to run")->check(CLI::IsMember({"overlap", "missing", "all"}));

  std::string input;
  auto* eval = app.add_subcommand("eval", "Evaluate the table on one input");
  eval->add_option("file", file, "Table document")->required();
  eval->add_option("--input", input, "Assignments name=value,...")->required();

  std::string columns, inject, output;
  std::size_t rules = 0;
  std::uint64_t seed = 0;
  double fraction = 0.1;
  auto* generate = app.add_subcommand("generate", "Write a synthetic table");
  generate->add_option("--columns", columns, "Column count (3, 5, 7) or list like cat:8,int:0:10000")->required();
  generate->add_option("--rules", rules, "Target rule count")->required();
  generate->add_option("--seed", seed, "Random seed")->required();
  generate->add_option("--inject", inject, "Noise to inject")->check(CLI::IsMember({"overlap", "missing", "both"}));
  generate->add_option("--fraction", fraction, "Share of rules perturbed");
  generate->add_option("-o,--output", output, "Output document")->required();

  std::string suite;
  auto* bench = app.add_subcommand("bench", "Run the benchmark suite");
  bench->add_option("--suite", suite, "Suite document")->required();
  bench->add_option("-o,--output", output, "Report document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(file, format, only, out);
    if (*eval) return cmd_eval(file, input, out);
    if (*generate) return cmd_generate(columns, rules, seed, inject, fraction, output, out);
    if (*bench) return cmd_bench(suite, output, out);
  } catch (const Error& e) {
    err << "error: " << describe(e) << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace dmn
