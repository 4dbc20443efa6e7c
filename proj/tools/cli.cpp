/*
 * Copyright 2026 The emq Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "CLI11.hpp"
#include "emq/error.hpp"
#include "emq/evaluation.hpp"
#include "json_io.hpp"

namespace emq::cli {
namespace {

constexpr const char* kDefaultMeasures = "ae,nae,rae,nrae,se,dr,kld,nkld,pd";

std::vector<Measure> ParseMeasureList(const std::string& list) {
  std::vector<Measure> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    const auto m = ParseMeasure(item);
    if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown measure '" + item + "'");
    if (std::find(out.begin(), out.end(), *m) == out.end()) out.push_back(*m);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "no measures given");
  return out;
}

Measure RequireMeasure(const std::string& name) {
  const auto m = ParseMeasure(name);
  if (!m) throw Error(ErrorCode::kInvalidArgument, "unknown measure '" + name + "'");
  return *m;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string input;
  std::string format;
  std::string measures = kDefaultMeasures;
  std::optional<double> epsilon;
  std::optional<std::uint64_t> sample_size;
  std::string agg = "both";
};

int RunEval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  std::string format = a.format;
  if (format.empty()) {
    format = a.input.size() >= 5 && a.input.substr(a.input.size() - 5) == ".json"
                 ? "json"
                 : "csv";
  }
  const InputFormat input_format = *ParseInputFormat(format);
  const auto measures = ParseMeasureList(a.measures);

  IngestResult ingested;
  if (a.input == "-") {
    ingested = IngestCollect(std::cin, input_format);
  } else {
    std::ifstream in(a.input, std::ios::binary);
    if (!in) {
      err << "emq eval: ParseError: cannot open '" << a.input << "'\n";
      return kExitUsage;
    }
    ingested = IngestCollect(in, input_format);
  }
  if (!ingested.errors.empty()) {
    for (const auto& e : ingested.errors) {
      err << "emq eval: " << e.locus << ": " << e.message << '\n';
    }
    return kExitUsage;
  }
  if (ingested.records.empty()) {
    err << "emq eval: EmptyInput: no samples in input\n";
    return kExitUsage;
  }

  EvalContext ctx;
  if (a.epsilon) ctx.smoothing = SmoothingConfig::FromEpsilon(*a.epsilon);
  if (a.sample_size) ctx.smoothing = SmoothingConfig::FromSampleSize(*a.sample_size);
  const MultiSampleReport report = EvaluateSamples(ingested.records, measures, ctx);

  if (a.agg == "both") {
    out << ReportToJson(report);
    return kExitOk;
  }
  // A single statistic: drop the other one from every aggregate.
  Json doc = Json::parse(ReportToJson(report));
  const char* drop = a.agg == "mean" ? "median" : "mean";
  for (auto& [name, stats] : doc["aggregates"].items()) stats.erase(drop);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

// --- axioms -----------------------------------------------------------------

std::string FormatVector(std::span<const double> v) {
  return fmt::format("[{}]", fmt::join(v, ", "));
}

void PrintVerdict(const Verdict& v, std::ostream& out) {
  out << fmt::format("{}/{}: {} ({} fixed scenario(s), {} random trial(s), seed {})\n",
                     MeasureName(v.measure), PropertyName(v.property),
                     v.falsified() ? "Falsified" : "Unfalsified",
                     v.fixed_scenarios_run, v.trials_run, v.seed);
  if (!v.counterexample) return;
  const Scenario& s = *v.counterexample;
  out << fmt::format("  counterexample: {} ({} classes, epsilon {})\n", s.origin,
                     s.codeframe.size(), s.smoothing.epsilon());
  for (const auto& p : s.true_dists) out << "    true " << FormatVector(p.values()) << '\n';
  for (const auto& p : s.pred_dists) out << "    pred " << FormatVector(p.values()) << '\n';
  out << "    values " << FormatVector(v.values) << '\n';
}

struct AxiomsArgs {
  std::string measure;
  std::string property = "all";
  std::size_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  double tolerance = kDefaultTolerance;
  std::optional<std::size_t> classes;
  bool json = false;
};

int RunAxioms(const AxiomsArgs& a, std::ostream& out) {
  const Measure m = RequireMeasure(a.measure);
  CheckOptions options;
  options.budget = a.budget;
  options.seed = a.seed.value_or(DefaultSeed());
  options.tolerance = a.tolerance;
  options.classes = a.classes;

  std::vector<Verdict> verdicts;
  if (a.property == "all") {
    for (Property p : kAllProperties) {
      try {
        verdicts.push_back(CheckProperty(m, p, options));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kIncompatiblePair) throw;
      }
    }
    if (verdicts.empty()) {
      throw Error(ErrorCode::kIncompatiblePair,
                  "no property applies to " + std::string(MeasureName(m)) +
                      " with these options");
    }
  } else {
    const auto p = ParseProperty(a.property);
    if (!p) throw Error(ErrorCode::kInvalidArgument, "unknown property '" + a.property + "'");
    verdicts.push_back(CheckProperty(m, *p, options));
  }

  if (a.json) {
    Json doc = Json::array();
    for (const auto& v : verdicts) doc.push_back(VerdictToJson(v));
    out << (doc.size() == 1 ? doc[0] : doc).dump(2) << '\n';
  } else {
    for (const auto& v : verdicts) PrintVerdict(v, out);
  }
  return kExitOk;
}

// --- plotgrid ---------------------------------------------------------------

struct PlotArgs {
  std::string measure;
  int resolution = 101;
  double epsilon = 0.0;
  std::string out = "-";
};

void WriteGrid(const std::vector<GridPoint>& grid, std::ostream& out) {
  out << "x,y,z\n";
  for (const auto& g : grid) out << fmt::format("{:.17g},{:.17g},{:.17g}\n", g.x, g.y, g.z);
}

int RunPlot(const PlotArgs& a, std::ostream& out, std::ostream& err) {
  const Measure m = RequireMeasure(a.measure);
  if (!(a.epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidSmoothing, "epsilon must be non-negative");
  }
  const auto grid = PlotGrid(m, a.resolution, a.epsilon);
  if (a.out == "-") {
    WriteGrid(grid, out);
    return kExitOk;
  }
  std::ofstream file(a.out);
  if (!file) {
    err << "emq plotgrid: cannot write '" << a.out << "'\n";
    return kExitUsage;
  }
  WriteGrid(grid, file);
  file.flush();
  if (!file) {
    err << "emq plotgrid: cannot write '" << a.out << "'\n";
    return kExitUsage;
  }
  return kExitOk;
}

// --- counterexamples --------------------------------------------------------

struct TableRow {
  std::string name;
  const Prevalence* truth;
  const Prevalence* pred;
};

void RenderTable(const std::string& title, const Scenario& s,
                 const std::vector<TableRow>& rows, bool flag_pd,
                 std::ostream& out) {
  const EvalContext ctx{s.smoothing, SmoothingMode::kPerMeasure};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (Measure m : kMatrixMeasures) {
      line.push_back(fmt::format("{:.4f}", Score(m, *row.truth, *row.pred, ctx)));
    }
    cells.push_back(std::move(line));
  }
  out << title << " (epsilon " << s.smoothing.epsilon() << ")\n";
  out << fmt::format("{:<5} {:>15} {:>15}", "", "p", "p_hat");
  for (Measure m : kMatrixMeasures) {
    const std::string name =
        std::string(MeasureName(m)) + (flag_pd && m == Measure::kPD ? "+" : "");
    out << fmt::format(" {:>12}", name);
  }
  out << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& t = *rows[r].truth;
    const auto& q = *rows[r].pred;
    out << fmt::format("{:<5} {:>15} {:>15}", rows[r].name,
                       fmt::format("({:.2f}, {:.2f})", t[0], t[1]),
                       fmt::format("({:.2f}, {:.2f})", q[0], q[1]));
    for (std::size_t c = 0; c < cells[r].size(); ++c) {
      bool differs = false;
      for (const auto& other : cells) differs = differs || other[c] != cells[r][c];
      out << fmt::format(" {:>12}", cells[r][c] + (differs ? "*" : " "));
    }
    out << '\n';
  }
  out << '\n';
}

// --- table1 -----------------------------------------------------------------

struct TableArgs {
  std::size_t budget = kDefaultBudget;
  std::optional<std::uint64_t> seed;
  bool json = false;
};

int RunTable(const TableArgs& a, std::ostream& out) {
  const PropertyMatrix matrix =
      ComputePropertyMatrix(a.budget, a.seed.value_or(DefaultSeed()));
  if (a.json) {
    out << MatrixToJson(matrix).dump(2) << '\n';
  } else {
    out << RenderMatrix(matrix);
  }
  return kExitOk;
}

}  // namespace

std::uint64_t DefaultSeed() {
  const char* env = std::getenv("EMQ_SEED");
  if (env == nullptr) return kDefaultSeed;
  std::uint64_t seed = 0;
  const std::string_view text(env);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    return kDefaultSeed;
  }
  return seed;
}

std::vector<GridPoint> PlotGrid(Measure m, int resolution, double epsilon) {
  if (resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must be at least 2");
  }
  const EvalContext ctx{epsilon > 0.0 ? SmoothingConfig::FromEpsilon(epsilon)
                                      : SmoothingConfig::None(),
                        SmoothingMode::kPerMeasure};
  const double eps = EffectiveEpsilon(m, ctx);
  std::vector<double> axis(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    const double raw = epsilon > 0.0 ? static_cast<double>(i) / (resolution - 1)
                                     : static_cast<double>(i + 1) / (resolution + 1);
    // Snapping makes 1 - v exact, so both classes see the same difference.
    axis[static_cast<std::size_t>(i)] = 1.0 - (1.0 - raw);
  }
  std::vector<GridPoint> grid;
  grid.reserve(axis.size() * axis.size());
  for (double x : axis) {
    const double p[2] = {x, 1.0 - x};
    for (double y : axis) {
      const double q[2] = {y, 1.0 - y};
      grid.push_back({x, y, kernel::Score(m, p, q, eps)});
    }
  }
  return grid;
}

std::string RenderCounterexamples() {
  std::ostringstream out;
  const Scenario max = FixedScenarios(Property::kMAX).front();
  RenderTable("Counterexample for MAX", max,
              {{"p'", &max.true_dists[0], &max.pred_dists[0]},
               {"p''", &max.true_dists[1], &max.pred_dists[1]}},
              false, out);
  const Scenario imp = FixedScenarios(Property::kIMP).front();
  RenderTable("Counterexample for IMP", imp,
              {{"p'", &imp.true_dists[0], &imp.pred_dists[0]},
               {"p''", &imp.true_dists[0], &imp.pred_dists[1]}},
              true, out);
  for (Property p : {Property::kREL, Property::kABS}) {
    const Scenario s = FixedScenarios(p).front();
    RenderTable("Counterexample for " + std::string(PropertyName(p)), s,
                {{"p'", &s.true_dists[0], &s.pred_dists[0]},
                 {"p''", &s.true_dists[1], &s.pred_dists[1]}},
                true, out);
  }
  out << "* value differs between the two rows\n"
         "+ PD computed from its definition; some published tables print "
         "different PD figures for these scenarios\n";
  return out.str();
}

std::string RenderMatrix(const PropertyMatrix& matrix) {
  std::string text = fmt::format("{:<6}", "");
  for (Property p : kMatrixProperties) text += fmt::format(" {:>4}", PropertyName(p));
  text += '\n';
  for (std::size_t i = 0; i < kMatrixMeasures.size(); ++i) {
    text += fmt::format("{:<6}", MeasureName(kMatrixMeasures[i]));
    for (const auto& cell : matrix.cells[i]) {
      text += fmt::format(" {:>4}", cell.falsified() ? "No" : "Yes");
    }
    text += '\n';
  }
  text += fmt::format("\nbudget {}, seed {}; Yes = unfalsified, No = falsified\n",
                      matrix.budget, matrix.seed);
  for (const auto& row : matrix.cells) {
    for (const auto& cell : row) {
      if (!cell.falsified()) continue;
      text += fmt::format("  {}/{}: {} -> {}\n", MeasureName(cell.measure),
                          PropertyName(cell.property), cell.counterexample->origin,
                          FormatVector(cell.values));
    }
  }
  return text;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Evaluation measures for quantification"};
  app.name("emq");
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Score prevalence predictions from a file");
  eval->add_option("input", eval_args.input, "Input file, or - for stdin")->required();
  eval->add_option("--format", eval_args.format, "csv or json (default: by extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  eval->add_option("--measures", eval_args.measures, "Comma-separated measure names");
  auto* eps_opt = eval->add_option("--epsilon", eval_args.epsilon,
                                   "Smoothing constant for every sample");
  auto* size_opt = eval->add_option("--sample-size", eval_args.sample_size,
                                    "Sample size for every sample (epsilon = 1/(2n))");
  eps_opt->excludes(size_opt);
  eval->add_option("--agg", eval_args.agg, "mean, median or both")
      ->check(CLI::IsMember({"mean", "median", "both"}));

  AxiomsArgs axioms_args;
  auto* axioms = app.add_subcommand("axioms", "Check measure properties");
  axioms->add_option("--measure", axioms_args.measure, "Measure name")->required();
  axioms->add_option("--property", axioms_args.property, "Property name or 'all'");
  axioms->add_option("--budget", axioms_args.budget, "Random trials per property");
  axioms->add_option("--seed", axioms_args.seed, "Random seed");
  axioms->add_option("--tolerance", axioms_args.tolerance, "Comparison tolerance");
  axioms->add_option("--classes", axioms_args.classes, "Codeframe size of random scenarios");
  axioms->add_flag("--json", axioms_args.json, "Emit JSON");

  TableArgs table_args;
  auto* table = app.add_subcommand("table1", "Compute the property matrix");
  table->add_option("--budget", table_args.budget, "Random trials per cell");
  table->add_option("--seed", table_args.seed, "Random seed");
  table->add_flag("--json", table_args.json, "Emit JSON");

  auto* examples =
      app.add_subcommand("counterexamples", "Print the fixed counterexample tables");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plotgrid", "Emit a binary surface as x,y,z CSV");
  plot->add_option("--measure", plot_args.measure, "Measure name")->required();
  plot->add_option("--resolution", plot_args.resolution, "Points per axis");
  plot->add_option("--epsilon", plot_args.epsilon, "Smoothing constant");
  plot->add_option("--out", plot_args.out, "Output file, or - for stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return RunEval(eval_args, out, err);
    if (axioms->parsed()) return RunAxioms(axioms_args, out);
    if (table->parsed()) return RunTable(table_args, out);
    if (examples->parsed()) {
      out << RenderCounterexamples();
      return kExitOk;
    }
    if (plot->parsed()) return RunPlot(plot_args, out, err);
  } catch (const Error& e) {
    err << "emq: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace emq::cli
