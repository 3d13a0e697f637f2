#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relorder/explainer.hpp"
#include "relorder/hilbert.hpp"
#include "relorder/log_io.hpp"
#include "relorder/synth.hpp"

namespace {

using namespace relorder;

// Exit codes: 0 success, 1 usage, 2 I/O, 3 parse/validation, 4 infeasible
// synth configuration.
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitData = 3;
constexpr int kExitConfig = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fixed4(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.4f", value);
  return buffer;
}

struct AnalyzeArgs {
  std::string input;
  std::string out;
  std::vector<double> criteria{0.10, 0.05, 0.0};
  double sat_dwell = kDefaultSatThresholdSeconds;
  std::string format = "text";
  bool normalized = false;
};

struct ExplainArgs {
  std::string input;
  std::string query_id;
  std::string dims;
  std::vector<double> criteria{0.10, 0.05, 0.0};
  double sat_dwell = kDefaultSatThresholdSeconds;
  std::string format = "text";
  bool normalized = false;
};

struct ProjectArgs {
  double p_first = 0.0;
  double p_second = 0.0;
};

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t queries = 1000;
  bool table1 = false;
  int docs_min = 2;
  int docs_max = 4;
  std::vector<std::string> targets;
  double sat_dwell = kDefaultSatThresholdSeconds;
  double jitter = 0.5;
};

void write_artifact(const std::string& out_path,
                    const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw IoError("cannot open output file: " + out_path);
  }
  writer(out);
  if (!out) {
    throw IoError("failed writing output file: " + out_path);
  }
}

int cmd_analyze(const AnalyzeArgs& args) {
  const std::vector<QueryRecord> log = read_log_file(args.input);

  AnalysisOptions options;
  options.criteria = args.criteria;
  options.sat_threshold_seconds = args.sat_dwell;
  options.scores_normalized = args.normalized;
  const AnalysisReport report = analyze(log, options);

  write_artifact(args.out, [&](std::ostream& out) {
    if (args.format == "csv") {
      write_report_csv(out, report);
    } else if (args.format == "json") {
      write_report_json(out, report);
    } else {
      write_report_text(out, report);
    }
  });
  return 0;
}

std::pair<Dimension, Dimension> parse_dims_flag(const std::string& dims) {
  const auto comma = dims.find(',');
  if (comma == std::string::npos) {
    throw UsageError("--dims expects two comma-separated dimension names");
  }
  const auto first = parse_dimension(dims.substr(0, comma));
  const auto second = parse_dimension(dims.substr(comma + 1));
  if (!first || !second) {
    throw UsageError("unknown dimension in --dims '" + dims +
                     "' (valid: habit, interest, novelty, reliability, "
                     "scope, topicality, understandability)");
  }
  return {*first, *second};
}

void print_profile_table(std::ostream& out, const DimensionalProfile& p1,
                         const DimensionalProfile& p2) {
  out << "Rank";
  for (std::size_t d = 0; d < kDimensionCount; ++d) {
    out << "       " << kDimensionLabels[d][0];
  }
  out << '\n';
  const DimensionalProfile* profiles[] = {&p1, &p2};
  for (int i = 0; i < 2; ++i) {
    out << i + 1 << "   ";
    for (double v : profiles[i]->values) {
      out << "  " << fixed4(v);
    }
    out << '\n';
  }
}

void print_explanation_text(std::ostream& out, const Explanation& e,
                            const DimensionalProfile& p1,
                            const DimensionalProfile& p2) {
  print_profile_table(out, p1, p2);
  out << "Dimension pair: " << dimension_label(e.dim_first) << " / "
      << dimension_label(e.dim_second) << '\n';
  if (e.degenerate) {
    out << "note: document 1's profile is flat; the dimension choice is "
           "arbitrary\n";
  }

  const BasisRepresentation rep(
      std::string(dimension_name(e.dim_first)),
      StateVector::from_probability(p1[e.dim_first]),
      std::string(dimension_name(e.dim_second)),
      StateVector::from_probability(p1[e.dim_second]));
  const StateVector second_in_first = change_of_basis(rep).c_in_ab;
  out << '|' << dimension_label(e.dim_second) << "> in the "
      << dimension_label(e.dim_first) << " basis: ("
      << fixed4(second_in_first.a()) << ", " << fixed4(second_in_first.b())
      << ")\n";
  out << "Cross probability |<" << dimension_label(e.dim_first) << '|'
      << dimension_label(e.dim_second)
      << ">|^2 = " << fixed4(e.cross_probability) << '\n';
  out << "P(doc 1: " << dimension_label(e.dim_second) << " -> "
      << dimension_label(e.dim_first) << ") = " << fixed4(e.p_reverse) << '\n';
  out << "P(doc 2: " << dimension_label(e.dim_first) << " -> "
      << dimension_label(e.dim_second) << ") = " << fixed4(e.p_forward)
      << '\n';
  out << "Ratio = " << (e.ratio ? fixed4(*e.ratio) : "undefined") << '\n';
}

void print_explanation_json(std::ostream& out, const Explanation& e,
                            const DimensionalProfile& p1,
                            const DimensionalProfile& p2) {
  nlohmann::ordered_json j;
  j["query_id"] = e.query_id;
  j["dim_first"] = std::string(dimension_name(e.dim_first));
  j["dim_second"] = std::string(dimension_name(e.dim_second));
  j["cross_probability"] = e.cross_probability;
  j["p_forward"] = e.p_forward;
  j["p_reverse"] = e.p_reverse;
  if (e.ratio) {
    j["ratio"] = *e.ratio;
  } else {
    j["ratio"] = nullptr;
  }
  j["degenerate"] = e.degenerate;
  const DimensionalProfile* profiles[] = {&p1, &p2};
  j["profiles"] = nlohmann::ordered_json::array();
  for (const DimensionalProfile* p : profiles) {
    nlohmann::ordered_json entry;
    for (std::size_t d = 0; d < kDimensionCount; ++d) {
      entry[std::string(kDimensionNames[d])] = p->values[d];
    }
    j["profiles"].push_back(std::move(entry));
  }
  out << j.dump(2) << '\n';
}

int cmd_explain(const ExplainArgs& args) {
  const std::vector<QueryRecord> log = read_log_file(args.input);
  const auto it =
      std::find_if(log.begin(), log.end(), [&](const QueryRecord& record) {
        return record.query_id == args.query_id;
      });
  if (it == log.end()) {
    throw std::invalid_argument("query id not found in the log: '" +
                                args.query_id + "'");
  }
  if (it->docs.size() < 2) {
    throw std::invalid_argument(
        "query '" + args.query_id +
        "' has fewer than two documents, nothing to compare");
  }

  const DocumentProfiles profiles = profile_documents(*it, args.normalized);
  const DimensionalProfile& p1 = profiles.profiles[0];
  const DimensionalProfile& p2 = profiles.profiles[1];

  Explanation explanation;
  if (!args.dims.empty()) {
    const auto [first, second] = parse_dims_flag(args.dims);
    explanation = explain(p1, p2, first, second);
  } else {
    explanation = explain_auto(p1, p2);
  }
  explanation.query_id = args.query_id;

  bool in_irq = false;
  for (double threshold : args.criteria) {
    const auto sft =
        find_sft(log, MatchingCriteria(threshold), args.normalized);
    const auto sftsc = find_sftsc(log, sft, args.sat_dwell);
    const auto irq = find_irq(log, sftsc, args.sat_dwell);
    if (std::find(irq.begin(), irq.end(), args.query_id) != irq.end()) {
      in_irq = true;
      break;
    }
  }
  if (!in_irq) {
    std::cerr << "warning: query '" << args.query_id
              << "' is not in IRQ at any requested criteria; explaining "
                 "anyway\n";
  }

  if (args.format == "json") {
    print_explanation_json(std::cout, explanation, p1, p2);
  } else {
    std::cout << "Query: " << args.query_id << '\n';
    print_explanation_text(std::cout, explanation, p1, p2);
  }
  return 0;
}

int cmd_project(const ProjectArgs& args) {
  const StateVector in_a = StateVector::from_probability(args.p_first);
  const StateVector in_b = StateVector::from_probability(args.p_second);
  const OrderEffect effect = order_effect(in_a, in_b);
  const StateVector b_in_a =
      change_of_basis(BasisRepresentation("A", in_a, "B", in_b)).c_in_ab;

  std::cout << "State in basis A: (" << fixed4(in_a.a()) << ", "
            << fixed4(in_a.b()) << ")\n";
  std::cout << "State in basis B: (" << fixed4(in_b.a()) << ", "
            << fixed4(in_b.b()) << ")\n";
  std::cout << "|B> in the A basis: (" << fixed4(b_in_a.a()) << ", "
            << fixed4(b_in_a.b()) << ")\n";
  std::cout << "Cross probability |<A|B>|^2 = "
            << fixed4(effect.cross_probability) << '\n';
  std::cout << "P(A then B) = " << fixed4(effect.p_ab) << '\n';
  std::cout << "P(B then A) = " << fixed4(effect.p_ba) << '\n';
  std::cout << "Delta = " << fixed4(effect.delta) << "  Ratio = "
            << (effect.ratio ? fixed4(*effect.ratio) : "undefined") << '\n';
  return 0;
}

TargetRow parse_target_flag(const std::string& text) {
  TargetRow row;
  char trailing = 0;
  const int fields =
      std::sscanf(text.c_str(), "%lf:%zu:%zu:%zu%c", &row.criteria, &row.sft,
                  &row.sftsc, &row.irq, &trailing);
  if (fields != 4) {
    throw UsageError("--target expects criteria:sft:sftsc:irq, got '" + text +
                     "'");
  }
  return row;
}

int cmd_synth(const SynthArgs& args, bool docs_given) {
  SynthConfig cfg;
  if (args.table1) {
    cfg = table1_config();
  } else {
    cfg.total_queries = args.queries;
    for (const std::string& target : args.targets) {
      cfg.targets.push_back(parse_target_flag(target));
    }
  }
  if (!args.table1 || docs_given) {
    cfg.min_docs_per_query = args.docs_min;
    cfg.max_docs_per_query = args.docs_max;
  }
  cfg.seed = args.seed;
  cfg.sat_threshold_seconds = args.sat_dwell;
  cfg.profile_jitter = args.jitter;

  const std::vector<QueryRecord> log = generate(cfg);
  write_log_file(args.out, log);

  std::size_t documents = 0;
  for (const QueryRecord& record : log) {
    documents += record.docs.size();
  }
  std::cout << "wrote " << log.size() << " queries (" << documents
            << " documents) to " << args.out << '\n';
  for (const TargetRow& row : cfg.targets) {
    std::cout << "  calibrated band " << row.criteria << ": sft=" << row.sft
              << " sftsc=" << row.sftsc << " irq=" << row.irq << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Order-effect analysis of multidimensional relevance judgments in "
      "query logs"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  CLI::App* analyze_cmd = app.add_subcommand(
      "analyze", "Run the SFT/SFTSC/IRQ similarity test over a JSONL log");
  analyze_cmd->add_option("--input", analyze_args.input, "JSONL query log")
      ->required();
  analyze_cmd
      ->add_option("--criteria", analyze_args.criteria,
                   "matching criteria fractions, e.g. 0.10,0.05,0")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  analyze_cmd
      ->add_option("--sat-dwell", analyze_args.sat_dwell,
                   "SAT click dwell threshold in seconds (strictly over)")
      ->check(CLI::NonNegativeNumber);
  analyze_cmd
      ->add_option("--format", analyze_args.format, "report format")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  analyze_cmd->add_option("--out", analyze_args.out,
                          "output file (default: stdout)");
  analyze_cmd->add_flag("--normalized", analyze_args.normalized,
                        "scores are already min-max normalized probabilities");

  ExplainArgs explain_args;
  CLI::App* explain_cmd = app.add_subcommand(
      "explain", "Reconstruct the two-order judgment flip for one query");
  explain_cmd->add_option("--input", explain_args.input, "JSONL query log")
      ->required();
  explain_cmd->add_option("--query", explain_args.query_id, "query id")
      ->required();
  explain_cmd->add_option(
      "--dims", explain_args.dims,
      "override the dimension pair, e.g. reliability,topicality");
  explain_cmd
      ->add_option("--criteria", explain_args.criteria,
                   "criteria used for the IRQ membership check")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  explain_cmd
      ->add_option("--sat-dwell", explain_args.sat_dwell,
                   "SAT click dwell threshold in seconds")
      ->check(CLI::NonNegativeNumber);
  explain_cmd->add_option("--format", explain_args.format, "output format")
      ->check(CLI::IsMember({"json", "text"}));
  explain_cmd->add_flag("--normalized", explain_args.normalized,
                        "scores are already min-max normalized probabilities");

  ProjectArgs project_args;
  CLI::App* project_cmd = app.add_subcommand(
      "project",
      "Walk through both sequential projection orders for two probabilities");
  project_cmd
      ->add_option("--p-first", project_args.p_first,
                   "probability of the first-basis outcome")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  project_cmd
      ->add_option("--p-second", project_args.p_second,
                   "probability of the second-basis outcome")
      ->required()
      ->check(CLI::Range(0.0, 1.0));

  SynthArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a seeded synthetic query log");
  synth_cmd->add_option("--out", synth_args.out, "output JSONL file")
      ->required();
  synth_cmd->add_option("--seed", synth_args.seed, "PRNG seed");
  CLI::Option* queries_opt = synth_cmd->add_option(
      "--queries", synth_args.queries, "number of queries to generate");
  CLI::Option* table1_opt = synth_cmd->add_flag(
      "--table1", synth_args.table1,
      "calibration preset: 152,941 queries reproducing the reference counts "
      "at criteria 0.10/0.05/0");
  CLI::Option* docs_min_opt = synth_cmd->add_option(
      "--docs-min", synth_args.docs_min, "minimum documents per query");
  CLI::Option* docs_max_opt = synth_cmd->add_option(
      "--docs-max", synth_args.docs_max, "maximum documents per query");
  CLI::Option* target_opt = synth_cmd->add_option(
      "--target", synth_args.targets,
      "calibration row criteria:sft:sftsc:irq (repeatable, outermost first)");
  synth_cmd
      ->add_option("--sat-dwell", synth_args.sat_dwell,
                   "SAT click dwell threshold in seconds")
      ->check(CLI::NonNegativeNumber);
  synth_cmd
      ->add_option("--jitter", synth_args.jitter,
                   "profile jitter scale inside a similarity band")
      ->check(CLI::Range(0.0, 1.0));
  table1_opt->excludes(queries_opt);
  table1_opt->excludes(target_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand(analyze_cmd)) {
      return cmd_analyze(analyze_args);
    }
    if (app.got_subcommand(explain_cmd)) {
      return cmd_explain(explain_args);
    }
    if (app.got_subcommand(project_cmd)) {
      return cmd_project(project_args);
    }
    return cmd_synth(synth_args,
                     docs_min_opt->count() > 0 || docs_max_opt->count() > 0);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const LogFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitData;
  }
}
