#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "exactprob/dsl.hpp"
#include "exactprob/qkd.hpp"

namespace {

using exactprob::Distribution;
using exactprob::Error;
using exactprob::Event;
using exactprob::OutcomeSpace;
using exactprob::PriorAssignment;
using exactprob::Rational;
namespace dsl = exactprob::dsl;
namespace qkd = exactprob::qkd;

enum class Format { Text, Csv, Jsonl };

struct Options {
  Format format = Format::Text;
  int places = 6;
};

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "jsonl") return Format::Jsonl;
  return Format::Text;
}

std::string display_path(const std::string& path) { return path == "-" ? "<stdin>" : path; }

std::optional<std::string> read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    if (std::cin.bad()) return std::nullopt;
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buf.str();
}

void print_diagnostics(const std::string& source, const dsl::ModelError& err) {
  for (const auto& d : err.diagnostics()) std::cerr << source << ":" << d.render() << "\n";
}

std::string pretty(const Rational& v, const Options& opt) {
  return v.str() + " (" + v.decimal(opt.places) + ")";
}

std::string csv_cell(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_value(const Options& opt, const std::string& label, const Rational& v, bool bare_text) {
  switch (opt.format) {
    case Format::Text:
      if (bare_text)
        std::cout << pretty(v, opt) << "\n";
      else
        std::cout << label << " = " << pretty(v, opt) << "\n";
      break;
    case Format::Csv:
      std::cout << "value," << csv_cell(label) << "," << v.str() << "," << v.decimal(opt.places)
                << "\n";
      break;
    case Format::Jsonl: {
      nlohmann::json j;
      j["kind"] = "value";
      j["label"] = label;
      j["exact"] = v.str();
      j["decimal"] = v.decimal(opt.places);
      std::cout << j.dump() << "\n";
      break;
    }
  }
}

void emit_block(const Options& opt, const dsl::BlockTermView& b) {
  switch (opt.format) {
    case Format::Text:
      std::cout << "  " << b.label << ": P = " << pretty(b.block_prob, opt)
                << ", joint = " << pretty(b.joint_prob, opt) << ", cond = "
                << (b.conditional ? pretty(*b.conditional, opt) : std::string("-")) << "\n";
      break;
    case Format::Csv:
      std::cout << "block," << csv_cell(b.label) << "," << b.block_prob.str() << ","
                << b.joint_prob.str() << "," << (b.conditional ? b.conditional->str() : "")
                << "\n";
      break;
    case Format::Jsonl: {
      nlohmann::json j;
      j["kind"] = "block";
      j["label"] = b.label;
      j["prob"] = b.block_prob.str();
      j["joint"] = b.joint_prob.str();
      if (b.conditional)
        j["conditional"] = b.conditional->str();
      else
        j["conditional"] = nullptr;
      std::cout << j.dump() << "\n";
      break;
    }
  }
}

void emit_partition_report(const Options& opt, const std::string& label,
                           const exactprob::PartitionReport& report, std::size_t block_count) {
  std::string verdict = report.valid
                            ? "valid partition (" + std::to_string(block_count) + " blocks)"
                            : "not a partition: " + report.message;
  switch (opt.format) {
    case Format::Text:
      if (label.empty())
        std::cout << verdict << "\n";
      else
        std::cout << label << ": " << verdict << "\n";
      break;
    case Format::Csv:
      std::cout << "partition," << (report.valid ? "valid" : "invalid") << ","
                << csv_cell(report.valid ? std::to_string(block_count) + " blocks"
                                         : report.message)
                << "\n";
      break;
    case Format::Jsonl: {
      nlohmann::json j;
      j["kind"] = "partition";
      j["valid"] = report.valid;
      if (report.valid)
        j["blocks"] = block_count;
      else
        j["message"] = report.message;
      std::cout << j.dump() << "\n";
      break;
    }
  }
}

void emit_outcome(const Options& opt, const dsl::QueryOutcome& outcome, bool bare_text) {
  const std::string label = outcome.query.text();
  if (outcome.partition_report) {
    emit_partition_report(opt, bare_text && opt.format == Format::Text ? "" : label,
                          *outcome.partition_report, outcome.query.names.size());
    return;
  }
  emit_value(opt, label, *outcome.value, bare_text);
  for (const auto& b : outcome.blocks) emit_block(opt, b);
}

int run_check(const std::string& path) {
  auto text = read_input(path);
  if (!text) {
    std::cerr << "error: cannot read '" << display_path(path) << "'\n";
    return 2;
  }
  try {
    dsl::ModelFile model = dsl::parse_model(*text);
    model.prior();
    std::cout << "ok: " << model.vars.size() << " variables, " << model.space().size()
              << " outcomes, " << model.events.size() << " events, " << model.queries.size()
              << " queries\n";
    return 0;
  } catch (const dsl::ModelError& e) {
    print_diagnostics(display_path(path), e);
    return 1;
  } catch (const Error& e) {
    std::cerr << display_path(path) << ": " << e.what() << "\n";
    return 1;
  }
}

int run_query(const std::string& path, const std::optional<std::string>& query_text,
              const Options& opt) {
  auto text = read_input(path);
  if (!text) {
    std::cerr << "error: cannot read '" << display_path(path) << "'\n";
    return 2;
  }
  dsl::ModelFile model;
  try {
    model = dsl::parse_model(*text);
  } catch (const dsl::ModelError& e) {
    print_diagnostics(display_path(path), e);
    return 1;
  }
  if (query_text) {
    try {
      dsl::Query q = dsl::parse_query(*query_text);
      emit_outcome(opt, dsl::eval_query(model, q), true);
      return 0;
    } catch (const dsl::ModelError& e) {
      print_diagnostics("query", e);
      return 1;
    }
  }
  if (model.queries.empty()) {
    std::cerr << "note: model has no stored queries\n";
    return 0;
  }
  try {
    for (const auto& q : model.queries) emit_outcome(opt, dsl::eval_query(model, q), false);
    return 0;
  } catch (const dsl::ModelError& e) {
    print_diagnostics(display_path(path), e);
    return 1;
  }
}

int run_emit(const std::string& path) {
  auto text = read_input(path);
  if (!text) {
    std::cerr << "error: cannot read '" << display_path(path) << "'\n";
    return 2;
  }
  try {
    std::cout << dsl::emit_model(dsl::parse_model(*text));
    return 0;
  } catch (const dsl::ModelError& e) {
    print_diagnostics(display_path(path), e);
    return 1;
  }
}

void run_qkd_table(const Options& opt) {
  OutcomeSpace space = qkd::qkd_space();
  PriorAssignment ops = qkd::qkd_ops();
  const auto& vars = space.variables();
  if (opt.format == Format::Csv) {
    for (std::size_t k = 0; k < vars.size(); ++k) std::cout << vars[k] << ",";
    std::cout << "exact,decimal\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
      for (std::size_t k = 0; k < vars.size(); ++k)
        std::cout << (space.component(i, k) ? "T" : "F") << ",";
      std::cout << ops.weight(i).str() << "," << ops.weight(i).decimal(opt.places) << "\n";
    }
    return;
  }
  if (opt.format == Format::Jsonl) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      nlohmann::json j;
      for (std::size_t k = 0; k < vars.size(); ++k)
        j[vars[k]] = space.component(i, k) ? "T" : "F";
      j["exact"] = ops.weight(i).str();
      j["decimal"] = ops.weight(i).decimal(opt.places);
      std::cout << j.dump() << "\n";
    }
    return;
  }
  for (std::size_t k = 0; k < vars.size(); ++k) std::cout << vars[k] << "  ";
  std::cout << "P\n";
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (std::size_t k = 0; k < vars.size(); ++k) {
      std::string cell = space.component(i, k) ? "T" : "F";
      cell.resize(vars[k].size(), ' ');
      std::cout << cell << "  ";
    }
    std::cout << pretty(ops.weight(i), opt) << "\n";
  }
}

void run_qkd_security(const Options& opt) {
  exactprob::TotalProbabilityResult total = qkd::p_b_measures_one();
  qkd::PosteriorReport report = qkd::p_a_sent_one_given_b_measured_one();

  dsl::ModelFile model = qkd::qkd_model();
  if (opt.format == Format::Text) std::cout << "partition blocks (BchX, AchX, AsOne):\n";
  for (std::size_t j = 0; j < total.terms.size(); ++j) {
    dsl::BlockTermView view;
    view.label = model.events.at(j).name;
    view.block_prob = total.terms[j].block_prob;
    view.joint_prob = total.terms[j].joint_prob;
    view.conditional = total.terms[j].conditional;
    emit_block(opt, view);
  }
  emit_value(opt, "P(BmOne)", total.total, false);
  emit_value(opt, "P(AsOne && BmOne)", report.joint, false);
  emit_value(opt, "P(AsOne|BmOne)", report.posterior, false);
  emit_value(opt, "error", report.error_prob, false);
}

void run_qkd_eve(const Options& opt) {
  qkd::InterceptResendStats stats = qkd::intercept_resend_stats();
  emit_value(opt, "sifted_prob", stats.sifted_prob, false);
  emit_value(opt, "sifted_qber", stats.sifted_qber, false);
  emit_value(opt, "eve_correct_given_sift", stats.eve_correct_given_sift, false);
}

int run_qkd(const std::string& demo, const Options& opt) {
  if (demo == "table") {
    run_qkd_table(opt);
  } else if (demo == "tree") {
    std::cout << qkd::qkd_tree().render();
  } else if (demo == "security") {
    run_qkd_security(opt);
  } else {
    run_qkd_eve(opt);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact finite-probability models and the BB84 first phase"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name = "text";
  Options opt;
  app.add_option("--format", format_name, "output format")
      ->check(CLI::IsMember({"text", "csv", "jsonl"}))
      ->capture_default_str();
  app.add_option("--places", opt.places, "decimal places in approximations")
      ->check(CLI::Range(0, 50))
      ->capture_default_str();

  std::string check_path;
  auto* check = app.add_subcommand("check", "validate a model file");
  check->add_option("file", check_path, "model file, or - for standard input")->required();

  std::string query_path;
  std::string query_text;
  auto* query = app.add_subcommand("query", "evaluate a query against a model");
  query->add_option("file", query_path, "model file, or - for standard input")->required();
  auto* query_arg =
      query->add_option("query", query_text, "query string; omit to run the model's stored queries");

  std::string demo;
  auto* qkd_cmd = app.add_subcommand("qkd", "built-in quantum key distribution demonstrations");
  qkd_cmd->add_option("demo", demo, "one of: table, tree, security, eve")
      ->required()
      ->check(CLI::IsMember({"table", "tree", "security", "eve"}));

  std::string emit_path;
  auto* emit = app.add_subcommand("emit", "parse a model and print its canonical form");
  emit->add_option("file", emit_path, "model file, or - for standard input")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  opt.format = parse_format(format_name);

  try {
    if (check->parsed()) return run_check(check_path);
    if (query->parsed())
      return run_query(query_path,
                       query_arg->count() > 0 ? std::optional<std::string>(query_text)
                                              : std::nullopt,
                       opt);
    if (qkd_cmd->parsed()) return run_qkd(demo, opt);
    if (emit->parsed()) return run_emit(emit_path);
  } catch (const dsl::ModelError& e) {
    print_diagnostics("error", e);
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
