// rieszwalk: moments, Verblunsky parameters, backbone data and quantum-walk
// simulations for the Riesz product measure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "rieszwalk/commands.hpp"

namespace {

using namespace rieszwalk;
using namespace rieszwalk::cli;

struct OutputOptions {
  std::string format = "csv";
  bool as_float = false;
  std::string output;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--float", opts.as_float, "Emit exact values as decimals");
  cmd->add_option("-o,--output", opts.output, "Write to this file instead of stdout");
}

// The file appears only once fully written.
void emit(const OutputTable& table, const OutputOptions& opts) {
  const auto format = opts.format == "json" ? TableFormat::Json : TableFormat::Csv;
  if (opts.output.empty()) {
    const auto text = table.to_string(format);
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return;
  }
  const std::filesystem::path target(opts.output);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    table.write(out, format);
    if (!out) throw UsageError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

const std::map<std::string, MeasureVariant> kVariants{{"mu", MeasureVariant::MU},
                                                      {"nu", MeasureVariant::NU}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riesz measure Verblunsky parameters and quantum walks"};
  app.require_subcommand(1);

  OutputOptions out;

  long max_degree = 20;
  std::string variant_name = "mu";
  auto* moments_cmd = app.add_subcommand("moments", "Moments mu_j for 0 <= j <= max");
  moments_cmd->add_option("--max", max_degree, "Largest degree")->capture_default_str();
  moments_cmd->add_option("--variant", variant_name, "mu (product from k=1) or nu (from k=0)")
      ->check(CLI::IsMember({"mu", "nu"}))
      ->capture_default_str();
  add_output_options(moments_cmd, out);

  std::size_t count = 12;
  std::string method_name = "ansatz";
  auto* verb_cmd = app.add_subcommand("verblunsky", "Non-null Verblunsky parameters");
  verb_cmd->add_option("--count", count, "Number of non-null parameters")->capture_default_str();
  verb_cmd->add_option("--method", method_name, "schur, ansatz or both")
      ->check(CLI::IsMember({"schur", "ansatz", "both"}))
      ->capture_default_str();
  verb_cmd->add_option("--variant", variant_name, "Index convention: mu or nu")
      ->check(CLI::IsMember({"mu", "nu"}))
      ->capture_default_str();
  add_output_options(verb_cmd, out);

  auto* backbone_cmd = app.add_subcommand("backbone", "Backbone A_1..A_count");
  backbone_cmd->add_option("--count", count, "Number of entries")->capture_default_str();
  add_output_options(backbone_cmd, out);

  auto* limits_cmd = app.add_subcommand("limits", "First members of the three limit families");
  limits_cmd->add_option("--count", count, "Members per family")->capture_default_str();
  add_output_options(limits_cmd, out);

  std::string coin_name = "riesz";
  std::size_t steps = 800;
  std::string emit_name = "distribution";
  auto* walk_cmd = app.add_subcommand("walk", "Evolve from |0,up>");
  walk_cmd->add_option("--coin", coin_name, "riesz, hadamard or file:PATH")->capture_default_str();
  walk_cmd->add_option("--steps", steps, "Number of steps")->capture_default_str();
  walk_cmd->add_option("--emit", emit_name, "distribution, norm-trace or matrix")
      ->check(CLI::IsMember({"distribution", "norm-trace", "matrix"}))
      ->capture_default_str();
  add_output_options(walk_cmd, out);

  std::size_t max_steps = 200;
  std::string fr_method = "exact";
  auto* fr_cmd = app.add_subcommand("first-return", "First-return amplitudes to |0,up>");
  fr_cmd->add_option("--coin", coin_name, "riesz, hadamard or file:PATH")->capture_default_str();
  fr_cmd->add_option("--max", max_steps, "Largest step count")->capture_default_str();
  fr_cmd->add_option("--method", fr_method, "exact, numeric or both")
      ->check(CLI::IsMember({"exact", "numeric", "both"}))
      ->capture_default_str();
  add_output_options(fr_cmd, out);

  std::size_t dim = 16;
  auto* cmv_cmd = app.add_subcommand("cmv", "Nonzero entries of a truncated CMV matrix");
  cmv_cmd->add_option("--coin", coin_name, "riesz or hadamard")->capture_default_str();
  cmv_cmd->add_option("--dim", dim, "Matrix dimension")->capture_default_str();
  add_output_options(cmv_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    CommandResult result{OutputTable({})};
    if (*moments_cmd) {
      result = cmd_moments(max_degree, kVariants.at(variant_name));
    } else if (*verb_cmd) {
      const auto method = method_name == "schur"    ? VerblunskyMethod::Schur
                          : method_name == "ansatz" ? VerblunskyMethod::Ansatz
                                                    : VerblunskyMethod::Both;
      result = cmd_verblunsky(count, method, kVariants.at(variant_name));
    } else if (*backbone_cmd) {
      result = cmd_backbone(count);
    } else if (*limits_cmd) {
      result = cmd_limits(count);
    } else if (*walk_cmd) {
      const auto what = emit_name == "distribution" ? WalkEmit::Distribution
                        : emit_name == "norm-trace" ? WalkEmit::NormTrace
                                                    : WalkEmit::Matrix;
      result = cmd_walk(parse_coin(coin_name), steps, what);
    } else if (*fr_cmd) {
      const auto method = fr_method == "exact"     ? FirstReturnMethod::Exact
                          : fr_method == "numeric" ? FirstReturnMethod::Numeric
                                                   : FirstReturnMethod::Both;
      result = cmd_first_return(parse_coin(coin_name), max_steps, method);
    } else if (*cmv_cmd) {
      result = cmd_cmv(parse_coin(coin_name), dim);
    }
    if (out.as_float) result.table.convert_exact_to_float();
    emit(result.table, out);
    if (!result.diagnostic.empty()) std::cerr << result.diagnostic << '\n';
    return result.exit_code;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
