#include "tcchern/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace tcchern;

enum ExitCode { ok = 0, failed = 1, usage = 2, internal = 3 };

nlohmann::json read_json(const std::string& path)
{
  try {
    if (path == "-") {
      return nlohmann::json::parse(std::cin);
    }
    std::ifstream in(path);
    if (!in) {
      throw cli::UsageError("cannot open input file " + path);
    }
    return nlohmann::json::parse(in);
  }
  catch (const nlohmann::json::parse_error& e) {
    throw cli::UsageError("input is not valid JSON: " + std::string(e.what()));
  }
}

void write_json(const std::string& path, const nlohmann::json& j)
{
  if (path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw cli::UsageError("cannot open output file " + path);
  }
  out << j.dump(2) << '\n';
}

GroupSpec group_arg(const std::string& kind, int rank)
{
  try {
    return {parse_group_kind(kind), rank};
  }
  catch (const std::invalid_argument& e) {
    throw cli::UsageError(e.what());
  }
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Generators of transitionally commutative Chern classes and Chern-Weil quadrature"};
  app.set_version_flag("--version", std::string(cli::tool_version));
  app.require_subcommand(1);

  std::string group = "U", example = "paper", out = "-", in = "-", schedule = "proof";
  int rank = 2, a = 0, b = 0, max_degree = 4, grid = 192;
  long k = 1;
  cli::Caps caps;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());

  auto* decompose = app.add_subcommand("decompose", "Express P_{a,b}(n) through generators and certify it");
  decompose->add_option("--group", group, "U, SU or Sp")->required();
  decompose->add_option("--rank", rank, "Rank n")->required();
  decompose->add_option("--a", a, "x exponent")->required();
  decompose->add_option("--b", b, "y exponent")->required();
  decompose->add_option("--schedule", schedule, "proof or sign-first")->capture_default_str();
  decompose->add_option("--sp-max-degree", caps.sp_max_degree, "Largest a+b for Sp, 0 for 2n")->capture_default_str();
  decompose->add_option("--out", out, "Output path, - for stdout")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run the property suites for a group");
  verify->add_option("--group", group, "U, SU or Sp")->required();
  verify->add_option("--rank", rank, "Rank n")->required();
  verify->add_option("--max-degree", max_degree, "Largest degree exercised")->capture_default_str();
  verify->add_option("--out", out, "Output path, - for stdout")->capture_default_str();

  auto* chern2 = app.add_subcommand("chern2", "Second Chern number of a clutching function by quadrature");
  chern2->add_option("--example", example, "paper, constant or qpow:d")->capture_default_str();
  chern2->add_option("--grid", grid, "Nodes per axis")->capture_default_str();
  chern2->add_option("--workers", workers, "Threads; the result does not depend on this");
  chern2->add_option("--out", out, "Output path, - for stdout")->capture_default_str();

  auto* powermap = app.add_subcommand("powermap", "Apply the power map to a polynomial");
  powermap->add_option("--k", k, "Power")->required();
  powermap->add_option("--in", in, "Polynomial JSON, - for stdin")->capture_default_str();
  powermap->add_option("--out", out, "Output path, - for stdout")->capture_default_str();

  auto* normalform = app.add_subcommand("normalform", "Reduce a polynomial modulo a group ideal");
  normalform->add_option("--group", group, "U, SU or Sp")->required();
  normalform->add_option("--rank", rank, "Rank n")->required();
  normalform->add_option("--in", in, "Polynomial JSON, - for stdin")->capture_default_str();
  normalform->add_option("--out", out, "Output path, - for stdout")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  const std::vector<std::string> echo(argv, argv + argc);
  const auto start = std::chrono::steady_clock::now();
  try {
    IdealRegistry registry = IdealRegistry::from_environment();
    cli::JobOutcome outcome;
    if (*decompose) {
      Schedule s{};
      try {
        s = parse_schedule(schedule);
      }
      catch (const std::invalid_argument& e) {
        throw cli::UsageError(e.what());
      }
      outcome = cli::cmd_decompose(group_arg(group, rank), a, b, s, registry, caps);
    }
    else if (*verify) {
      outcome = cli::cmd_verify(group_arg(group, rank), max_degree, registry);
    }
    else if (*chern2) {
      outcome = cli::cmd_chern2(example, grid, workers);
    }
    else if (*powermap) {
      outcome = cli::cmd_powermap(k, read_json(in));
    }
    else {
      outcome = cli::cmd_normalform(group_arg(group, rank), read_json(in), registry);
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    write_json(out, cli::job_report(outcome, echo, ms));
    if (!outcome.ok) {
      std::cerr << "tc_chern: checks did not pass\n";
      return failed;
    }
    return ok;
  }
  catch (const cli::UsageError& e) {
    std::cerr << "tc_chern: " << e.what() << '\n';
    return usage;
  }
  catch (const CertificationError& e) {
    std::cerr << "tc_chern: internal error: " << e.what() << '\n';
    return internal;
  }
  catch (const cw::NonFiniteSample& e) {
    std::cerr << "tc_chern: " << e.what() << '\n';
    return failed;
  }
  catch (const std::exception& e) {
    std::cerr << "tc_chern: internal error: " << e.what() << '\n';
    return internal;
  }
}
