#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "poissym/cli.hpp"
#include "poissym/verify.hpp"

namespace {

using namespace poissym;

int run_verify(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed report: " + std::string(e.what()));
  }
  const VerifyOutcome out = verify_report(doc);
  for (const auto& w : out.warnings) std::cerr << "poissym verify: warning: " << w << "\n";
  if (format == "machine") {
    Json summary{{"command", "verify"},
                 {"status", out.exit_code == 0 ? "pass" : "fail"},
                 {"exit_code", out.exit_code},
                 {"certificates", out.certificates},
                 {"residuals", out.residuals},
                 {"failures", out.failures}};
    std::cout << render_machine(summary);
  } else {
    std::cout << "poissym verify: " << (out.exit_code == 0 ? "PASS" : "FAIL") << "\n"
              << "replayed " << out.residuals << " residuals in " << out.certificates << " certificates\n";
    for (const auto& f : out.failures) std::cout << "  " << f << "\n";
  }
  return out.exit_code;
}

int run_command(const std::string& command, const std::string& path, const CliOptions& opts,
                const std::string& format, const std::string& report_path) {
  const ProblemFile pf = load_problem(path);
  CommandResult result;
  if (command == "gb")
    result = cmd_gb(pf, opts);
  else if (command == "derivations")
    result = cmd_derivations(pf, opts);
  else if (command == "symplectic")
    result = cmd_symplectic(pf, opts);
  else
    result = cmd_quotient(pf, opts);
  std::cout << (format == "machine" ? render_machine(result.report) : render_text(result.report));
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + report_path + "'");
    out << render_machine(result.report);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified symplectic forms on singular affine Poisson varieties"};
  app.require_subcommand(1);

  std::string order_name, report_path, format = "text", file;
  unsigned degree_bound = 0;
  bool no_timings = false;
  app.add_option("--order", order_name, "Monomial order for gb")->check(CLI::IsMember({"grevlex", "lex"}));
  app.add_option("--degree-bound", degree_bound, "Degree bound for invariants and invariant fields")
      ->check(CLI::Range(1u, 1000u));
  app.add_flag("--no-timings", no_timings, "Leave stage timings out of the report");
  app.add_option("--report", report_path, "Write the machine-readable report to this path");
  app.add_option("--format", format, "Rendering on standard output")->check(CLI::IsMember({"text", "machine"}));

  const std::pair<const char*, const char*> commands[] = {
      {"gb", "Reduced Groebner basis of the ideal"},
      {"derivations", "Generators and relations of the derivation module"},
      {"symplectic", "Build and certify the symplectic form"},
      {"quotient", "Push the symplectic form to a finite quotient and certify it"},
      {"verify", "Replay the certificates of a machine-readable report"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("file", file, name == std::string("verify") ? "Report file" : "Problem file")->required();
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::input_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CliOptions opts;
  if (!order_name.empty()) opts.order = parse_order(order_name);
  if (degree_bound > 0) opts.degree_bound = degree_bound;
  opts.timings = !no_timings;

  try {
    if (command == "verify") return run_verify(file, format);
    return run_command(command, file, opts, format, report_path);
  } catch (const ParseError& e) {
    std::cerr << "poissym " << command << ": " << file << ": " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const InexpressibleBracket& e) {
    std::cerr << "poissym " << command << ": " << e.what() << "\n";
    return exit_code::certificate_failed;
  } catch (const ResourceError& e) {
    std::cerr << "poissym " << command << ": resource cap: " << e.what() << "\n";
    return exit_code::resource_cap;
  } catch (const std::bad_alloc&) {
    std::cerr << "poissym " << command << ": out of memory\n";
    return exit_code::resource_cap;
  } catch (const std::exception& e) {
    std::cerr << "poissym " << command << ": " << e.what() << "\n";
    return exit_code::input_error;
  }
}
