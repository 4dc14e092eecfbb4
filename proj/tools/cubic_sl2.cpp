// Command-line front end: verify-case, enumerate-preserving, rep-check.

#include <cubic_sl2/commands.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cubic_sl2;

std::vector<int> parse_exponents(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = detail::trim(item);
    if (!detail::is_signed_digits(t)) throw parse_error("bad exponent '" + std::string(item) + "'");
    out.push_back(std::stoi(std::string(t)));
  }
  if (out.empty()) throw parse_error("empty exponent list");
  return out;
}

int emit(const Report& report, const std::string& report_path) {
  const std::string text = report.dump();
  std::cout << text;
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report to '" << report_path << "'\n";
      return 2;
    }
    out << text;
  }
  return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of cubic deformations of sl(2,R) and their differential realizations"};
  app.require_subcommand(1);

  std::string report_path;

  auto* verify = app.add_subcommand("verify-case", "solve and verify one of the three J = 1 cases on {1, x, x^3}");
  int case_id = 1;
  std::string alpha_text, beta_text, gamma_text = "intrinsic", branch_text, emit_rep;
  verify->add_option("--case", case_id, "case number")->required()->check(CLI::IsMember({1, 2, 3}));
  verify->add_option("--alpha", alpha_text, "alpha as p/q")->required();
  verify->add_option("--beta", beta_text, "beta as p/q")->required();
  verify->add_option("--gamma", gamma_text, "'intrinsic' or p/q");
  verify->add_option("--branch", branch_text, "sign of the square root")->check(CLI::IsMember({"upper", "lower"}));
  verify->add_option("--emit-rep", emit_rep, "write the solved representation as a rep file");
  verify->add_option("--report", report_path, "also write the report to this file");

  auto* enumerate = app.add_subcommand("enumerate-preserving", "basis of operators preserving a monomial space");
  std::string space_text = "0,1,3";
  int max_order = 3;
  enumerate->add_option("--space", space_text, "exponents e1,e2,... (strictly increasing)");
  enumerate->add_option("--max-order", max_order, "maximal derivative order (0..6)");
  enumerate->add_option("--report", report_path, "also write the report to this file");

  auto* rep_check = app.add_subcommand("rep-check", "verify a representation file against algebra parameters");
  std::string rep_path, params_path;
  rep_check->add_option("--rep", rep_path, "representation file (JSON)")->required();
  rep_check->add_option("--params", params_path, "algebra parameter file (JSON); defaults to the rep file's 'params'");
  rep_check->add_option("--report", report_path, "also write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*verify) {
    VerifyCaseRequest req;
    try {
      req.id = static_cast<CaseId>(case_id);
      req.alpha = parse_rational(alpha_text);
      req.beta = parse_rational(beta_text);
      if (gamma_text != "intrinsic") req.gamma = parse_rational(gamma_text);
      if (!branch_text.empty()) req.branch = branch_text == "upper" ? Branch::upper : Branch::lower;
      if (!emit_rep.empty()) req.emit_rep_path = emit_rep;
    } catch (const parse_error& e) {
      Report report("verify-case");
      report.set_error(e.what());
      return emit(report, report_path);
    }
    return emit(cmd_verify_case(req), report_path);
  }

  if (*enumerate) {
    std::vector<int> exps;
    try {
      exps = parse_exponents(space_text);
    } catch (const parse_error& e) {
      Report report("enumerate-preserving");
      report.set_error(e.what());
      return emit(report, report_path);
    }
    return emit(cmd_enumerate_preserving(exps, max_order), report_path);
  }

  std::optional<std::string> params;
  if (!params_path.empty()) params = params_path;
  return emit(cmd_rep_check_files(rep_path, params), report_path);
}
