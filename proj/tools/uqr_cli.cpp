#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "uqr/suites.hpp"

using namespace uqr;

namespace {

Split parse_sign(const std::string& s) {
  if (s == "+-") return Split::PlusMinus;
  if (s == "-+") return Split::MinusPlus;
  throw CLI::ValidationError("--sign", "expected +- or -+");
}

RMethod parse_method(const std::string& s) {
  if (s == "recurrence") return RMethod::Recurrence;
  if (s == "closed") return RMethod::Closed;
  if (s == "multiplicative") return RMethod::Multiplicative;
  throw CLI::ValidationError("--method", "expected recurrence, closed or multiplicative");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact factorization checks for the universal R-matrix of U_q(sl2-hat)"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::vector<std::string> suites;
  std::string report_path, format = "text";
  bool no_timing = false;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suites, "suite names (default: all)")->delimiter(',');
  verify->add_option("--window", cfg.window, "mode window N");
  verify->add_option("--max-n", cfg.max_n, "largest degree n");
  verify->add_option("--q-degree", cfg.q_degree, "q-series truncation degree");
  verify->add_option("--n", cfg.n, "largest n for the q-series identities");
  verify->add_option("--rep", cfg.reps, "two_j of the evaluation representations")->delimiter(',');
  verify->add_option("--report", report_path, "write the JSON report to this path");
  verify->add_option("--format", format, "stdout format")->check(CLI::IsMember({"json", "text"}));
  verify->add_option("--jobs", cfg.jobs, "worker threads");
  verify->add_flag("--no-timing", no_timing, "omit timing fields from JSON");

  std::string what, sign = "+-", method = "recurrence", cformat = "json";
  int cn = 1, cwin = 3;
  auto* compute = app.add_subcommand("compute", "compute a component");
  compute->add_option("what", what, "r, i or rbar")->required()->check(CLI::IsMember({"r", "i", "rbar"}));
  compute->add_option("--sign", sign, "+- or -+");
  compute->add_option("--n", cn, "degree n")->check(CLI::NonNegativeNumber);
  compute->add_option("--window", cwin, "mode window N")->check(CLI::PositiveNumber);
  compute->add_option("--method", method, "recurrence, closed or multiplicative");
  compute->add_option("--format", cformat, "output format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      cfg.suites = suites;
      Report rep = run_suite(cfg);
      nlohmann::json j = rep.to_json(!no_timing);
      if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) {
          std::cerr << "cannot write " << report_path << "\n";
          return 2;
        }
        out << j.dump(2) << "\n";
      }
      if (format == "json")
        std::cout << j.dump(2) << "\n";
      else
        std::cout << rep.text();
      return rep.pass() ? 0 : 1;
    }
    Split s = parse_sign(sign);
    if (what == "r") {
      RFactorResult r = R_component(cn, s, cwin, parse_method(method));
      if (cformat == "json")
        std::cout << to_json(r).dump() << "\n";
      else
        std::cout << r.element.str() << "\n";
    } else {
      if (what == "i" && cn < 1) throw std::invalid_argument("--n must be positive for i");
      Tensor t = what == "i" ? I_proj_component(cn, s, cwin) : rbar_component(cn, cwin);
      if (cformat == "json")
        std::cout << to_json(t).dump() << "\n";
      else
        std::cout << t.str() << "\n";
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
