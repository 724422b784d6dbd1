#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qflag/campaign.hpp"

namespace {

std::vector<qflag::Rational> parse_list(const std::string& text) {
  std::vector<qflag::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(qflag::parse_rational(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant cohomology workbench for quaternionic flag manifolds"};
  app.require_subcommand(1);

  qflag::CampaignConfig cfg;
  std::string a_text, r_text, convention = "left", format = "json";
  bool serial = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Flag length n");
    sub->add_option("--scale", cfg.scale, "Degree of each u_j (2 or 4)");
    sub->add_option("--max-degree", cfg.max_degree, "Largest polynomial degree to verify");
    sub->add_option("--a", a_text, "Height vector a, comma separated");
    sub->add_option("--r", r_text, "Spectrum r, comma separated");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--convention", convention, "Edge reading: left or right");
    sub->add_option("--out", cfg.out, "Report path (default stdout)");
    sub->add_option("--format", format, "json or md")->check(CLI::IsMember({"json", "md"}));
    sub->add_option("--budget", cfg.budget, "Maximum matrix cells");
    sub->add_option("--samples", cfg.samples, "Meridian samples per sphere");
    sub->add_option("--cap", cfg.cap, "Largest n accepted");
    sub->add_flag("--serial", serial, "Use the serial reference kernels");
  };
  auto* verify = app.add_subcommand("verify-theorem", "Degree-by-degree Borel/GKM isomorphism check");
  auto* morse = app.add_subcommand("morse-report", "Critical points, indices and Euler classes");
  auto* geom = app.add_subcommand("geomlab", "Numeric checks on the orbit model");
  for (auto* sub : {verify, morse, geom}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.convention = qflag::edge_convention_from_string(convention);
    if (!a_text.empty() || !r_text.empty()) {
      auto def = qflag::HeightParams::standard(cfg.n);
      cfg.height_params = qflag::HeightParams(a_text.empty() ? def.a() : parse_list(a_text),
                                              r_text.empty() ? def.r() : parse_list(r_text));
    }
  } catch (const std::exception& e) {
    std::cerr << "qflag: " << e.what() << "\n";
    return 2;
  }
  cfg.format = format == "md" ? qflag::ReportFormat::markdown : qflag::ReportFormat::json;
  cfg.exec = serial ? qflag::Exec::serial : qflag::Exec::parallel;

  qflag::CommandResult result;
  try {
    if (verify->parsed()) result = qflag::cmd_verify_theorem(cfg);
    else if (morse->parsed()) result = qflag::cmd_morse_report(cfg);
    else result = qflag::cmd_geomlab(cfg);
  } catch (const std::exception& e) {
    std::cerr << "qflag: " << e.what() << "\n";
    return 2;
  }

  const std::string text = qflag::render(result.report, cfg.format);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!(f << text)) {
      std::cerr << "qflag: cannot write " << cfg.out << "\n";
      return 2;
    }
  }
  if (result.report.contains("error")) std::cerr << "qflag: " << result.report["error"].get<std::string>() << "\n";
  return result.exit_code;
}
