#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "bml/errors.hpp"
#include "bml/harness.hpp"
#include "bml/kernels.hpp"
#include "bml/kobayashi.hpp"

namespace {

int cmd_closed_form(int dim) {
  using namespace bml;
  ModelDomain dom = ModelDomain::product_disc_ball(dim);
  KernelModel km = KernelModel::closed_form(dom);
  CVector z0 = CVector::Zero(dim + 1);
  CVector xi = CVector::Zero(dim + 1);
  xi[0] = 0.6;
  xi[1] = 0.8;
  MetricReport mr = metric_report(km, z0, xi);
  std::printf("domain        D x B_%d(0,1) at 0\n", dim);
  std::printf("kappa         %s\n", format_g17(mr.kappa).c_str());
  std::printf("det G         %s\n", format_g17(mr.detG).c_str());
  std::printf("J             %s\n", format_g17(mr.J).c_str());
  std::printf("Ricci         %s\n", format_g17(mr.ricci).c_str());
  std::printf("Scalar        %s\n", format_g17(mr.scalar).c_str());
  std::printf("MF(xi)        %s   (xi = 0.6 e1 + 0.8 e2)\n",
              format_g17(mr.kobayashi_fuks).c_str());
  std::printf("MK(xi)        %s\n", format_g17(kobayashi_product(xi)).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for invariant metrics on flat model domains"};
  app.require_subcommand(1);

  int dim = 1;
  CLI::App* closed = app.add_subcommand("closed-form", "print the product-domain closed forms");
  closed->add_option("--dim", dim, "ball factor dimension n")->check(CLI::Range(1, 8));

  std::string sweep_config;
  CLI::App* sweep = app.add_subcommand("sweep", "run a t-sweep from a config file");
  sweep->add_option("--config", sweep_config, "run configuration")->required();

  std::string certify_config;
  CLI::App* certify = app.add_subcommand("certify", "run inclusion certification");
  certify->add_option("--config", certify_config, "run configuration")->required();

  std::string level = "fast";
  std::string verify_json;
  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--level", level, "fast|full")
      ->check(CLI::IsMember({"fast", "full"}));
  verify->add_option("--json", verify_json, "write the pass/fail report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (closed->parsed()) return cmd_closed_form(dim);
    if (sweep->parsed()) {
      bml::RunConfig cfg = bml::load_run_config(sweep_config);
      bml::SweepResult res = bml::run_sweep(cfg);
      if (cfg.sweep.csv_path.empty()) std::cout << res.csv;
      std::cerr << res.json_summary << "\n";
      return 0;
    }
    if (certify->parsed()) {
      bml::RunConfig cfg = bml::load_run_config(certify_config);
      bml::CertifyResult res = bml::run_certify(cfg);
      if (cfg.certify.json_path.empty()) std::cout << res.json << "\n";
      for (const auto& rep : res.reports)
        if (!rep.passed) return 3;
      return 0;
    }
    if (verify->parsed()) {
      bml::VerifyReport report =
          bml::verify_all(level == "full" ? bml::VerifyLevel::Full : bml::VerifyLevel::Fast);
      for (const auto& cr : report.results)
        std::printf("[%s] %d %-28s %s\n", cr.pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(),
                    cr.details.c_str());
      if (!verify_json.empty()) {
        std::ofstream out(verify_json, std::ios::binary);
        out << report.to_json() << "\n";
      }
      return report.all_pass ? 0 : 3;
    }
  } catch (const bml::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const bml::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const bml::RegimeError& e) {
    std::cerr << "numerical-regime failure: " << e.what() << "\n";
    return 3;
  } catch (const bml::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
