// qconf-verify: runs one identity suite and writes JSON lines or a text table.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "qconf/verify.hpp"

int main(int argc, char** argv) {
  using namespace qconf::verify;
  SuiteConfig cfg;
  std::string out_path, reading = "printed";
  bool off_cone = false, no_timing = false;

  CLI::App app{"Exact identity checks for q-deformed field equations"};
  app.add_option("suite", cfg.suite, "dalembert | maxwell | current | weyl | omega | algebra | classical")->required();
  app.add_option("--basis", cfg.basis, "hat | tilde | both");
  app.add_option("--s-max", cfg.s_max, "largest plane-wave index");
  app.add_option("--m-max", cfg.m_max, "largest solution degree");
  app.add_option("--n", cfg.n, "extra Weyl parameter for the limit checks");
  app.add_option("--p-poly", cfg.poly_spec, "c00,c10,c01,c20,c11,c02 exponent polynomial for P_s / Q_s");
  app.add_option("--seed", cfg.seed, "root seed");
  app.add_flag("--off-cone", off_cone, "skip cone reduction of residuals");
  app.add_option("--format", cfg.format, "json | text");
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--reading", reading, "printed | repaired");
  app.add_flag("--no-timing", no_timing, "write time_ms as 0 for byte-stable output");
  app.add_option("--threads", cfg.threads, "worker threads, 0 = all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.on_cone = !off_cone;
  cfg.timing = !no_timing;
  if (reading == "printed") {
    cfg.reading = qconf::Reading::printed;
  } else if (reading == "repaired") {
    cfg.reading = qconf::Reading::repaired;
  } else {
    std::cerr << "usage error: --reading must be printed or repaired\n";
    return 2;
  }
  try {
    cfg.validate();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  SuiteResult res;
  try {
    res = run_suite(cfg);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  if (res.exit_code == 3) {
    std::cerr << "rewrite step cap exceeded\n";
    return 3;
  }

  const std::string text = emit(res.reports, cfg.format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f || !(f << text)) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
  }
  return res.exit_code;
}
