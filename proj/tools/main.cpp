#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "system_file.hpp"

int main(int argc, char** argv) {
  using namespace symsys::cli;
  CLI::App app{"Analyze symmetric first-order systems J f' + B f = lambda H f"};
  app.set_version_flag("--version", SYMSYS_VERSION);
  Options opt;
  std::string truncations;
  std::vector<double> interval, support;
  app.add_option("command", opt.command, "validate | reduce | definite | deficiency | certify | shubin | embed-sl | square")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("file", opt.file, "system file")->required();
  app.add_option("--tol", opt.tol,
                 "tolerance (default 1e-10; 1e-8 for reduce, definite and shubin; classification reltol 1e-11 "
                 "for deficiency)");
  app.add_option("--grid", opt.grid, "grid points per piece (default 512)");
  app.add_option("--truncations", truncations, "comma list of distances from x0 (default 1,2,3,4,6,8)");
  app.add_option("--lambda", opt.lambda, "complex literal a+bi (default 0 for definite, i for deficiency)");
  app.add_option("--json", opt.json_path, "write the JSON report to PATH");
  app.add_option("--route", opt.route, "auto | weighted | hamiltonian | sturm-liouville (default auto)");
  app.add_option("--interval", interval, "compact interval a b for definite")->expected(2);
  app.add_option("--f1", opt.f1, "n x 1 test function for shubin (default: a quartic bump)");
  app.add_option("--support", support, "support a b of --f1")->expected(2);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    if (!truncations.empty()) opt.truncations = parse_number_list(truncations);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
  if (interval.size() == 2) opt.interval = std::make_pair(interval[0], interval[1]);
  if (support.size() == 2) opt.support = std::make_pair(support[0], support[1]);

  const Outcome out = run_file(opt);
  (out.exit_code == kExitOk ? std::cout : std::cerr) << out.text;
  if (opt.json_path) {
    std::ofstream js(*opt.json_path, std::ios::binary);
    if (!js) {
      std::cerr << "cannot write " << *opt.json_path << "\n";
      return kExitInput;
    }
    js << out.report.dump(2) << "\n";
  }
  return out.exit_code;
}
