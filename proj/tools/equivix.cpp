#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "equivix/cli.hpp"

namespace {

int emit(const equivix::cli::CommandOutput& out, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << out.body;
  } else {
    std::ofstream f(path);
    if (!f) {
      std::cerr << "usage: cannot write " << path << "\n";
      return equivix::cli::kExitUsage;
    }
    f << out.body;
  }
  if (!out.message.empty()) std::cerr << out.message << "\n";
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equivariant index and semiclassical experiments"};
  app.require_subcommand(1);

  equivix::cli::RunManifest m;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", m.output, "write the result here instead of stdout");
    sub->add_option("--seed", seed, "seed for sampled checks")->each([&](const std::string&) {
      m.seed = seed;
    });
  };

  auto* index = app.add_subcommand("index", "equivariant index of a symbol at g");
  index->add_option("--symbol", m.symbol, "bott-dirac:N or a symbol file")->required();
  index->add_option("--g", m.g, "identity | rotation:t | blockrot:t1,t2,... | matrix file");
  index->add_option("--method", m.method, "auto | integral | fixed-point");
  index->add_option("--tol", m.tol, "relative quadrature tolerance");
  index->add_option("--nodes", m.nodes, "Gauss-Legendre nodes per panel");
  index->add_option("--max-level", m.max_level, "deepest refinement level");
  add_common(index);

  auto* verify = app.add_subcommand("verify", "run the property checks of a manifest");
  verify->add_option("--manifest", m.input, "check manifest (built-in default if absent)");
  add_common(verify);

  auto* converge = app.add_subcommand("converge", "run a convergence experiment, CSV out");
  converge->add_option("experiment", m.input, "experiment file")->required();
  add_common(converge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return equivix::cli::kExitUsage;
  }

  m.command = app.get_subcommands().front()->get_name();
  return emit(equivix::cli::run(m), m.output);
}
