#include <string>

#include <CLI11.hpp>

#include "spherequant/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spherequant: Berezin quantization workbench on products of 2-spheres"};
  app.require_subcommand(1);

  struct SubSpec {
    const char* name;
    const char* description;
  };
  static constexpr SubSpec subs[] = {
      {"quantize", "quantize a polynomial and write the matrix with its spectral norm"},
      {"sweep", "run a semiclassical sweep (dgr | product | norm_gap | cw_defect | norm_limit | classical_limit)"},
      {"kms", "check the KMS boundary identity for Gibbs or product states"},
      {"resolvent", "validate the contour-integral resolvent composition"},
  };

  sq::harness::CliOptions options;
  for (const auto& spec : subs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--config", options.config_path, "config file (key = value lines)")
        ->required();
    sub->add_option("--out", options.out_path, "output path ('-' for stdout)");
    sub->add_option("--format", options.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--check", options.check, "enable pass/fail exit codes");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sq::harness::kExitInputError;
  }

  return sq::harness::run_command(app.get_subcommands().front()->get_name(), options);
}
