#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "teichcells/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kInvalidInput = 1, kNumerical = 2, kVerificationFailed = 3 };

void print(const teichcells::cli::Json& j) { std::cout << j.dump(2) << '\n'; }

void report_error(const std::string& kind, const std::string& what,
                  teichcells::cli::Json extra = teichcells::cli::Json::object()) {
  extra["error"] = kind;
  extra["message"] = what;
  std::cerr << extra.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace teichcells::cli;
  CommandOptions o;

  CLI::App app{"Delaunay cell decompositions and arc-complex coordinates of bordered hyperbolic surfaces"};
  // "-h" would clash with the --h exponent option.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.add_option("--tol", o.tolerance, "Zero tolerance for psi_0 (default 1e-9)");

  auto add_surface = [&](CLI::App* cmd) {
    cmd->add_option("--surface", o.surface, "Bundled surface name or surface JSON file")->required();
  };
  auto add_metric = [&](CLI::App* cmd) {
    cmd->add_option("--metric", o.metric, "Metric JSON file (or a sample file)")->required();
    cmd->add_option("--metric-index", o.metric_index, "Entry of a sample file's metric list");
  };

  auto* surface = app.add_subcommand("surface", "Surface queries");
  surface->require_subcommand(1);
  auto* info = surface->add_subcommand("info", "Topology of a triangulated surface");
  add_surface(info);

  auto* psi = app.add_subcommand("psi", "psi_h coordinates of a metric");
  add_surface(psi);
  add_metric(psi);
  psi->add_option("--h", o.h, "Exponent h >= 0")->required();

  auto* del = app.add_subcommand("delaunay", "Flip to the Delaunay triangulation");
  add_surface(del);
  add_metric(del);
  del->add_flag("--emit-dev", o.emit_development,
                "Include developed hexagons and incircles for plotting");

  auto* pi = app.add_subcommand("pi", "Arc-complex point Pi_h of a metric");
  add_surface(pi);
  add_metric(pi);
  pi->add_option("--h", o.h, "Exponent h >= 0")->required();

  auto* inv = app.add_subcommand("pi-inverse", "Metric realizing an arc-complex point");
  inv->add_option("--point", o.point, "Point JSON file")->required();
  inv->add_option("--anchor", o.anchor, "Fan anchor offset for the completion");

  auto* sample = app.add_subcommand("sample", "Random metrics, lengths exp(U[-1.2, 1.2])");
  add_surface(sample);
  sample->add_option("--count", o.count, "Number of metrics");
  sample->add_option("--seed", o.seed, "Seed");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", o.suite, "hexagon, lemma31, sign, roundtrip, delaunay, inverse, continuity or all");
  verify->add_option("--samples", o.samples, "Samples per check");
  verify->add_option("--seed", o.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (info->parsed()) print(surface_info(o));
    if (psi->parsed()) print(psi_command(o));
    if (del->parsed()) print(delaunay_command(o));
    if (pi->parsed()) print(pi_command(o));
    if (inv->parsed()) print(pi_inverse_command(o));
    if (sample->parsed()) print(sample_command(o));
    if (verify->parsed()) {
      const auto report = verify_command(o);
      print(report.to_json());
      return report.passed() ? kOk : kVerificationFailed;
    }
  } catch (const teichcells::NoConvergence& err) {
    report_error("NoConvergence", err.what(), {{"residuals", err.residuals()}});
    return kNumerical;
  } catch (const teichcells::NonTermination& err) {
    report_error("NonTermination", err.what(), {{"flips", err.flips()}});
    return kNumerical;
  } catch (const teichcells::Error& err) {
    const bool numerical = err.error_class() == teichcells::ErrorClass::Numerical;
    report_error(numerical ? "NumericalFailure" : "InvalidInput", err.what());
    return numerical ? kNumerical : kInvalidInput;
  } catch (const nlohmann::json::exception& err) {
    report_error("InvalidInput", err.what());
    return kInvalidInput;
  }
  return kOk;
}
