#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "conelab/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"conelab: numerical checks for symmetric state spaces"};
  app.require_subcommand(1);

  conelab::cli::RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--samples", cfg.samples, "sample count");
    sub->add_option("--seed", cfg.seed, "random seed (always reported)");
    sub->add_option("--tolerance", cfg.tolerance, "residual tolerance");
    sub->add_option("--format", cfg.format, "json | text");
  };

  auto* spectral = app.add_subcommand("spectral", "spectral decomposition");
  spectral->add_option("--algebra", cfg.algebra_spec)->required();
  spectral->add_option("--element", cfg.element_json,
                       "JSON coordinate array (default: the unit)");
  add_common(spectral);

  auto* logic = app.add_subcommand("logic", "effect-lattice checks");
  logic->add_option("--algebra", cfg.algebra_spec)->required();
  logic->add_option("--check", cfg.check,
                    "orthogonality | frames | orthomodularity");
  add_common(logic);

  auto* transition = app.add_subcommand("transition", "transition tables");
  transition->add_option("--algebra", cfg.algebra_spec)->required();
  transition->add_option("--frames", cfg.frames_json,
                         "JSON {row:[...],col:[...]} or a file path");
  transition->add_option("--defect-scan", cfg.defect_scan,
                         "sample count for the symmetry-defect scan");
  add_common(transition);

  auto* symmetry = app.add_subcommand("symmetry", "transporter verdicts");
  symmetry->add_option("--algebra", cfg.algebra_spec)->required();
  symmetry->add_option("--level", cfg.level,
                       "weak | exchange | bit | strong | all");
  add_common(symmetry);

  auto* theorem2 =
      app.add_subcommand("theorem2", "self-dualizing inner product");
  theorem2->add_option("--algebra", cfg.algebra_spec)->required();
  theorem2->add_option("--beta", cfg.beta, "invariant-form parameter");
  add_common(theorem2);

  auto* starstar = app.add_subcommand(
      "starstar", "minimal unit-peak affine-function property");
  starstar->add_option("--polytope", cfg.polytope)->required();
  add_common(starstar);

  auto* distinguish =
      app.add_subcommand("distinguish", "perfect distinguishability scan");
  distinguish->add_option("--polytope", cfg.polytope)->required();
  add_common(distinguish);

  auto* polysym =
      app.add_subcommand("polysym", "affine symmetries + bit symmetry");
  polysym->add_option("--polytope", cfg.polytope)->required();
  add_common(polysym);

  auto* catalog =
      app.add_subcommand("catalog", "built-in algebras and polytopes");
  add_common(catalog);

  CLI11_PARSE(app, argc, argv);

  for (CLI::App* sub : {spectral, logic, transition, symmetry, theorem2,
                        starstar, distinguish, polysym, catalog}) {
    if (sub->parsed()) cfg.subcommand = sub->get_name();
  }

  const conelab::cli::RunResult r = conelab::cli::run(cfg);
  std::cout << r.rendered;
  return r.exit_code;
}
