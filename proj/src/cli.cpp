#include "conelab/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "conelab/convex.hpp"
#include "conelab/errors.hpp"
#include "conelab/logic.hpp"
#include "conelab/sampling.hpp"
#include "conelab/spectral.hpp"
#include "conelab/symmetry.hpp"
#include "conelab/transition.hpp"

namespace conelab::cli {

namespace {

using nlohmann::ordered_json;

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("expected a JSON array of numbers");
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<int>(i)] = j[i].get<double>();
  return v;
}

nlohmann::json parse_json_arg(const std::string& arg, const char* what) {
  // Accept inline JSON or a path to a JSON file.
  const auto parsed = nlohmann::json::parse(arg, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  std::ifstream in(arg);
  if (!in) throw ParseError(std::string("cannot parse ") + what +
                            " as JSON or open it as a file: " + arg);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad JSON in file ") + arg + ": " + e.what());
  }
  return j;
}

Polytope load_polytope(const std::string& arg) {
  try {
    return builtin_polytope(arg);
  } catch (const ParseError&) {
    // fall through to file loading
  }
  std::ifstream in(arg);
  if (!in) throw ParseError("cannot open polytope file " + arg);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("bad JSON in polytope file: " + std::string(e.what()));
  }
  if (!j.contains("vertices") || !j["vertices"].is_array() ||
      j["vertices"].empty())
    throw ParseError("polytope file needs a nonempty 'vertices' array");
  const auto& verts = j["vertices"];
  const int k = static_cast<int>(verts.size());
  const int d = static_cast<int>(verts[0].size());
  Eigen::MatrixXd m(k, d);
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(verts[i].size()) != d)
      throw ParseError("polytope vertices have inconsistent dimensions");
    for (int c = 0; c < d; ++c) m(i, c) = verts[i][c].get<double>();
  }
  return make_polytope(std::move(m));
}

ordered_json config_echo(const RunConfig& c) {
  ordered_json j;
  j["subcommand"] = c.subcommand;
  if (!c.algebra_spec.empty()) j["algebra"] = c.algebra_spec;
  if (!c.polytope.empty()) j["polytope"] = c.polytope;
  if (!c.element_json.empty()) j["element"] = c.element_json;
  if (!c.frames_json.empty()) j["frames"] = c.frames_json;
  if (c.subcommand == "logic") j["check"] = c.check;
  if (c.subcommand == "symmetry") j["level"] = c.level;
  if (c.subcommand == "theorem2") j["beta"] = c.beta;
  if (c.defect_scan > 0) j["defect_scan"] = c.defect_scan;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tolerance"] = c.tolerance;
  return j;
}

struct CheckList {
  ordered_json checks = ordered_json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, ordered_json detail) {
    detail["name"] = name;
    detail["pass"] = pass;
    ordered_json ordered;
    ordered["name"] = detail["name"];
    ordered["pass"] = detail["pass"];
    for (auto& [key, value] : detail.items()) {
      if (key != "name" && key != "pass") ordered[key] = value;
    }
    checks.push_back(ordered);
    all_pass = all_pass && pass;
  }
};

// ---------------------------------------------------------------------- //

void run_spectral(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const AlgebraPtr alg = make_algebra(c.algebra_spec);
  Element x = unit_element(alg);
  if (!c.element_json.empty())
    x = make_element(alg, vector_from_json(parse_json_arg(
                              c.element_json.c_str(), "--element")));
  const SpectralDecomposition d = spectral_decompose(x, c.seed);

  Element rebuilt = zero_element(alg);
  Element atom_sum = zero_element(alg);
  double frame_res = 0.0;
  for (int i = 0; i < d.eigenvalues.size(); ++i) {
    rebuilt = add(rebuilt, scale(d.atoms[i], d.eigenvalues[i]));
    atom_sum = add(atom_sum, d.atoms[i]);
    frame_res = std::max(
        frame_res, std::abs(trace_form(d.atoms[i], d.atoms[i]) - 1.0));
    for (int j = i + 1; j < d.eigenvalues.size(); ++j)
      frame_res =
          std::max(frame_res, std::abs(trace_form(d.atoms[i], d.atoms[j])));
  }
  const double rec =
      tnorm(sub(rebuilt, x)) / std::max(1.0, norm_inf(x));
  const double unit_res = tnorm(sub(atom_sum, unit_element(alg)));

  out.add("reconstruction", rec < c.tolerance, {{"residual", rec}});
  out.add("frame_orthonormality", frame_res < c.tolerance,
          {{"residual", frame_res}});
  out.add("frame_sums_to_unit", unit_res < c.tolerance,
          {{"residual", unit_res}});
  out.add("frame_size_is_rank",
          static_cast<int>(d.atoms.size()) == alg->rank(),
          {{"size", d.atoms.size()}, {"rank", alg->rank()}});

  extra["eigenvalues"] = vector_json(d.eigenvalues);
  ordered_json atoms = ordered_json::array();
  for (const Element& a : d.atoms) atoms.push_back(vector_json(a.coords));
  extra["atoms"] = atoms;
  extra["perturbed"] = d.perturbed;
}

void run_logic(const RunConfig& c, CheckList& out) {
  const AlgebraPtr alg = make_algebra(c.algebra_spec);
  Rng rng(c.seed);
  const int m = alg->rank();

  if (c.check == "orthogonality") {
    int disagreements = 0;
    double max_orth_pairing = 0.0;
    for (int s = 0; s < c.samples; ++s) {
      try {
        if (s % 2 == 0 && m >= 2) {
          const Frame f = random_frame(alg, 2, rng);
          const OrthogonalityReport r =
              are_orthogonal(f.atoms[0], f.atoms[1], c.tolerance);
          if (!r.orthogonal) ++disagreements;
          max_orth_pairing = std::max(max_orth_pairing, std::abs(r.pairing));
        } else {
          const Atom p = random_atom(alg, rng);
          const Atom q = random_atom(alg, rng);
          are_orthogonal(p, q, c.tolerance);
        }
      } catch (const InconsistentOrthogonality&) {
        ++disagreements;
      }
    }
    out.add("orthogonality_three_way_agreement", disagreements == 0,
            {{"samples", c.samples},
             {"disagreements", disagreements},
             {"max_orthogonal_pairing", max_orth_pairing}});
  } else if (c.check == "frames") {
    bool sizes_ok = true;
    double worst = 0.0;
    for (int s = 0; s < c.samples; ++s) {
      const int k = 1 + rng.uniform_int(m);
      const Frame partial = random_frame(alg, k, rng);
      const Frame full = complete_frame(alg, partial, rng.next_u64());
      if (full.size() != m) sizes_ok = false;
      Element sum = zero_element(alg);
      for (const Atom& a : full.atoms) sum = add(sum, a.element);
      worst = std::max(worst, tnorm(sub(sum, unit_element(alg))));
    }
    out.add("frame_completion", sizes_ok && worst < c.tolerance,
            {{"samples", c.samples},
             {"sizes_ok", sizes_ok},
             {"max_unit_residual", worst}});
  } else if (c.check == "orthomodularity") {
    double worst = 0.0;
    for (int s = 0; s < c.samples; ++s) {
      const Frame f = random_frame(alg, m, rng);
      // p from a strict subset, q = p plus at least one more atom.
      const int np = m >= 2 ? 1 + rng.uniform_int(m - 1) : 1;
      const int nq = std::min(m, np + 1 + rng.uniform_int(std::max(1, m - np)));
      Element p = zero_element(alg), q = zero_element(alg);
      for (int i = 0; i < np; ++i) p = add(p, f.atoms[i].element);
      for (int i = 0; i < nq; ++i) q = add(q, f.atoms[i].element);
      const Idempotent ip{p}, iq{q};
      const Idempotent meet = lattice_meet(iq, orthocomplement(ip));
      const Idempotent join = lattice_join(ip, meet);
      worst = std::max(worst, tnorm(sub(join.element, q)));
    }
    out.add("orthomodularity", worst < c.tolerance,
            {{"samples", c.samples}, {"max_residual", worst}});
  } else {
    throw ParseError("unknown logic check '" + c.check + "'");
  }
}

void run_transition(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const AlgebraPtr alg = make_algebra(c.algebra_spec);
  // With no explicit table request, fall back to a defect scan.
  int defect_scan = c.defect_scan;
  if (c.frames_json.empty() && defect_scan == 0) defect_scan = c.samples;
  if (!c.frames_json.empty()) {
    const nlohmann::json fj = parse_json_arg(c.frames_json.c_str(), "--frames");
    if (!fj.contains("row") || !fj.contains("col"))
      throw ParseError("--frames needs 'row' and 'col' atom lists");
    auto load_frame = [&](const nlohmann::json& arr) {
      std::vector<Atom> atoms;
      for (const auto& coords : arr)
        atoms.push_back(as_atom(make_element(alg, vector_from_json(coords))));
      return as_frame(std::move(atoms));
    };
    const TransitionTable table =
        transition_table(load_frame(fj["row"]), load_frame(fj["col"]));

    double min_p = 1.0, max_p = 0.0, worst_row_sum = 0.0;
    for (int i = 0; i < table.probs.rows(); ++i) {
      min_p = std::min(min_p, table.probs.row(i).minCoeff());
      max_p = std::max(max_p, table.probs.row(i).maxCoeff());
      if (table.col.size() == alg->rank())
        worst_row_sum = std::max(
            worst_row_sum, std::abs(table.probs.row(i).sum() - 1.0));
    }
    out.add("probabilities_in_range",
            min_p > -1e-12 && max_p < 1.0 + 1e-12,
            {{"min", min_p}, {"max", max_p}});
    if (table.col.size() == alg->rank())
      out.add("rows_sum_to_one", worst_row_sum < 1e-9,
              {{"max_residual", worst_row_sum}});
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < table.probs.rows(); ++i)
      rows.push_back(vector_json(table.probs.row(i).transpose()));
    extra["table"] = rows;
  }
  if (defect_scan > 0) {
    Rng rng(c.seed);
    double worst = 0.0;
    for (int s = 0; s < defect_scan; ++s) {
      const Atom p = random_atom(alg, rng);
      const Atom q = random_atom(alg, rng);
      worst = std::max(worst, symmetry_defect(p, q));
    }
    out.add("transition_symmetry", worst < 1e-9,
            {{"samples", defect_scan}, {"max_defect", worst}});
  }
}

ordered_json verdict_json(const SymmetryVerdict& v) {
  ordered_json j;
  j["level"] = to_string(v.level);
  j["holds"] = v.holds;
  j["classification_holds"] = v.classification_holds;
  j["samples_attempted"] = v.samples_attempted;
  j["samples_ok"] = v.samples_ok;
  j["max_residual"] = v.max_residual;
  if (!v.obstruction.empty()) j["obstruction"] = v.obstruction;
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

void run_symmetry(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const AlgebraPtr alg = make_algebra(c.algebra_spec);
  Rng rng(c.seed);
  const auto verdicts = symmetry_report(alg, c.samples, rng);
  ordered_json vj = ordered_json::array();
  for (const SymmetryVerdict& v : verdicts) {
    if (c.level != "all" && c.level != to_string(v.level)) continue;
    vj.push_back(verdict_json(v));
    out.add(std::string("symmetry_") + to_string(v.level) + "_consistent",
            v.holds == v.classification_holds,
            {{"holds", v.holds},
             {"classification_holds", v.classification_holds}});
  }
  if (vj.empty()) throw ParseError("unknown symmetry level '" + c.level + "'");
  extra["verdicts"] = vj;
}

void run_theorem2(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const AlgebraPtr alg = make_algebra(c.algebra_spec);
  Rng rng(c.seed);
  const BilinearForm base = make_invariant_form(alg, c.beta);
  const SelfDualFormResult r = build_self_dual_form(base, c.samples, rng);

  out.add("epsilon_matches_beta", std::abs(r.epsilon - c.beta) < 1e-9,
          {{"epsilon", r.epsilon}, {"beta", c.beta}});
  out.add("atom_norms", r.max_atom_norm_residual < c.tolerance,
          {{"max_residual", r.max_atom_norm_residual}});
  out.add("orthogonal_pairs_vanish",
          r.max_orthogonal_residual < c.tolerance,
          {{"max_residual", r.max_orthogonal_residual}});
  out.add("pairing_equals_transition_probability",
          r.max_transition_residual < c.tolerance,
          {{"max_residual", r.max_transition_residual}});
  out.add("unit_pairing_is_scaled_invariant_state",
          r.max_unit_pairing_residual < c.tolerance,
          {{"max_residual", r.max_unit_pairing_residual}});
  bool self_dual = true;
  ordered_json sd_detail;
  try {
    const SelfDualityReport sd = self_duality_check(r.result, c.samples, rng);
    sd_detail = {{"positive_pairs", sd.positive_pairs},
                 {"negative_witnesses", sd.negative_witnesses},
                 {"worst_positive_value", sd.worst_positive_value},
                 {"worst_witness_value", sd.worst_witness_value}};
  } catch (const SelfDualityViolated& e) {
    self_dual = false;
    sd_detail = {{"error", e.what()}};
  }
  out.add("self_duality", self_dual, sd_detail);

  extra["epsilon"] = r.epsilon;
  const Eigen::MatrixXd diff(
      r.result.gram -
      Eigen::MatrixXd(alg->gram_diag().asDiagonal()));
  extra["distance_to_trace_form"] = diff.cwiseAbs().maxCoeff();
}

void run_starstar(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const Polytope p = load_polytope(c.polytope);
  Rng rng(c.seed);
  const StarStarReport r =
      star_star_check(p, std::min(c.samples, 64), rng);
  ordered_json per_vertex = ordered_json::array();
  for (const VertexStarReport& v : r.per_vertex) {
    ordered_json j;
    j["vertex"] = v.vertex;
    j["values_at_vertices"] = vector_json(v.values_at_vertices);
    j["vertex_fit_residual"] = v.vertex_fit_residual;
    j["centroid_value"] = v.centroid_value;
    j["centroid_fit"] = v.centroid_fit;
    j["max_interior_gap"] = v.max_interior_gap;
    j["affine"] = v.affine;
    j["unique_peak"] = v.unique_peak;
    j["passes"] = v.passes;
    per_vertex.push_back(j);
  }
  extra["per_vertex"] = per_vertex;
  out.add("minimal_unit_peak_functions_affine_and_unique", r.property_holds,
          {{"vertices", p.count()}});
}

void run_distinguish(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const Polytope p = load_polytope(c.polytope);
  ordered_json pairs = ordered_json::array();
  for (int i = 0; i < p.count(); ++i) {
    for (int j = i + 1; j < p.count(); ++j) {
      const DistinguishResult r = perfectly_distinguishable(p, i, j);
      ordered_json pj;
      pj["pair"] = {i, j};
      pj["distinguishable"] = r.distinguishable;
      if (r.distinguishable) {
        pj["witness_offset"] = r.witness.offset;
        pj["witness_gradient"] = vector_json(r.witness.gradient);
      }
      pairs.push_back(pj);
    }
  }
  extra["pairs"] = pairs;
  out.add("distinguishability_scan", true,
          {{"pairs", pairs.size()}});
}

void run_polysym(const RunConfig& c, CheckList& out, ordered_json& extra) {
  const Polytope p = load_polytope(c.polytope);
  const PolytopeBitSymmetry r = polytope_bit_symmetry(p);
  extra["automorphism_group_order"] = r.automorphisms;
  extra["distinguishable_ordered_pairs"] = r.distinguishable_pairs;
  ordered_json detail;
  detail["automorphisms"] = r.automorphisms;
  if (!r.obstruction.empty()) detail["obstruction"] = r.obstruction;
  out.add("polytope_bit_symmetry", r.holds, detail);
}

void run_catalog(CheckList& out, ordered_json& extra) {
  extra["algebras"] = catalog_specs();
  extra["polytopes"] = builtin_polytope_names();
  extra["algebra_spec_grammar"] =
      "classical:n | herm_r:n | herm_c:n | herm_h:n | spin:k | albert | "
      "sum:<spec>+<spec>+...";
  out.add("catalog", true, {});
}

std::string render_text(const ordered_json& report) {
  std::ostringstream os;
  os << "conelab " << report["config"]["subcommand"].get<std::string>()
     << "\n";
  for (const auto& check : report["checks"]) {
    os << (check["pass"].get<bool>() ? "PASS " : "FAIL ")
       << check["name"].get<std::string>();
    for (const auto& [key, value] : check.items()) {
      if (key == "name" || key == "pass") continue;
      os << "  " << key << "=" << value.dump();
    }
    os << "\n";
  }
  os << (report["pass"].get<bool>() ? "OK" : "REFUTED") << "\n";
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& c) {
  RunResult result;
  ordered_json report;
  report["schema"] = "conelab-report/1";
  report["config"] = config_echo(c);
  CheckList checks;
  ordered_json extra;

  try {
    if (c.samples < 1) throw ParseError("--samples must be at least 1");
    if (c.tolerance <= 0.0) throw ParseError("--tolerance must be positive");
    if (c.subcommand == "spectral") {
      run_spectral(c, checks, extra);
    } else if (c.subcommand == "logic") {
      run_logic(c, checks);
    } else if (c.subcommand == "transition") {
      run_transition(c, checks, extra);
    } else if (c.subcommand == "symmetry") {
      run_symmetry(c, checks, extra);
    } else if (c.subcommand == "theorem2") {
      run_theorem2(c, checks, extra);
    } else if (c.subcommand == "starstar") {
      run_starstar(c, checks, extra);
    } else if (c.subcommand == "distinguish") {
      run_distinguish(c, checks, extra);
    } else if (c.subcommand == "polysym") {
      run_polysym(c, checks, extra);
    } else if (c.subcommand == "catalog") {
      run_catalog(checks, extra);
    } else {
      throw ParseError("unknown subcommand '" + c.subcommand + "'");
    }
  } catch (const Error& e) {
    // Errors at the input boundary are exit code 2; anything downstream is
    // a structured report entry.
    const bool input_error =
        dynamic_cast<const ParseError*>(&e) != nullptr ||
        dynamic_cast<const InvalidKind*>(&e) != nullptr ||
        dynamic_cast<const InvalidPolytope*>(&e) != nullptr ||
        dynamic_cast<const DimensionMismatch*>(&e) != nullptr;
    if (input_error) {
      report["error"] = {{"code", e.code()}, {"message", e.what()}};
      report["pass"] = false;
      result.report = report;
      result.exit_code = 2;
      result.rendered = c.format == "text" ? std::string(e.what()) + "\n"
                                           : report.dump(2) + "\n";
      return result;
    }
    checks.add(std::string("error_") + e.code(), false,
               {{"message", e.what()}});
  }

  report["checks"] = checks.checks;
  if (!extra.empty()) report["results"] = extra;
  report["pass"] = checks.all_pass;
  result.report = report;
  result.exit_code = checks.all_pass ? 0 : 1;
  result.rendered =
      c.format == "text" ? render_text(report) : report.dump(2) + "\n";
  return result;
}

}  // namespace conelab::cli
