// isometrica: seeded sweeps, galleries, path building and decomposition reports.
//
// Exit codes: 0 success, 1 violation or failed certificate (report still
// written), 2 bad configuration, unreadable input or failed precondition.

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "isometrica/continuity.hpp"
#include "isometrica/error.hpp"
#include "isometrica/harness.hpp"
#include "isometrica/homotopy.hpp"
#include "isometrica/json_io.hpp"
#include "isometrica/projection_geometry.hpp"

namespace {

using namespace isometrica;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;

void add_tolerance_flags(CLI::App* cmd, ToleranceConfig& tol) {
  cmd->add_option("--tol-rank", tol.rank_tol, "relative rank cutoff")->capture_default_str();
  cmd->add_option("--tol-iso", tol.iso_tol, "partial-isometry residual tolerance")->capture_default_str();
  cmd->add_option("--tol-eig", tol.eig_tol, "eigensolver convergence tolerance")->capture_default_str();
  cmd->add_option("--path-step", tol.path_step_max, "largest allowed step between path samples")
      ->capture_default_str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isometrica: partial isometries at desk scale"};
  app.require_subcommand(1);

  RunConfig run;
  std::string which;
  std::string format = "json";
  auto* sweep = app.add_subcommand("sweep", "seeded randomized sweep; exit 1 on any violation");
  sweep->add_option("which", which, "thm1 | thm7 | thm4 | thm5 | thm8")->required();
  sweep->add_option("--seed", run.seed)->capture_default_str();
  sweep->add_option("--trials", run.trials)->capture_default_str();
  sweep->add_option("--max-dim", run.max_dim, "largest block dimension, 2..64")->capture_default_str();
  sweep->add_option("--format", format, "json | csv")->capture_default_str();
  sweep->add_option("--out", run.output_path, "report file; stdout when absent");
  sweep->add_option("--d-min", run.d_min, "lower end of the ||u - v|| window (thm7, thm4, thm5)");
  sweep->add_option("--d-max", run.d_max, "upper end of the ||u - v|| window (thm7, thm4, thm5)");
  add_tolerance_flags(sweep, run.tolerances);

  std::string gallery_kind;
  GalleryParams gallery_params;
  ToleranceConfig gallery_tol;
  std::string gallery_out;
  auto* gallery = app.add_subcommand("gallery", "constructed equality cases and counterexamples");
  gallery->add_option("kind", gallery_kind, "thm7_sharpness | thm1_equality | counterexamples")->required();
  gallery->add_option("--points", gallery_params.points, "theta grid size")->capture_default_str();
  gallery->add_option("--pad", gallery_params.pad, "identity padding dimension")->capture_default_str();
  gallery->add_option("--out", gallery_out);
  add_tolerance_flags(gallery, gallery_tol);

  std::string u_file, v_file, mode = "thm4", path_out;
  std::size_t resolution = 16;
  ToleranceConfig path_tol;
  auto* path = app.add_subcommand("path", "certified homotopy between two partial isometries");
  path->add_option("u", u_file)->required()->check(CLI::ExistingFile);
  path->add_option("v", v_file)->required()->check(CLI::ExistingFile);
  path->add_option("--mode", mode, "thm4 (||u - v|| < 1) | thm5 (extremal, ||u - v|| < 2)")->capture_default_str();
  path->add_option("--resolution", resolution, "initial grid points per stage")->capture_default_str();
  path->add_option("--out", path_out);
  add_tolerance_flags(path, path_tol);

  std::string p_file, q_file, decomp_out;
  ToleranceConfig decomp_tol;
  auto* decomp = app.add_subcommand("decomp", "canonical form of two projections");
  decomp->add_option("p", p_file)->required()->check(CLI::ExistingFile);
  decomp->add_option("q", q_file)->required()->check(CLI::ExistingFile);
  decomp->add_option("--out", decomp_out);
  add_tolerance_flags(decomp, decomp_tol);

  std::string a_file, criterion_out;
  ToleranceConfig criterion_tol;
  auto* criterion = app.add_subcommand("criterion", "continuity of the polar map at an operator");
  criterion->add_option("a", a_file)->required()->check(CLI::ExistingFile);
  criterion->add_option("--out", criterion_out);
  add_tolerance_flags(criterion, criterion_tol);

  std::string family_file, family_out;
  std::size_t x0_index = 0, window = 1;
  ToleranceConfig family_tol;
  auto* family = app.add_subcommand("family", "sampled continuity experiment on an operator family");
  family->add_option("family", family_file)->required()->check(CLI::ExistingFile);
  family->add_option("--x0-index", x0_index)->capture_default_str();
  family->add_option("--window", window)->capture_default_str();
  family->add_option("--out", family_out);
  add_tolerance_flags(family, family_tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*sweep) {
      const auto kind = parse_sweep_kind(which);
      if (!kind) throw Error(ErrorKind::kInvalidArgument, "unknown sweep '" + which + "'");
      if (format == "json") {
        run.format = ReportFormat::kJson;
      } else if (format == "csv") {
        run.format = ReportFormat::kCsv;
      } else {
        throw Error(ErrorKind::kInvalidArgument, "format must be json or csv");
      }
      const SweepReport report = run_sweep(*kind, run);
      write_text(run.output_path, render_report(report, run.format));
      std::cerr << to_string(*kind) << ": checked " << report.summary.checked << ", violations "
                << report.summary.violations << ", skipped " << report.summary.skipped << "\n";
      return report.passed() ? kExitOk : kExitViolation;
    }

    if (*gallery) {
      const auto kind = parse_gallery_kind(gallery_kind);
      if (!kind) throw Error(ErrorKind::kInvalidArgument, "unknown gallery '" + gallery_kind + "'");
      write_text(gallery_out, dump(build_gallery(*kind, gallery_params, gallery_tol)));
      return kExitOk;
    }

    if (*path) {
      if (mode != "thm4" && mode != "thm5") throw Error(ErrorKind::kInvalidArgument, "mode must be thm4 or thm5");
      if (resolution < 2) throw Error(ErrorKind::kInvalidArgument, "resolution must be at least 2");
      path_tol.validate();
      const BlockOperator u = block_operator_from_json(read_json_file(u_file));
      const BlockOperator v = block_operator_from_json(read_json_file(v_file));
      const bool extremal = mode == "thm5";
      IsometryPath built;
      try {
        built = extremal ? extremal_path(u, v, resolution, path_tol) : partial_isometry_path(u, v, resolution, path_tol);
      } catch (const Error& e) {
        // A construction that could not meet the step bound is a certificate failure.
        if (e.kind() != ErrorKind::kStepTooLarge && e.kind() != ErrorKind::kNoConvergence) throw;
        std::cerr << "path: " << e.what() << "\n";
        return kExitViolation;
      }
      const PathCertificate cert = verify_path(built, extremal, path_tol, PathEndpoints{u, v});
      write_text(path_out, dump(to_json(built, cert)));
      return cert.passed ? kExitOk : kExitViolation;
    }

    if (*decomp) {
      decomp_tol.validate();
      const ComplexMatrix p = matrix_from_json(read_json_file(p_file));
      const ComplexMatrix q = matrix_from_json(read_json_file(q_file));
      write_text(decomp_out, dump(to_json(five_part_decomposition(p, q, decomp_tol))));
      return kExitOk;
    }

    if (*criterion) {
      criterion_tol.validate();
      const BlockOperator a = block_operator_from_json(read_json_file(a_file));
      write_text(criterion_out, dump(to_json(continuity_criterion(a, criterion_tol))));
      return kExitOk;
    }

    if (*family) {
      family_tol.validate();
      const auto samples = family_from_json(read_json_file(family_file));
      write_text(family_out, dump(to_json(sampled_continuity_experiment(samples, x0_index, family_tol, window))));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
