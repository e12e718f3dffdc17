#include "wstar/cli.hpp"

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wstar/constructions.hpp"
#include "wstar/errors.hpp"
#include "wstar/io.hpp"
#include "wstar/verify.hpp"

namespace wstar {

namespace {

std::string pair_name(const EigenPair& p, std::size_t index) {
  return p.label ? "L" + std::to_string(*p.label) : "#" + std::to_string(index + 1);
}

void print_pairs(std::ostream& out, const std::vector<EigenPair>& pairs) {
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    out << "  " << pair_name(p, i) << " = " << p.value << "\n"
        << "    x = " << p.vector << "\n"
        << "    <x,x> = " << p.support << "\n";
  }
}

bool print_checks(std::ostream& out, const std::vector<CheckLine>& lines) {
  bool ok = true;
  for (const auto& line : lines) {
    out << (line.ok ? "PASS  " : "FAIL  ") << line.name << "  (" << std::setprecision(3) << line.value
        << ")\n";
    ok = ok && line.ok;
  }
  out << std::setprecision(6);
  return ok;
}

void print_report(std::ostream& out, const VerificationReport& r) {
  auto mark = [](bool ok) { return ok ? "ok  " : "FAIL"; };
  out << std::setprecision(3);
  out << "  (i)   " << mark(r.condition_i_ok()) << " residual " << r.condition_i_residual << "\n"
      << "  (ii)  " << mark(r.condition_ii) << " smallest singular value " << r.complement_singular_value
      << "\n"
      << "  (iii) " << mark(r.condition_iii_ok()) << " orthogonality " << r.orthogonality_residual
      << ", projection defect " << r.projection_defect << "\n"
      << "  (iv)  " << mark(r.condition_iv_ok()) << " residual " << r.condition_iv_residual << "\n";
  if (r.ordering_checked) {
    out << "  order " << mark(r.ordering_ok) << (r.ordering_labels_derived ? " (derived labels)" : "")
        << "\n";
    for (const auto& rel : r.ordering) out << "        " << rel.to_string() << (rel.verified ? "" : "  FAILED") << "\n";
  }
  out << "  moments " << mark(r.oracle_ok) << " max relative deviation " << r.oracle_max_deviation << "\n"
      << "  overall " << (r.overall ? "pass" : "fail") << "\n";
  out << std::setprecision(6);
}

int cmd_diagonalize(const std::string& input, const std::string& out_path, bool normal,
                    const VerifyOptions& options, std::ostream& out) {
  const ModuleOperator k = problem_from_json(read_json_file(input));
  const DiagonalizeOptions diag_options{options.tol};
  const DiagonalizationResult result =
      normal ? diagonalize_normal(k, diag_options) : diagonalize_selfadjoint(k, diag_options);
  const VerificationReport report = verify_definition2(k, result, options);

  Json doc;
  doc["schema"] = kSchemaVersion;
  doc["result"] = solution_to_json(result);
  doc["verification"] = report_to_json(report);
  if (out_path.empty()) {
    out << to_canonical_string(doc);
  } else {
    write_text_file(out_path, to_canonical_string(doc));
    out << "eigenpairs:\n";
    print_pairs(out, result.pairs);
    out << "verification:\n";
    print_report(out, report);
  }
  return report.overall ? kPass : kVerificationFailure;
}

int cmd_verify(const std::string& input, const std::string& solution, const std::string& out_path,
               const VerifyOptions& options, std::ostream& out) {
  const ModuleOperator k = problem_from_json(read_json_file(input));
  Json doc = read_json_file(solution);
  // A diagonalize report carries the solution under "result".
  if (doc.is_object() && doc.contains("result")) doc = Json(doc["result"]);
  const DiagonalizationResult result = solution_from_json(doc, k.module());
  const VerificationReport report = verify_definition2(k, result, options);
  if (!out_path.empty()) {
    Json written;
    written["schema"] = kSchemaVersion;
    written["verification"] = report_to_json(report);
    write_text_file(out_path, to_canonical_string(written));
  }
  out << "verification:\n";
  print_report(out, report);
  return report.overall ? kPass : kVerificationFailure;
}

int cmd_example8(const std::string& emit, double tol, std::ostream& out) {
  const Example8 ex = construct_example8();
  if (!emit.empty()) write_text_file(emit, to_canonical_string(problem_to_json(ex.k)));
  out << "K = theta(x,x) + theta(y,y) on " << ex.algebra << "^2\n";
  out << "  x = " << ex.x << "\n  y = " << ex.y << "\n";
  for (const EigenFamily* family : {&ex.generating, &ex.unit, &ex.invariant_submodule}) {
    out << family->name
        << (family->relation == EigenRelation::left ? "  [K(x) = L x]" : "  [K(x) = x L]") << ":\n";
    print_pairs(out, family->pairs);
  }
  const DiagonalizationResult diag = diagonalize_selfadjoint(ex.k);
  out << "diagonalizer:\n";
  print_pairs(out, diag.pairs);
  out << "checks:\n";
  return print_checks(out, reproduce_example8(tol)) ? kPass : kVerificationFailure;
}

int cmd_prop4(int n, std::vector<double> alphas, const std::string& emit, double tol, std::ostream& out) {
  if (alphas.empty()) alphas = geometric_alphas(n);
  const Prop4Construction c = construct_prop4(n, alphas);
  if (!emit.empty()) write_text_file(emit, to_canonical_string(problem_to_json(c.k)));
  out << "K(e1) = sum_n alpha_n p_n e_n, K(e_j) = alpha_j p_j e1 on " << c.algebra << "^" << n << "\n";
  out << "proof eigenpairs:\n";
  print_pairs(out, c.expected);
  out << "diagonalizer:\n";
  print_pairs(out, diagonalize_selfadjoint(c.k).pairs);
  out << "checks:\n";
  return print_checks(out, reproduce_prop4(n, alphas, tol)) ? kPass : kVerificationFailure;
}

int cmd_spectrum(const std::string& input, std::ostream& out) {
  const ModuleOperator k = problem_from_json(read_json_file(input));
  if (self_adjoint_defect(k) > 1e-9 * (1 + op_norm(k)))
    throw DomainError("spectrum: operator is not self-adjoint");
  const auto spectra = block_spectra(k);
  out << std::setprecision(12);
  for (std::size_t b = 0; b < spectra.size(); ++b) {
    out << "block " << b << " (M" << k.module().shape().block_size(static_cast<int>(b)) << "):";
    for (double v : spectra[b]) out << ' ' << v;
    out << "\n";
  }
  out << std::setprecision(6);
  return kPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Diagonalization of self-adjoint and normal operators on Hilbert modules over "
               "finite-dimensional W*-algebras"};
  app.require_subcommand(1);

  std::string input, solution, out_path, emit;
  VerifyOptions options;
  bool normal = false;
  int prop4_n = 0;
  std::vector<double> alphas;
  double fixture_tol = 0;

  auto add_verify_options = [&](CLI::App* sub) {
    sub->add_option("--tol", options.tol, "Residual tolerance")->capture_default_str();
    sub->add_option("--moment-tol", options.moment_tol, "Relative moment tolerance")->capture_default_str();
    sub->add_option("--max-moment", options.max_moment, "Highest moment compared")->capture_default_str();
  };

  auto* diag = app.add_subcommand("diagonalize", "Diagonalize a problem file and verify the result");
  diag->add_option("--input", input, "Problem JSON")->required();
  diag->add_option("--out", out_path, "Report JSON (stdout when omitted)");
  diag->add_flag("--normal", normal, "Use the normal-operator path (no ordering)");
  add_verify_options(diag);

  auto* verify = app.add_subcommand("verify", "Verify a supplied diagonalization");
  verify->add_option("--input", input, "Problem JSON")->required();
  verify->add_option("--solution", solution, "Solution JSON")->required();
  verify->add_option("--out", out_path, "Report JSON");
  add_verify_options(verify);

  auto* ex8 = app.add_subcommand("example8", "Rank-two operator on M2(C)^2 and its eigenvector families");
  ex8->add_option("--emit", emit, "Write the problem JSON here");
  auto* ex8_tol = ex8->add_option("--tol", fixture_tol, "Residual tolerance (default 1e-12)");

  auto* prop4 = app.add_subcommand("prop4", "Operator built from N central projections");
  prop4->add_option("--n", prop4_n, "Number of central projections")->required();
  prop4->add_option("--alphas", alphas, "Comma-separated weights (default 2^-n)")->delimiter(',');
  prop4->add_option("--emit", emit, "Write the problem JSON here");
  auto* prop4_tol = prop4->add_option("--tol", fixture_tol, "Residual tolerance (default 1e-10)");

  auto* spectrum = app.add_subcommand("spectrum", "Per-block scalar spectra of a self-adjoint problem");
  spectrum->add_option("--input", input, "Problem JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kPass;
    }
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (diag->parsed()) return cmd_diagonalize(input, out_path, normal, options, out);
    if (verify->parsed()) return cmd_verify(input, solution, out_path, options, out);
    if (ex8->parsed()) return cmd_example8(emit, ex8_tol->count() ? fixture_tol : 1e-12, out);
    if (prop4->parsed())
      return cmd_prop4(prop4_n, alphas, emit, prop4_tol->count() ? fixture_tol : 1e-10, out);
    if (spectrum->parsed()) return cmd_spectrum(input, out);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ShapeError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConvergenceError& e) {
    err << "eigensolver failure: " << e.what() << "\n";
    return kVerificationFailure;
  }
  return kInputError;
}

}  // namespace wstar
