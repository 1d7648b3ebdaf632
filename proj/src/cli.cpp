#include "canonica/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <optional>

#include "canonica/acceptance.hpp"
#include "canonica/canon_congruence.hpp"
#include "canonica/canon_star.hpp"
#include "canonica/equivalence.hpp"
#include "canonica/error.hpp"
#include "canonica/iteration.hpp"
#include "canonica/json_io.hpp"
#include "canonica/predicates.hpp"
#include "canonica/regularization.hpp"

namespace canonica::cli {

namespace {

using io::json;

struct Config {
  bool congruence = false;
  bool star = false;
  bool h2 = false;
  bool triangular = false;
  std::string style;
  std::optional<double> rank_rtol, residual_rtol, cluster_rtol;
  std::string output;
  bool verify = false;
  std::size_t steps = 1000;
  std::string x0;
  std::uint64_t seed = acceptance::Options{}.seed;
  std::string fixtures;
  std::vector<std::string> files;
  std::string command;
};

ToleranceConfig tolerances(const Config& c) {
  ToleranceConfig t;
  if (c.rank_rtol) t.rank_rtol = *c.rank_rtol;
  if (c.residual_rtol) t.residual_rtol = *c.residual_rtol;
  if (c.cluster_rtol) t.cluster_rtol = *c.cluster_rtol;
  try {
    t.validate();
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return t;
}

bool star_mode(const Config& c) { return c.star; }

json header(const std::string& command) { return {{"schema", io::kSchema}, {"command", command}}; }

Matrix load_square(const std::string& path) {
  Matrix m = io::read_matrix_file(path);
  if (!m.is_square())
    throw ParseError(path + ": matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                     ", a square matrix is required");
  return m;
}

void need_files(const Config& c, std::size_t k) {
  if (c.files.size() != k)
    throw ParseError(c.command + " takes " + std::to_string(k) + " input file" + (k == 1 ? "" : "s"));
}

UnitaryStyle parse_style(const std::string& s) {
  if (s == "h2") return UnitaryStyle::h2;
  if (s == "real_orthogonal") return UnitaryStyle::real_orthogonal;
  if (s == "hermitian_unitary") return UnitaryStyle::hermitian_unitary;
  throw ParseError("unknown style " + s);
}

// A back from T and the assembled blocks, read out of the serialized report
double verify_report(const json& report, const Matrix& a, bool star) {
  const json j = json::parse(report.dump());
  const Matrix t = io::matrix_from_json(j.at("transform"));
  Matrix f;
  if (j.contains("blocks"))
    f = io::block_list_from_json(j.at("blocks")).assemble();
  else if (star)
    f = assemble_star(io::star_form_from_json(j.at("form")));
  else
    f = assemble_congruence(io::congruence_form_from_json(j.at("form")));
  const Matrix back = star ? adjoint(t) * f * t : adjoint(t) * f * conj(t);
  return relative_residual(a, back);
}

int cmd_classify(const Config& c, json& out) {
  need_files(c, 1);
  const ToleranceConfig tol = tolerances(c);
  const Matrix a = load_square(c.files[0]);
  out = header("classify");
  out["report"] = io::to_json(classify(a, tol));
  return kOk;
}

int cmd_canon(const Config& c, json& out) {
  need_files(c, 1);
  const ToleranceConfig tol = tolerances(c);
  const Matrix a = load_square(c.files[0]);
  const bool star = star_mode(c);
  out = header("canon");
  out["mode"] = star ? "star" : "congruence";
  if (star) {
    if (!c.style.empty()) throw ParseError("--style applies to congruence mode");
    const StarCanon sc = canon_star(a, tol, c.triangular ? StarRepresentation::triangular : StarRepresentation::h2);
    out["form"] = io::to_json(sc.form);
    out["transform"] = io::matrix_to_json(sc.transform);
    out["residual"] = sc.residual;
  } else if (!c.style.empty()) {
    if (c.triangular) throw ParseError("--triangular applies to star mode");
    const UnitaryCanon uc = canon_unitary(a, parse_style(c.style), tol);
    out["style"] = c.style;
    out["blocks"] = io::to_json(uc.blocks);
    out["theta"] = uc.theta;
    out["transform"] = io::matrix_to_json(uc.transform);
    out["residual"] = uc.residual;
  } else {
    if (c.triangular) throw ParseError("--triangular applies to star mode");
    const CongruenceCanon cc = canon_congruence(a, tol);
    out["form"] = io::to_json(cc.form);
    out["transform"] = io::matrix_to_json(cc.transform);
    out["residual"] = cc.residual;
  }
  if (c.verify) {
    const double r = verify_report(out, a, star);
    const bool pass = r <= 1e-8;
    out["verify"] = {{"residual", r}, {"pass", pass}};
    if (!pass) return kNumerical;
  }
  return kOk;
}

int cmd_compare(const Config& c, json& out) {
  need_files(c, 2);
  const ToleranceConfig tol = tolerances(c);
  const Matrix a = load_square(c.files[0]);
  const Matrix b = load_square(c.files[1]);
  if (a.rows() != b.rows()) throw ParseError("inputs differ in size");
  const bool star = star_mode(c);
  const EquivalenceReport rep =
      star ? decide_unitary_star_congruence(a, b, tol) : decide_unitary_congruence(a, b, tol);
  out = header("compare");
  out["mode"] = star ? "star" : "congruence";
  out["result"] = io::to_json(rep);
  return kOk;
}

int cmd_regularize(const Config& c, json& out) {
  need_files(c, 1);
  const ToleranceConfig tol = tolerances(c);
  const Matrix a = load_square(c.files[0]);
  const ReducedForm rf = regularize(a, star_mode(c) ? CongruenceMode::star : CongruenceMode::congruence, tol);
  out = header("regularize");
  out["reduced"] = io::to_json(rf);
  return kOk;
}

int cmd_simulate(const Config& c, json& out) {
  need_files(c, 1);
  const ToleranceConfig tol = tolerances(c);
  const Matrix a = load_square(c.files[0]);
  std::vector<Complex> x0;
  if (c.x0.empty()) {
    x0.assign(a.rows(), 0.0);
    if (!x0.empty()) x0[0] = 1.0;
  } else {
    json j;
    try {
      j = json::parse(c.x0);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("--x0: ") + e.what());
    }
    x0 = io::vector_from_json(j);
  }
  if (x0.size() != a.rows()) throw ParseError("--x0 length does not match the matrix");
  const IterationMode mode = star_mode(c) ? IterationMode::star : IterationMode::transpose;
  const BoundednessReport br = classify_bounded(a, mode, tol);
  const IterationTrace tr = simulate(a, x0, c.steps, mode, tol);
  out = header("simulate");
  out["mode"] = star_mode(c) ? "star" : "transpose";
  out["steps"] = c.steps;
  out["classification"] = io::to_json(br);
  out["trace"] = io::to_json(tr);
  return kOk;
}

int cmd_selftest(const Config& c, json& out, std::ostream& err) {
  if (!c.files.empty()) throw ParseError("selftest takes no input files");
  acceptance::Options opt;
  opt.seed = c.seed;
  opt.fixtures_dir = c.fixtures;
  out = header("selftest");
  out["seed"] = c.seed;
  json results = json::array();
  std::size_t passed = 0, failed = 0;
  for (int id = 1; id <= acceptance::kCriterionCount; ++id) {
    if (id == 10 && c.fixtures.empty()) continue;
    const auto r = acceptance::run_criterion(id, opt);
    err << acceptance::format_line(r) << "\n";
    (r.pass ? passed : failed)++;
    results.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  out["results"] = results;
  out["passed"] = passed;
  out["failed"] = failed;
  return failed == 0 ? kOk : kFailed;
}

json error_report(const char* kind, const std::string& msg, double residual) {
  json e = {{"kind", kind}, {"message", msg}};
  if (residual >= 0.0) e["residual"] = residual;
  return {{"schema", io::kSchema}, {"error", e}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"canonica: canonical forms under unitary congruence and *congruence"};
  app.name("canonica");
  app.require_subcommand(1);
  Config c;

  auto add_common = [&](CLI::App* s, bool modes) {
    if (modes) {
      auto* g = s->add_flag("--congruence", c.congruence, "unitary congruence (default)");
      auto* h = s->add_flag("--star", c.star, "unitary *congruence");
      g->excludes(h);
    }
    s->add_option("--rank-rtol", c.rank_rtol, "relative rank tolerance");
    s->add_option("--residual-rtol", c.residual_rtol, "relative residual tolerance");
    s->add_option("--cluster-rtol", c.cluster_rtol, "relative clustering radius");
    s->add_option("-o,--output", c.output, "write the report here instead of stdout");
  };

  auto* classify_cmd = app.add_subcommand("classify", "class membership flags and residuals");
  add_common(classify_cmd, false);
  classify_cmd->add_option("file", c.files, "matrix JSON")->required();

  auto* canon_cmd = app.add_subcommand("canon", "canonical form and transform");
  add_common(canon_cmd, true);
  auto* h2f = canon_cmd->add_flag("--h2", c.h2, "tau H2(mu) blocks (default)");
  auto* trf = canon_cmd->add_flag("--triangular", c.triangular, "[[nu, r],[0, -nu]] blocks");
  h2f->excludes(trf);
  canon_cmd->add_option("--style", c.style, "unitary input: h2 | real_orthogonal | hermitian_unitary");
  canon_cmd->add_flag("--verify", c.verify, "reassemble the input from the report");
  canon_cmd->add_option("file", c.files, "matrix JSON")->required();

  auto* compare_cmd = app.add_subcommand("compare", "decide unitary (*)congruence of two matrices");
  add_common(compare_cmd, true);
  compare_cmd->add_option("files", c.files, "two matrix JSON files")->required()->expected(2);

  auto* reg_cmd = app.add_subcommand("regularize", "reduced form separating the singular part");
  add_common(reg_cmd, true);
  reg_cmd->add_option("file", c.files, "matrix JSON")->required();

  auto* sim_cmd = app.add_subcommand("simulate", "iterate A^T x' + A x = 0 (or A^* x' + A x = 0)");
  add_common(sim_cmd, true);
  sim_cmd->add_option("--steps", c.steps, "iteration count")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--x0", c.x0, "start vector as JSON [[re, im], ...] (default e1)");
  sim_cmd->add_option("file", c.files, "matrix JSON")->required();

  auto* self_cmd = app.add_subcommand("selftest", "run the acceptance suite");
  self_cmd->add_option("--seed", c.seed, "random seed");
  self_cmd->add_option("--fixtures", c.fixtures, "fixture directory for the CLI round trip");
  self_cmd->add_option("-o,--output", c.output, "write the report here instead of stdout");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "canonica: " << e.what() << "\n";
    return kParse;
  }

  CLI::App* active = app.get_subcommands().front();
  c.command = active->get_name();

  json report;
  int code = kOk;
  try {
    if (c.command == "classify")
      code = cmd_classify(c, report);
    else if (c.command == "canon")
      code = cmd_canon(c, report);
    else if (c.command == "compare")
      code = cmd_compare(c, report);
    else if (c.command == "regularize")
      code = cmd_regularize(c, report);
    else if (c.command == "simulate")
      code = cmd_simulate(c, report);
    else
      code = cmd_selftest(c, report, err);
  } catch (const ParseError& e) {
    err << "canonica: " << e.what() << "\n";
    report = error_report("parse", e.what(), -1.0);
    code = kParse;
  } catch (const DimensionError& e) {
    err << "canonica: " << e.what() << "\n";
    report = error_report("parse", e.what(), -1.0);
    code = kParse;
  } catch (const PreconditionError& e) {
    err << "canonica: " << e.what() << "\n";
    report = error_report("precondition", e.what(), e.residual());
    code = kPrecondition;
  } catch (const NumericalError& e) {
    err << "canonica: " << e.what() << "\n";
    report = error_report("numerical", e.what(), e.residual());
    code = kNumerical;
  }

  const std::string text = io::dump(report);
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
      err << "canonica: cannot write " << c.output << "\n";
      return kParse;
    }
    f << text;
  }
  return code;
}

}  // namespace canonica::cli
