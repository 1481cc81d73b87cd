// Command-line front end: one verb per library operation, reports as text
// or versioned JSON. Exit codes: 0 pass, 1 check failure, 2 usage or input
// error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cubical/cells.hpp"
#include "cubical/colimits.hpp"
#include "cubical/crossed.hpp"
#include "cubical/errors.hpp"
#include "cubical/folding.hpp"
#include "cubical/geometry.hpp"
#include "cubical/globular.hpp"
#include "cubical/suites.hpp"
#include "cubical/syntax.hpp"
#include "cubical/tensor.hpp"
#include "json.hpp"

using namespace cubical;
using json = nlohmann::ordered_json;

namespace {

enum class Format { Text, Json };

struct Common {
  std::uint64_t seed = 1;
  int grid = 0;
  double tol = 1e-9;
  std::string format = "text";
  std::string output;
  bool timings = false;

  Format fmt() const { return format == "json" ? Format::Json : Format::Text; }
};

// What a verb produced: the text form, the JSON form, and whether its
// checks passed.
struct Outcome {
  std::string text;
  json data;
  bool passed = true;
};

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::string face_label(const FaceKey& k) {
  return "d" + std::to_string(k.first) + sign_char(k.second);
}

Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  throw CLI::ValidationError("sign", "expected + or -");
}

json counts_json(const RuleCounts& counts) {
  json j = json::object();
  for (const auto& [tag, n] : counts) j[tag] = n;
  return j;
}

std::string counts_text(const RuleCounts& counts) {
  std::string s;
  for (const auto& [tag, n] : counts) s += " " + tag + "=" + std::to_string(n);
  return s.empty() ? " none" : s;
}

Presentation load_presentation(const std::string& path) {
  return parse_presentation(read_file(path));
}

// --- verbs -------------------------------------------------------------------

Outcome run_normalize(const std::string& pres_path, const std::string& expr, bool strict) {
  Presentation p;
  if (!pres_path.empty()) p = load_presentation(pres_path);
  const auto parsed = parse_term_or_word(expr, dims_of(p));
  Outcome out;
  if (const auto* w = std::get_if<OperatorWord>(&parsed)) {
    WordTrace trace;
    const OperatorWord nf = normalize_word(*w, &trace);
    out.text = "normal form: " + to_string(nf) + "\nsteps: " + std::to_string(trace.steps) +
               "\nrules:" + counts_text(trace.counts) + "\n";
    out.data = {{"kind", "word"}, {"input", to_string(*w)}, {"normal_form", to_string(nf)},
                {"steps", trace.steps}, {"rules", counts_json(trace.counts)}};
    return out;
  }
  const Cell& t = std::get<Cell>(parsed);
  CellTrace trace;
  NormalizeOptions opts;
  opts.groupoid_laws = !strict;
  const Cell nf = normalize_cell(p, t, &trace, opts);
  out.text = "normal form: " + to_string(nf) + "\ndim: " + std::to_string(nf.dim()) +
             "\nrules:" + counts_text(trace.counts) + "\n";
  out.data = {{"kind", "term"}, {"input", to_string(t)}, {"normal_form", to_string(nf)},
              {"dim", nf.dim()}, {"strict", strict}, {"rules", counts_json(trace.counts)}};
  return out;
}

Outcome run_face(const std::string& pres_path, const std::string& expr, int dir,
                 const std::string& sign) {
  const Presentation p = load_presentation(pres_path);
  const Cell t = parse_term(expr, p);
  const Sign s = parse_sign(sign);
  const Cell f = normalize_cell(p, face(p, t, dir, s));
  Outcome out;
  out.text = "d" + std::to_string(dir) + sign_char(s) + ": " + to_string(f) + "\n";
  out.data = {{"input", to_string(t)}, {"direction", dir}, {"sign", std::string(1, sign_char(s))},
              {"face", to_string(f)}};
  return out;
}

void add_verdicts(Outcome& out, const std::map<FaceKey, Tri>& verdicts) {
  json faces = json::object();
  for (const auto& [k, v] : verdicts) {
    out.text += "  " + face_label(k) + " " + to_string(v) + "\n";
    faces[face_label(k)] = to_string(v);
  }
  out.data["faces"] = faces;
}

Outcome run_fold(const std::string& pres_path, const std::string& expr, int m) {
  const Presentation p = load_presentation(pres_path);
  const Cell t = parse_term(expr, p);
  const FoldReport r = fold_phi(p, m < 0 ? t.dim() : m, t);
  Outcome out;
  out.passed = r.globular == Tri::Yes;
  out.text = "input: " + to_string(r.input) + "\noutput: " + to_string(r.output) +
             "\nglobular: " + to_string(r.globular) + "\n";
  out.data = {{"input", to_string(r.input)}, {"output", to_string(r.output)},
              {"globular", to_string(r.globular)}};
  add_verdicts(out, r.per_face_globularity);
  return out;
}

Outcome run_check_globular(const std::string& pres_path, const std::string& expr) {
  const Presentation p = load_presentation(pres_path);
  const Cell t = parse_term(expr, p);
  Normalizer norm(p);
  const auto verdicts = globularity_by_face(norm, t);
  const Tri all = combine(verdicts);
  Outcome out;
  out.passed = all == Tri::Yes;
  out.text = "globular: " + std::string(to_string(all)) + "\n";
  out.data = {{"input", to_string(t)}, {"globular", to_string(all)}};
  add_verdicts(out, verdicts);
  return out;
}

Outcome run_glob_validate(const std::string& path) {
  const GlobularPresentation p = parse_globular_presentation(read_file(path));
  const GlobValidationReport r = validate_globular_presentation(p);
  Outcome out;
  out.passed = r.ok();
  json list = json::array();
  for (const GlobViolation& v : r.violations) {
    out.text += v.law + " " + v.subject + ": " + v.detail;
    if (!v.lhs.empty()) out.text += " (" + v.lhs + " vs " + v.rhs + ")";
    out.text += "\n";
    list.push_back({{"law", v.law}, {"subject", v.subject}, {"detail", v.detail},
                    {"lhs", v.lhs}, {"rhs", v.rhs}});
  }
  out.text += r.ok() ? "valid: " + std::to_string(p.generators().size()) + " generators\n"
                     : std::to_string(r.violations.size()) + " violations\n";
  out.data = {{"generators", p.generators().size()}, {"valid", r.ok()}, {"violations", list}};
  return out;
}

Outcome run_hal(int n, bool globular) {
  CrossedWord w = hal_boundary(n);
  if (globular) w = reduce_globular(w, globular_flags(n));
  Outcome out;
  out.text = to_string(w) + "\n";
  out.data = {{"dim", n}, {"globular", globular}, {"word", to_string(w)}};
  return out;
}

Outcome run_tensor(const std::string& left, const std::string& right) {
  const Presentation pq = tensor_presentation(load_presentation(left), load_presentation(right));
  Outcome out;
  out.text = print_presentation(pq);
  json counts = json::array();
  for (int c : pq.counts_by_dim()) counts.push_back(c);
  out.data = {{"name", pq.name()}, {"counts_by_dim", counts}, {"presentation", out.text}};
  return out;
}

Outcome run_coeq(const std::string& path) {
  CoverDiagram cover = parse_cover(read_file(path));
  add_diagonal_overlaps(cover);
  const RhoDiagram rho = build_rho_diagram(cover);
  const Coequalizer q = coequalizer(rho.a, rho.b);
  const Dim1Quotient d1 = solve_dim1(q.quotient);
  const std::vector<int> classes = class_counts_by_dim(q.quotient);

  Outcome out;
  std::string counts;
  json jcounts = json::array();
  for (std::size_t d = 0; d < classes.size(); ++d) {
    counts += (d ? " " : "") + std::to_string(classes[d]);
    jcounts.push_back(classes[d]);
  }
  out.text = "pieces: " + std::to_string(cover.pieces.size()) +
             "\nrelations: " + std::to_string(q.quotient.relations.size()) +
             "\nclasses by dim: " + counts +
             "\ncomponents: " + std::to_string(d1.components) +
             "\nloop rank: " + std::to_string(d1.loop_rank) +
             (d1.unresolved ? " (upper bound, " + std::to_string(d1.unresolved) + " unresolved)" : "") +
             "\n";
  json hyps = json::array();
  for (const std::string& h : cover.unchecked_hypotheses) {
    out.text += "unchecked hypothesis: " + h + "\n";
    hyps.push_back(h);
  }
  out.data = {{"pieces", cover.pieces.size()},        {"relations", q.quotient.relations.size()},
              {"classes_by_dim", jcounts},            {"components", d1.components},
              {"loop_rank", d1.loop_rank},            {"unresolved", d1.unresolved},
              {"unchecked_hypotheses", hyps}};
  return out;
}

Outcome run_phi_sample(const Common& c, int n, int samples, const std::string& cube) {
  if (n < 1) throw IndexOutOfRange("phi needs dimension >= 1");
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  Outcome out;
  json points = json::array();
  double worst_inverse = 0.0;
  for (int k = 0; k < samples; ++k) {
    Point x(n);
    for (double& v : x) v = coord(rng);
    const Point y = phi(n, x);
    const Point back = phi_inverse(n, y);
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - x[i]));
    worst_inverse = std::max(worst_inverse, err);
    std::string xs, ys;
    for (int i = 0; i < n; ++i) {
      xs += (i ? " " : "") + fmt_double(x[i]);
      ys += (i ? " " : "") + fmt_double(y[i]);
    }
    out.text += "(" + xs + ") -> (" + ys + ")  |y| " + fmt_double(euclidean_norm(y)) + "\n";
    points.push_back({{"x", x}, {"phi", y}, {"norm", euclidean_norm(y)}});
  }
  out.text += "worst inverse error: " + fmt_double(worst_inverse) + "\n";
  out.data = {{"dim", n}, {"points", points}, {"worst_inverse_error", worst_inverse}};
  if (!cube.empty()) {
    const SingularCube a = library_cube(cube, n, 3, static_cast<unsigned>(c.seed));
    GridSpec grid = GridSpec::for_dim(n, c.tol);
    if (c.grid > 0) grid.resolution = c.grid;
    const PhiGlobularReport r = check_phi_image_globular(n, a.eval, grid);
    out.passed = r.passed;
    out.text += "globular image of " + cube + " o phi: " + (r.passed ? "yes" : "no") +
                "  faces " + std::to_string(r.faces_checked) + "  max dependence " +
                fmt_double(r.max_dependence) + "\n";
    out.data["image_check"] = {{"cube", cube},
                               {"passed", r.passed},
                               {"faces_checked", r.faces_checked},
                               {"max_dependence", r.max_dependence}};
  }
  return out;
}

json check_json(const CheckResult& r, bool timings) {
  json j = {{"id", r.id},           {"passed", r.passed},     {"summary", r.summary},
            {"cases", r.cases},     {"failures", r.failures}, {"witnesses", r.witnesses}};
  if (r.tolerance) j["tolerance"] = *r.tolerance;
  if (r.max_error) j["max_error"] = *r.max_error;
  if (r.time_limit) j["time_limit"] = *r.time_limit;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

Outcome run_verify(const Common& c, const std::string& suite) {
  SuiteOptions o;
  o.seed = c.seed;
  o.grid = c.grid;
  o.tol = c.tol;
  const SuiteReport r = run_suite(suite, o);
  Outcome out;
  out.passed = r.ok();
  out.text = format_text(r, c.timings);
  json checks = json::array();
  for (const CheckResult& check : r.checks) checks.push_back(check_json(check, c.timings));
  out.data = {{"suite", r.name}, {"seed", o.seed}, {"grid", o.grid}, {"tol", o.tol},
              {"passed", r.ok()}, {"checks", checks}};
  return out;
}

void emit(const Common& c, const std::string& verb, Outcome out) {
  std::string payload;
  if (c.fmt() == Format::Json) {
    json doc = {{"schema", 1}, {"verb", verb}, {"passed", out.passed}};
    doc["result"] = std::move(out.data);
    payload = doc.dump(2) + "\n";
  } else {
    payload = std::move(out.text);
  }
  if (c.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw Error("cannot write " + c.output);
  file << payload;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubical and globular higher-groupoid toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--seed", c.seed, "fuzz seed")->capture_default_str();
  app.add_option("--grid", c.grid, "oracle grid points per axis (0: by dimension)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol", c.tol, "oracle tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("-o,--output", c.output, "write the report to a file");
  app.add_flag("--timings", c.timings, "include wall-clock times in suite reports");

  std::string pres, expr, verb, path, left, right, cube, suite = "all", sign = "+";
  int dir = 1, m = -1, n = 2, samples = 5;
  bool strict = false, globular = false;

  auto* normalize = app.add_subcommand("normalize", "normal form of a word or term");
  normalize->add_option("expr", expr, "'@dim=n ops' or a term")->required();
  normalize->add_option("-p,--pres", pres, "presentation file for terms");
  normalize->add_flag("--strict", strict, "strict laws only, no groupoid laws");

  auto* face_cmd = app.add_subcommand("face", "a face of a term, normalised");
  face_cmd->add_option("pres", pres, "presentation file")->required();
  face_cmd->add_option("expr", expr, "term")->required();
  face_cmd->add_option("-i,--dir", dir, "direction")->required();
  face_cmd->add_option("-s,--sign", sign, "+ or -")->check(CLI::IsMember({"+", "-"}));

  auto* fold = app.add_subcommand("fold", "apply Phi_m and check the result is globular");
  fold->add_option("pres", pres, "presentation file")->required();
  fold->add_option("expr", expr, "term")->required();
  fold->add_option("-m", m, "fold depth (default: dimension of the term)");

  auto* check_glob = app.add_subcommand("check-globular", "per-face globularity verdicts");
  check_glob->add_option("pres", pres, "presentation file")->required();
  check_glob->add_option("expr", expr, "term")->required();

  auto* glob_validate = app.add_subcommand("glob-validate", "validate a globular presentation");
  glob_validate->add_option("file", path, "globular presentation file")->required();

  auto* hal = app.add_subcommand("hal", "boundary of the n-cube in a crossed complex");
  hal->add_option("--dim", n, "cube dimension")->required()->check(CLI::PositiveNumber);
  hal->add_flag("--globular", globular, "reduce for a globular cube");

  auto* tensor = app.add_subcommand("tensor", "tensor product of two presentations");
  tensor->add_option("left", left, "presentation file")->required();
  tensor->add_option("right", right, "presentation file")->required();

  auto* coeq = app.add_subcommand("coeq", "coequaliser of a cover diagram");
  coeq->add_option("file", path, "cover file")->required();

  auto* phi_sample = app.add_subcommand("phi-sample", "sample the map from cube to ball");
  phi_sample->add_option("--dim", n, "dimension")->required()->check(CLI::PositiveNumber);
  phi_sample->add_option("--samples", samples, "number of points")->check(CLI::NonNegativeNumber);
  phi_sample->add_option("--cube", cube, "library cube checked for a globular image")
      ->check(CLI::IsMember(cube_library_names()));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "suite name")->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Outcome out;
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "normalize") out = run_normalize(pres, expr, strict);
    else if (name == "face") out = run_face(pres, expr, dir, sign);
    else if (name == "fold") out = run_fold(pres, expr, m);
    else if (name == "check-globular") out = run_check_globular(pres, expr);
    else if (name == "glob-validate") out = run_glob_validate(path);
    else if (name == "hal") out = run_hal(n, globular);
    else if (name == "tensor") out = run_tensor(left, right);
    else if (name == "coeq") out = run_coeq(path);
    else if (name == "phi-sample") out = run_phi_sample(c, n, samples, cube);
    else out = run_verify(c, suite);
    const bool passed = out.passed;
    emit(c, name, std::move(out));
    return passed ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
