// Acceptance run: one line per criterion, backed by the suite checks at
// their stated sizes and tolerances. Exits nonzero when any criterion fails.

#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cubical/suites.hpp"

using namespace cubical;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::function<CheckResult(const SuiteOptions&)>> checks;
};

std::string detail(const CheckResult& r) {
  char buf[96];
  std::string s = r.id + " cases " + std::to_string(r.cases) + " failures " + std::to_string(r.failures);
  if (r.max_error) {
    std::snprintf(buf, sizeof buf, " max error %.3g", *r.max_error);
    s += buf;
  }
  if (r.time_limit) {
    std::snprintf(buf, sizeof buf, " time %.3g s of %.3g s", r.seconds, *r.time_limit);
    s += buf;
  }
  return s;
}

}  // namespace

int main() {
  SuiteOptions o;  // seed 1, default grids, tolerance 1e-9

  const std::vector<Criterion> criteria{
      {1, "operator-word confluence, 10^4 words, dim <= 6, length <= 8, < 60 s",
       {[](const SuiteOptions& o) { return check_word_confluence(o, 10000, 6, 8, 60.0); }}},
      {2, "every word relation up to ambient dim 5 holds on library cubes within 1e-9",
       {[](const SuiteOptions& o) { return check_word_relations_oracle(o, 5); }}},
      {3, "Phi_n of free 2-, 3-, 4-cells globular, all verdicts Yes, word-rule traces, < 10 s",
       {[](const SuiteOptions& o) { return check_foldtoglob(o, 2, 4, 10.0); }}},
      {4, "connection factors of psi lie in Im e_{i+1} e_i",
       {[](const SuiteOptions& o) { return check_psi_degeneracies(o, 4); }}},
      {5, "boundary words reduce to - x1+ + x1- for n = 2..6, displays for n = 2, 3",
       {[](const SuiteOptions& o) { return check_hal_reduction(o, 2, 6); },
        [](const SuiteOptions& o) { return check_hal_displays(o); }}},
      {6, "phi_n properties for n <= 5 on 10^4 samples, < 30 s; globular image for n <= 3",
       {[](const SuiteOptions& o) { return check_phi_properties(o, 5, 10000, 30.0); },
        [](const SuiteOptions& o) { return check_phi_image(o, 3, 3); }}},
      {7, "globe faces on the sphere within 1e-12, s d = id, globular-set laws",
       {[](const SuiteOptions& o) { return check_globe_maps(o, 5, 1000); },
        [](const SuiteOptions& o) { return check_globular_site_laws(o, 5, 200); }}},
      {8, "interchange, composite and transport laws through the oracle, dims <= 3, 1e-9",
       {[](const SuiteOptions& o) { return check_interchange_transport(o, 3, 6); }}},
      {9, "bimorphism laws for p, q <= 3; I^p (x) I^q = I^(p+q) for p + q <= 4",
       {[](const SuiteOptions& o) { return check_tensor_bimorphisms(o, 3); },
        [](const SuiteOptions& o) { return check_cube_tensor_iso(o, 4); }}},
      {10, "circle from two arcs has one loop; universal property with <= 3 generators",
       {[](const SuiteOptions& o) { return check_circle_cover(o); },
        [](const SuiteOptions& o) { return check_universal_small(o, 3); }}},
      {11, "boundary of boundary vanishes in the globe crossed complex, n = 3..6",
       {[](const SuiteOptions& o) { return check_globe_delta_delta(o, 3, 6); }}},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::vector<CheckResult> results;
    bool passed = true;
    for (const auto& run : c.checks) {
      results.push_back(run(o));
      passed = passed && results.back().passed;
    }
    std::printf("%s criterion %2d: %s\n", passed ? "PASS" : "FAIL", c.number, c.title.c_str());
    for (const CheckResult& r : results) {
      std::printf("      %s\n", detail(r).c_str());
      if (!r.passed) {
        for (const std::string& w : r.witnesses) std::printf("        witness: %s\n", w.c_str());
      }
    }
    failed += passed ? 0 : 1;
  }
  std::printf("acceptance: %zu criteria, %zu passed, %d failed\n", criteria.size(),
              criteria.size() - failed, failed);
  return failed == 0 ? 0 : 1;
}
