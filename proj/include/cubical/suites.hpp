#pragma once

// Verification suites: property checks over every module, grouped by area,
// with deterministic reports for a fixed seed.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubical {

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Grid points per axis for the cube oracle; 0 uses 8 up to dimension 4
  /// and 4 above.
  int grid = 0;
  /// Tolerance of the oracle comparisons. Checks with their own fixed
  /// tolerance ignore it.
  double tol = 1e-9;
};

struct CheckResult {
  std::string id;  // "<suite>.<check>"
  std::string summary;
  bool passed = false;
  long cases = 0;
  long failures = 0;
  std::optional<double> tolerance;
  std::optional<double> max_error;
  std::optional<double> time_limit;  // seconds
  double seconds = 0.0;              // wall clock, not part of the text report by default
  std::vector<std::string> witnesses;
};

// --- words -----------------------------------------------------------------

/// Random words reduced by the leftmost strategy and by two independently
/// seeded random-redex strategies; all three normal forms must agree.
CheckResult check_word_confluence(const SuiteOptions& o, int words = 10000, int max_dim = 6,
                                  int max_length = 8, double time_limit = 60.0);

/// Every instance of an oriented rule whose dimensions stay within
/// max_ambient, both sides applied to the library cubes.
CheckResult check_word_relations_oracle(const SuiteOptions& o, int max_ambient = 5);

/// Strict normalisation of random composite terms against the oracle.
CheckResult check_cell_oracle(const SuiteOptions& o);

// --- folding ---------------------------------------------------------------

CheckResult check_foldtoglob(const SuiteOptions& o, int min_dim = 2, int max_dim = 4,
                             double time_limit = 10.0);

/// The connection factors of psi_i t lie in the image of e_{i+1} e_i for
/// globular t.
CheckResult check_psi_degeneracies(const SuiteOptions& o, int max_dim = 4);

// --- hal -------------------------------------------------------------------

CheckResult check_hal_displays(const SuiteOptions& o);
CheckResult check_hal_reduction(const SuiteOptions& o, int min_dim = 2, int max_dim = 6);
CheckResult check_globe_delta_delta(const SuiteOptions& o, int min_dim = 3, int max_dim = 6);

// --- geometry --------------------------------------------------------------

/// Properties (i)-(iii) of phi_n on random samples for n <= max_dim.
CheckResult check_phi_properties(const SuiteOptions& o, int max_dim = 5, int samples = 10000,
                                 double time_limit = 30.0);

/// Injectivity of phi_n on the open cube, through phi_inverse.
CheckResult check_phi_fibres(const SuiteOptions& o, int max_dim = 5, int samples = 2000);

/// check_phi_image_globular with random smooth targets.
CheckResult check_phi_image(const SuiteOptions& o, int max_dim = 3, int targets = 3);

/// Globe faces land on the sphere; s_i d_i^b = id.
CheckResult check_globe_maps(const SuiteOptions& o, int max_dim = 5, int samples = 1000);

/// The three globular-set laws, realised contravariantly on random maps
/// out of globes.
CheckResult check_globular_site_laws(const SuiteOptions& o, int max_dim = 5, int samples = 200);

/// Interchange, degeneracies and connections of composites, and both
/// transport laws, on fuzzed composable pairs and quadruples, through the
/// oracle.
CheckResult check_interchange_transport(const SuiteOptions& o, int max_dim = 3, int rounds = 6);

// --- tensor ----------------------------------------------------------------

CheckResult check_tensor_bimorphisms(const SuiteOptions& o, int max_dim = 3);
CheckResult check_cube_tensor_iso(const SuiteOptions& o, int max_total = 4);

// --- colimits --------------------------------------------------------------

CheckResult check_circle_cover(const SuiteOptions& o);

/// Brute-force universal property for every parallel pair between graph
/// presentations with at most max_generators generators.
CheckResult check_universal_small(const SuiteOptions& o, int max_generators = 3);

/// Two-piece cover of the 2-globe against the globe's crossed complex.
CheckResult check_globe_cover(const SuiteOptions& o);

// --- suites ----------------------------------------------------------------

struct SuiteReport {
  std::string name;
  SuiteOptions options;
  std::vector<CheckResult> checks;  // sorted by id
  bool ok() const;
};

/// words, folding, hal, geometry, tensor, colimits, all.
const std::vector<std::string>& suite_names();

/// Throws IllFormed for an unknown suite name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& o = {});

/// Human-readable report. Identical for identical options unless
/// `timings` adds the measured wall-clock times.
std::string format_text(const SuiteReport& r, bool timings = false);

}  // namespace cubical
