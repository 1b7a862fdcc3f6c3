#pragma once
#include <map>

#include "riccikit/warped.hpp"

namespace riccikit {
namespace catalog {

// How an expected value was obtained: forced by arithmetic/convention,
// derived from an independent closed-form computation, or measured once at
// build time and frozen.
enum class Origin { exact, closed_form, measured };

enum class Cmp { approx, le, ge };

struct ExpectedProperty {
  double value = 0.0;
  double tol = 0.0;  // |measured - value| <= tol for approx; slack ignored for le/ge
  Cmp cmp = Cmp::approx;
  Origin origin = Origin::exact;
};

struct CatalogEntry {
  std::string name;
  SolitonChart soliton;
  Vec reference_point;
  std::map<std::string, ExpectedProperty> expected;
  std::optional<WarpedProfile> profile;   // for fibered entries, used by the classifier
  std::optional<FiberSpec> fiber;
  std::string expected_branch;  // empty = not classified (e.g. rho != 0)
};

// name in {cigar, flat, gaussian_shrinker, round_sphere,
// product_line_cross_fiber, euclidean_schwarzschild,
// warped_control_non_einstein_fiber, perturbed_non_soliton}
CatalogEntry make(const std::string& name, const std::map<std::string, double>& params = {});

std::vector<std::string> list_names();

struct CheckResult {
  std::string property;
  double measured = 0.0;
  double expected = 0.0;
  bool pass = false;
};

// Evaluates every expected property of the entry over `samples` seeded
// points; this sweep is the fixture test suite.
std::vector<CheckResult> check_entry(const CatalogEntry& entry, int samples, uint64_t seed);

// ---- chart builders shared with tests and the warped module ----
CoordinateChart flat_chart(int n, double half_width = 3.0);
CoordinateChart sphere_chart(int n, double radius = 1.0);           // hyperspherical angles
CoordinateChart cigar_chart(double half_width = 3.0);
CoordinateChart schwarzschild_chart(double mass = 1.0);             // Euclidean, dim 4
CoordinateChart flat_torus_chart(int n);                            // box [0, 2pi]^n, identity metric
CoordinateChart conformal_torus_chart(int n, double amplitude);     // e^{2 a sin xi_1} delta, non-Einstein

}  // namespace catalog
}  // namespace riccikit
