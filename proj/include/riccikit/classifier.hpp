#pragma once
#include <map>

#include "riccikit/warped.hpp"

namespace riccikit {
namespace classifier {

enum class Branch {
  ricci_flat_constant_potential,
  product_ricci_flat_fiber,
  bryant,
  not_d_flat,
  not_a_soliton,
  inconclusive,
};

const char* branch_name(Branch b);

// All gates are relative: a residual counts as zero below
// gate * (1 + ||Rm||) at the sampled point.
struct Thresholds {
  double soliton_gate = 1e-4;
  double d_gate = 1e-3;
  double gradient_gate = 1e-6;
  double fiber_lambda_tol = 1e-3;   // |lambda| below this counts as Ricci-flat fiber
  double phi_vanish_ratio = 1e-2;   // phi(left)/max phi below this counts as closing up
  double phi_const_ratio = 1e-6;    // max|phi'| below this counts as a product
  double tip_slope_tol = 0.05;      // |phi'(left) - sqrt(lambda/(n-2))| for a smooth tip
};

struct ClassificationReport {
  Branch branch = Branch::inconclusive;
  std::map<std::string, double> evidence;      // named max residuals that drove the decision
  std::map<std::string, std::string> notes;    // e.g. fiber_round: assumed_unverified
  Thresholds thresholds_used;
  int dimension = 0;
  std::string applicable_statement;  // which dimension regime the classification speaks to
};

struct Input {
  SolitonChart soliton;
  std::optional<WarpedProfile> profile;
  std::optional<FiberSpec> fiber;
};

Input from_profile(const WarpedProfile& p);

// Decision order: (1) soliton residual gate -> not_a_soliton; (2) D gate ->
// not_d_flat; (3) gradient gate -> ricci_flat_constant_potential (with a
// Ricci-flatness check); (4) profile shape: phi closing at an endpoint ->
// bryant, phi constant with Ricci-flat fiber -> product; otherwise
// inconclusive. Chart inputs without profile data stop after (3).
ClassificationReport classify(const Input& input, const Thresholds& thresholds = {}, int samples = 40,
                              uint64_t seed = 1);

}  // namespace classifier
}  // namespace riccikit
