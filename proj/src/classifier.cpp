#include "riccikit/classifier.hpp"

#include "riccikit/bryant.hpp"
#include "riccikit/catalog.hpp"
#include "riccikit/level_set.hpp"

namespace riccikit {
namespace classifier {

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::ricci_flat_constant_potential: return "ricci_flat_constant_potential";
    case Branch::product_ricci_flat_fiber: return "product_ricci_flat_fiber";
    case Branch::bryant: return "bryant";
    case Branch::not_d_flat: return "not_d_flat";
    case Branch::not_a_soliton: return "not_a_soliton";
    case Branch::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Input from_profile(const WarpedProfile& p) {
  Input in;
  in.profile = p;
  FiberSpec fiber;
  fiber.fiber_dim = p.n - 1;
  fiber.einstein_lambda = p.lambda;
  // an explicit fiber chart exists only for the geometries the toolkit can
  // realize; otherwise the chart-level evidence is skipped
  if (p.lambda > 0.0) {
    const double radius = std::sqrt((p.n - 2) / p.lambda);
    fiber.fiber_chart = catalog::sphere_chart(p.n - 1, radius);
  } else if (std::abs(p.lambda) < 1e-12) {
    fiber.fiber_chart = catalog::flat_torus_chart(p.n - 1);
  }
  in.fiber = fiber;
  if (fiber.fiber_chart) {
    in.soliton = warped_steady_soliton(p, fiber);
  } else {
    throw GeometryError(ErrorCode::invalid_params,
                        "profile with negative fiber Einstein constant is outside the classifier scope");
  }
  return in;
}

ClassificationReport classify(const Input& input, const Thresholds& th, int samples, uint64_t seed) {
  const SolitonChart& s = input.soliton;
  if (s.rho != 0.0)
    throw GeometryError(ErrorCode::nonzero_rho, "the classifier handles steady inputs only");
  if (samples < 1) throw GeometryError(ErrorCode::empty_sample_set, "classify needs at least one sample");

  const int n = s.chart.dim;
  ClassificationReport rep;
  rep.thresholds_used = th;
  rep.dimension = n;
  if (n >= 5)
    rep.applicable_statement = "full D-flat classification (n >= 5)";
  else if (n == 4)
    rep.applicable_statement = "n = 4 regime (D-flat forces locally conformally flat)";
  else
    rep.applicable_statement = "below the stated dimension range; decision is heuristic";

  std::mt19937_64 rng(seed);
  double res_rel_max = 0.0, d_rel_max = 0.0, grad_max = 0.0, grad_scale_max = 0.0;
  double ricci_rel_max = 0.0, umb_max = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vec x = s.chart.domain.sample(rng);
    const CurvatureBundle b = curvature_bundle(s.chart, x);
    const double rm = g_norm4(b.riemann, b.ginv);
    const double scale = 1.0 + rm;
    res_rel_max = std::max(res_rel_max, soliton_residual(s, x) / scale);
    ricci_rel_max = std::max(ricci_rel_max, g_norm2(b.ricci, b.ginv) / scale);
    if (n >= 3) d_rel_max = std::max(d_rel_max, g_norm3(d_tensor(s, x, DMethod::direct), b.ginv) / scale);
    const Vec df = s.f_grad(x);
    grad_max = std::max(grad_max, std::sqrt(std::max(0.0, df.dot(b.ginv * df))));
    grad_scale_max = std::max(grad_scale_max, 1.0 + std::abs(s.f_value(x)));
    if (!s.near_critical(x)) {
      const LevelSetReport lr = level_diagnostics(s, x);
      umb_max = std::max(umb_max, lr.umbilicity_deficit);
    }
  }
  rep.evidence["soliton_residual_max"] = res_rel_max;
  rep.evidence["d_norm_max"] = d_rel_max;
  rep.evidence["grad_norm_max"] = grad_max;
  rep.evidence["umbilicity_max"] = umb_max;
  rep.evidence["ricci_norm_max"] = ricci_rel_max;

  // (1) soliton gate wins over everything else
  if (res_rel_max > th.soliton_gate) {
    rep.branch = Branch::not_a_soliton;
    return rep;
  }
  // (2) D gate (undefined below n = 3)
  if (n >= 3 && d_rel_max > th.d_gate) {
    rep.branch = Branch::not_d_flat;
    return rep;
  }
  // (3) constant potential
  if (grad_max < th.gradient_gate * grad_scale_max) {
    if (ricci_rel_max < th.soliton_gate) {
      rep.branch = Branch::ricci_flat_constant_potential;
    } else {
      rep.branch = Branch::inconclusive;
      rep.notes["gradient"] = "constant potential but Ricci-flatness check failed";
    }
    return rep;
  }
  if (n < 3) {
    rep.branch = Branch::inconclusive;
    rep.notes["dimension"] = "D-tensor evidence unavailable below n = 3";
    return rep;
  }

  // (4) profile shape
  if (!input.profile) {
    rep.branch = Branch::inconclusive;
    rep.notes["fibration"] = "no profile data; pointwise diagnostics only";
    return rep;
  }
  const WarpedProfile& p = *input.profile;
  const double phi_max = *std::max_element(p.phi.begin(), p.phi.end());
  const double phi_left = p.phi.front();
  double dphi_max = 0.0;
  for (double d : p.dphi) dphi_max = std::max(dphi_max, std::abs(d));
  rep.evidence["phi_left_ratio"] = phi_left / phi_max;
  rep.evidence["dphi_max"] = dphi_max;

  if (phi_left / phi_max < th.phi_vanish_ratio) {
    // closing warped end: Bryant candidate; Claim 2 wants a round fiber and
    // a smooth tip, phi'(0) = sqrt(lambda/(n-2))
    if (!(p.lambda > 0.0)) {
      rep.branch = Branch::inconclusive;
      rep.notes["fiber"] = "phi closes but the fiber Einstein constant is not positive";
      return rep;
    }
    const double slope_target = std::sqrt(p.lambda / (p.n - 2));
    const double tip_slope = p.dphi.front();
    rep.evidence["tip_slope_gap"] = std::abs(tip_slope - slope_target);
    if (std::abs(tip_slope - slope_target) > th.tip_slope_tol) {
      rep.branch = Branch::inconclusive;
      rep.notes["tip"] = "phi closes but the tip slope does not match a smooth round closing";
      return rep;
    }
    if (input.fiber && input.fiber->fiber_chart) {
      // round = Einstein with the declared constant and, above fiber dim 3,
      // vanishing fiber Weyl
      const CoordinateChart& fc = *input.fiber->fiber_chart;
      std::mt19937_64 rng2(seed + 1);
      double einstein_res = 0.0, weyl_norm = 0.0;
      for (int i = 0; i < 8; ++i) {
        const Vec th_pt = fc.domain.sample(rng2);
        const CurvatureBundle fb = curvature_bundle(fc, th_pt);
        einstein_res = std::max(
            einstein_res, g_norm2(Mat(fb.ricci - input.fiber->einstein_lambda * fb.g), fb.ginv));
        if (fc.dim >= 4) {
          const ConformalBundle cb = conformal_bundle(fc, th_pt, false);
          weyl_norm = std::max(weyl_norm, g_norm4(cb.weyl, cb.ginv));
        }
      }
      rep.evidence["fiber_einstein_residual"] = einstein_res;
      rep.evidence["fiber_weyl_norm"] = weyl_norm;
      if (einstein_res < 1e-5 && weyl_norm < 1e-5)
        rep.notes["fiber_round"] = "verified";
      else {
        rep.branch = Branch::inconclusive;
        rep.notes["fiber_round"] = "failed";
        return rep;
      }
    } else {
      rep.notes["fiber_round"] = "assumed_unverified";
    }
    rep.branch = Branch::bryant;
    return rep;
  }

  if (dphi_max < th.phi_const_ratio * phi_max) {
    if (std::abs(p.lambda) > th.fiber_lambda_tol) {
      rep.branch = Branch::inconclusive;
      rep.notes["fiber"] = "phi constant but the fiber is not Ricci-flat";
      return rep;
    }
    rep.branch = Branch::product_ricci_flat_fiber;
    return rep;
  }

  rep.branch = Branch::inconclusive;
  rep.notes["shape"] = "warping function neither closes nor stays constant";
  return rep;
}

}  // namespace classifier
}  // namespace riccikit
