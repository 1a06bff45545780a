#include "pwlhc/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace pwlhc {

double Residual3::norm_inf() const {
  return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::JacobianSingular: return "jacobian_singular";
    case SolveStatus::MaxIterationsExceeded: return "max_iterations_exceeded";
    case SolveStatus::StepRejected: return "step_rejected";
    case SolveStatus::FrameLost: return "frame_lost";
  }
  return "?";
}

namespace {

struct PointData {
  Vector x0;
  SpectralFrame frame;
  ProjectedQuantities q;
};

PointData evaluate_point(const PwlMap& f, const Word& X, const Word& Y) {
  PointData d;
  d.x0 = find_cycle(f, X).points[0];
  d.frame = build_frame(compose(f, X).M);
  d.q = projected_quantities(d.frame, f, Y, d.x0);
  return d;
}

}  // namespace

Residual3 residual(const BcnfParams& p, const Word& X, const Word& Y) {
  const PwlMap f = bcnf3(p);
  const PointData d = evaluate_point(f, X, Y);
  return {d.q.gamma11, d.q.psi1, d.frame.lambda1 * d.frame.lambda2 - 1.0};
}

SolveResult solve(const BcnfParams& p0, const Word& X, const Word& Y,
                  const SolveOptions& opts) {
  SolveResult res;
  res.params = p0;

  auto get = [](const BcnfParams& p, int k) {
    return k == 0 ? p.tau_L : (k == 1 ? p.tau_R : p.delta_L);
  };
  auto set = [](BcnfParams p, int k, double v) {
    (k == 0 ? p.tau_L : (k == 1 ? p.tau_R : p.delta_L)) = v;
    return p;
  };
  auto eval = [&](const BcnfParams& p) { return residual(p, X, Y); };

  Residual3 r;
  try {
    r = eval(p0);
  } catch (const Error& e) {
    res.status = SolveStatus::FrameLost;
    res.message = std::string("residual not evaluable at start: ") + e.what();
    return res;
  }
  res.residual = r;

  for (int it = 0; it < opts.max_iterations; ++it) {
    if (r.norm_inf() <= opts.tol) {
      res.status = SolveStatus::Converged;
      res.iterations = it;
      return res;
    }

    // Central-difference Jacobian over (tau_L, tau_R, delta_L).
    Eigen::Matrix3d J;
    try {
      for (int k = 0; k < 3; ++k) {
        const double h =
            opts.fd_step_rel * std::max(1.0, std::abs(get(res.params, k)));
        const Residual3 rp = eval(set(res.params, k, get(res.params, k) + h));
        const Residual3 rm = eval(set(res.params, k, get(res.params, k) - h));
        J(0, k) = (rp.r1 - rm.r1) / (2 * h);
        J(1, k) = (rp.r2 - rm.r2) / (2 * h);
        J(2, k) = (rp.r3 - rm.r3) / (2 * h);
      }
    } catch (const Error& e) {
      res.status = SolveStatus::FrameLost;
      res.iterations = it;
      res.message = std::string("eigenvalue structure lost while differencing: ") +
                    e.what();
      return res;
    }

    const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
        J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double smin = svd.singularValues()(2);
    if (smin <= 0 ||
        svd.singularValues()(0) / smin > opts.max_condition) {
      res.status = SolveStatus::JacobianSingular;
      res.iterations = it;
      std::ostringstream os;
      os << "Jacobian condition number "
         << (smin > 0 ? svd.singularValues()(0) / smin
                      : std::numeric_limits<double>::infinity())
         << " exceeds limit";
      res.message = os.str();
      return res;
    }

    const Eigen::Vector3d rhs(-r.r1, -r.r2, -r.r3);
    const Eigen::Vector3d dx = J.partialPivLu().solve(rhs);

    // Damping: halve the step until the residual decreases.
    double t = 1.0;
    bool accepted = false;
    bool frame_lost = false;
    for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
      BcnfParams trial = res.params;
      for (int k = 0; k < 3; ++k)
        trial = set(trial, k, get(res.params, k) + t * dx(k));
      try {
        const Residual3 rt = eval(trial);
        if (rt.norm_inf() < r.norm_inf()) {
          res.params = trial;
          r = rt;
          res.residual = rt;
          accepted = true;
          break;
        }
        frame_lost = false;
      } catch (const Error&) {
        frame_lost = true;
      }
    }
    if (!accepted) {
      res.status = frame_lost ? SolveStatus::FrameLost : SolveStatus::StepRejected;
      res.iterations = it;
      res.message = frame_lost
                        ? "eigenvalue structure lost along the Newton direction"
                        : "no residual decrease after step halvings";
      return res;
    }
  }

  res.status = r.norm_inf() <= opts.tol ? SolveStatus::Converged
                                        : SolveStatus::MaxIterationsExceeded;
  res.iterations = opts.max_iterations;
  return res;
}

namespace {

// Least-squares slope of log(err) against k; returns exp(slope).
double fitted_ratio(const std::vector<std::pair<int, double>>& pts) {
  if (pts.size() < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [k, e] : pts) {
    const double x = k, y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(pts.size());
  return std::exp((m * sxy - sx * sy) / (m * sxx - sx * sx));
}

}  // namespace

AsymptoticReport asymptotic_checks(const PwlMap& f, const Word& X,
                                   const Word& Y, const SpectralFrame& frame,
                                   const Vector& x0, double a0,
                                   const ProjectedQuantities& q,
                                   const Vector& y0, int k_lo, int k_hi) {
  AsymptoticReport rep;
  rep.band_value = (frame.lambda1 + 1.0) * q.c / (1.0 + q.c);
  rep.band_ok = 1.0 < rep.band_value && rep.band_value < frame.lambda1;
  rep.theory_ratio =
      std::max(1.0 / frame.lambda1, frame.lambda1 * frame.beta);

  const double target = a0 * rep.band_value;
  const Word y_flipped = flip(Y, 0);
  const int n = X.size();

  std::vector<std::pair<int, double>> proj_pts, dist_pts;
  for (int k = k_lo; k <= k_hi; ++k) {
    AsymptoticRow row;
    row.k = k;
    try {
      const Cycle xky = xky_cycle(f, X, Y, k);
      const Vector& pkn = xky.points[static_cast<std::size_t>(k * n)];
      row.proj_error = std::abs(frame.omega1.dot(pkn - x0) - target);

      const Cycle flipped =
          find_cycle(f, Word(word_power(X, k) + y_flipped.str()));
      row.dist_to_y0 =
          (flipped.points[static_cast<std::size_t>(k * n)] - y0)
              .lpNorm<Eigen::Infinity>();
      row.valid = true;
      proj_pts.push_back({k, row.proj_error});
      dist_pts.push_back({k, row.dist_to_y0});
    } catch (const DegenerateCycleError&) {
      row.valid = false;  // skipped: the flipped-word system is singular here
    }
    rep.rows.push_back(row);
  }

  auto decays = [](const std::vector<std::pair<int, double>>& pts) {
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (pts[i].second >= pts[i - 1].second) return false;
    return !pts.empty();
  };
  rep.proj_decays = decays(proj_pts);
  rep.dist_decays = decays(dist_pts);
  rep.fitted_ratio_proj = fitted_ratio(proj_pts);
  rep.fitted_ratio_dist = fitted_ratio(dist_pts);
  return rep;
}

VerificationReport verify_theorems(const BcnfParams& p, const Word& X,
                                   const Word& Y, int k_max,
                                   double tol_sigma) {
  VerificationReport rep;
  rep.params = p;
  rep.X = X.str();
  rep.Y = Y.str();
  const int n = X.size();
  const int p_len = Y.size();
  rep.d = reinjection_offset(n, p_len);

  const PwlMap f = bcnf3(p);

  // (i) the two-flip concatenation identity.
  std::optional<int> alpha;
  HypothesisCheck word_identity{"word_identity", false, -1.0, ""};
  try {
    alpha = concat_flip_alpha(X, Y);
  } catch (const WordError& e) {
    word_identity.detail = e.what();
  }
  if (alpha) {
    rep.alpha = *alpha;
    rep.i_hat = *alpha % n;
    word_identity.pass = true;
    word_identity.margin = 1.0;
    word_identity.detail = "alpha = " + std::to_string(*alpha) +
                           ", i_hat = " + std::to_string(rep.i_hat) +
                           ", d = " + std::to_string(rep.d);
  } else if (word_identity.detail.empty()) {
    word_identity.detail = "concatenations do not differ at exactly {0, alpha}";
  }

  // X-cycle and frame.
  std::optional<Cycle> xcycle;
  HypothesisCheck eigen_structure{"eigen_structure", false, -1.0, ""};
  try {
    xcycle = find_cycle(f, X, tol_sigma);
    rep.frame = build_frame(compose(f, X).M);
    rep.frame_valid = true;
    const double margin =
        std::min({rep.frame.lambda1 - 1.0, 1.0 - rep.frame.lambda2,
                  rep.frame.lambda2 - rep.frame.beta,
                  std::abs(rep.frame.e1_zeta1)});
    eigen_structure.pass = true;
    eigen_structure.margin = margin;
    std::ostringstream os;
    os << "lambda1 = " << rep.frame.lambda1
       << ", lambda2 = " << rep.frame.lambda2 << ", beta = " << rep.frame.beta
       << ", e1^T zeta1 = " << rep.frame.e1_zeta1;
    eigen_structure.detail = os.str();
  } catch (const Error& e) {
    rep.frame_error = e.what();
    eigen_structure.detail = e.what();
  }

  HypothesisCheck multiplier_product{"multiplier_product", false, -1.0, ""};
  HypothesisCheck c_band{"c_band", false, -1.0, ""};
  HypothesisCheck x_cycle_off_sigma{"x_cycle_off_sigma", false, -1.0, ""};
  HypothesisCheck s_orbit_on_sigma{"s_orbit_on_sigma", false, -1.0, ""};
  HypothesisCheck no_double_hits{"no_double_boundary_hits", false, -1.0, ""};
  HypothesisCheck c_not_excluded{"c_not_excluded", false, -1.0, ""};
  HypothesisCheck flipped_y_transversality{"flipped_y_transversality", false,
                                           -1.0, ""};

  if (rep.frame_valid && xcycle) {
    const Vector& x0 = xcycle->points[0];
    rep.quantities = projected_quantities(rep.frame, f, Y, x0);
    const auto [y0, a0] = unstable_intersection(f, rep.frame, x0);
    rep.a0 = a0;
    rep.psi2_residual = psi2_identity_residual(rep.frame, rep.quantities, a0);

    // (iii) multiplier product and the c-band.
    const double prod_resid =
        std::abs(rep.frame.lambda1 * rep.frame.lambda2 - 1.0);
    multiplier_product.pass = prod_resid < 1e-8;
    multiplier_product.margin = 1e-8 - prod_resid;
    multiplier_product.detail =
        "|lambda1*lambda2 - 1| = " + std::to_string(prod_resid);

    const double c = rep.quantities.c;
    c_band.margin = std::min(c - rep.frame.lambda2, 1.0 - c);
    c_band.pass = c_band.margin > 0;
    {
      std::ostringstream os;
      os << "c = " << c << ", band (" << rep.frame.lambda2 << ", 1)";
      c_band.detail = os.str();
    }

    // (iv) X-cycle admissible, strictly off Sigma.  Points inside the band
    // make the verdict indeterminate, not a pass.
    double min_h = std::numeric_limits<double>::infinity();
    for (const auto& pt : xcycle->points)
      min_h = std::min(min_h, std::abs(pt(0)) /
                                  std::max(1.0, pt.lpNorm<Eigen::Infinity>()));
    x_cycle_off_sigma.margin = min_h;
    if (xcycle->admissibility == Admissibility::AdmissibleStrict) {
      x_cycle_off_sigma.pass = true;
      x_cycle_off_sigma.detail = "admissible_strict";
    } else if (xcycle->admissibility == Admissibility::AdmissibleWithBoundary) {
      x_cycle_off_sigma.detail =
          "indeterminate: cycle has points inside the Sigma band";
    } else {
      x_cycle_off_sigma.detail = "not admissible (first failing index " +
                                 std::to_string(xcycle->first_failing_index) +
                                 ")";
    }

    // (v)-(vi) homoclinic orbit structure.
    const HomoclinicOrbit orbit =
        build_s_orbit(f, X, Y, rep.frame, x0, {.tol_sigma = tol_sigma});
    rep.subsumed = verify_subsumed(f, orbit);
    s_orbit_on_sigma.pass = rep.subsumed.y0_on_sigma &&
                            rep.subsumed.y_alpha_on_sigma &&
                            rep.subsumed.s_orbit_admissible;
    s_orbit_on_sigma.margin =
        kTolSigmaVerify -
        std::max(rep.subsumed.y0_residual, rep.subsumed.y_alpha_residual);
    {
      std::ostringstream os;
      os << "y0 residual " << rep.subsumed.y0_residual << ", y_alpha residual "
         << rep.subsumed.y_alpha_residual
         << (rep.subsumed.s_orbit_admissible ? ", orbit admissible"
                                             : ", orbit NOT admissible");
      s_orbit_on_sigma.detail = os.str();
    }
    no_double_hits.pass = rep.subsumed.no_double_boundary_hits;
    no_double_hits.margin = no_double_hits.pass ? 1.0 : -1.0;
    no_double_hits.detail =
        no_double_hits.pass
            ? "no i with y_i and y_{i+n} both on Sigma (checked through " +
                  std::to_string(rep.subsumed.horizon_checked) + ")"
            : "double hit at i = " + std::to_string(rep.subsumed.first_double_hit);

    // Necessity-direction items: c not an excluded value, and the 0-flipped
    // Y word maps the unstable direction off the stable manifold.
    c_not_excluded.margin = std::min(std::abs(c + 1.0), std::abs(c)) - 1e-8;
    c_not_excluded.pass = c_not_excluded.margin > 0;
    c_not_excluded.detail = "c = " + std::to_string(c);

    const WordComposition ybar = compose(f, flip(Y, 0));
    const Vector img = ybar.M * x0 + ybar.P * f.b();
    const double v = std::abs(rep.frame.omega1.dot(img - x0));
    flipped_y_transversality.margin = v - 1e-8;
    flipped_y_transversality.pass = v > 1e-8;
    flipped_y_transversality.detail =
        "|omega1^T (f_Ybar(x0) - x0)| = " + std::to_string(v);

    // k-sweep.
    for (int k = 0; k <= k_max; ++k) {
      SweepRow row;
      row.k = k;
      try {
        const Cycle c_k = xky_cycle(f, X, Y, k, tol_sigma);
        row.word = c_k.word.str();
        row.admissibility = c_k.admissibility;
        row.failing_index = c_k.first_failing_index;
        row.stability = c_k.stability;
        row.max_multiplier_modulus = c_k.max_multiplier_modulus();
        row.pass = c_k.admissibility == Admissibility::AdmissibleStrict &&
                   c_k.stability == Stability::AsymptoticallyStable;
      } catch (const DegenerateCycleError&) {
        row.word = word_power(X, k) + Y.str();
        row.pass = false;
      }
      rep.sweep.push_back(row);
    }

    rep.asymptotics = asymptotic_checks(f, X, Y, rep.frame, x0, a0,
                                        rep.quantities, y0, 3, 10);
  }

  rep.sufficient = {word_identity,     eigen_structure, multiplier_product,
                    c_band,            x_cycle_off_sigma, s_orbit_on_sigma,
                    no_double_hits};
  rep.necessary = {word_identity, eigen_structure, c_not_excluded,
                   flipped_y_transversality};

  rep.hypotheses_pass = true;
  for (const auto& h : rep.sufficient) rep.hypotheses_pass &= h.pass;
  for (const auto& h : rep.necessary) rep.hypotheses_pass &= h.pass;
  rep.sweep_pass = !rep.sweep.empty();
  for (const auto& row : rep.sweep) rep.sweep_pass &= row.pass;

  const bool ratio_ok =
      rep.asymptotics.theory_ratio > 0 &&
      std::abs(rep.asymptotics.fitted_ratio_proj - rep.asymptotics.theory_ratio) <=
          0.25 * rep.asymptotics.theory_ratio &&
      std::abs(rep.asymptotics.fitted_ratio_dist - rep.asymptotics.theory_ratio) <=
          0.25 * rep.asymptotics.theory_ratio;
  rep.overall_pass = rep.hypotheses_pass && rep.sweep_pass &&
                     rep.asymptotics.band_ok && rep.asymptotics.proj_decays &&
                     rep.asymptotics.dist_decays && ratio_ok;
  return rep;
}

}  // namespace pwlhc
