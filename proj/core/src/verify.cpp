#include "urnphylo/verify.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "urnphylo/exact_moments.hpp"
#include "urnphylo/mc_harness.hpp"
#include "urnphylo/spectral.hpp"
#include "urnphylo/urn.hpp"

namespace urnphylo {

namespace {

RationalMatrix yhk_sigma_expected() {
  RationalMatrix m{{276, -388, 138, -26},
                   {-388, 724, -194, -142},
                   {138, -194, 69, -13},
                   {-26, -142, -13, 181}};
  return m.scaled(Rational(1, 1260));
}

RationalMatrix pda_sigma_expected() {
  RationalMatrix m{{12, -12, 6, -6, -6, 6},
                   {-12, 28, -6, -10, 14, -14},
                   {6, -6, 3, -3, -3, 3},
                   {-6, -10, -3, 19, -5, 5},
                   {-6, 14, -3, -5, 7, -7},
                   {6, -14, 3, 5, -7, 7}};
  return m.scaled(Rational(1, 64));
}

RationalMatrix yhk_ab_expected() {
  RationalMatrix m{{69, -28}, {-28, 56}};
  return m.scaled(Rational(1, 1260));
}

RationalMatrix pda_ab_expected() {
  RationalMatrix m{{3, 0}, {0, 4}};
  return m.scaled(Rational(1, 64));
}

double rel_frobenius(const std::vector<std::vector<double>>& got,
                     const std::vector<std::vector<double>>& want) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < want.size(); ++i)
    for (std::size_t j = 0; j < want.size(); ++j) {
      num += (got[i][j] - want[i][j]) * (got[i][j] - want[i][j]);
      den += want[i][j] * want[i][j];
    }
  return std::sqrt(num / den);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

CriterionResult c1_sigma_exact() {
  CriterionResult r{1, "sigma exactness (edge-vector CLT covariances)", false, ""};
  SigmaMatrix ys = sigma(builtin_spectral(Model::YHK));
  SigmaMatrix ps = sigma(builtin_spectral(Model::PDA));
  bool yhk_ok = ys.exact && *ys.exact == yhk_sigma_expected();
  bool pda_ok = ps.exact && *ps.exact == pda_sigma_expected();
  r.pass = yhk_ok && pda_ok;
  r.detail = std::string("yhk ") + (yhk_ok ? "exact" : "MISMATCH") + ", pda " +
             (pda_ok ? "exact" : "MISMATCH");
  return r;
}

CriterionResult c2_projection() {
  CriterionResult r{2, "(A,B) covariance projection", false, ""};
  SigmaMatrix ya = project_ab(sigma(builtin_spectral(Model::YHK)));
  SigmaMatrix pa = project_ab(sigma(builtin_spectral(Model::PDA)));
  bool yhk_ok = ya.exact && *ya.exact == yhk_ab_expected();
  bool pda_ok = pa.exact && *pa.exact == pda_ab_expected();
  bool consts_ok = Rational(69, 1260) == Rational(23, 420) &&
                   Rational(56, 1260) == Rational(2, 45) &&
                   Rational(28, 1260) == Rational(1, 45);
  r.pass = yhk_ok && pda_ok && consts_ok;
  r.detail = std::string("yhk ") + (yhk_ok ? "exact" : "MISMATCH") + ", pda " +
             (pda_ok ? "exact" : "MISMATCH") + ", variance constants " +
             (consts_ok ? "ok" : "MISMATCH");
  return r;
}

CriterionResult c3_eigendata() {
  CriterionResult r{3, "eigendecomposition (exact identity and numeric recovery)", false, ""};
  // builtin_spectral throws if U^-1 R U != Lambda exactly.
  SpectralData ye = builtin_spectral(Model::YHK);
  SpectralData pe = builtin_spectral(Model::PDA);
  SpectralData yn = diagonalize(ReplacementMatrix::yhk());
  SpectralData pn = diagonalize(ReplacementMatrix::pda());
  double err = 0;
  for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(yn.eigenvalues[i] - ye.eigenvalues[i]));
  for (int i = 0; i < 6; ++i) err = std::max(err, std::abs(pn.eigenvalues[i] - pe.eigenvalues[i]));
  r.pass = err < 1e-8;
  r.detail = "max eigenvalue error " + fmt(err) + " (tol 1e-8)";
  return r;
}

CriterionResult c4_oracle_equivalence() {
  CriterionResult r{4, "closed-form moments vs exhaustive enumeration, n=7..10", false, ""};
  for (int n = 7; n <= 10; ++n) {
    for (Model model : {Model::YHK, Model::PDA}) {
      JointPmf pmf = enumerate_exact(model, PhyloTree::two_leaf(), n);
      if (pmf.total_ab() != 1) {
        r.detail = "pmf mass != 1 at n=" + std::to_string(n);
        return r;
      }
      MomentSet got = moments_from_pmf(pmf, model, n);
      MomentSet want = model == Model::YHK ? yhk_moments(n) : pda_moments(n);
      if (got.e_a != want.e_a || got.e_b != want.e_b || got.var_a != want.var_a ||
          got.var_b != want.var_b || got.cov_ab != want.cov_ab) {
        r.detail = model_name(model) + " mismatch at n=" + std::to_string(n) + ": E[A]=" +
                   rational_to_string(got.e_a) + " vs " + rational_to_string(want.e_a) +
                   ", V[B]=" + rational_to_string(got.var_b) + " vs " +
                   rational_to_string(want.var_b);
        return r;
      }
    }
  }
  r.pass = true;
  r.detail = "all five moments agree exactly for both models, n=7..10";
  return r;
}

CriterionResult c5_urn_tree_coupling() {
  CriterionResult r{5, "growth traces replay exactly through the urn", false, ""};
  const int n_traces = 1000, n_leaves = 30;
  const std::uint64_t seed = 11;
  for (Model model : {Model::YHK, Model::PDA}) {
    const ReplacementMatrix R = ReplacementMatrix::from_model(model);
    const bool full = model == Model::PDA;
    for (int rep = 0; rep < n_traces; ++rep) {
      GrowthResult g = generate({model, RootKind::Rooted}, PhyloTree::two_leaf(), n_leaves,
                                seed, static_cast<std::uint64_t>(rep));
      PhyloTree tree = PhyloTree::two_leaf();
      UrnState state = UrnState::from_edge_types(full ? tree.classify_all_edges()
                                                      : tree.classify_pendant_edges());
      for (std::size_t k = 0; k < g.trace.steps.size(); ++k) {
        const GrowthStep& step = g.trace.steps[k];
        for (int j = 0; j < R.d; ++j) state.counts[j] += R.rows[step.edge_type - 1][j];
        tree.attach_leaf(EdgeRef{step.edge_child}, tree.max_label() + 1);
        EdgeTypeVector v = full ? tree.classify_all_edges() : tree.classify_pendant_edges();
        if (UrnState::from_edge_types(v).counts != state.counts) {
          r.detail = model_name(model) + " trace " + std::to_string(rep) +
                     " diverged at step " + std::to_string(k + 1);
          return r;
        }
      }
    }
  }
  r.pass = true;
  r.detail = "1000 traces per model, 28 steps each, exact agreement";
  return r;
}

CriterionResult c6_slln() {
  CriterionResult r{6, "SLLN at n=1e5 (single runs)", false, ""};
  const std::uint32_t n = 100000;
  const std::uint64_t seed = 7;
  double worst = 0;
  for (Model model : {Model::YHK, Model::PDA}) {
    GrowthResult g = generate({model, RootKind::Rooted}, PhyloTree::two_leaf(), n, seed, 0);
    EdgeTypeVector v = model == Model::YHK ? g.tree.classify_pendant_edges()
                                           : g.tree.classify_all_edges();
    SpectralData sd = builtin_spectral(model);
    auto v1 = sd.v1();
    for (std::size_t i = 0; i < v1.size(); ++i) {
      double got = static_cast<double>(v.counts[i]) / n;
      worst = std::max(worst, std::abs(got - sd.s() * v1[i]));
    }
  }
  r.pass = worst < 0.01;
  r.detail = "max |X/n - s*v1| = " + fmt(worst) + " (tol 0.01)";
  return r;
}

CriterionResult c7_clt() {
  CriterionResult r{7, "CLT at n=2000, N=1e4 (mean, covariance, normality)", false, ""};
  std::ostringstream detail;
  bool ok = true;
  for (Model model : {Model::YHK, Model::PDA}) {
    CampaignConfig cfg;
    cfg.kind = {model, RootKind::Rooted};
    cfg.n = 2000;
    cfg.replicates = 10000;
    cfg.base_seed = 2026;
    cfg.run_normality = true;
    CampaignResult res = run_campaign(cfg);

    RationalMatrix want_q = model == Model::YHK ? yhk_ab_expected() : pda_ab_expected();
    auto want = want_q.to_doubles();
    double se0 = std::sqrt(want[0][0] / static_cast<double>(cfg.replicates));
    double se1 = std::sqrt(want[1][1] / static_cast<double>(cfg.replicates));
    bool mean_ok = std::abs(res.ab_mean[0]) < 3 * se0 && std::abs(res.ab_mean[1]) < 3 * se1;
    double fro = rel_frobenius(res.ab_cov, want);
    bool cov_ok = fro < 0.10;
    bool ks_ok = res.ab_normality.mahalanobis_ks < res.ab_normality.threshold;
    ok = ok && mean_ok && cov_ok && ks_ok;
    detail << model_name(model) << ": mean (" << fmt(res.ab_mean[0]) << "," << fmt(res.ab_mean[1])
           << ") vs 3SE (" << fmt(3 * se0) << "," << fmt(3 * se1) << "), cov relF " << fmt(fro)
           << ", maha KS " << fmt(res.ab_normality.mahalanobis_ks) << " < "
           << fmt(res.ab_normality.threshold) << (ks_ok ? "" : " FAIL") << "; ";
  }
  r.pass = ok;
  r.detail = detail.str();
  return r;
}

CriterionResult c8_seed_independence() {
  CriterionResult r{8, "initial-tree independence (2-leaf vs 7-leaf seeds)", false, ""};
  auto want = yhk_ab_expected().to_doubles();
  std::ostringstream detail;
  bool ok = true;
  for (const std::string& seed_tree :
       {std::string("t2"), std::string("((((1,2),(3,4)),5),(6,7));")}) {
    CampaignConfig cfg;
    cfg.kind = {Model::YHK, RootKind::Rooted};
    cfg.seed_tree = seed_tree;
    cfg.n = 2000;
    cfg.replicates = 10000;
    cfg.base_seed = 77;
    cfg.collect_edge_vector = false;
    CampaignResult res = run_campaign(cfg);
    double fro = rel_frobenius(res.ab_cov, want);
    ok = ok && fro < 0.10;
    detail << "seed " << (seed_tree == "t2" ? "t2" : "7-leaf") << ": cov relF " << fmt(fro)
           << "; ";
  }
  r.pass = ok;
  r.detail = detail.str() + "(tol 0.10 each)";
  return r;
}

CriterionResult c9_unrooted_split() {
  CriterionResult r{9, "unrooted 6-leaf split frequency vs 4/5", false, ""};
  UnrootedSplitEstimate est = unrooted_split_frequency(100000, 5);
  double se = std::sqrt(0.8 * 0.2 / static_cast<double>(est.replicates));
  r.pass = std::abs(est.frequency - 0.8) < 3 * se;
  r.detail = "freq " + fmt(est.frequency) + ", |diff| " + fmt(std::abs(est.frequency - 0.8)) +
             " < 3SE " + fmt(3 * se);
  return r;
}

CriterionResult c10_b_limit() {
  CriterionResult r{10, "b-coefficient second-moment limits at n=1e5", false, ""};
  struct Case {
    double li, lj, s, t0, limit;
  };
  const Case cases[] = {
      {-2, -2, 1, 2, 1.0 / 5}, {-2, -3, 1, 2, 1.0 / 6}, {-3, -3, 1, 2, 1.0 / 7},
      {-2, -2, 2, 3, 1.0 / 3}, {-2, -4, 2, 3, 1.0 / 4}, {-4, -4, 2, 3, 1.0 / 5},
  };
  double worst = 0;
  for (const Case& c : cases) {
    double got = b_second_moment_sum(100000, c.li, c.lj, c.s, c.t0);
    worst = std::max(worst, std::abs(got - c.limit));
  }
  r.pass = worst < 1e-2;
  r.detail = "max |sum - s/(s-li-lj)| = " + fmt(worst) + " (tol 1e-2)";
  return r;
}

}  // namespace

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (suite == "spectral") return {1, 2, 3};
  if (suite == "urn") return {5, 10};
  if (suite == "yhk") return {4, 6, 7, 8, 9};
  if (suite == "pda") return {4, 5, 6, 7};
  throw ConfigError("unknown suite '" + suite + "' (expected yhk|pda|urn|spectral|all)");
}

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return c1_sigma_exact();
    case 2: return c2_projection();
    case 3: return c3_eigendata();
    case 4: return c4_oracle_equivalence();
    case 5: return c5_urn_tree_coupling();
    case 6: return c6_slln();
    case 7: return c7_clt();
    case 8: return c8_seed_independence();
    case 9: return c9_unrooted_split();
    case 10: return c10_b_limit();
    default: throw ConfigError("unknown criterion " + std::to_string(id));
  }
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) out.push_back(run_criterion(id));
  return out;
}

std::string acceptance_report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j;
  j["pass"] = all_pass(results);
  std::vector<nlohmann::json> items;
  for (const auto& r : results)
    items.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  j["criteria"] = items;
  return j.dump(2);
}

bool all_pass(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace urnphylo
