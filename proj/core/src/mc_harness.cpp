#include "urnphylo/mc_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <thread>

#include "urnphylo/spectral.hpp"

namespace urnphylo {

namespace {

constexpr std::uint64_t kChunk = 1024;  // fixed merge granularity

int resolve_threads(int requested) {
  int t = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  if (const char* env = std::getenv("URNPHYLO_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < t) t = cap;
  }
  return t;
}

nlohmann::json normality_json(const NormalityReport& r) {
  return {{"n", r.n},
          {"rank", r.rank},
          {"threshold", r.threshold},
          {"marginal_ks", r.marginal_ks},
          {"mahalanobis_ks", r.mahalanobis_ks},
          {"pass", r.pass()}};
}

struct ChunkOut {
  RunningMoments edge{0}, ab{2};
  std::vector<std::vector<double>> raw_edge, raw_ab;
};

}  // namespace

PhyloTree resolve_seed_tree(const std::string& spec) {
  if (spec == "t2") return PhyloTree::two_leaf();
  if (spec == "star") return PhyloTree::unrooted_star();
  if (spec.rfind("caterpillar:", 0) == 0) {
    int m = std::atoi(spec.c_str() + 12);
    if (m < 2) throw ConfigError("caterpillar seed needs at least 2 leaves");
    return PhyloTree::rooted_caterpillar(static_cast<std::uint32_t>(m));
  }
  try {
    return PhyloTree::from_newick(spec);
  } catch (const ParseError& e) {
    throw ConfigError("unrecognized seed tree '" + spec + "': " + e.what());
  }
}

void CampaignConfig::validate() const {
  if (replicates < 2) throw ConfigError("campaign needs at least 2 replicates");
  PhyloTree seed = resolve_seed_tree(seed_tree);
  if (seed.root_kind() != kind.rooting)
    throw ConfigError("seed tree rooting does not match the process");
  if (n <= seed.leaf_count()) throw ConfigError("terminal n must exceed seed size");
  if (kind.rooting == RootKind::Unrooted && n < 6)
    throw ConfigError("edge statistics undefined for unrooted trees with n < 6");
}

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  const PhyloTree seed = resolve_seed_tree(config.seed_tree);
  const SpectralData sd = builtin_spectral(config.kind.model);
  const double s = sd.s();
  const std::vector<double> v1 = sd.v1();
  const std::size_t dim = static_cast<std::size_t>(sd.d);
  const double sqrt_n = std::sqrt(static_cast<double>(config.n));

  const std::uint64_t n_rep = config.replicates;
  const std::uint64_t n_chunks = (n_rep + kChunk - 1) / kChunk;
  std::vector<ChunkOut> chunks;
  chunks.reserve(n_chunks);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    ChunkOut out;
    out.edge = RunningMoments(dim);
    chunks.push_back(std::move(out));
  }

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&]() {
    try {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        ChunkOut& out = chunks[c];
        const std::uint64_t lo = c * kChunk;
        const std::uint64_t hi = std::min(n_rep, lo + kChunk);
        if (config.run_normality) {
          out.raw_edge.reserve(hi - lo);
          out.raw_ab.reserve(hi - lo);
        }
        for (std::uint64_t rep = lo; rep < hi; ++rep) {
          GrowthResult g = generate(config.kind, seed, config.n, config.base_seed, rep);
          EdgeTypeVector v = config.kind.model == Model::YHK
                                 ? g.tree.classify_pendant_edges()
                                 : g.tree.classify_all_edges();
          if (v.sum() != (config.kind.model == Model::YHK
                              ? static_cast<std::int64_t>(g.tree.leaf_count())
                              : static_cast<std::int64_t>(g.tree.edge_count())))
            throw Error("edge type counts do not cover the tree");
          const std::int64_t a = v.pitchforks(), b = v.cherries();
          if (a != g.tree.count_pitchforks() || b != g.tree.count_cherries())
            throw Error("(A,B) from edge vector disagrees with the tree");

          std::vector<double> z(dim);
          for (std::size_t i = 0; i < dim; ++i)
            z[i] = (static_cast<double>(v.counts[i]) -
                    static_cast<double>(config.n) * s * v1[i]) /
                   sqrt_n;
          std::vector<double> zab{
              (static_cast<double>(a) - config.n * s * v1[0] / 2) / sqrt_n,
              (static_cast<double>(b) - config.n * s * (v1[0] + v1[1]) / 2) / sqrt_n};

          out.edge.push(z);
          out.ab.push(zab);
          if (config.run_normality) {
            out.raw_edge.push_back(std::move(z));
            out.raw_ab.push_back(std::move(zab));
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_chunks);
    }
  };

  const int n_threads = resolve_threads(config.threads);
  if (n_threads <= 1 || n_chunks <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  RunningMoments edge(dim), ab(2);
  std::vector<std::vector<double>> raw_edge, raw_ab;
  for (auto& c : chunks) {
    edge.merge(c.edge);
    ab.merge(c.ab);
    if (config.run_normality) {
      raw_edge.insert(raw_edge.end(), c.raw_edge.begin(), c.raw_edge.end());
      raw_ab.insert(raw_ab.end(), c.raw_ab.begin(), c.raw_ab.end());
    }
  }

  CampaignResult res;
  res.config = config;
  res.replicates = n_rep;
  res.rng_algorithm = RngStream::kAlgorithmId;
  if (config.collect_edge_vector) {
    res.edge_mean = edge.mean();
    res.edge_se = edge.std_errors();
    res.edge_cov = edge.covariance();
  }
  if (config.collect_ab) {
    res.ab_mean = ab.mean();
    res.ab_se = ab.std_errors();
    res.ab_cov = ab.covariance();
  }
  if (config.run_normality) {
    SigmaMatrix edge_sigma = sigma(sd);
    SigmaMatrix ab_sigma = project_ab(edge_sigma);
    res.edge_normality = normality_test(raw_edge, edge_sigma.value);
    res.ab_normality = normality_test(raw_ab, ab_sigma.value);
    res.has_normality = true;
  }
  return res;
}

std::string CampaignResult::to_json() const {
  nlohmann::json j;
  j["config"] = {{"model", model_name(config.kind.model)},
                 {"rooting", config.kind.rooting == RootKind::Rooted ? "rooted" : "unrooted"},
                 {"seed_tree", config.seed_tree},
                 {"n", config.n},
                 {"replicates", config.replicates},
                 {"base_seed", config.base_seed}};
  j["replicates"] = replicates;
  j["rng_algorithm"] = rng_algorithm;
  if (!edge_mean.empty()) {
    j["edge"] = {{"mean", edge_mean}, {"std_error", edge_se}, {"covariance", edge_cov}};
  }
  if (!ab_mean.empty()) {
    j["ab"] = {{"mean", ab_mean}, {"std_error", ab_se}, {"covariance", ab_cov}};
  }
  if (has_normality) {
    j["normality"] = {{"edge", normality_json(edge_normality)},
                      {"ab", normality_json(ab_normality)}};
  }
  return j.dump(2);
}

IndependenceReport initial_tree_independence(ProcessKind kind,
                                             const std::vector<std::string>& seeds,
                                             std::uint32_t n, std::uint64_t replicates,
                                             std::uint64_t base_seed,
                                             double cov_tolerance) {
  if (seeds.size() < 2) throw ConfigError("independence check needs at least 2 seeds");
  IndependenceReport rep;
  rep.cov_tolerance = cov_tolerance;
  for (const auto& s : seeds) {
    CampaignConfig cfg;
    cfg.kind = kind;
    cfg.seed_tree = s;
    cfg.n = n;
    cfg.replicates = replicates;
    cfg.base_seed = base_seed;
    cfg.collect_edge_vector = false;
    rep.per_seed.push_back(run_campaign(cfg));
  }

  auto frob = [](const std::vector<std::vector<double>>& m) {
    double s = 0;
    for (const auto& row : m)
      for (double v : row) s += v * v;
    return std::sqrt(s);
  };

  for (std::size_t i = 0; i < rep.per_seed.size(); ++i) {
    for (std::size_t j = i + 1; j < rep.per_seed.size(); ++j) {
      const auto& a = rep.per_seed[i];
      const auto& b = rep.per_seed[j];
      for (std::size_t k = 0; k < a.ab_mean.size(); ++k) {
        rep.max_mean_gap = std::max(rep.max_mean_gap, std::abs(a.ab_mean[k] - b.ab_mean[k]));
        double combined = std::sqrt(a.ab_se[k] * a.ab_se[k] + b.ab_se[k] * b.ab_se[k]);
        rep.mean_gap_tolerance = std::max(rep.mean_gap_tolerance, 3 * combined);
      }
      std::vector<std::vector<double>> diff = a.ab_cov;
      for (std::size_t r = 0; r < diff.size(); ++r)
        for (std::size_t c = 0; c < diff.size(); ++c) diff[r][c] -= b.ab_cov[r][c];
      double denom = std::max(frob(a.ab_cov), frob(b.ab_cov));
      if (denom > 0)
        rep.max_cov_rel_frobenius = std::max(rep.max_cov_rel_frobenius, frob(diff) / denom);
    }
  }
  rep.pass = rep.max_mean_gap <= rep.mean_gap_tolerance &&
             rep.max_cov_rel_frobenius <= rep.cov_tolerance;
  return rep;
}

std::string IndependenceReport::to_json() const {
  nlohmann::json j;
  j["max_mean_gap"] = max_mean_gap;
  j["mean_gap_tolerance"] = mean_gap_tolerance;
  j["max_cov_rel_frobenius"] = max_cov_rel_frobenius;
  j["cov_tolerance"] = cov_tolerance;
  j["pass"] = pass;
  std::vector<nlohmann::json> per;
  for (const auto& r : per_seed)
    per.push_back(nlohmann::json::parse(r.to_json()));
  j["per_seed"] = per;
  return j.dump(2);
}

UnrootedSplitEstimate unrooted_split_frequency(std::uint64_t replicates,
                                               std::uint64_t base_seed) {
  if (replicates == 0) throw ConfigError("need at least one replicate");
  const PhyloTree seed = PhyloTree::two_leaf();
  const std::vector<std::int64_t> alpha1{4, 0, 2, 0};
  UnrootedSplitEstimate est;
  est.replicates = replicates;
  for (std::uint64_t rep = 0; rep < replicates; ++rep) {
    GrowthResult g = generate({Model::YHK, RootKind::Rooted}, seed, 6, base_seed, rep);
    PhyloTree u = g.tree.unroot();
    if (u.classify_pendant_edges().counts == alpha1) ++est.alpha1_count;
  }
  est.frequency =
      static_cast<double>(est.alpha1_count) / static_cast<double>(replicates);
  est.std_error = std::sqrt(est.frequency * (1.0 - est.frequency) /
                            static_cast<double>(replicates));
  return est;
}

}  // namespace urnphylo
