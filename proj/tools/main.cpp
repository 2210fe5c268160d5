// rankdepth command-line front end. Every stochastic subcommand is a pure
// function of (inputs, flags, seed); outputs are buffered in memory and only
// written once a subcommand finishes, so failures never leave partial files.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rankdepth/rankdepth.hpp"

using json = nlohmann::json;
using namespace rankdepth;

namespace {

Metric parse_metric(const std::string& name) {
  if (name == "kendall") return Metric::KendallTau;
  if (name == "rho") return Metric::SpearmanRho;
  if (name == "footrule") return Metric::SpearmanFootrule;
  if (name == "hamming") return Metric::Hamming;
  throw CLI::ValidationError("--metric", "unknown metric: " + name);
}

RankingFormat parse_format_flag(const std::string& name) {
  if (name == "ranks") return RankingFormat::Ranks;
  if (name == "ordering") return RankingFormat::Ordering;
  throw CLI::ValidationError("--input-format", "unknown format: " + name);
}

// Accepts "2 1 3" or "2,1,3", one-based ranks.
Permutation parse_permutation_flag(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<int> ranks;
  int v;
  while (in >> v) ranks.push_back(v - 1);
  return Permutation(std::move(ranks));
}

// Deferred file writes: nothing touches disk until the subcommand succeeds.
struct OutputBundle {
  std::vector<std::pair<std::string, std::string>> files;  // path -> content
  void add(const std::string& path, std::string content) {
    files.emplace_back(path, std::move(content));
  }
  void flush() const {
    for (const auto& [path, content] : files) {
      if (path == "-") {
        std::cout << content;
        continue;
      }
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write file: " + path);
      out << content;
    }
  }
};

json result_to_json(const TestResult& r) {
  return {{"statistic", r.statistic}, {"z", r.z},   {"p_value", r.p_value},
          {"n1", r.n1},               {"n2", r.n2}, {"exact", r.exact}};
}

json consensus_to_json(const ConsensusResult& r) {
  json medians = json::array();
  for (const auto& m : r.medians) medians.push_back(ranking_to_string(m));
  return {{"method", r.method}, {"risk", r.risk}, {"medians", medians}};
}

// First item triple violating SST under the given tolerance, as a message.
std::string violating_triple(const PairwiseMatrix& m, double tol) {
  const int n = m.size();
  auto geq = [&](int a, int b) { return m(a, b) >= 0.5 - tol; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (geq(i, j) && geq(j, k) && !(m(i, k) >= std::max(m(i, j), m(j, k)) - tol))
          return "items (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                 "," + std::to_string(k + 1) + "): p(" + std::to_string(i + 1) +
                 "," + std::to_string(j + 1) + ")=" + std::to_string(m(i, j)) +
                 ", p(" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                 ")=" + std::to_string(m(j, k)) + ", p(" + std::to_string(i + 1) +
                 "," + std::to_string(k + 1) + ")=" + std::to_string(m(i, k));
      }
  return "no violating triple found";
}

struct CommonOpts {
  std::string input;
  std::string output = "-";
  std::string metric_name = "kendall";
  std::string input_format = "ranks";
  bool normalize = false;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_input = true) {
  auto* in = cmd->add_option("-i,--input", opts.input, "input rankings CSV");
  if (needs_input) in->required();
  cmd->add_option("-o,--output", opts.output, "output path ('-' for stdout)");
  cmd->add_option("--metric", opts.metric_name,
                  "distance metric {kendall,rho,footrule,hamming}");
  cmd->add_option("--input-format", opts.input_format,
                  "ranking file layout {ranks,ordering}");
  cmd->add_flag("--normalize", opts.normalize, "normalize depths by max distance");
  cmd->add_option("--format", opts.format, "output format {csv,json}");
}

RankingSample load(const CommonOpts& opts) {
  return parse_rankings_file(opts.input, parse_format_flag(opts.input_format));
}

int run_depth(const CommonOpts& opts) {
  const auto sample = load(opts);
  const Metric m = parse_metric(opts.metric_name);
  const double scale =
      opts.normalize ? max_distance(m, sample.item_count()) : 1.0;
  std::vector<double> depths(sample.rankings.size());
  for (std::size_t i = 0; i < sample.rankings.size(); ++i)
    depths[i] = depth_empirical(sample, sample.rankings[i], m) / scale;
  OutputBundle out;
  if (opts.format == "json") {
    json rows = json::array();
    for (std::size_t i = 0; i < depths.size(); ++i)
      rows.push_back({{"index", i},
                      {"ranking", ranking_to_string(sample.rankings[i])},
                      {"depth", depths[i]}});
    out.add(opts.output, json({{"metric", metric_name(m)},
                               {"normalized", opts.normalize},
                               {"depths", rows}})
                             .dump(2) +
                             "\n");
  } else {
    std::ostringstream csv;
    csv << "index,ranking,depth\n";
    for (std::size_t i = 0; i < depths.size(); ++i)
      csv << i << ',' << ranking_to_string(sample.rankings[i]) << ','
          << depths[i] << '\n';
    out.add(opts.output, csv.str());
  }
  out.flush();
  return 0;
}

int run_pairwise(const CommonOpts& opts, double tol) {
  const auto pw = empirical_pairwise(load(opts));
  const auto status = transitivity_status(pw, tol);
  const int cycles = count_cycles(pw, tol);
  OutputBundle out;
  if (opts.format == "json") {
    json rows = json::array();
    for (int i = 0; i < pw.size(); ++i) {
      json row = json::array();
      for (int j = 0; j < pw.size(); ++j) row.push_back(pw(i, j));
      rows.push_back(row);
    }
    out.add(opts.output, json({{"n", pw.size()},
                               {"matrix", rows},
                               {"status", transitivity_name(status)},
                               {"cycles", cycles}})
                             .dump(2) +
                             "\n");
  } else {
    std::ostringstream csv;
    emit_pairwise(csv, pw);
    csv << "status," << transitivity_name(status) << '\n';
    csv << "cycles," << cycles << '\n';
    out.add(opts.output, csv.str());
  }
  out.flush();
  return 0;
}

int run_trim(const CommonOpts& opts, const std::string& target,
             const std::string& trace_path, double tol, bool fixed_depths,
             const std::string& center_text) {
  TrimConfig cfg;
  cfg.target = target == "st" ? TrimTarget::ST : TrimTarget::SST;
  cfg.depth_mode = fixed_depths ? TrimDepthMode::FixedInitial
                                : TrimDepthMode::RecomputeEachIteration;
  cfg.metric = parse_metric(opts.metric_name);
  cfg.sst_tolerance = tol;
  if (!center_text.empty())
    cfg.reference_center = parse_permutation_flag(center_text);
  const auto result = trim_to_sst(load(opts), cfg);
  OutputBundle out;
  std::ostringstream trimmed;
  emit_rankings(trimmed, result.trimmed, parse_format_flag(opts.input_format));
  out.add(opts.output, trimmed.str());
  if (!trace_path.empty()) {
    std::ostringstream trace;
    emit_trim_trace(trace, result.trace);
    out.add(trace_path, trace.str());
  }
  out.flush();
  return 0;
}

int run_aggregate(const CommonOpts& opts, const std::string& method, double mu,
                  double tol) {
  const auto sample = load(opts);
  const Metric m = parse_metric(opts.metric_name);
  json doc;
  if (method == "kemeny-bf") {
    doc = consensus_to_json(kemeny_bruteforce(sample, m));
  } else if (method == "kemeny-sst") {
    const auto pw = empirical_pairwise(sample);
    if (transitivity_status(pw, tol) != Transitivity::SST) {
      std::cerr << "aggregate: pairwise matrix is not SST; violating triple: "
                << violating_triple(pw, tol) << '\n';
      return 2;
    }
    doc = {{"method", "kemeny-sst"},
           {"medians", {ranking_to_string(kemeny_sst(pw))}}};
  } else if (method == "borda") {
    doc = {{"method", "borda"}, {"medians", {ranking_to_string(borda(sample))}}};
  } else if (method == "dt-borda") {
    doc = {{"method", "dt-borda"},
           {"mu", mu},
           {"medians",
            {ranking_to_string(borda(sample, BordaConfig::depth_trimmed(mu, m)))}}};
  } else {
    throw CLI::ValidationError("--method", "unknown method: " + method);
  }
  OutputBundle out;
  out.add(opts.output, doc.dump(2) + "\n");
  out.flush();
  return 0;
}

int run_ddplot(const CommonOpts& opts, const std::string& second_path) {
  const auto s1 = load(opts);
  const auto s2 =
      parse_rankings_file(second_path, parse_format_flag(opts.input_format));
  const auto dd =
      dd_plot(s1, s2, parse_metric(opts.metric_name), opts.normalize);
  OutputBundle out;
  std::ostringstream csv;
  emit_dd_plot(csv, dd);
  out.add(opts.output, csv.str());
  out.flush();
  return 0;
}

int run_htest(const CommonOpts& opts, const std::string& reference_path,
              const std::string& second_path, int reps, std::uint64_t seed) {
  const auto fmt = parse_format_flag(opts.input_format);
  const auto reference = parse_rankings_file(reference_path, fmt);
  const auto s1 = load(opts);
  const auto s2 = parse_rankings_file(second_path, fmt);
  const Metric m = parse_metric(opts.metric_name);
  json doc = {{"observed", result_to_json(homogeneity_test(reference, s1, s2, m))}};
  if (reps > 0) {
    // Monte Carlo mode: permutation re-splits of the pooled tested samples.
    Rng rng(seed);
    std::vector<Permutation> pooled = s1.rankings;
    pooled.insert(pooled.end(), s2.rankings.begin(), s2.rankings.end());
    json pvals = json::array();
    for (int rep = 0; rep < reps; ++rep) {
      auto shuffled = pooled;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      RankingSample a, b;
      a.rankings.assign(shuffled.begin(),
                        shuffled.begin() +
                            static_cast<std::ptrdiff_t>(s1.rankings.size()));
      b.rankings.assign(shuffled.begin() +
                            static_cast<std::ptrdiff_t>(s1.rankings.size()),
                        shuffled.end());
      pvals.push_back(homogeneity_test(reference, a, b, m).p_value);
    }
    doc["reps"] = reps;
    doc["seed"] = seed;
    doc["p_values"] = pvals;
  }
  OutputBundle out;
  out.add(opts.output, doc.dump(2) + "\n");
  out.flush();
  return 0;
}

int run_outliers(const CommonOpts& opts, std::optional<double> level,
                 std::optional<double> alpha) {
  if (level.has_value() == alpha.has_value())
    throw CLI::ValidationError("outliers",
                               "give exactly one of --level, --alpha");
  const auto sample = load(opts);
  const auto threshold = level ? OutlierThreshold::level(*level)
                               : OutlierThreshold::quantile(*alpha);
  const auto result =
      detect_outliers(sample, parse_metric(opts.metric_name), threshold);
  OutputBundle out;
  std::ostringstream csv;
  csv << "index,ranking\n";
  for (std::size_t i : result.indices)
    csv << i << ',' << ranking_to_string(sample.rankings[i]) << '\n';
  out.add(opts.output, csv.str());
  out.flush();
  return 0;
}

int run_sample(const CommonOpts& opts, const std::string& model, int n,
               std::size_t count, std::uint64_t seed, double phi,
               const std::string& center_text, std::vector<double> weights,
               double phi2, const std::string& center2_text, std::size_t count2) {
  Rng rng(seed);
  RankingSample sample;
  if (model == "mallows" || model == "mixture") {
    const Permutation center = center_text.empty()
                                   ? Permutation::identity(n)
                                   : parse_permutation_flag(center_text);
    sample = sample_mallows(MallowsParams(center, phi), count, rng);
    if (model == "mixture") {
      const Permutation center2 = center2_text.empty()
                                      ? center.reversed()
                                      : parse_permutation_flag(center2_text);
      sample = sample.concat(
          sample_mallows(MallowsParams(center2, phi2), count2, rng));
    }
  } else if (model == "pl") {
    if (weights.empty()) {
      weights.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        weights[static_cast<std::size_t>(i)] = static_cast<double>(n - i);
    }
    sample = sample_plackett_luce(PlackettLuceParams(weights), count, rng);
  } else {
    throw CLI::ValidationError("--model", "unknown model: " + model);
  }
  OutputBundle out;
  std::ostringstream csv;
  emit_rankings(csv, sample, parse_format_flag(opts.input_format));
  out.add(opts.output, csv.str());
  out.flush();
  return 0;
}

int run_breakdown(const CommonOpts& opts, int n, double phi, std::size_t count,
                  double delta, double mu, std::size_t n_seeds,
                  std::uint64_t seed) {
  std::vector<std::uint64_t> seeds(n_seeds);
  std::iota(seeds.begin(), seeds.end(), seed);
  const auto report = breakdown_experiment(
      MallowsParams(Permutation::identity(n), phi), count, delta, mu, seeds);
  json per_seed = json::array();
  for (const auto& r : report.per_seed)
    per_seed.push_back({{"seed", r.seed},
                        {"k_plain", r.k_plain},
                        {"k_trimmed", r.k_trimmed},
                        {"frac_plain", r.frac_plain},
                        {"frac_trimmed", r.frac_trimmed},
                        {"plain_capped", r.plain_capped},
                        {"trimmed_capped", r.trimmed_capped}});
  OutputBundle out;
  out.add(opts.output, json({{"delta", report.delta},
                             {"mu", report.mu},
                             {"clean_size", report.clean_size},
                             {"mean_frac_plain", report.mean_frac_plain},
                             {"mean_frac_trimmed", report.mean_frac_trimmed},
                             {"ratio", report.ratio},
                             {"per_seed", per_seed}})
                           .dump(2) +
                           "\n");
  out.flush();
  return 0;
}

// Desk-scale reproduction bundles, one CSV set per figure analog.
int run_repro(const std::string& which, const std::string& outdir,
              std::uint64_t seed) {
  std::filesystem::create_directories(outdir);
  OutputBundle out;
  auto path = [&](const std::string& name) { return outdir + "/" + name; };

  if (which == "fig1") {
    // Contaminated Mallows, trimmed to SST; trace tracks recovery.
    const int n = 8;
    const Permutation center = Permutation::identity(n);
    Rng rng(seed);
    const auto clean = sample_mallows(MallowsParams(center, 0.8), 2000, rng);
    const auto bad =
        sample_mallows(MallowsParams(center.reversed(), 0.4), 400, rng);
    TrimConfig cfg;
    cfg.reference_center = center;
    const auto result = trim_to_sst(clean.concat(bad), cfg);
    std::ostringstream trace, trimmed;
    emit_trim_trace(trace, result.trace);
    emit_rankings(trimmed, result.trimmed);
    out.add(path("fig1_trace.csv"), trace.str());
    out.add(path("fig1_trimmed.csv"), trimmed.str());
  } else if (which == "ddplot") {
    // Location-shift vs dispersion-shift regimes at N=250.
    const int n = 10;
    const Permutation c1 = Permutation::identity(n);
    auto ranks = c1.ranks();
    for (int k = 0; k < 5; ++k)  // 15 inversions: reverse ranks 0..5
      std::swap(ranks[static_cast<std::size_t>(k)],
                ranks[static_cast<std::size_t>(5 - k)]);
    std::reverse(ranks.begin(), ranks.begin() + 6);
    const Permutation c2(std::move(ranks));
    Rng rng(seed);
    const auto a1 = sample_mallows(MallowsParams(c1, std::exp(-1.0)), 250, rng);
    const auto a2 = sample_mallows(MallowsParams(c2, std::exp(-1.0)), 250, rng);
    const auto b1 = sample_mallows(MallowsParams(c1, std::exp(-0.5)), 250, rng);
    const auto b2 = sample_mallows(MallowsParams(c1, std::exp(-2.0)), 250, rng);
    std::ostringstream csv_a, csv_b;
    emit_dd_plot(csv_a, dd_plot(a1, a2, Metric::KendallTau, true));
    emit_dd_plot(csv_b, dd_plot(b1, b2, Metric::KendallTau, true));
    out.add(path("ddplot_location.csv"), csv_a.str());
    out.add(path("ddplot_scale.csv"), csv_b.str());
  } else if (which == "htest") {
    // Plackett-Luce homogeneity p-values across the strength-decay sweep.
    const int n = 10;
    std::vector<double> w1(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      w1[static_cast<std::size_t>(i)] = std::exp(9.0 - i);
    std::ostringstream csv;
    csv << "gamma,rep,p_value\n";
    for (double gamma : {0.25, 0.5, 0.75, 1.0}) {
      std::vector<double> w2(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        w2[static_cast<std::size_t>(i)] = std::exp(gamma * (9.0 - i));
      for (int rep = 0; rep < 50; ++rep) {
        Rng rng(seed + static_cast<std::uint64_t>(rep) +
                static_cast<std::uint64_t>(gamma * 1000) * 1000);
        const auto ref = sample_plackett_luce(PlackettLuceParams(w1), 500, rng);
        const auto s1 = sample_plackett_luce(PlackettLuceParams(w1), 50, rng);
        const auto s2 = sample_plackett_luce(PlackettLuceParams(w2), 50, rng);
        csv << gamma << ',' << rep << ','
            << homogeneity_test(ref, s1, s2, Metric::KendallTau).p_value
            << '\n';
      }
    }
    out.add(path("htest_pvalues.csv"), csv.str());
  } else if (which == "breakdown") {
    const int n = 6;
    std::vector<std::uint64_t> seeds(20);
    std::iota(seeds.begin(), seeds.end(), seed);
    const auto report = breakdown_experiment(
        MallowsParams(Permutation::identity(n), 0.7), 500, 3.0,
        0.6 * max_distance(Metric::KendallTau, n), seeds);
    std::ostringstream csv;
    csv << "seed,k_plain,k_trimmed,frac_plain,frac_trimmed\n";
    for (const auto& r : report.per_seed)
      csv << r.seed << ',' << r.k_plain << ',' << r.k_trimmed << ','
          << r.frac_plain << ',' << r.frac_trimmed << '\n';
    out.add(path("breakdown_fractions.csv"), csv.str());
  } else {
    throw CLI::ValidationError(
        "repro", "unknown target: " + which +
                     " (expected fig1, ddplot, htest, or breakdown)");
  }
  out.flush();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"depth-based analysis of ranking data"};
  app.require_subcommand(1);

  CommonOpts depth_opts;
  auto* depth_cmd = app.add_subcommand("depth", "per-ranking empirical depths");
  add_common(depth_cmd, depth_opts);

  CommonOpts pairwise_opts;
  double pairwise_tol = 0.0;
  auto* pairwise_cmd = app.add_subcommand(
      "pairwise", "pairwise matrix with transitivity status and cycle count");
  add_common(pairwise_cmd, pairwise_opts);
  pairwise_cmd->add_option("--tol", pairwise_tol, "tie tolerance around 1/2");

  CommonOpts trim_opts;
  std::string trim_target = "sst", trim_trace, trim_center;
  double trim_tol = 0.0;
  bool trim_fixed = false;
  auto* trim_cmd =
      app.add_subcommand("trim", "depth-trim a sample until (S)ST holds");
  add_common(trim_cmd, trim_opts);
  trim_cmd->add_option("--target", trim_target, "stop condition {st,sst}");
  trim_cmd->add_option("--trace", trim_trace, "write per-iteration trace CSV");
  trim_cmd->add_option("--tol", trim_tol, "tie tolerance around 1/2");
  trim_cmd->add_flag("--fixed-depths", trim_fixed,
                     "rank removals by initial depths only");
  trim_cmd->add_option("--center", trim_center,
                       "reference ranking for trace distances (one-based)");

  CommonOpts agg_opts;
  std::string agg_method;
  double agg_mu = 0.0, agg_tol = 0.0;
  auto* agg_cmd = app.add_subcommand("aggregate", "consensus ranking");
  add_common(agg_cmd, agg_opts);
  agg_cmd
      ->add_option("--method", agg_method,
                   "one of {kemeny-bf,kemeny-sst,borda,dt-borda}")
      ->required();
  agg_cmd->add_option("--mu", agg_mu, "depth cutoff for dt-borda");
  agg_cmd->add_option("--tol", agg_tol, "SST tie tolerance for kemeny-sst");

  CommonOpts dd_opts;
  std::string dd_second;
  auto* dd_cmd = app.add_subcommand("ddplot", "depth-vs-depth plot data");
  add_common(dd_cmd, dd_opts);
  dd_cmd->add_option("--second", dd_second, "second rankings CSV")->required();

  CommonOpts ht_opts;
  std::string ht_reference, ht_second;
  int ht_reps = 0;
  std::uint64_t ht_seed = 0;
  auto* ht_cmd = app.add_subcommand("htest", "depth-based homogeneity test");
  add_common(ht_cmd, ht_opts);
  ht_cmd->add_option("--reference", ht_reference, "held-out reference CSV")
      ->required();
  ht_cmd->add_option("--second", ht_second, "second tested CSV")->required();
  ht_cmd->add_option("--reps", ht_reps,
                     "Monte Carlo re-splits of the pooled tested samples");
  ht_cmd->add_option("--seed", ht_seed, "seed for --reps mode");

  CommonOpts out_opts;
  std::optional<double> out_level, out_alpha;
  auto* out_cmd = app.add_subcommand("outliers", "flag low-depth rankings");
  add_common(out_cmd, out_opts);
  out_cmd->add_option("--level", out_level, "normalized depth threshold in [0,1]");
  out_cmd->add_option("--alpha", out_alpha, "mid-quantile threshold level");

  CommonOpts sample_opts;
  std::string sample_model, sample_center, sample_center2;
  int sample_n = 0;
  std::size_t sample_count = 0, sample_count2 = 0;
  std::uint64_t sample_seed = 0;
  double sample_phi = 0.5, sample_phi2 = 0.5;
  std::vector<double> sample_weights;
  auto* sample_cmd = app.add_subcommand("sample", "draw seeded model samples");
  add_common(sample_cmd, sample_opts, /*needs_input=*/false);
  sample_cmd->add_option("--model", sample_model, "one of {mallows,pl,mixture}")
      ->required();
  sample_cmd->add_option("--n", sample_n, "item count")->required();
  sample_cmd->add_option("--count", sample_count, "number of rankings")
      ->required();
  sample_cmd->add_option("--seed", sample_seed, "RNG seed")->required();
  sample_cmd->add_option("--phi", sample_phi, "Mallows dispersion in (0,1]");
  sample_cmd->add_option("--center", sample_center, "Mallows center (one-based)");
  sample_cmd->add_option("--weights", sample_weights,
                         "Plackett-Luce strengths (positive)");
  sample_cmd->add_option("--phi2", sample_phi2, "mixture second dispersion");
  sample_cmd->add_option("--center2", sample_center2,
                         "mixture second center (default: reversal)");
  sample_cmd->add_option("--count2", sample_count2, "mixture second count");

  CommonOpts bd_opts;
  int bd_n = 0;
  double bd_phi = 0.7, bd_delta = 3.0, bd_mu = 0.0;
  std::size_t bd_count = 0, bd_seeds = 20;
  std::uint64_t bd_seed = 0;
  auto* bd_cmd =
      app.add_subcommand("breakdown", "plain vs depth-trimmed Borda breakdown");
  add_common(bd_cmd, bd_opts, /*needs_input=*/false);
  bd_cmd->add_option("--n", bd_n, "item count")->required();
  bd_cmd->add_option("--phi", bd_phi, "clean Mallows dispersion");
  bd_cmd->add_option("--count", bd_count, "clean sample size")->required();
  bd_cmd->add_option("--delta", bd_delta, "breakdown distance threshold");
  bd_cmd->add_option("--mu", bd_mu, "depth cutoff for trimmed Borda")->required();
  bd_cmd->add_option("--seeds", bd_seeds, "number of Monte Carlo seeds");
  bd_cmd->add_option("--seed", bd_seed, "base seed")->required();

  std::string repro_which, repro_outdir = "repro";
  std::uint64_t repro_seed = 1;
  auto* repro_cmd =
      app.add_subcommand("repro", "regenerate desk-scale experiment bundles");
  repro_cmd
      ->add_option("target", repro_which,
                   "one of {fig1,ddplot,htest,breakdown}")
      ->required();
  repro_cmd->add_option("--outdir", repro_outdir, "output directory");
  repro_cmd->add_option("--seed", repro_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (depth_cmd->parsed()) return run_depth(depth_opts);
    if (pairwise_cmd->parsed()) return run_pairwise(pairwise_opts, pairwise_tol);
    if (trim_cmd->parsed())
      return run_trim(trim_opts, trim_target, trim_trace, trim_tol, trim_fixed,
                      trim_center);
    if (agg_cmd->parsed())
      return run_aggregate(agg_opts, agg_method, agg_mu, agg_tol);
    if (dd_cmd->parsed()) return run_ddplot(dd_opts, dd_second);
    if (ht_cmd->parsed())
      return run_htest(ht_opts, ht_reference, ht_second, ht_reps, ht_seed);
    if (out_cmd->parsed()) return run_outliers(out_opts, out_level, out_alpha);
    if (sample_cmd->parsed())
      return run_sample(sample_opts, sample_model, sample_n, sample_count,
                        sample_seed, sample_phi, sample_center, sample_weights,
                        sample_phi2, sample_center2, sample_count2);
    if (bd_cmd->parsed())
      return run_breakdown(bd_opts, bd_n, bd_phi, bd_count, bd_delta, bd_mu,
                           bd_seeds, bd_seed);
    if (repro_cmd->parsed())
      return run_repro(repro_which, repro_outdir, repro_seed);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << argv[0] << ": " << e.what() << '\n';
    return 2;
  }
  return 1;
}
