#include "hoqc/loading.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "hoqc/rng.hpp"

namespace hoqc {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("loading: " + what);
}

struct TrialResult {
  int k = 0;
  int k_prepurge = 0;
  long multi = 0;
  std::vector<long> histogram;
};

double spread_for_support(double std_k, double support) {
  return std::sqrt(1.0 + std_k / support) - 1.0;
}

}  // namespace

double LoadingConfig::filling() const {
  return atom_density * lattice_period * lattice_period * lattice_period;
}

void LoadingConfig::validate() const {
  require(lattice_period > 0.0, "lattice_period must be positive");
  require(atom_density > 0.0, "atom_density must be positive");
  require(bottle_diameter >= 0.0, "bottle_diameter must be non-negative");
  require(lattice_extent > 0 && lattice_extent % 2 == 1, "lattice_extent must be a positive odd integer");
  require(trials > 0, "trials must be positive");
  require(threads > 0, "threads must be positive");
  require(register_size > 0, "register_size must be positive");
  const double half_width = (lattice_extent - 1) / 2 * lattice_period;
  require(bottle_diameter / 2.0 <= half_width,
          "bottle_diameter does not fit inside lattice_extent");
}

Quantity lattice_density(Quantity period) {
  const double a = period.in(Unit::kMeter);
  require(a > 0.0, "period must be positive");
  return {1.0 / (a * a * a), Unit::kPerCubicMeter};
}

double double_occupancy_prob(double fill_fraction) {
  require(fill_fraction > 0.0, "fill fraction must be positive");
  // -expm1(-l) - l e^-l keeps precision for small l.
  return -std::expm1(-fill_fraction) - fill_fraction * std::exp(-fill_fraction);
}

bool site_in_bottle(int i, int j, int k, double period, double diameter) {
  const double x = i * period;
  const double y = j * period;
  const double z = k * period;
  const double r = diameter / 2.0;
  return x * x + y * y + z * z < r * r;
}

long count_sites_in_bottle(double period, double diameter, int lattice_extent) {
  const int h = lattice_extent / 2;
  long n = 0;
  for (int i = -h; i <= h; ++i)
    for (int j = -h; j <= h; ++j)
      for (int k = -h; k <= h; ++k) n += site_in_bottle(i, j, k, period, diameter) ? 1 : 0;
  return n;
}

double rabi_variation(double mean_k, double std_k, int qubit_index, int register_size) {
  require(register_size > 0, "register_size must be positive");
  require(qubit_index >= 1 && qubit_index <= register_size,
          "qubit_index outside 1.." + std::to_string(register_size));
  require(mean_k > register_size, "mean_K must exceed register_size");
  require(std_k >= 0.0, "std_K must be non-negative");
  const double support = mean_k - (qubit_index - 1);
  require(support > 0.0, "qubit support would be <= 0");
  return spread_for_support(std_k, support);
}

LoadingStats simulate_loading(const LoadingConfig& cfg) {
  cfg.validate();
  const double lambda = cfg.filling();
  const int h = cfg.lattice_extent / 2;
  std::vector<char> inside;
  for (int i = -h; i <= h; ++i)
    for (int j = -h; j <= h; ++j)
      for (int k = -h; k <= h; ++k)
        inside.push_back(site_in_bottle(i, j, k, cfg.lattice_period, cfg.bottle_diameter) ? 1 : 0);

  auto run_trial = [&](long trial) {
    auto engine = rng::make_stream(cfg.seed, static_cast<std::uint64_t>(trial));
    TrialResult r;
    for (char in : inside) {
      const int n = rng::poisson(engine, lambda);
      if (static_cast<std::size_t>(n) >= r.histogram.size()) r.histogram.resize(n + 1, 0);
      ++r.histogram[static_cast<std::size_t>(n)];
      if (n >= 2) ++r.multi;
      const int kept = cfg.purge == PurgeModel::kPairLoss ? (n == 1 ? 1 : 0) : n % 2;
      if (in) {
        r.k_prepurge += n;
        r.k += kept;
      }
    }
    return r;
  };

  std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
  const long workers = std::min<long>(cfg.threads, cfg.trials);
  const long chunk = (cfg.trials + workers - 1) / workers;
  auto work = [&](long begin, long end) {
    for (long t = begin; t < end; ++t) results[static_cast<std::size_t>(t)] = run_trial(t);
  };
  if (workers == 1) {
    work(0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    for (long w = 0; w < workers; ++w) {
      pool.emplace_back(work, w * chunk, std::min(cfg.trials, (w + 1) * chunk));
    }
    for (auto& t : pool) t.join();
  }

  LoadingStats s;
  s.filling = lambda;
  s.trials = cfg.trials;
  s.lattice_sites = static_cast<long>(inside.size());
  s.sites_in_sphere = std::count(inside.begin(), inside.end(), 1);
  long multi = 0;
  double sum = 0.0, sum2 = 0.0, psum = 0.0, psum2 = 0.0;
  for (const TrialResult& r : results) {
    s.k_per_trial.push_back(r.k);
    sum += r.k;
    sum2 += static_cast<double>(r.k) * r.k;
    psum += r.k_prepurge;
    psum2 += static_cast<double>(r.k_prepurge) * r.k_prepurge;
    multi += r.multi;
    if (r.histogram.size() > s.occupancy_histogram.size()) {
      s.occupancy_histogram.resize(r.histogram.size(), 0);
    }
    for (std::size_t n = 0; n < r.histogram.size(); ++n) s.occupancy_histogram[n] += r.histogram[n];
  }
  const double t = static_cast<double>(cfg.trials);
  auto sample_std = [t](double s1, double s2) {
    return t > 1.0 ? std::sqrt(std::max(0.0, (s2 - s1 * s1 / t) / (t - 1.0))) : 0.0;
  };
  s.mean_k = sum / t;
  s.std_k = sample_std(sum, sum2);
  s.mean_k_prepurge = psum / t;
  s.std_k_prepurge = sample_std(psum, psum2);
  s.multi_occupancy_fraction = static_cast<double>(multi) / (t * static_cast<double>(inside.size()));

  for (int q = 1; q <= cfg.register_size; ++q) {
    const double support = s.mean_k - (q - 1);
    if (!(support > 0.0)) break;
    s.rabi_spread_per_qubit.push_back(spread_for_support(s.std_k, support));
  }
  return s;
}

void write_k_histogram_csv(std::ostream& os, const LoadingStats& stats) {
  std::map<int, long> counts;
  for (int k : stats.k_per_trial) ++counts[k];
  os << "K,trials\n";
  for (const auto& [k, n] : counts) os << k << ',' << n << '\n';
}

}  // namespace hoqc
