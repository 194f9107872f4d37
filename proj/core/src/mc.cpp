#include "spider/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "spider/catalog.hpp"
#include "spider/rng.hpp"
#include "spider/stats.hpp"

namespace spider {

namespace {

// Replicates per block; blocks are merged in index order.
constexpr std::uint64_t kBlockSize = 1024;

unsigned resolve_threads(unsigned requested, std::uint64_t blocks) {
  unsigned threads = requested != 0 ? requested : std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(blocks, 1)));
}

void for_each_block(std::uint64_t blocks, unsigned threads,
                    const std::function<void(std::uint64_t)>& body) {
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      body(b);
    }
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t b = next++; b < blocks && !failed; b = next++) {
        try {
          body(b);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
          failed = true;
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

bool close_enough(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= 1e-12 * scale;
}

struct BlockResult {
  std::vector<RunningMoments> moments;
  std::vector<std::vector<double>> retained;
  std::uint64_t direct_checks = 0;
};

}  // namespace

void SimConfig::validate() const {
  if (n == 0) {
    throw ConfigError("n", "horizon must be at least 1");
  }
  if (replicates == 0) {
    throw ConfigError("replicates", "must be at least 1");
  }
  if (indices.empty()) {
    throw ConfigError("indices", "at least one index is required");
  }
  if (!std::isfinite(clt_shift)) {
    throw ConfigError("clt_shift", "must be finite");
  }
  if (ks) {
    if (!(static_cast<double>(n) + clt_shift > 0.0)) {
      throw ConfigError("clt_shift", "n + k must be positive");
    }
  }
}

const IndexSummary& SampleSummary::at(const IndexSpec& index) const {
  for (const auto& s : indices) {
    if (s.index == index) {
      return s;
    }
  }
  throw std::out_of_range("index '" + index.name() + "' not in summary");
}

SampleSummary run_experiment(const SimConfig& config) {
  config.validate();
  const std::size_t index_count = config.indices.size();
  const double p = config.model.p();

  std::vector<std::optional<CltNormalizer>> normalizers(index_count);
  if (config.ks) {
    for (std::size_t i = 0; i < index_count; ++i) {
      try {
        normalizers[i] = moment_catalog(config.indices[i]).clt;
      } catch (const UnknownCatalogEntry&) {
        normalizers[i].reset();
      }
    }
  }
  // Every index must be evaluable at the seed; this surfaces domain errors
  // (e.g. a generic h that is not positive) before the replicates run.
  for (const auto& index : config.indices) {
    (void)eval_direct(TreeState::seed(), index);
  }

  const std::uint64_t stride =
      (config.replicates + kMaxRetainedSamples - 1) / kMaxRetainedSamples;
  const std::uint64_t blocks = (config.replicates + kBlockSize - 1) / kBlockSize;
  std::vector<BlockResult> results(blocks);

  for_each_block(blocks, resolve_threads(config.threads, blocks), [&](std::uint64_t b) {
    BlockResult& out = results[b];
    out.moments.assign(index_count, RunningMoments{});
    out.retained.assign(index_count, {});
    const std::uint64_t first = b * kBlockSize;
    const std::uint64_t last = std::min(config.replicates, first + kBlockSize);
    for (std::uint64_t r = first; r < last; ++r) {
      RngStream rng(config.master_seed, r);
      const TreeState tree = grow(config.model, config.n, rng);
      const bool spot_check = r % 100 == 0;
      for (std::size_t i = 0; i < index_count; ++i) {
        const double value = reduced_value(tree.time(), tree.leaf_count(), config.indices[i]);
        out.moments[i].add(value);
        if (spot_check) {
          const double direct = eval_direct(tree, config.indices[i]).value;
          if (!close_enough(direct, value)) {
            throw std::runtime_error("direct and reduced evaluation of " +
                                     config.indices[i].name() + " disagree on replicate " +
                                     std::to_string(r));
          }
        }
        if (normalizers[i] && r % stride == 0) {
          out.retained[i].push_back(value);
        }
      }
      if (spot_check) {
        ++out.direct_checks;
      }
    }
  });

  SampleSummary summary;
  std::vector<RunningMoments> totals(index_count);
  std::vector<std::vector<double>> raw(index_count);
  for (const auto& block : results) {
    for (std::size_t i = 0; i < index_count; ++i) {
      totals[i].merge(block.moments[i]);
      raw[i].insert(raw[i].end(), block.retained[i].begin(), block.retained[i].end());
    }
    summary.direct_checks += block.direct_checks;
  }
  for (std::size_t i = 0; i < index_count; ++i) {
    IndexSummary s{config.indices[i]};
    s.count = totals[i].count();
    s.mean = totals[i].mean();
    s.variance = totals[i].variance();
    if (normalizers[i]) {
      const double center = normalizers[i]->center_at(static_cast<double>(config.n), p);
      const double scale =
          normalizers[i]->scale_at(static_cast<double>(config.n), p, config.clt_shift);
      s.standardized.reserve(raw[i].size());
      for (double x : raw[i]) {
        s.standardized.push_back((x - center) / scale);
      }
      if (s.standardized.size() >= 10) {
        s.ks = ks_normal(s.standardized);
      }
    }
    summary.indices.push_back(std::move(s));
  }
  return summary;
}

std::vector<double> standardize(std::span<const double> samples, const IndexSpec& index,
                                std::uint64_t n, double p, double k) {
  const MomentCatalogEntry entry = moment_catalog(index);
  if (!entry.clt) {
    throw UnknownCatalogEntry("index '" + index.name() + "' has no CLT normalizer");
  }
  const double center = entry.clt->center_at(static_cast<double>(n), p);
  const double scale = entry.clt->scale_at(static_cast<double>(n), p, k);
  std::vector<double> out;
  out.reserve(samples.size());
  for (double x : samples) {
    out.push_back((x - center) / scale);
  }
  return out;
}

void ProbeConfig::validate() const {
  if (n_grid.empty()) {
    throw ConfigError("n_grid", "at least one horizon is required");
  }
  if (n_grid.front() == 0) {
    throw ConfigError("n_grid", "horizons must be at least 1");
  }
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) {
      throw ConfigError("n_grid", "horizons must be strictly increasing");
    }
  }
  if (!(epsilon > 0.0)) {
    throw ConfigError("epsilon", "must be positive");
  }
  if (!(r > 0.0)) {
    throw ConfigError("r", "must be positive");
  }
  if (replicates == 0) {
    throw ConfigError("replicates", "must be at least 1");
  }
}

std::vector<ProbeRow> convergence_probe(const ProbeConfig& config) {
  config.validate();
  const MomentCatalogEntry entry = moment_catalog(config.index);
  if (!entry.limit) {
    throw UnknownCatalogEntry("index '" + config.index.name() + "' has no limit constant");
  }
  const double p = config.model.p();
  const double limit = *entry.limit_at(p);
  const double exponent = entry.limit->scaling_exponent;
  const std::size_t points = config.n_grid.size();

  struct ProbeBlock {
    std::vector<RunningMoments> moments;
    std::vector<std::uint64_t> exceed;
    std::vector<double> r_error_sum;
  };
  const std::uint64_t blocks = (config.replicates + kBlockSize - 1) / kBlockSize;
  std::vector<ProbeBlock> results(blocks);

  for_each_block(blocks, resolve_threads(config.threads, blocks), [&](std::uint64_t b) {
    ProbeBlock& out = results[b];
    out.moments.assign(points, RunningMoments{});
    out.exceed.assign(points, 0);
    out.r_error_sum.assign(points, 0.0);
    const std::uint64_t first = b * kBlockSize;
    const std::uint64_t last = std::min(config.replicates, first + kBlockSize);
    for (std::uint64_t rep = first; rep < last; ++rep) {
      RngStream rng(config.master_seed, rep);
      TreeState tree = TreeState::seed();
      for (std::size_t g = 0; g < points; ++g) {
        while (tree.time() < config.n_grid[g]) {
          advance(tree, config.model, rng);
        }
        const double n_value = static_cast<double>(tree.time());
        const double scaled = reduced_value(tree.time(), tree.leaf_count(), config.index) /
                              std::pow(n_value, exponent);
        const double error = std::abs(scaled - limit);
        out.moments[g].add(scaled);
        if (error > config.epsilon) {
          ++out.exceed[g];
        }
        out.r_error_sum[g] += std::pow(error, config.r);
      }
    }
  });

  std::vector<ProbeRow> rows;
  rows.reserve(points);
  for (std::size_t g = 0; g < points; ++g) {
    RunningMoments total;
    std::uint64_t exceed = 0;
    double r_error = 0.0;
    for (const auto& block : results) {
      total.merge(block.moments[g]);
      exceed += block.exceed[g];
      r_error += block.r_error_sum[g];
    }
    const std::uint64_t n = config.n_grid[g];
    const double scale = std::pow(static_cast<double>(n), exponent);
    const double bias = entry.mean_at(n, p) - limit * scale;
    const double second = entry.variance_at(n, p) + bias * bias;
    const auto reps = static_cast<double>(config.replicates);
    rows.push_back(ProbeRow{n, limit, total.mean(), total.variance(),
                            static_cast<double>(exceed) / reps, r_error / reps,
                            second / (scale * scale * config.epsilon * config.epsilon)});
  }
  return rows;
}

}  // namespace spider
