#include "mutualspace/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mutualspace::opt {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 rng(seed ^ (salt * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull));
  rng.next_u64();
  return rng.next_u64();
}

std::uint64_t hash_string(const std::string& s) {
  // FNV-1a
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

DeResult de_maximize(const std::vector<double>& lo, const std::vector<double>& hi,
                     const std::vector<std::vector<double>>& seeds, const BatchEval& eval,
                     const DeConfig& cfg) {
  const std::size_t dim = lo.size();
  const int np = std::max(cfg.population, 8);
  SplitMix64 rng(cfg.seed);

  std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
  for (int i = 0; i < np; ++i) {
    if (i < static_cast<int>(seeds.size())) {
      for (std::size_t d = 0; d < dim; ++d)
        pop[i][d] = std::clamp(seeds[i][d], lo[d], hi[d]);
    } else {
      for (std::size_t d = 0; d < dim; ++d) pop[i][d] = rng.uniform(lo[d], hi[d]);
    }
  }

  std::vector<double> fitness(np);
  eval(pop, fitness);
  DeResult best;
  best.evaluations = np;
  int best_idx = 0;
  for (int i = 1; i < np; ++i)
    if (fitness[i] > fitness[best_idx]) best_idx = i;
  best.x = pop[best_idx];
  best.value = fitness[best_idx];

  std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
  std::vector<double> trial_fitness(np);
  for (int gen = 0; gen < cfg.generations; ++gen) {
    for (int i = 0; i < np; ++i) {
      int r1 = static_cast<int>(rng.next_below(np));
      while (r1 == i) r1 = static_cast<int>(rng.next_below(np));
      int r2 = static_cast<int>(rng.next_below(np));
      while (r2 == i || r2 == r1) r2 = static_cast<int>(rng.next_below(np));
      const std::size_t jrand = rng.next_below(static_cast<std::uint32_t>(dim));
      for (std::size_t d = 0; d < dim; ++d) {
        double v;
        if (d == jrand || rng.next_double() < cfg.crossover) {
          v = pop[i][d] + cfg.weight * (best.x[d] - pop[i][d]) +
              cfg.weight * (pop[r1][d] - pop[r2][d]);
          if (v < lo[d] || v > hi[d]) v = rng.uniform(lo[d], hi[d]);
        } else {
          v = pop[i][d];
        }
        trials[i][d] = v;
      }
    }
    eval(trials, trial_fitness);
    best.evaluations += np;
    for (int i = 0; i < np; ++i) {
      if (trial_fitness[i] >= fitness[i]) {
        pop[i] = trials[i];
        fitness[i] = trial_fitness[i];
        if (fitness[i] > best.value) {
          best.value = fitness[i];
          best.x = pop[i];
        }
      }
    }
  }
  return best;
}

DeResult pattern_refine(std::vector<double> x, const std::vector<double>& lo,
                        const std::vector<double>& hi,
                        const std::function<double(const std::vector<double>&)>& eval,
                        double initial_step, double min_step) {
  const std::size_t dim = x.size();
  for (std::size_t d = 0; d < dim; ++d) x[d] = std::clamp(x[d], lo[d], hi[d]);
  DeResult best;
  best.x = x;
  best.value = eval(x);
  best.evaluations = 1;
  double step = initial_step;
  while (step >= min_step) {
    bool improved = false;
    for (std::size_t d = 0; d < dim; ++d) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> probe = best.x;
        probe[d] = std::clamp(probe[d] + sgn * step, lo[d], hi[d]);
        if (probe[d] == best.x[d]) continue;
        const double v = eval(probe);
        ++best.evaluations;
        if (v > best.value) {
          best.value = v;
          best.x = probe;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace mutualspace::opt
