#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mutualspace::opt {

// Deterministic 64-bit PRNG (splitmix64). Hand-rolled so that results are
// reproducible independent of the standard library's distributions.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double next_double() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(next_u64() % n);
  }

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t hash_string(const std::string& s);

struct DeConfig {
  int population = 32;
  int generations = 100;
  std::uint64_t seed = 1;
  double weight = 0.7;     // differential weight F
  double crossover = 0.9;  // crossover rate CR
};

struct DeResult {
  std::vector<double> x;
  double value = -1e300;
  long evaluations = 0;
};

// Evaluates a whole generation of candidates at once so fitness can be
// computed in parallel; values[i] must be filled for every candidate.
using BatchEval =
    std::function<void(const std::vector<std::vector<double>>&, std::vector<double>&)>;

// Bounded differential evolution (rand-to-best/1/bin), maximizing. Trial
// vectors for a generation are drawn serially from the seeded RNG and then
// evaluated as a batch, so the result does not depend on how the batch is
// parallelized. `seeds` are injected into the initial population.
DeResult de_maximize(const std::vector<double>& lo, const std::vector<double>& hi,
                     const std::vector<std::vector<double>>& seeds, const BatchEval& eval,
                     const DeConfig& cfg);

// Deterministic compass pattern search, maximizing; polishes an optimum.
DeResult pattern_refine(std::vector<double> x, const std::vector<double>& lo,
                        const std::vector<double>& hi,
                        const std::function<double(const std::vector<double>&)>& eval,
                        double initial_step, double min_step);

}  // namespace mutualspace::opt
