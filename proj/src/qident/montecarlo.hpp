#pragma once

#include <cstdint>
#include <random>

#include "qident/types.hpp"

namespace qident {

// Seeded statistical estimation of discrimination and identification
// probabilities over Haar-random pure states.
//
// Reproducibility contract
// ------------------------
// Worker w of a run with seed s draws from its own substream:
//
//   engine_seed(s, w) = splitmix64_mix(s + (w+1) * 0x9E3779B97F4A7C15)
//
// (the (w+1)-th output of the splitmix64 generator started at s), feeding a
// std::mt19937_64 engine. Uniform doubles take the top 53 bits of one
// engine output; Gaussians come from the Box-Muller transform, consuming
// two uniforms per pair and caching the second variate. A Haar state on
// C^d draws its d amplitudes in index order, real part before imaginary
// part. With one worker the estimate is bit-reproducible; with k workers
// it is bit-reproducible for that same k.

struct Seed {
  std::uint64_t value = 0;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(trials)
  std::uint64_t trials = 0;
  Seed seed;
};

enum class SimMode {
  kConditional,  // accumulate the exact per-trial success probability
  kOutcome,      // sample a measurement outcome, accumulate 0/1
};

class RngStream {
 public:
  RngStream(Seed seed, std::uint32_t worker);

  std::uint64_t next_u64() { return engine_(); }
  double uniform01();  // [0, 1), 53-bit resolution
  double gaussian();   // standard normal via Box-Muller

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-random pure state: d i.i.d. standard complex Gaussian amplitudes,
// normalized.
PureState sample_haar_state(int d, RngStream& rng);

// Mean of (1/2)(1 + sqrt(1 - |<psi1|psi2>|^2)) over independent Haar pairs;
// estimates p_disc_mean(d).
Estimate estimate_discrimination(int d, std::uint64_t trials, Seed seed,
                                 int workers = 1);

// Identification experiment against the optimal measurement: per trial,
// draw both references and a fair label, present the labelled state as
// input, and score the measurement. Estimates p_ident_general(N, d).value.
Estimate estimate_identification(int n_copies, int d, std::uint64_t trials,
                                 Seed seed, SimMode mode = SimMode::kConditional,
                                 int workers = 1,
                                 std::size_t dim_cap = kDefaultDimCap);

// Same experiment with M input copies; estimates
// probability_from_operator(build_mcopy_operator(M, N, d), M, N, d).
Estimate estimate_mcopy(int m_copies, int n_copies, int d,
                        std::uint64_t trials, Seed seed, int workers = 1,
                        std::size_t dim_cap = kDefaultDimCap);

}  // namespace qident
