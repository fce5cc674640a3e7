#include "qident/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "qident/errors.hpp"
#include "qident/spectral.hpp"
#include "qident/tensor.hpp"

namespace qident {

namespace {

constexpr std::uint64_t kSplitmixGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t engine_seed(Seed seed, std::uint32_t worker) {
  return splitmix64_mix(seed.value + (static_cast<std::uint64_t>(worker) + 1) *
                                         kSplitmixGamma);
}

// Streaming mean/variance (Welford), mergeable across workers.
struct Accumulator {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Accumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double delta = other.mean - mean;
    const std::uint64_t total = count + other.count;
    mean += delta * static_cast<double>(other.count) / static_cast<double>(total);
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) /
                         static_cast<double>(total);
    count = total;
  }
};

Estimate finalize(const Accumulator& acc, Seed seed) {
  Estimate est;
  est.mean = acc.mean;
  est.trials = acc.count;
  est.seed = seed;
  if (acc.count > 1) {
    const double variance = acc.m2 / static_cast<double>(acc.count - 1);
    est.std_error = std::sqrt(std::max(variance, 0.0) /
                              static_cast<double>(acc.count));
  }
  return est;
}

void validate_run(std::uint64_t trials, int workers) {
  if (trials < 100) {
    throw ArgumentError("need at least 100 trials, got " +
                        std::to_string(trials));
  }
  if (workers < 1) {
    throw ArgumentError("worker count must be positive, got " +
                        std::to_string(workers));
  }
}

// Splits `trials` across workers, runs `body(rng, trial_count, acc)` per
// worker, and merges the per-worker accumulators in worker order.
Estimate run_workers(
    std::uint64_t trials, Seed seed, int workers,
    const std::function<void(RngStream&, std::uint64_t, Accumulator&)>& body) {
  const auto worker_count = static_cast<std::uint32_t>(workers);
  std::vector<Accumulator> parts(worker_count);

  auto run_one = [&](std::uint32_t w) {
    RngStream rng(seed, w);
    const std::uint64_t base = trials / worker_count;
    const std::uint64_t share = base + (w < trials % worker_count ? 1 : 0);
    body(rng, share, parts[w]);
  };

  if (worker_count == 1) {
    run_one(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(worker_count);
    for (std::uint32_t w = 0; w < worker_count; ++w) {
      threads.emplace_back(run_one, w);
    }
    for (auto& t : threads) t.join();
  }

  Accumulator total;
  for (const auto& part : parts) total.merge(part);
  return finalize(total, seed);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

RngStream::RngStream(Seed seed, std::uint32_t worker)
    : engine_(engine_seed(seed, worker)) {}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

PureState sample_haar_state(int d, RngStream& rng) {
  if (d < 2) {
    throw ArgumentError("local dimension must be at least 2, got d=" +
                        std::to_string(d));
  }
  Eigen::VectorXcd amplitudes(d);
  double norm_sq = 0.0;
  do {
    for (int k = 0; k < d; ++k) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      amplitudes(k) = Complex(re, im);
    }
    norm_sq = amplitudes.squaredNorm();
  } while (norm_sq < 1e-300);
  amplitudes /= std::sqrt(norm_sq);
  return PureState{d, std::move(amplitudes)};
}

Estimate estimate_discrimination(int d, std::uint64_t trials, Seed seed,
                                 int workers) {
  if (d < 2) {
    throw ArgumentError("local dimension must be at least 2, got d=" +
                        std::to_string(d));
  }
  validate_run(trials, workers);
  return run_workers(trials, seed, workers,
                     [d](RngStream& rng, std::uint64_t n, Accumulator& acc) {
                       for (std::uint64_t t = 0; t < n; ++t) {
                         const PureState psi1 = sample_haar_state(d, rng);
                         const PureState psi2 = sample_haar_state(d, rng);
                         const double overlap = clamp01(
                             std::norm(psi1.amplitudes.dot(psi2.amplitudes)));
                         acc.add(0.5 * (1.0 + std::sqrt(1.0 - overlap)));
                       }
                     });
}

Estimate estimate_identification(int n_copies, int d, std::uint64_t trials,
                                 Seed seed, SimMode mode, int workers,
                                 std::size_t dim_cap) {
  validate_run(trials, workers);
  // The input product state always lies in C^d (x) Sym^N (x) Sym^N, and the
  // optimal E1 projects inside that subspace, so the whole experiment runs
  // in the restricted space.
  const DenseOperator d_op =
      build_identification_operator_sym(n_copies, d, dim_cap);
  const DenseOperator e1 = positive_part_projector(d_op);
  const SymBasis basis(n_copies, d);
  const Eigen::Index d_n = basis.dim();

  auto body = [&, mode, d](RngStream& rng, std::uint64_t n, Accumulator& acc) {
    Eigen::VectorXcd state(e1.dim());
    for (std::uint64_t t = 0; t < n; ++t) {
      const PureState psi1 = sample_haar_state(d, rng);
      const PureState psi2 = sample_haar_state(d, rng);
      const int label = rng.uniform01() < 0.5 ? 1 : 2;
      const PureState& input = label == 1 ? psi1 : psi2;
      const Eigen::VectorXcd v1 = sym_embed_power(psi1, basis);
      const Eigen::VectorXcd v2 = sym_embed_power(psi2, basis);
      // state = input (x) v1 (x) v2 in the restricted index convention
      for (int i = 0; i < d; ++i) {
        for (Eigen::Index a = 0; a < d_n; ++a) {
          state.segment((static_cast<Eigen::Index>(i) * d_n + a) * d_n, d_n) =
              input.amplitudes(i) * v1(a) * v2;
        }
      }
      const double p_first = clamp01(
          std::real(state.dot(e1.entries * state)));
      if (mode == SimMode::kConditional) {
        acc.add(label == 1 ? p_first : 1.0 - p_first);
      } else {
        const int guess = rng.uniform01() < p_first ? 1 : 2;
        acc.add(guess == label ? 1.0 : 0.0);
      }
    }
  };
  return run_workers(trials, seed, workers, body);
}

Estimate estimate_mcopy(int m_copies, int n_copies, int d,
                        std::uint64_t trials, Seed seed, int workers,
                        std::size_t dim_cap) {
  validate_run(trials, workers);
  const DenseOperator d_op =
      build_mcopy_operator(m_copies, n_copies, d, dim_cap);
  const DenseOperator e1 = positive_part_projector(d_op);

  auto body = [&, m_copies, n_copies, d](RngStream& rng, std::uint64_t n,
                                         Accumulator& acc) {
    for (std::uint64_t t = 0; t < n; ++t) {
      const PureState psi1 = sample_haar_state(d, rng);
      const PureState psi2 = sample_haar_state(d, rng);
      const int label = rng.uniform01() < 0.5 ? 1 : 2;
      const PureState& input = label == 1 ? psi1 : psi2;

      std::vector<PureState> factors;
      factors.reserve(static_cast<std::size_t>(m_copies + 2 * n_copies));
      for (int k = 0; k < m_copies; ++k) factors.push_back(input);
      for (int k = 0; k < n_copies; ++k) factors.push_back(psi1);
      for (int k = 0; k < n_copies; ++k) factors.push_back(psi2);
      const EmbeddedState product = embed_product_state(factors, dim_cap);

      const double p_first = clamp01(
          std::real(product.amplitudes.dot(e1.entries * product.amplitudes)));
      acc.add(label == 1 ? p_first : 1.0 - p_first);
    }
  };
  return run_workers(trials, seed, workers, body);
}

}  // namespace qident
