#ifndef STOQDYN_TESTS_GEN_HPP
#define STOQDYN_TESTS_GEN_HPP

#include <cstdlib>
#include <random>
#include <string>

#include "stoqdyn/quantum.hpp"
#include "stoqdyn/statistical.hpp"

namespace stoqdyn::testgen {

using Rng = std::mt19937_64;

inline uint64_t base_seed() {
  if (const char* env = std::getenv("STOQDYN_SEED")) return std::stoull(env);
  return 0x5706d9u;
}

inline Rng make_rng(uint64_t stream) { return Rng(base_seed() ^ (0x9e3779b97f4a7c15ull * (stream + 1))); }

inline int uniform_int(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng);
}

inline ProbVector random_prob_vector(Rng& rng, int n, int max_weight = 6) {
  std::vector<long> w(static_cast<size_t>(n), 0);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) {
      x = uniform_int(rng, 0, max_weight);
      total += x;
    }
  }
  std::vector<Rational> entries;
  entries.reserve(w.size());
  for (long x : w) entries.emplace_back(x, total);
  return ProbVector(std::move(entries));
}

inline ProbVector random_interior_prob_vector(Rng& rng, int n, int max_weight = 6) {
  std::vector<long> w(static_cast<size_t>(n), 0);
  long total = 0;
  for (auto& x : w) {
    x = uniform_int(rng, 1, max_weight);
    total += x;
  }
  std::vector<Rational> entries;
  for (long x : w) entries.emplace_back(x, total);
  return ProbVector(std::move(entries));
}

inline StochasticMatrix random_stochastic_matrix(Rng& rng, int n, int max_weight = 6) {
  std::vector<std::vector<Rational>> cols;
  for (int j = 0; j < n; ++j) cols.push_back(random_prob_vector(rng, n, max_weight).entries());
  return StochasticMatrix(std::move(cols));
}

inline StochasticMatrix random_deterministic_matrix(Rng& rng, int n) {
  std::vector<std::vector<Rational>> cols(static_cast<size_t>(n),
                                          std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
  for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)][static_cast<size_t>(uniform_int(rng, 0, n - 1))] = 1;
  return StochasticMatrix(std::move(cols));
}

/// Mode cycles through dense, rank-deficient (repeated columns), and
/// deterministic matrices so that kernel and divisibility paths all get
/// exercised.
inline MatrixFamily random_matrix_family(Rng& rng, int n, int tau, int mode) {
  std::map<int, StochasticMatrix> mats;
  mats.emplace(0, StochasticMatrix::identity(n));
  for (int t = 1; t <= tau; ++t) {
    switch (mode % 3) {
      case 0:
        mats.emplace(t, random_stochastic_matrix(rng, n));
        break;
      case 1: {
        auto col = random_prob_vector(rng, n).entries();
        std::vector<std::vector<Rational>> cols;
        for (int j = 0; j < n; ++j)
          cols.push_back(j == 0 ? random_prob_vector(rng, n).entries() : col);
        mats.emplace(t, StochasticMatrix(std::move(cols)));
        break;
      }
      default:
        mats.emplace(t, random_deterministic_matrix(rng, n));
        break;
    }
  }
  return MatrixFamily(TimeGrid::range(tau), std::move(mats));
}

inline ProbVector random_prob_vector_fixed_denominator(Rng& rng, int n, int den) {
  std::vector<long> w(static_cast<size_t>(n), 0);
  for (int k = 0; k < den; ++k) ++w[static_cast<size_t>(uniform_int(rng, 0, n - 1))];
  std::vector<Rational> entries;
  for (long x : w) entries.emplace_back(x, den);
  return ProbVector(std::move(entries));
}

/// Families whose entries are multiples of 1/den. For n <= 3 a violation of
/// the kernel criterion is then always witnessed by a pair of simplex points
/// with denominators at most 3*den^2, which makes the collision test on that
/// grid a complete oracle.
inline MatrixFamily random_matrix_family_coarse(Rng& rng, int n, int tau, int mode, int den) {
  std::map<int, StochasticMatrix> mats;
  mats.emplace(0, StochasticMatrix::identity(n));
  for (int t = 1; t <= tau; ++t) {
    switch (mode % 3) {
      case 0: {
        std::vector<std::vector<Rational>> cols;
        for (int j = 0; j < n; ++j) cols.push_back(random_prob_vector_fixed_denominator(rng, n, den).entries());
        mats.emplace(t, StochasticMatrix(std::move(cols)));
        break;
      }
      case 1: {
        auto col = random_prob_vector_fixed_denominator(rng, n, den).entries();
        std::vector<std::vector<Rational>> cols;
        for (int j = 0; j < n; ++j)
          cols.push_back(j == 0 ? random_prob_vector_fixed_denominator(rng, n, den).entries() : col);
        mats.emplace(t, StochasticMatrix(std::move(cols)));
        break;
      }
      default:
        mats.emplace(t, random_deterministic_matrix(rng, n));
        break;
    }
  }
  return MatrixFamily(TimeGrid::range(tau), std::move(mats));
}

inline TrajectoryMeasure random_measure(Rng& rng, int n, int tau, int max_weight = 4) {
  const TimeGrid grid = TimeGrid::range(tau);
  size_t size = 1;
  for (int k = 0; k <= tau; ++k) size *= static_cast<size_t>(n);
  std::vector<long> w(size, 0);
  long total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) {
      x = uniform_int(rng, 0, max_weight);
      total += x;
    }
  }
  std::vector<Rational> table;
  table.reserve(size);
  for (long x : w) table.emplace_back(x, total);
  return TrajectoryMeasure(grid, n, std::move(table));
}

/// Markov-chain measure: initial distribution and per-step transition
/// matrices; Markovian by construction.
inline TrajectoryMeasure random_chain_measure(Rng& rng, int n, int tau) {
  const TimeGrid grid = TimeGrid::range(tau);
  const ProbVector p0 = random_prob_vector(rng, n);
  std::vector<StochasticMatrix> steps;
  for (int t = 1; t <= tau; ++t) steps.push_back(random_stochastic_matrix(rng, n));

  size_t size = 1;
  for (int k = 0; k <= tau; ++k) size *= static_cast<size_t>(n);
  std::vector<Rational> table(size, Rational(0));
  std::vector<int> cfg(static_cast<size_t>(tau + 1), 0);
  for (size_t idx = 0; idx < size; ++idx) {
    size_t rem = idx;
    for (int k = tau; k >= 0; --k) {
      cfg[static_cast<size_t>(k)] = static_cast<int>(rem % static_cast<size_t>(n));
      rem /= static_cast<size_t>(n);
    }
    Rational w = p0[cfg[0]];
    for (int k = 1; k <= tau && w != 0; ++k)
      w *= steps[static_cast<size_t>(k - 1)].at(cfg[static_cast<size_t>(k)], cfg[static_cast<size_t>(k - 1)]);
    table[idx] = w;
  }
  return TrajectoryMeasure(grid, n, std::move(table));
}

inline std::vector<ProbVector> random_nondegenerate_trajectory(Rng& rng, int n, int tau) {
  std::vector<ProbVector> traj;
  for (int k = 0; k <= tau; ++k) {
    // Mix strictly interior and occasional vertex distributions, keeping the
    // first and last times interior so the trajectory is non-degenerate.
    if (k != 0 && k != tau && uniform_int(rng, 0, 3) == 0)
      traj.push_back(ProbVector::vertex(n, uniform_int(rng, 1, n)));
    else
      traj.push_back(random_interior_prob_vector(rng, n));
  }
  return traj;
}

inline DeterministicSystem random_deterministic_system(Rng& rng, int n, int tau) {
  std::vector<std::vector<int>> table;
  for (int k = 0; k <= tau; ++k) {
    std::vector<int> row(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) row[static_cast<size_t>(i)] = (k == 0) ? i + 1 : uniform_int(rng, 1, n);
    table.push_back(std::move(row));
  }
  return DeterministicSystem(TimeGrid::range(tau), n, std::move(table));
}

/// Haar-ish random unitary via Gram-Schmidt on a complex Gaussian matrix.
inline CMat random_unitary(Rng& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(static_cast<size_t>(d), CVec(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = Complex(g(rng), g(rng));
  // Orthonormalize the columns.
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < j; ++k) {
      Complex dot(0, 0);
      for (int i = 0; i < d; ++i)
        dot += std::conj(m[static_cast<size_t>(i)][static_cast<size_t>(k)]) * m[static_cast<size_t>(i)][static_cast<size_t>(j)];
      for (int i = 0; i < d; ++i)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] -= dot * m[static_cast<size_t>(i)][static_cast<size_t>(k)];
    }
    double norm = 0;
    for (int i = 0; i < d; ++i) norm += std::norm(m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    norm = std::sqrt(norm);
    for (int i = 0; i < d; ++i) m[static_cast<size_t>(i)][static_cast<size_t>(j)] /= norm;
  }
  return m;
}

inline UnitaryFamily random_unitary_family(Rng& rng, int d, int tau) {
  std::map<int, CMat> mats;
  mats.emplace(0, cmat_identity(d));
  for (int t = 1; t <= tau; ++t) mats.emplace(t, random_unitary(rng, d));
  return UnitaryFamily(TimeGrid::range(tau), std::move(mats));
}

inline PureState random_state(Rng& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(static_cast<size_t>(d));
  double norm = 0;
  for (auto& a : v) {
    a = Complex(g(rng), g(rng));
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : v) a /= norm;
  return PureState(std::move(v));
}

}  // namespace stoqdyn::testgen

#endif
