#ifndef STOQDYN_SIMPLEX_HPP
#define STOQDYN_SIMPLEX_HPP

#include <optional>
#include <vector>

#include "stoqdyn/rational.hpp"

namespace stoqdyn {

/// A point of the probability simplex: entries in [0,1] summing exactly to 1.
/// Immutable after construction.
class ProbVector {
 public:
  /// Validates and wraps. Throws NotNormalized / OutOfRange.
  explicit ProbVector(std::vector<Rational> entries);

  int size() const { return static_cast<int>(entries_.size()); }
  const Rational& operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<Rational>& entries() const { return entries_; }

  bool operator==(const ProbVector& o) const { return entries_ == o.entries_; }
  bool operator!=(const ProbVector& o) const { return !(*this == o); }
  bool operator<(const ProbVector& o) const { return entries_ < o.entries_; }

  /// Standard basis vertex e_i (1-based configuration index).
  static ProbVector vertex(int n, int i);
  static ProbVector uniform(int n);

  /// True iff 0 < entry < 1 (strictly interior coordinate).
  bool interior_at(int i) const { return entries_[static_cast<size_t>(i)] > 0 && entries_[static_cast<size_t>(i)] < 1; }

 private:
  std::vector<Rational> entries_;
};

ProbVector validate_prob_vector(const std::vector<Rational>& v);

/// Column-stochastic matrix: every column is a ProbVector. p(t) = M p(0).
class StochasticMatrix {
 public:
  /// cols[j] is the j-th column. Throws on invalid columns or ragged shape.
  explicit StochasticMatrix(std::vector<std::vector<Rational>> cols);

  int size() const { return static_cast<int>(cols_.size()); }
  /// Entry at row i, column j (0-based).
  const Rational& at(int i, int j) const { return cols_[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
  const std::vector<Rational>& col(int j) const { return cols_[static_cast<size_t>(j)]; }

  bool operator==(const StochasticMatrix& o) const { return cols_ == o.cols_; }
  bool operator!=(const StochasticMatrix& o) const { return !(*this == o); }

  static StochasticMatrix identity(int n);

 private:
  std::vector<std::vector<Rational>> cols_;
};

StochasticMatrix validate_stochastic_matrix(const std::vector<std::vector<Rational>>& cols);

/// Exact matrix-vector product; the result is again a distribution.
ProbVector apply_matrix(const StochasticMatrix& m, const ProbVector& p);

/// Exact matrix product (column-stochastic matrices are closed under it).
StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b);

/// lam*p + (1-lam)*q, exact. Throws LambdaOutOfRange / DimensionMismatch.
ProbVector convex_combine(const Rational& lam, const ProbVector& p, const ProbVector& q);

/// Conditional-probability grid whose entries may be undefined where the
/// conditioning event has probability zero. Every fully defined column is a
/// distribution; equality treats undefined entries as a distinct value.
class PartialStochasticMatrix {
 public:
  using Entry = std::optional<Rational>;

  PartialStochasticMatrix(int n, std::vector<std::vector<Entry>> cols);

  int size() const { return n_; }
  const Entry& at(int i, int j) const { return cols_[static_cast<size_t>(j)][static_cast<size_t>(i)]; }
  bool defined(int i, int j) const { return at(i, j).has_value(); }
  bool column_defined(int j) const;

  bool operator==(const PartialStochasticMatrix& o) const { return cols_ == o.cols_; }

  /// The fully defined matrix, if no entry is undefined.
  std::optional<StochasticMatrix> as_total() const;

 private:
  int n_;
  std::vector<std::vector<Entry>> cols_;
};

/// All simplex points of dimension n whose entries admit a common denominator
/// <= max_denominator, in deterministic sorted order. Includes all vertices.
std::vector<ProbVector> simplex_grid(int n, int max_denominator);

}  // namespace stoqdyn

#endif
