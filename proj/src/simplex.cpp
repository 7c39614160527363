#include "stoqdyn/simplex.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace stoqdyn {

ProbVector::ProbVector(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) fail(Err::DimensionMismatch, "probability vector must have length >= 1");
  Rational sum = 0;
  for (const auto& x : entries_) {
    if (x < 0 || x > 1) fail(Err::OutOfRange, "entry " + stoqdyn::to_string(x) + " outside [0,1]");
    sum += x;
  }
  if (sum != 1) fail(Err::NotNormalized, "entries sum to " + stoqdyn::to_string(sum));
}

ProbVector ProbVector::vertex(int n, int i) {
  std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
  if (i < 1 || i > n) fail(Err::BadConfig, "vertex index out of range");
  v[static_cast<size_t>(i - 1)] = 1;
  return ProbVector(std::move(v));
}

ProbVector ProbVector::uniform(int n) {
  std::vector<Rational> v(static_cast<size_t>(n), Rational(1, n));
  return ProbVector(std::move(v));
}

ProbVector validate_prob_vector(const std::vector<Rational>& v) { return ProbVector(v); }

StochasticMatrix::StochasticMatrix(std::vector<std::vector<Rational>> cols) : cols_(std::move(cols)) {
  const size_t n = cols_.size();
  if (n == 0) fail(Err::DimensionMismatch, "empty matrix");
  for (const auto& c : cols_) {
    if (c.size() != n) fail(Err::DimensionMismatch, "matrix must be square");
    ProbVector check(c);  // validates the column
  }
}

StochasticMatrix StochasticMatrix::identity(int n) {
  std::vector<std::vector<Rational>> cols(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
  for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;
  return StochasticMatrix(std::move(cols));
}

StochasticMatrix validate_stochastic_matrix(const std::vector<std::vector<Rational>>& cols) {
  return StochasticMatrix(cols);
}

ProbVector apply_matrix(const StochasticMatrix& m, const ProbVector& p) {
  if (m.size() != p.size()) fail(Err::DimensionMismatch, "matrix/vector sizes differ");
  const int n = m.size();
  std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
  for (int j = 0; j < n; ++j) {
    if (p[j] == 0) continue;
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] += m.at(i, j) * p[j];
  }
  return ProbVector(std::move(out));
}

StochasticMatrix multiply(const StochasticMatrix& a, const StochasticMatrix& b) {
  if (a.size() != b.size()) fail(Err::DimensionMismatch, "matrix sizes differ");
  const int n = a.size();
  std::vector<std::vector<Rational>> cols(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> c(static_cast<size_t>(n), Rational(0));
    for (int k = 0; k < n; ++k) {
      if (b.at(k, j) == 0) continue;
      for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] += a.at(i, k) * b.at(k, j);
    }
    cols[static_cast<size_t>(j)] = std::move(c);
  }
  return StochasticMatrix(std::move(cols));
}

ProbVector convex_combine(const Rational& lam, const ProbVector& p, const ProbVector& q) {
  if (lam < 0 || lam > 1) fail(Err::LambdaOutOfRange, "lambda = " + to_string(lam));
  if (p.size() != q.size()) fail(Err::DimensionMismatch, "vector lengths differ");
  std::vector<Rational> out(static_cast<size_t>(p.size()));
  const Rational co = Rational(1) - lam;
  for (int i = 0; i < p.size(); ++i) out[static_cast<size_t>(i)] = lam * p[i] + co * q[i];
  return ProbVector(std::move(out));
}

PartialStochasticMatrix::PartialStochasticMatrix(int n, std::vector<std::vector<Entry>> cols)
    : n_(n), cols_(std::move(cols)) {
  if (static_cast<int>(cols_.size()) != n_) fail(Err::DimensionMismatch, "wrong column count");
  for (const auto& c : cols_) {
    if (static_cast<int>(c.size()) != n_) fail(Err::DimensionMismatch, "wrong column length");
    bool all_defined = true;
    for (const auto& e : c) all_defined = all_defined && e.has_value();
    if (all_defined) {
      std::vector<Rational> vals;
      vals.reserve(c.size());
      for (const auto& e : c) vals.push_back(*e);
      ProbVector check(vals);
    }
  }
}

bool PartialStochasticMatrix::column_defined(int j) const {
  for (int i = 0; i < n_; ++i)
    if (!defined(i, j)) return false;
  return true;
}

std::optional<StochasticMatrix> PartialStochasticMatrix::as_total() const {
  std::vector<std::vector<Rational>> cols(static_cast<size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    if (!column_defined(j)) return std::nullopt;
    std::vector<Rational> c(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) c[static_cast<size_t>(i)] = *at(i, j);
    cols[static_cast<size_t>(j)] = std::move(c);
  }
  return StochasticMatrix(std::move(cols));
}

std::vector<ProbVector> simplex_grid(int n, int max_denominator) {
  std::set<std::vector<Rational>> seen;
  std::vector<Rational> cur(static_cast<size_t>(n));
  for (int q = 1; q <= max_denominator; ++q) {
    // Enumerate compositions of q into n nonnegative parts.
    std::vector<int> parts(static_cast<size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
      if (idx == n - 1) {
        parts[static_cast<size_t>(idx)] = remaining;
        for (int i = 0; i < n; ++i) cur[static_cast<size_t>(i)] = Rational(parts[static_cast<size_t>(i)], q);
        seen.insert(cur);
        return;
      }
      for (int k = 0; k <= remaining; ++k) {
        parts[static_cast<size_t>(idx)] = k;
        rec(idx + 1, remaining - k);
      }
    };
    rec(0, q);
  }
  std::vector<ProbVector> out;
  out.reserve(seen.size());
  for (const auto& v : seen) out.push_back(ProbVector(v));
  return out;
}

}  // namespace stoqdyn
