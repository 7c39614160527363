#include "stoqdyn/dynamics.hpp"

#include <algorithm>
#include <map>

namespace stoqdyn {

MatrixFamily::MatrixFamily(TimeGrid grid, std::map<int, StochasticMatrix> matrices)
    : grid_(std::move(grid)), matrices_(std::move(matrices)) {
  if (matrices_.empty()) fail(Err::InvalidDynamics, "empty matrix family");
  n_ = matrices_.begin()->second.size();
  for (int k = 0; k < grid_.size(); ++k) {
    const int t = grid_.at(k);
    auto it = matrices_.find(t);
    if (it == matrices_.end()) fail(Err::InvalidDynamics, "missing matrix for time " + std::to_string(t));
    if (it->second.size() != n_) fail(Err::DimensionMismatch, "inconsistent matrix sizes");
  }
  if (static_cast<int>(matrices_.size()) != grid_.size())
    fail(Err::InvalidDynamics, "matrix for time outside grid");
  if (matrices_.at(0) != StochasticMatrix::identity(n_))
    fail(Err::InvalidDynamics, "matrix at time 0 must be the identity");
}

const StochasticMatrix& MatrixFamily::at(int t) const {
  auto it = matrices_.find(t);
  if (it == matrices_.end()) fail(Err::InvalidTime, "no matrix at time " + std::to_string(t));
  return it->second;
}

RationalMatrix MatrixFamily::as_rational(int t) const {
  const StochasticMatrix& m = at(t);
  RationalMatrix out(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

ProbabilityDynamics ProbabilityDynamics::from_matrices(MatrixFamily fam) {
  TimeGrid grid = fam.grid();
  int n = fam.n();
  return ProbabilityDynamics(std::move(grid), n, std::move(fam));
}

ProbabilityDynamics ProbabilityDynamics::from_table(TabulatedDynamics table) {
  if (table.points.empty()) fail(Err::InvalidDynamics, "tabulated dynamics without points");
  for (const auto& [p0, traj] : table.points) {
    if (p0.size() != table.n) fail(Err::DimensionMismatch, "tabulated point of wrong dimension");
    if (static_cast<int>(traj.size()) != table.grid.size())
      fail(Err::LengthMismatch, "tabulated trajectory of wrong length");
    if (traj.front() != p0) fail(Err::InvalidDynamics, "tabulated trajectory must start at p0");
  }
  TimeGrid grid = table.grid;
  int n = table.n;
  return ProbabilityDynamics(std::move(grid), n, std::move(table));
}

ProbabilityDynamics ProbabilityDynamics::from_black_box(TimeGrid grid, int n, BlackBoxDynamics box) {
  if (!box) fail(Err::InvalidDynamics, "null evaluator");
  return ProbabilityDynamics(std::move(grid), n, std::move(box));
}

ProbVector ProbabilityDynamics::evaluate(int t, const ProbVector& p0) const {
  if (!grid_.contains(t)) fail(Err::InvalidTime, "time " + std::to_string(t) + " not in grid");
  if (p0.size() != n_) fail(Err::DimensionMismatch, "initial vector of wrong dimension");
  if (const auto* fam = std::get_if<MatrixFamily>(&repr_)) {
    return apply_matrix(fam->at(t), p0);
  }
  if (const auto* tab = std::get_if<TabulatedDynamics>(&repr_)) {
    for (const auto& [q0, traj] : tab->points)
      if (q0 == p0) return traj[static_cast<size_t>(grid_.index_of(t))];
    fail(Err::InvalidDynamics, "initial vector not tabulated");
  }
  const auto& box = std::get<BlackBoxDynamics>(repr_);
  ProbVector out = box(t, p0);
  if (out.size() != n_) fail(Err::InvalidDynamics, "evaluator returned wrong dimension");
  if (t == 0 && out != p0) fail(Err::InvalidDynamics, "evaluator is not the identity at time 0");
  return out;
}

std::vector<ProbVector> ProbabilityDynamics::solution(const ProbVector& p0) const {
  std::vector<ProbVector> out;
  out.reserve(static_cast<size_t>(grid_.size()));
  for (int k = 0; k < grid_.size(); ++k) out.push_back(evaluate(grid_.at(k), p0));
  return out;
}

std::vector<ProbVector> ProbabilityDynamics::evaluation_points(int grid_denominator) const {
  std::vector<ProbVector> pts;
  if (const auto* tab = std::get_if<TabulatedDynamics>(&repr_)) {
    for (const auto& [p0, traj] : tab->points) {
      (void)traj;
      pts.push_back(p0);
    }
  } else {
    pts = simplex_grid(n_, grid_denominator);
  }
  // Canonical scan order: the uniform point first, so witnesses land on the
  // barycenter whenever it already violates the property under test.
  const ProbVector uniform = ProbVector::uniform(n_);
  for (size_t k = 0; k < pts.size(); ++k) {
    if (pts[k] == uniform) {
      std::rotate(pts.begin(), pts.begin() + static_cast<long>(k), pts.begin() + static_cast<long>(k) + 1);
      break;
    }
  }
  return pts;
}

namespace {

ProbVector apply_candidate(const std::vector<ProbVector>& vertex_images, const ProbVector& p) {
  std::vector<Rational> out(static_cast<size_t>(p.size()), Rational(0));
  for (int j = 0; j < p.size(); ++j) {
    if (p[j] == 0) continue;
    const ProbVector& col = vertex_images[static_cast<size_t>(j)];
    for (int i = 0; i < p.size(); ++i) out[static_cast<size_t>(i)] += col[i] * p[j];
  }
  return ProbVector(std::move(out));
}

// Splits off vertices from a failing point until a single convex combination
// step exhibits the violation. Requires a dynamics evaluable at arbitrary
// points (matrix or black-box representations).
LinearityWitness extract_witness(const ProbabilityDynamics& dyn, int t, ProbVector x) {
  const int n = dyn.n();
  while (true) {
    int j = -1;
    for (int i = 0; i < n; ++i)
      if (x[i] > 0 && x[i] < 1) { j = i; break; }
    if (j < 0) fail(Err::InvalidDynamics, "witness extraction reached a vertex");
    const Rational lam = x[j];
    ProbVector p = ProbVector::vertex(n, j + 1);
    std::vector<Rational> rest(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rest[static_cast<size_t>(i)] = (i == j) ? Rational(0) : x[i] / (1 - lam);
    ProbVector q{std::move(rest)};
    const ProbVector combined = dyn.evaluate(t, x);
    const ProbVector mixture = convex_combine(lam, dyn.evaluate(t, p), dyn.evaluate(t, q));
    if (combined != mixture) return LinearityWitness{t, p, q, lam, combined, mixture};
    x = q;
  }
}

}  // namespace

LinearityVerdict is_linear(const ProbabilityDynamics& dyn, int grid_denominator) {
  const int n = dyn.n();
  LinearityVerdict verdict;

  if (dyn.has_matrices()) {
    verdict.status = LinearityStatus::Linear;
    verdict.matrices = dyn.matrices();
    return verdict;
  }

  // Candidate matrix columns are the vertex images.
  std::map<int, std::vector<ProbVector>> candidates;
  for (int k = 0; k < dyn.grid().size(); ++k) {
    const int t = dyn.grid().at(k);
    std::vector<ProbVector> cols;
    for (int j = 1; j <= n; ++j) cols.push_back(dyn.evaluate(t, ProbVector::vertex(n, j)));
    candidates[t] = std::move(cols);
  }

  const auto points = dyn.evaluation_points(grid_denominator);
  for (int k = 0; k < dyn.grid().size(); ++k) {
    const int t = dyn.grid().at(k);
    const auto& cols = candidates[t];
    for (const auto& p : points) {
      const ProbVector got = dyn.evaluate(t, p);
      const ProbVector expect = apply_candidate(cols, p);
      if (got != expect) {
        verdict.status = LinearityStatus::Nonlinear;
        if (dyn.is_tabulated()) {
          verdict.witness = LinearityWitness{t, p, p, Rational(1), got, expect};
        } else {
          verdict.witness = extract_witness(dyn, t, p);
        }
        return verdict;
      }
    }
  }

  std::map<int, StochasticMatrix> mats;
  for (auto& [t, cols] : candidates) {
    std::vector<std::vector<Rational>> raw;
    for (const auto& c : cols) raw.push_back(c.entries());
    mats.emplace(t, StochasticMatrix(std::move(raw)));
  }
  verdict.matrices = MatrixFamily(dyn.grid(), std::move(mats));
  verdict.status = dyn.is_black_box() ? LinearityStatus::LinearOnGrid : LinearityStatus::Linear;
  return verdict;
}

namespace {

// A pair of simplex points whose difference is parallel to v (zero-sum).
std::pair<ProbVector, ProbVector> simplex_pair_from_direction(const std::vector<Rational>& v) {
  const int n = static_cast<int>(v.size());
  Rational max_abs = 0;
  for (const auto& x : v) {
    Rational a = x < 0 ? -x : x;
    if (a > max_abs) max_abs = a;
  }
  const Rational eps = Rational(1, n) / max_abs;
  std::vector<Rational> p(static_cast<size_t>(n)), q(static_cast<size_t>(n), Rational(1, n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = Rational(1, n) + eps * v[static_cast<size_t>(i)];
  return {ProbVector(std::move(p)), ProbVector(std::move(q))};
}

std::vector<DecomposingMapRecord> vertex_graph_records(const MatrixFamily& fam) {
  std::vector<DecomposingMapRecord> maps;
  const auto& grid = fam.grid();
  for (int a = 0; a < grid.size(); ++a)
    for (int b = a; b < grid.size(); ++b) {
      const int t_prime = grid.at(a);
      const int t = grid.at(b);
      DecomposingMapRecord rec{t, t_prime, {}};
      for (int j = 0; j < fam.n(); ++j) {
        ProbVector dom(fam.at(t_prime).col(j));
        ProbVector img(fam.at(t).col(j));
        bool dup = false;
        for (const auto& [d, i] : rec.graph)
          if (d == dom) { dup = true; break; }
        if (!dup) rec.graph.emplace_back(std::move(dom), std::move(img));
      }
      maps.push_back(std::move(rec));
    }
  return maps;
}

}  // namespace

DecomposabilityVerdict kernel_decomposable(const MatrixFamily& fam) {
  const auto& grid = fam.grid();
  for (int a = 0; a < grid.size(); ++a) {
    const int t_prime = grid.at(a);
    auto kernel = kernel_basis(fam.as_rational(t_prime));
    if (kernel.empty()) continue;
    for (int b = a; b < grid.size(); ++b) {
      const int t = grid.at(b);
      const auto pt = fam.as_rational(t);
      for (const auto& v : kernel) {
        auto image = mat_vec(pt, v);
        bool zero = true;
        for (const auto& x : image)
          if (x != 0) { zero = false; break; }
        if (!zero) {
          auto [p0, q0] = simplex_pair_from_direction(v);
          return {false, DecomposabilityWitness{t, t_prime, p0, q0}, {}};
        }
      }
    }
  }
  return {true, std::nullopt, vertex_graph_records(fam)};
}

DecomposabilityVerdict decomposable_by_grid(const ProbabilityDynamics& dyn, int grid_denominator) {
  const auto points = dyn.evaluation_points(grid_denominator);
  const auto& grid = dyn.grid();
  std::vector<std::vector<ProbVector>> images(points.size());
  for (size_t p = 0; p < points.size(); ++p) images[p] = dyn.solution(points[p]);

  std::vector<DecomposingMapRecord> maps;
  for (int a = 0; a < grid.size(); ++a) {
    for (int b = a; b < grid.size(); ++b) {
      // Bucket points by image at t'; all members of a bucket must share the
      // image at t.
      std::map<ProbVector, size_t> buckets;
      DecomposingMapRecord rec{grid.at(b), grid.at(a), {}};
      for (size_t p = 0; p < points.size(); ++p) {
        const ProbVector& at_tp = images[p][static_cast<size_t>(a)];
        const ProbVector& at_t = images[p][static_cast<size_t>(b)];
        auto [it, inserted] = buckets.emplace(at_tp, p);
        if (inserted) {
          rec.graph.emplace_back(at_tp, at_t);
        } else if (images[it->second][static_cast<size_t>(b)] != at_t) {
          return {false,
                  DecomposabilityWitness{grid.at(b), grid.at(a), points[it->second], points[p]},
                  {}};
        }
      }
      maps.push_back(std::move(rec));
    }
  }
  return {true, std::nullopt, std::move(maps)};
}

DecomposabilityVerdict is_decomposable(const ProbabilityDynamics& dyn, int grid_denominator) {
  if (dyn.has_matrices()) return kernel_decomposable(dyn.matrices());
  return decomposable_by_grid(dyn, grid_denominator);
}

DecomposingMapMatrix decomposing_map_matrix(const MatrixFamily& fam, int t, int t_prime) {
  auto verdict = kernel_decomposable(fam);
  if (!verdict.decomposable) fail(Err::NotDecomposable, "family is not decomposable");
  fam.grid().index_of(t);
  fam.grid().index_of(t_prime);
  if (t_prime > t) fail(Err::InvalidTime, "need t' <= t");

  DecomposingMapMatrix out;
  const auto p_prime = fam.as_rational(t_prime);
  auto inv = inverse(p_prime);
  if (inv.has_value()) {
    out.has_matrix = true;
    out.matrix = mat_mul(fam.as_rational(t), *inv);
    return out;
  }
  // Singular P(t'): report the action on a basis of its range.
  auto cols = independent_columns(p_prime);
  for (int j : cols) {
    std::vector<Rational> dom(static_cast<size_t>(fam.n()));
    std::vector<Rational> img(static_cast<size_t>(fam.n()));
    for (int i = 0; i < fam.n(); ++i) {
      dom[static_cast<size_t>(i)] = fam.at(t_prime).at(i, j);
      img[static_cast<size_t>(i)] = fam.at(t).at(i, j);
    }
    out.restricted.emplace_back(std::move(dom), std::move(img));
  }
  return out;
}

DivisibilityReport is_divisible(const MatrixFamily& fam) {
  const int n = fam.n();
  const auto& grid = fam.grid();
  DivisibilityReport report;
  report.divisible = true;
  for (int a = 0; a < grid.size(); ++a) {
    for (int b = a; b < grid.size(); ++b) {
      const int t_prime = grid.at(a);
      const int t = grid.at(b);
      PairDivisibility pr;
      pr.t_prime = t_prime;
      pr.t = t;

      // Feasibility of X P(t') = P(t) with X column-stochastic, variables
      // x_{i*n+j} = X_ij.
      RationalMatrix A(n * n + n, n * n);
      std::vector<Rational> rhs(static_cast<size_t>(n * n + n), Rational(0));
      const auto& pp = fam.at(t_prime);
      const auto& pt = fam.at(t);
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
          const int row = i * n + k;
          for (int j = 0; j < n; ++j) A.at(row, i * n + j) = pp.at(j, k);
          rhs[static_cast<size_t>(row)] = pt.at(i, k);
        }
      for (int j = 0; j < n; ++j) {
        const int row = n * n + j;
        for (int i = 0; i < n; ++i) A.at(row, i * n + j) = 1;
        rhs[static_cast<size_t>(row)] = 1;
      }

      auto lp = solve_equality_feasibility(A, rhs);
      if (lp.feasible) {
        pr.status = DivisibilityStatus::Divisible;
        std::vector<std::vector<Rational>> cols(static_cast<size_t>(n),
                                                std::vector<Rational>(static_cast<size_t>(n)));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = lp.solution[static_cast<size_t>(i * n + j)];
        pr.factor = StochasticMatrix(std::move(cols));
      } else {
        pr.status = DivisibilityStatus::NotDivisible;
        pr.farkas = lp.farkas;
        report.divisible = false;
      }
      auto inv = inverse(fam.as_rational(t_prime));
      if (inv.has_value()) pr.candidate = mat_mul(fam.as_rational(t), *inv);
      report.pairs.push_back(std::move(pr));
    }
  }
  return report;
}

TimeHomogeneityDynVerdict is_time_homogeneous_dynamics(const ProbabilityDynamics& dyn, int grid_denominator) {
  if (!dyn.grid().difference_closed())
    fail(Err::GridNotDifferenceClosed, "grid is not closed under time differences");
  const auto& grid = dyn.grid();
  if (dyn.has_matrices()) {
    const auto& fam = dyn.matrices();
    for (int a = 0; a < grid.size(); ++a)
      for (int b = a; b < grid.size(); ++b) {
        const int t_prime = grid.at(a);
        const int t = grid.at(b);
        if (fam.at(t) != multiply(fam.at(t - t_prime), fam.at(t_prime)))
          return {false, TimeHomogeneityDynWitness{t, t_prime, std::nullopt}};
      }
    return {true, std::nullopt};
  }
  const auto points = dyn.evaluation_points(grid_denominator);
  for (int a = 0; a < grid.size(); ++a)
    for (int b = a; b < grid.size(); ++b) {
      const int t_prime = grid.at(a);
      const int t = grid.at(b);
      for (const auto& p0 : points) {
        const ProbVector lhs = dyn.evaluate(t, p0);
        const ProbVector mid = dyn.evaluate(t_prime, p0);
        ProbVector rhs = [&] {
          if (dyn.is_tabulated()) {
            // Only evaluable when the intermediate point is tabulated.
            for (const auto& [q0, traj] : dyn.table().points)
              if (q0 == mid) return traj[static_cast<size_t>(grid.index_of(t - t_prime))];
            return lhs;  // cannot test this point
          }
          return dyn.evaluate(t - t_prime, mid);
        }();
        if (lhs != rhs) return {false, TimeHomogeneityDynWitness{t, t_prime, p0}};
      }
    }
  return {true, std::nullopt};
}

}  // namespace stoqdyn
