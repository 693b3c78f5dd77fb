#include "gradelast/linear_system.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "gradelast/errors.hpp"

namespace gradelast {
namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

template <class S>
std::map<int, S> essential_map(const SparseSystem<S>& system) {
  std::map<int, S> fixed;
  for (const auto& [dof, value] : system.essential) {
    if (dof < 0 || dof >= system.ndofs()) throw InvalidArgument("essential constraint dof out of range");
    auto [it, inserted] = fixed.emplace(dof, value);
    if (!inserted && std::abs(it->second - value) > 1e-14 * std::max(1.0, std::abs(value)))
      throw InvalidArgument("contradictory essential constraints on dof " + std::to_string(dof));
  }
  return fixed;
}

template <class S>
VecX<S> random_vector(Eigen::Index n) {
  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  VecX<S> r(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<S, double>)
      r[i] = u(rng);
    else
      r[i] = S(u(rng), u(rng));
  }
  return r;
}

}  // namespace

template <class S>
SparseSystem<S> apply_essential(SparseSystem<S> system, const std::vector<std::pair<int, S>>& constraints) {
  system.essential.insert(system.essential.end(), constraints.begin(), constraints.end());
  essential_map(system);
  return system;
}

template <class S>
Reduction<S> reduce_constraints(const SparseSystem<S>& system) {
  const int n = system.ndofs();
  const std::map<int, S> fixed = essential_map(system);

  // Substitute essential values, drop zero terms.
  std::vector<LinearConstraint<S>> cons;
  for (const auto& lc : system.linear) {
    LinearConstraint<S> c;
    c.rhs = lc.rhs;
    std::map<int, S> merged;
    for (const auto& [dof, coef] : lc.terms) {
      if (dof < 0 || dof >= n) throw InvalidArgument("linear constraint dof out of range");
      merged[dof] += coef;
    }
    double scale = std::abs(lc.rhs);
    for (const auto& [dof, coef] : merged) {
      scale = std::max(scale, std::abs(coef));
      if (auto it = fixed.find(dof); it != fixed.end())
        c.rhs -= coef * it->second;
      else if (coef != S(0))
        c.terms.emplace_back(dof, coef);
    }
    if (c.terms.empty()) {
      if (std::abs(c.rhs) > 1e-12 * std::max(1.0, scale)) throw InvalidArgument("inconsistent linear constraint");
      continue;
    }
    cons.push_back(std::move(c));
  }

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& c : cons)
    for (const auto& t : c.terms) parent[static_cast<std::size_t>(find_root(parent, t.first))] = find_root(parent, c.terms[0].first);
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < cons.size(); ++i) groups[find_root(parent, cons[i].terms[0].first)].push_back(static_cast<int>(i));

  struct SlaveRow {
    S rhs;
    std::vector<std::pair<int, S>> masters;  // slave = rhs + Σ coef · master
  };
  std::map<int, SlaveRow> slaves;
  for (const auto& [root, members] : groups) {
    std::vector<int> cols;
    for (int ci : members)
      for (const auto& t : cons[static_cast<std::size_t>(ci)].terms) cols.push_back(t.first);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    const auto m = static_cast<Eigen::Index>(members.size());
    const auto nc = static_cast<Eigen::Index>(cols.size());
    MatX<S> a = MatX<S>::Zero(m, nc + 1);
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto& c = cons[static_cast<std::size_t>(members[static_cast<std::size_t>(r)])];
      for (const auto& [dof, coef] : c.terms) {
        const auto pos = std::lower_bound(cols.begin(), cols.end(), dof) - cols.begin();
        a(r, pos) += coef;
      }
      a(r, nc) = c.rhs;
    }
    const double scale = a.cwiseAbs().maxCoeff();
    // Reduced row echelon form with full pivoting.
    std::vector<Eigen::Index> pivcols;
    Eigen::Index row = 0;
    std::vector<bool> used(static_cast<std::size_t>(nc), false);
    while (row < m) {
      double best = 0.0;
      Eigen::Index br = -1, bc = -1;
      for (Eigen::Index r = row; r < m; ++r)
        for (Eigen::Index c = 0; c < nc; ++c)
          if (!used[static_cast<std::size_t>(c)] && std::abs(a(r, c)) > best) {
            best = std::abs(a(r, c));
            br = r;
            bc = c;
          }
      if (best <= 1e-12 * scale) break;
      a.row(row).swap(a.row(br));
      a.row(row) /= a(row, bc);
      for (Eigen::Index r = 0; r < m; ++r)
        if (r != row && a(r, bc) != S(0)) a.row(r) -= a(r, bc) * a.row(row);
      used[static_cast<std::size_t>(bc)] = true;
      pivcols.push_back(bc);
      ++row;
    }
    for (Eigen::Index r = row; r < m; ++r)
      if (std::abs(a(r, nc)) > 1e-10 * std::max(1.0, scale)) throw InvalidArgument("inconsistent linear constraints");
    for (std::size_t p = 0; p < pivcols.size(); ++p) {
      SlaveRow sr{a(static_cast<Eigen::Index>(p), nc), {}};
      for (Eigen::Index c = 0; c < nc; ++c)
        if (!used[static_cast<std::size_t>(c)] && a(static_cast<Eigen::Index>(p), c) != S(0))
          sr.masters.emplace_back(cols[static_cast<std::size_t>(c)], -a(static_cast<Eigen::Index>(p), c));
      slaves.emplace(cols[static_cast<std::size_t>(pivcols[p])], std::move(sr));
    }
  }

  Reduction<S> red;
  red.x0 = VecX<S>::Zero(n);
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (fixed.count(i) || slaves.count(i)) continue;
    index[static_cast<std::size_t>(i)] = static_cast<int>(red.masters.size());
    red.masters.push_back(i);
  }
  std::vector<Eigen::Triplet<S>> trip;
  for (int i = 0; i < n; ++i) {
    if (auto it = fixed.find(i); it != fixed.end()) {
      red.x0[i] = it->second;
    } else if (auto st = slaves.find(i); st != slaves.end()) {
      red.x0[i] = st->second.rhs;
      for (const auto& [dof, coef] : st->second.masters) trip.emplace_back(i, index[static_cast<std::size_t>(dof)], coef);
    } else {
      trip.emplace_back(i, index[static_cast<std::size_t>(i)], S(1));
    }
  }
  red.t.resize(n, static_cast<Eigen::Index>(red.masters.size()));
  red.t.setFromTriplets(trip.begin(), trip.end());
  red.t.makeCompressed();
  return red;
}

template <class S>
SpMat<S> reduced_matrix(const SparseSystem<S>& system, const Reduction<S>& red) {
  SpMat<S> ar = SpMat<S>(red.t.adjoint()) * system.matrix * red.t;
  ar.makeCompressed();
  return ar;
}

template <class S>
VecX<S> solve_linear(const SparseSystem<S>& system, SolveInfo* info) {
  const int n = system.ndofs();
  if (system.matrix.cols() != n || system.rhs.size() != n) throw InvalidArgument("system dimensions do not match");
  const Reduction<S> red = reduce_constraints(system);
  const SpMat<S> ar = reduced_matrix(system, red);
  const VecX<S> br = red.t.adjoint() * (system.rhs - system.matrix * red.x0);
  const auto nm = static_cast<Eigen::Index>(red.masters.size());

  SpMat<S> k = ar;
  VecX<S> rhs = br;
  MatX<S> zr;
  const bool deflate = system.deflation.cols() > 0;
  if (deflate) {
    const MatX<S>& z = system.deflation;
    if (z.rows() != n) throw InvalidArgument("deflation basis has the wrong row count");
    const auto p = z.cols();
    zr.resize(nm, p);
    for (Eigen::Index i = 0; i < nm; ++i) zr.row(i) = z.row(red.masters[static_cast<std::size_t>(i)]);
    if ((red.t * zr - z).norm() > 1e-10 * z.norm()) throw InvalidArgument("deflation basis violates the constraints");
    const double bnorm = br.norm();
    for (Eigen::Index c = 0; c < p; ++c) {
      const double proj = std::abs(zr.col(c).dot(br));
      if (bnorm > 0.0 && proj > 1e-9 * zr.col(c).norm() * bnorm)
        throw FredholmIncompatible("right-hand side is not orthogonal to the nullspace");
    }
    std::vector<Eigen::Triplet<S>> trip;
    for (Eigen::Index c = 0; c < ar.outerSize(); ++c)
      for (typename SpMat<S>::InnerIterator it(ar, c); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
    for (Eigen::Index i = 0; i < nm; ++i)
      for (Eigen::Index c = 0; c < p; ++c)
        if (zr(i, c) != S(0)) {
          trip.emplace_back(i, nm + c, zr(i, c));
          trip.emplace_back(nm + c, i, Eigen::numext::conj(zr(i, c)));
        }
    k.resize(nm + p, nm + p);
    k.setFromTriplets(trip.begin(), trip.end());
    k.makeCompressed();
    rhs = VecX<S>::Zero(nm + p);
    rhs.head(nm) = br;
  }

  VecX<S> z = VecX<S>::Zero(k.rows());
  SolveInfo local;
  if (k.rows() > 0) {
    Eigen::SparseLU<SpMat<S>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(k);
    lu.factorize(k);
    if (lu.info() != Eigen::Success) throw SingularSystem("factorization failed: " + lu.lastErrorMessage());
    const VecX<S> probe = random_vector<S>(k.rows());
    const VecX<S> py = lu.solve(probe);
    if (!py.allFinite() || (k * py - probe).norm() > 1e-6 * probe.norm())
      throw SingularSystem("matrix is numerically singular");
    const double rnorm = rhs.norm();
    if (rnorm > 0.0) {
      z = lu.solve(rhs);
      VecX<S> res = rhs - k * z;
      local.residual = res.norm() / rnorm;
      while (local.residual > 1e-12 && local.refinements < 3) {
        z += lu.solve(res);
        res = rhs - k * z;
        local.residual = res.norm() / rnorm;
        ++local.refinements;
      }
      if (!z.allFinite() || local.residual > 1e-6) throw SingularSystem("linear solve did not converge");
    }
  }
  VecX<S> x = red.x0 + red.t * z.head(nm);
  if (deflate) {
    const MatX<S>& zf = system.deflation;
    const MatX<S> gram = zf.adjoint() * zf;
    x -= zf * gram.ldlt().solve(zf.adjoint() * x);
  }
  if (info) *info = local;
  return x;
}

template <class S>
int nullspace_dimension(const SparseSystem<S>& system, double tol) {
  const Reduction<S> red = reduce_constraints(system);
  const MatX<S> dense = MatX<S>(reduced_matrix(system, red));
  if (dense.rows() == 0) return 0;
  Eigen::BDCSVD<MatX<S>> svd(dense);
  const auto& sv = svd.singularValues();
  const double smax = sv.maxCoeff();
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= tol * smax) ++count;
  return count;
}

template SparseSystem<double> apply_essential(SparseSystem<double>, const std::vector<std::pair<int, double>>&);
template SparseSystem<cplx> apply_essential(SparseSystem<cplx>, const std::vector<std::pair<int, cplx>>&);
template Reduction<double> reduce_constraints(const SparseSystem<double>&);
template Reduction<cplx> reduce_constraints(const SparseSystem<cplx>&);
template SpMat<double> reduced_matrix(const SparseSystem<double>&, const Reduction<double>&);
template SpMat<cplx> reduced_matrix(const SparseSystem<cplx>&, const Reduction<cplx>&);
template VecX<double> solve_linear(const SparseSystem<double>&, SolveInfo*);
template VecX<cplx> solve_linear(const SparseSystem<cplx>&, SolveInfo*);
template int nullspace_dimension(const SparseSystem<double>&, double);
template int nullspace_dimension(const SparseSystem<cplx>&, double);

}  // namespace gradelast
