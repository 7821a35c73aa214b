#include "localsolve/exact_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "localsolve/error.hpp"
#include "localsolve/rng.hpp"

namespace localsolve {

namespace {

using Basis = std::vector<std::vector<double>>;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void project_out(const Basis& basis, std::span<double> x) {
  for (const auto& k : basis) axpy(-dot(k, x), k, x);
}

std::size_t iteration_limit(const OracleOptions& o, std::size_t n) {
  return o.max_iterations ? o.max_iterations : 20 * n + 1000;
}

/// CG on a PSD operator restricted to the complement of `kernel`.
std::vector<double> conjugate_gradient(std::size_t n, const LinearOperator& op,
                                       std::span<const double> rhs, const Basis& kernel,
                                       const OracleOptions& o) {
  std::vector<double> x(n, 0.0), r(rhs.begin(), rhs.end()), p, ap(n);
  project_out(kernel, r);
  const double target = o.cg_tolerance * norm2(rhs);
  p = r;
  double rr = dot(r, r);
  const std::size_t limit = iteration_limit(o, n);
  for (std::size_t it = 0; it < limit; ++it) {
    if (std::sqrt(rr) <= target) return x;
    op(p, ap);
    const double pap = dot(p, ap);
    if (!(pap > 0.0))
      throw Error(ErrorCode::SingularBeyondKernel,
                  "operator is not positive definite off the computed kernel");
    const double alpha = rr / pap;
    axpy(alpha, p, x);
    axpy(-alpha, ap, r);
    if ((it + 1) % o.reorthogonalize_every == 0) {
      // Recompute the true residual and strip kernel drift.
      project_out(kernel, x);
      op(x, ap);
      for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
      project_out(kernel, r);
    }
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * p[i];
    project_out(kernel, p);
  }
  throw Error(ErrorCode::SingularBeyondKernel,
              "conjugate gradient stalled after " + std::to_string(limit) + " iterations");
}

Eigen::VectorXd dense_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "dense eigensolver failed");
  return solver.eigenvalues();
}

Eigen::MatrixXd dense_of(const SddMatrix& s, bool normalized) {
  const std::size_t n = s.n();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (Vertex i = 0; i < n; ++i) {
    const double si = normalized ? 1.0 / std::sqrt(s.diag(i)) : 1.0;
    m(i, i) = normalized ? 1.0 : s.diag(i);
    for (const auto& e : s.row(i)) {
      const double sj = normalized ? 1.0 / std::sqrt(s.diag(e.col)) : 1.0;
      m(i, e.col) = e.value * si * sj;
    }
  }
  return m;
}

Eigen::MatrixXd dense_laplacian(const RegularGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.n());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Vertex v = 0; v < g.n(); ++v) {
    m(v, v) += static_cast<double>(g.degree());
    for (Vertex w : g.neighbors(v)) m(v, w) -= 1.0;
  }
  return m;
}

Basis component_indicators(const RegularGraph& g) {
  const auto labels = g.component_labels();
  const std::size_t c = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  Basis out(c, std::vector<double>(g.n(), 0.0));
  std::vector<std::size_t> sizes(c, 0);
  for (auto l : labels) ++sizes[l];
  for (std::size_t v = 0; v < g.n(); ++v)
    out[labels[v]][v] = 1.0 / std::sqrt(static_cast<double>(sizes[labels[v]]));
  return out;
}

/// Number of eigenvalues at the bottom of a sorted spectrum that vanish.
std::size_t count_zero(const Eigen::VectorXd& ev) {
  const double scale = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  std::size_t k = 0;
  while (k < static_cast<std::size_t>(ev.size()) &&
         std::abs(ev(static_cast<Eigen::Index>(k))) <= 1e-9 * scale)
    ++k;
  return k;
}

Basis scaled_kernel(const SddMatrix& s, const Basis& kernel) {
  Basis out = kernel;
  for (auto& k : out) {
    for (std::size_t i = 0; i < k.size(); ++i) k[i] *= std::sqrt(s.diag(static_cast<Vertex>(i)));
    const double nk = norm2(k);
    for (auto& v : k) v /= nk;
  }
  return out;
}

void check_range(const Basis& kernel, std::span<const double> b, double tolerance) {
  const double nb = norm2(b);
  for (const auto& k : kernel)
    if (std::abs(dot(k, b)) > tolerance * nb)
      throw Error(ErrorCode::NotInRange, "right-hand side has a component of relative size " +
                                             std::to_string(std::abs(dot(k, b)) / nb) +
                                             " along the kernel");
}

void check_residual(std::size_t n, const LinearOperator& op, std::span<const double> x,
                    std::span<const double> b, double tolerance) {
  std::vector<double> r(n);
  op(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] -= b[i];
  const double rel = norm2(r) / norm2(b);
  if (!(rel <= tolerance))
    throw Error(ErrorCode::NotInRange,
                "relative residual " + std::to_string(rel) + " above tolerance");
}

void check_length(std::size_t n, std::span<const double> b) {
  if (b.size() != n)
    throw Error(ErrorCode::PreconditionViolated,
                "vector length " + std::to_string(b.size()) + " != " + std::to_string(n));
}

}  // namespace

Basis kernel_basis(const SddMatrix& s) {
  Basis out;
  if (!s.is_sdd()) return out;
  const std::size_t n = s.n();
  std::vector<int> sign(n, 0);
  std::vector<Vertex> members, stack;
  for (Vertex root = 0; root < n; ++root) {
    if (sign[root] != 0) continue;
    members.clear();
    bool tight = true, balanced = true;
    sign[root] = 1;
    stack.push_back(root);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      members.push_back(v);
      if (s.abs_offdiagonal_sum(v) < s.diag(v) * (1.0 - SddMatrix::kDominanceSlack)) tight = false;
      for (const auto& e : s.row(v)) {
        // sigma_w = sigma_v sgn(A_vw) with A = D - S.
        const int want = e.value < 0.0 ? sign[v] : -sign[v];
        if (sign[e.col] == 0) {
          sign[e.col] = want;
          stack.push_back(e.col);
        } else if (sign[e.col] != want) {
          balanced = false;
        }
      }
    }
    if (!tight || !balanced) continue;
    std::vector<double> k(n, 0.0);
    const double scale = 1.0 / std::sqrt(static_cast<double>(members.size()));
    for (Vertex v : members) k[v] = sign[v] * scale;
    out.push_back(std::move(k));
  }
  return out;
}

std::vector<double> exact_solve(const SddMatrix& s, std::span<const double> b,
                                const OracleOptions& options) {
  const std::size_t n = s.n();
  check_length(n, b);
  std::vector<double> x(n, 0.0);
  if (norm2(b) == 0.0) return x;

  const Basis kernel = kernel_basis(s);
  check_range(kernel, b, options.range_tolerance);
  const Basis kernel_tilde = scaled_kernel(s, kernel);

  std::vector<double> c(n);
  for (Vertex i = 0; i < n; ++i) c[i] = b[i] / std::sqrt(s.diag(i));
  const LinearOperator op = [&s](std::span<const double> in, std::span<double> out) {
    s.multiply_normalized(in, out);
  };
  auto y = conjugate_gradient(n, op, c, kernel_tilde, options);
  project_out(kernel_tilde, y);
  for (Vertex i = 0; i < n; ++i) x[i] = y[i] / std::sqrt(s.diag(i));

  check_residual(
      n, [&s](std::span<const double> in, std::span<double> out) { s.multiply(in, out); }, x, b,
      options.residual_tolerance);
  return x;
}

std::vector<double> exact_solve_laplacian(const RegularGraph& g, std::span<const double> b,
                                          const OracleOptions& options) {
  const std::size_t n = g.n();
  check_length(n, b);
  std::vector<double> x(n, 0.0);
  if (norm2(b) == 0.0) return x;
  const Basis kernel = component_indicators(g);
  check_range(kernel, b, options.range_tolerance);
  const LinearOperator op = [&g](std::span<const double> in, std::span<double> out) {
    g.multiply_laplacian(in, out);
  };
  x = conjugate_gradient(n, op, b, kernel, options);
  project_out(kernel, x);
  check_residual(n, op, x, b, options.residual_tolerance);
  return x;
}

std::vector<double> truncated_series(const RegularGraph& g, std::span<const double> b,
                                     std::size_t s) {
  const std::size_t n = g.n();
  check_length(n, b);
  const double total = std::accumulate(b.begin(), b.end(), 0.0);
  double scale = 0.0;
  for (double v : b) scale += std::abs(v);
  if (std::abs(total) > 1e-9 * scale)
    throw Error(ErrorCode::NotInRange, "right-hand side is not orthogonal to the ones vector");

  const double d = static_cast<double>(g.degree());
  std::vector<double> term(b.begin(), b.end()), next(n), out(n, 0.0);
  for (std::size_t t = 0; t < s; ++t) {
    for (std::size_t i = 0; i < n; ++i) out[i] += term[i] / d;
    if (t + 1 == s) break;
    g.multiply_adjacency(term, next);
    for (std::size_t i = 0; i < n; ++i) term[i] = next[i] / d;
  }
  return out;
}

Spectrum spectrum(const RegularGraph& g, const OracleOptions& options) {
  Spectrum out;
  const std::size_t n = g.n();
  const Basis kernel = component_indicators(g);
  out.kernel_dim = kernel.size();
  if (n == 0) return out;
  if (n <= options.dense_cutoff) {
    const auto ev = dense_eigenvalues(dense_laplacian(g));
    out.lambda_max = ev(ev.size() - 1);
    out.mu2 = out.kernel_dim < n ? ev(static_cast<Eigen::Index>(out.kernel_dim)) : 0.0;
  } else {
    const auto ext = extreme_eigenvalues(
        n, [&g](std::span<const double> in, std::span<double> o) { g.multiply_laplacian(in, o); },
        kernel, 1e-9, options.seed);
    out.mu2 = ext.min;
    out.lambda_max = ext.max;
    out.dense = false;
  }
  bool loops = false;
  for (Vertex v = 0; v < n && !loops; ++v) loops = g.self_loops(v) > 0;
  if (!loops) {
    out.lambda_tilde = 1.0 - out.mu2 / (2.0 * static_cast<double>(g.degree()));
  } else {
    OracleOptions o = options;
    out.lambda_tilde = spectrum(SddMatrix::laplacian(g), o).lambda_tilde;
  }
  return out;
}

Spectrum spectrum(const SddMatrix& s, const OracleOptions& options) {
  Spectrum out;
  const std::size_t n = s.n();
  if (n == 0) return out;
  const Basis kernel = scaled_kernel(s, kernel_basis(s));
  if (n <= options.dense_cutoff) {
    const auto ev = dense_eigenvalues(dense_of(s, true));
    out.kernel_dim = s.is_sdd() ? kernel.size() : count_zero(ev);
    out.lambda_max = ev(ev.size() - 1);
    out.mu2 = out.kernel_dim < n ? ev(static_cast<Eigen::Index>(out.kernel_dim)) : 0.0;
  } else {
    if (!s.is_sdd())
      throw Error(ErrorCode::PreconditionViolated,
                  "iterative spectrum needs an SDD matrix above the dense cutoff");
    out.kernel_dim = kernel.size();
    const auto ext = extreme_eigenvalues(
        n, [&s](std::span<const double> in, std::span<double> o) { s.multiply_normalized(in, o); },
        kernel, 1e-9, options.seed);
    out.mu2 = ext.min;
    out.lambda_max = ext.max;
    out.dense = false;
  }
  out.lambda_tilde = 1.0 - out.mu2 / 2.0;
  return out;
}

double condition_number(const SddMatrix& s, const OracleOptions& options) {
  const std::size_t n = s.n();
  if (n == 0) throw Error(ErrorCode::PreconditionViolated, "empty matrix");
  if (n <= options.dense_cutoff) {
    const auto ev = dense_eigenvalues(dense_of(s, false));
    const std::size_t kd = s.is_sdd() ? kernel_basis(s).size() : count_zero(ev);
    if (kd >= n) throw Error(ErrorCode::PreconditionViolated, "matrix is zero");
    const double lo = ev(static_cast<Eigen::Index>(kd));
    if (!(lo > 0.0)) throw Error(ErrorCode::PreconditionViolated, "matrix is not PSD");
    return ev(ev.size() - 1) / lo;
  }
  Basis kernel = s.is_sdd() ? kernel_basis(s) : Basis{};
  const auto ext = extreme_eigenvalues(
      n, [&s](std::span<const double> in, std::span<double> o) { s.multiply(in, o); }, kernel,
      1e-9, options.seed);
  if (!(ext.min > 0.0)) throw Error(ErrorCode::PreconditionViolated, "matrix is not PSD");
  return ext.max / ext.min;
}

double condition_number_dense(std::size_t n, std::span<const double> row_major) {
  if (row_major.size() != n * n || n == 0)
    throw Error(ErrorCode::PreconditionViolated, "dense matrix has the wrong size");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_major[i * n + j];
  const auto ev = dense_eigenvalues(m);
  const std::size_t kd = count_zero(ev);
  if (kd >= n) throw Error(ErrorCode::PreconditionViolated, "matrix is zero");
  const double lo = ev(static_cast<Eigen::Index>(kd));
  if (!(lo > 0.0)) throw Error(ErrorCode::PreconditionViolated, "matrix is not PSD");
  return ev(ev.size() - 1) / lo;
}

ExtremeEigenvalues extreme_eigenvalues(std::size_t n, const LinearOperator& op,
                                       std::span<const std::vector<double>> deflate,
                                       double tolerance, std::uint64_t seed,
                                       std::size_t max_steps) {
  const Basis kernel(deflate.begin(), deflate.end());
  ExtremeEigenvalues out;
  if (n <= kernel.size()) return out;
  const std::size_t dim = n - kernel.size();
  const std::size_t limit = std::min(dim, max_steps ? max_steps : std::size_t{1500});

  CounterRng rng(seed, StreamRole::Construction, 0x1a7c205);
  std::vector<double> q(n);
  for (auto& v : q) v = rng.uniform() - 0.5;
  project_out(kernel, q);
  {
    const double nq = norm2(q);
    for (auto& v : q) v /= nq;
  }

  Basis basis;
  std::vector<double> alpha, beta;
  std::vector<double> w(n);
  std::size_t next_check = 8;
  for (std::size_t j = 0; j < limit; ++j) {
    basis.push_back(q);
    op(q, w);
    project_out(kernel, w);
    const double a = dot(q, w);
    alpha.push_back(a);
    axpy(-a, q, w);
    if (j > 0) axpy(-beta.back(), basis[j - 1], w);
    for (int pass = 0; pass < 2; ++pass) {
      project_out(kernel, w);
      for (const auto& v : basis) axpy(-dot(v, w), v, w);
    }
    const double b = norm2(w);

    const std::size_t m = j + 1;
    const bool exhausted = m == dim || b <= 1e-14 * std::max(1.0, std::abs(a));
    if (m >= next_check || exhausted || m == limit) {
      next_check = std::max(m + 8, m + m / 4);
      Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(m));
      Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
      for (std::size_t i = 0; i + 1 < m; ++i) sub(static_cast<Eigen::Index>(i)) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const auto& ev = tri.eigenvalues();
      const auto& vec = tri.eigenvectors();
      const auto last = static_cast<Eigen::Index>(m - 1);
      const double lo = ev(0), hi = ev(last);
      const double scale = std::max(std::abs(lo), std::abs(hi));
      const double res_lo = std::abs(b * vec(last, 0));
      const double res_hi = std::abs(b * vec(last, last));
      out.min = lo;
      out.max = hi;
      out.iterations = m;
      if (exhausted || (res_lo <= tolerance * scale && res_hi <= tolerance * scale)) return out;
    }
    beta.push_back(b);
    for (std::size_t i = 0; i < n; ++i) q[i] = w[i] / b;
  }
  throw Error(ErrorCode::ConvergenceFailure,
              "Lanczos did not converge in " + std::to_string(limit) + " steps");
}

double spectral_norm(std::size_t n, const LinearOperator& op, double tolerance,
                     std::uint64_t seed) {
  const auto ext = extreme_eigenvalues(n, op, {}, tolerance, seed);
  return std::max(std::abs(ext.min), std::abs(ext.max));
}

}  // namespace localsolve
