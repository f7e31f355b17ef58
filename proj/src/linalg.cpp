#include "framecert/linalg.hpp"

#include <cmath>
#include <random>

namespace framecert {

double operator_norm(const MatrixNM<double>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const MatrixNM<double> mt = m.transpose();
  const std::size_t n = m.cols();

  double frob = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) frob += m(i, j) * m(i, j);
  if (frob == 0) return 0.0;

  double best = 0;
  for (std::uint64_t restart = 0; restart < 3; ++restart) {
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + restart);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec<double> q(n);
    for (auto& x : q) x = gauss(rng);
    q = normalized(q);
    double lambda = 0;
    for (int iter = 0; iter < 5000; ++iter) {
      Vec<double> w = mt.apply(m.apply(q));  // (m^T m) q
      const double wn = norm(w);
      if (wn == 0) break;
      const double next = dot(q, w);  // Rayleigh quotient for m^T m
      q = scale(w, 1.0 / wn);
      if (iter > 2 && std::abs(next - lambda) <= 1e-13 * std::max(1.0, std::abs(next))) {
        lambda = next;
        break;
      }
      lambda = next;
    }
    best = std::max(best, lambda);
  }
  return std::sqrt(std::max(0.0, best));
}

SymEig sym_eigen(const MatrixNM<double>& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("sym_eigen: matrix must be square");
  MatrixNM<double> s = a;
  MatrixNM<double> v = MatrixNM<double>::identity(n);

  for (int sweep = 0; sweep < 120; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    double diag = 0;
    for (std::size_t p = 0; p < n; ++p) diag += s(p, p) * s(p, p);
    if (off <= 1e-30 * std::max(1.0, diag)) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return s(i, i) < s(j, j); });
  SymEig out;
  out.values.resize(n);
  out.vectors = MatrixNM<double>(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = s(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

double sym_operator_norm(const MatrixNM<double>& a) {
  const SymEig eig = sym_eigen(a);
  double best = 0;
  for (double v : eig.values) best = std::max(best, std::abs(v));
  return best;
}

double smallest_singular_value(const MatrixNM<double>& a) {
  if (a.rows() == 0) return 0.0;
  // sigma_N^2 = smallest eigenvalue of a a^T (N x N)
  const MatrixNM<double> g = a * a.transpose();
  const SymEig eig = sym_eigen(g);
  return std::sqrt(std::max(0.0, eig.values.front()));
}

}  // namespace framecert
