#include "real_lars_reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ctrex_test {

namespace {

// Plain Gaussian elimination with partial pivoting; sizes here are tiny.
std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      throw std::runtime_error("reference LARS: singular system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

std::vector<std::size_t> real_lars_selection_order(
    const std::vector<std::vector<double>>& columns,
    const std::vector<double>& response, std::size_t max_steps) {
  const std::size_t p = columns.size();
  const std::size_t n = response.size();
  std::vector<double> residual = response;
  std::vector<std::size_t> active;
  std::vector<bool> in_active(p, false);
  const std::size_t limit = std::min({max_steps, p, n});

  while (active.size() < limit) {
    std::vector<double> corr(p);
    for (std::size_t j = 0; j < p; ++j) corr[j] = dot(columns[j], residual);

    std::size_t jstar = p;
    double best = -1.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (in_active[j]) continue;
      if (std::abs(corr[j]) > best) {
        best = std::abs(corr[j]);
        jstar = j;
      }
    }
    if (best < 1e-12) break;  // nothing left to explain
    active.push_back(jstar);
    in_active[jstar] = true;

    const std::size_t m = active.size();
    std::vector<double> signs(m);
    double cmax = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      signs[a] = corr[active[a]] >= 0.0 ? 1.0 : -1.0;
      cmax = std::max(cmax, std::abs(corr[active[a]]));
    }

    std::vector<std::vector<double>> gram(m, std::vector<double>(m));
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        gram[a][b] =
            signs[a] * signs[b] * dot(columns[active[a]], columns[active[b]]);
      }
    }
    const std::vector<double> z = solve_dense(gram, std::vector<double>(m, 1.0));
    double sum = 0.0;
    for (double value : z) sum += value;
    const double a_norm = 1.0 / std::sqrt(sum);

    std::vector<double> u(n, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      const double w = a_norm * z[a] * signs[a];
      for (std::size_t i = 0; i < n; ++i) u[i] += w * columns[active[a]][i];
    }

    // Classical LARS catch-up step.
    double gamma = cmax / a_norm;
    for (std::size_t j = 0; j < p; ++j) {
      if (in_active[j]) continue;
      const double aj = dot(columns[j], u);
      const double cand1 = (cmax - corr[j]) / (a_norm - aj);
      const double cand2 = (cmax + corr[j]) / (a_norm + aj);
      if (cand1 > 0.0 && cand1 < gamma) gamma = cand1;
      if (cand2 > 0.0 && cand2 < gamma) gamma = cand2;
    }
    for (std::size_t i = 0; i < n; ++i) residual[i] -= gamma * u[i];
  }
  return active;
}

}  // namespace ctrex_test
