#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "seedbank/exact.hpp"
#include "seedbank/model.hpp"

namespace seedbank {

// Reference route for the absorption expectations: one dense linear system
// over every state (i, j) with 1 <= i + j <= n, solved by Gaussian
// elimination with partial pivoting.  Deliberately ignores the level
// structure the fast solver exploits; intended for small n.
inline std::map<std::pair<int, int>, double> dense_expectation_values(int n,
                                                                      const ModelParams& params,
                                                                      Functional functional) {
  validate(params);
  if (n < 1 || n > 20) throw std::invalid_argument("dense solve supports 1 <= n <= 20");

  std::vector<std::pair<int, int>> states;
  std::map<std::pair<int, int>, int> index;
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i <= k; ++i) {
      index[{i, k - i}] = int(states.size());
      states.emplace_back(i, k - i);
    }

  const int dim = int(states.size());
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim + 1, 0.0));
  for (int row = 0; row < dim; ++row) {
    const auto [i, j] = states[std::size_t(row)];
    if (i == 1 && j == 0) {
      a[row][row] = 1.0;  // absorbing
      continue;
    }
    double reward = 0.0;
    switch (functional) {
      case Functional::PlantTime: reward = double(i); break;
      case Functional::SeedTime: reward = double(j); break;
      case Functional::ElapsedTime: reward = 1.0; break;
    }
    double lambda = 0.0;
    auto couple = [&](int ni, int nj, double rate) {
      if (rate <= 0.0) return;
      lambda += rate;
      a[row][index.at({ni, nj})] -= rate;
    };
    couple(i - 1, j, pair_count(i));
    couple(i - 1, j + 1, params.c1 * i);
    couple(i + 1, j - 1, params.c2 * j);
    a[row][row] += lambda;
    a[row][dim] = reward;
  }

  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int row = col + 1; row < dim; ++row)
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) throw std::runtime_error("singular dense system");
    for (int row = 0; row < dim; ++row) {
      if (row == col || a[row][col] == 0.0) continue;
      const double factor = a[row][col] / a[col][col];
      for (int c = col; c <= dim; ++c) a[row][c] -= factor * a[col][c];
    }
  }

  std::map<std::pair<int, int>, double> values;
  for (int row = 0; row < dim; ++row)
    values[states[std::size_t(row)]] = a[row][dim] / a[row][row];
  return values;
}

}  // namespace seedbank
