// SPDX-License-Identifier: Apache-2.0
//
// diffbeam: differential beamformer design for planar arrays of first-order elements
// Copyright (C) 2026 The diffbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "diffbeam/solver.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <thread>

#include "diffbeam/errors.hpp"

namespace diffbeam {

FrequencyGrid::FrequencyGrid(double f_min, double f_max, std::size_t count)
    : f_min_(f_min), f_max_(f_max), count_(count) {
  if (!std::isfinite(f_min) || !std::isfinite(f_max) || !(f_min > 0.0) || f_max < f_min) {
    throw InvalidInput("frequency grid needs 0 < f_min <= f_max");
  }
  if (count == 0) {
    throw InvalidInput("frequency grid needs at least one point");
  }
  if (count == 1 && f_min != f_max) {
    throw InvalidInput("a single-point frequency grid needs f_min == f_max");
  }
}

double FrequencyGrid::at(std::size_t k) const {
  if (k >= count_) {
    throw OutOfRange("frequency grid index out of range");
  }
  if (count_ == 1) {
    return f_min_;
  }
  if (k + 1 == count_) {
    return f_max_;
  }
  const double step = (f_max_ - f_min_) / static_cast<double>(count_ - 1);
  return f_min_ + static_cast<double>(k) * step;
}

std::vector<double> FrequencyGrid::frequencies() const {
  std::vector<double> out(count_);
  for (std::size_t k = 0; k < count_; ++k) {
    out[k] = at(k);
  }
  return out;
}

std::optional<std::size_t> FrequencyGrid::index_of(double f) const {
  const double tol = 1e-9 * std::max(1.0, std::abs(f));
  for (std::size_t k = 0; k < count_; ++k) {
    if (std::abs(at(k) - f) <= tol) {
      return k;
    }
  }
  return std::nullopt;
}

const Eigen::VectorXcd& BeamformerFilter::weights_at(double f_hz) const {
  const auto k = grid.index_of(f_hz);
  if (!k) {
    std::ostringstream msg;
    msg << "frequency " << f_hz << " Hz is not on the filter grid [" << grid.f_min() << ", "
        << grid.f_max() << "] Hz with " << grid.count() << " points";
    throw OutOfRange(msg.str());
  }
  return weights.at(*k);
}

Eigen::VectorXcd min_norm_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& rhs) {
  if (A.rows() == 0 || A.cols() == 0) {
    throw InvalidInput("min-norm solve needs a non-empty matrix");
  }
  if (A.rows() > A.cols()) {
    throw InvalidInput("min-norm solve needs a wide system (rows <= columns)");
  }
  if (rhs.size() != A.rows()) {
    throw InvalidInput("right-hand side length does not match the matrix rows");
  }

  Eigen::VectorXd row_norm = A.rowwise().norm();
  if ((row_norm.array() == 0.0).any()) {
    throw RankDeficientSystem("modal system has an all-zero row", 0.0);
  }
  const Eigen::MatrixXcd scaled = row_norm.cwiseInverse().asDiagonal() * A;
  const Eigen::VectorXcd scaled_rhs = rhs.cwiseQuotient(row_norm.cast<std::complex<double>>());

  const Eigen::MatrixXcd gram = scaled * scaled.adjoint();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double condition = hi > 0.0 ? lo / hi : 0.0;
  if (!(condition >= kRankTolerance)) {
    std::ostringstream msg;
    msg << "modal system is rank deficient (eigenvalue ratio " << condition << " < "
        << kRankTolerance << ")";
    throw RankDeficientSystem(msg.str(), condition);
  }

  const Eigen::LLT<Eigen::MatrixXcd> llt(gram);
  const bool use_llt = llt.info() == Eigen::Success;
  const auto solve_gram = [&](const Eigen::VectorXcd& r) -> Eigen::VectorXcd {
    return use_llt ? Eigen::VectorXcd(llt.solve(r)) : Eigen::VectorXcd(gram.fullPivLu().solve(r));
  };
  // One refinement pass recovers the accuracy lost to squaring the condition number.
  Eigen::VectorXcd h = scaled.adjoint() * solve_gram(scaled_rhs);
  h += scaled.adjoint() * solve_gram(scaled_rhs - scaled * h);
  return h;
}

Eigen::VectorXcd design_weights(const ArrayGeometry& geom, const PhysicalConstants& constants,
                                const SteeredTarget& target, double omega, ElementModel model) {
  const int order = target.coefficients.order();
  if (geom.size() < static_cast<std::size_t>(2 * order + 1)) {
    throw InvalidInput("an order-" + std::to_string(order) + " design needs at least " +
                       std::to_string(2 * order + 1) + " elements, got " +
                       std::to_string(geom.size()));
  }
  const ModalSystem sys = build_modal_system(geom, constants, omega, target, model);
  return min_norm_solve(sys.matrix.conjugate(), sys.rhs.conjugate());
}

BeamformerFilter design_filter(const ArrayGeometry& geom, const PhysicalConstants& constants,
                               const SteeredTarget& target, const FrequencyGrid& grid,
                               ElementModel model, std::string pattern_id, unsigned threads) {
  const int order = target.coefficients.order();
  if (geom.size() < static_cast<std::size_t>(2 * order + 1)) {
    throw InvalidInput("an order-" + std::to_string(order) + " design needs at least " +
                       std::to_string(2 * order + 1) + " elements, got " +
                       std::to_string(geom.size()));
  }
  constants.check();

  const std::size_t count = grid.count();
  std::vector<Eigen::VectorXcd> weights(count);
  std::vector<std::exception_ptr> errors(count);

  auto solve_one = [&](std::size_t k) {
    const double f = grid.at(k);
    try {
      weights[k] = design_weights(geom, constants, target, 2.0 * std::numbers::pi * f, model);
    } catch (const RankDeficientSystem& e) {
      std::ostringstream msg;
      msg << "rank-deficient modal system at " << f << " Hz: " << e.what();
      errors[k] = std::make_exception_ptr(RankDeficientSystem(msg.str(), e.condition(), f));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) {
      solve_one(k);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++) {
          solve_one(k);
        }
      });
    }
  }

  // Report the lowest failing frequency regardless of scheduling.
  for (const auto& err : errors) {
    if (err) {
      std::rethrow_exception(err);
    }
  }

  DesignMetadata meta{order, target.theta_s, std::move(pattern_id), geometry_hash(geom), model};
  return BeamformerFilter{grid, std::move(weights), std::move(meta)};
}

}  // namespace diffbeam
