#include "spectra/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spectra/linalg.hpp"

namespace spectra {
namespace {

bool mergeable(double a, double b) {
  return std::abs(b - a) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size())
    throw std::invalid_argument("DiscreteMeasure: atoms/weights length mismatch");
  for (double w : weights)
    if (!(w >= 0.0)) throw std::invalid_argument("DiscreteMeasure: negative weight");
  for (double x : atoms)
    if (!std::isfinite(x)) throw std::invalid_argument("DiscreteMeasure: non-finite atom");

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return atoms[i] < atoms[j]; });

  atoms_.reserve(atoms.size());
  weights_.reserve(atoms.size());
  for (std::size_t k : order) {
    if (!atoms_.empty() && mergeable(atoms_.back(), atoms[k])) {
      weights_.back() += weights[k];
    } else {
      atoms_.push_back(atoms[k]);
      weights_.push_back(weights[k]);
    }
  }
  total_mass_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

DiscreteMeasure esd(std::span<const double> eigenvalues) {
  if (eigenvalues.empty()) throw std::invalid_argument("esd: empty spectrum");
  const double w = 1.0 / double(eigenvalues.size());
  std::vector<double> atoms(eigenvalues.begin(), eigenvalues.end());
  std::vector<double> weights(eigenvalues.size(), w);
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

DiscreteMeasure esd(const Eigen::VectorXd& eigenvalues) {
  return esd(std::span<const double>(eigenvalues.data(), std::size_t(eigenvalues.size())));
}

DiscreteMeasure spectral_measure(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& u) {
  if (a.rows() != a.cols()) throw std::invalid_argument("spectral_measure: matrix not square");
  if (u.size() != a.rows())
    throw std::invalid_argument("spectral_measure: vector dimension mismatch");
  const HermitianEigen eig = eigensolve_hermitian(a, /*with_vectors=*/true);
  std::vector<double> atoms(std::size_t(a.rows()));
  std::vector<double> weights(std::size_t(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    atoms[std::size_t(i)] = eig.values(i);
    weights[std::size_t(i)] = std::norm(eig.vectors.col(i).dot(u));
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

std::complex<double> stieltjes_transform(const DiscreteMeasure& m, const HalfPlanePoint& z) {
  const std::complex<double> zz = z.value();
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < m.size(); ++i) acc += m.weights()[i] / (m.atoms()[i] - zz);
  return acc;
}

std::vector<DensityProfile> invert_to_density(
    const std::function<std::complex<double>(const HalfPlanePoint&)>& sampler,
    std::span<const double> energy_grid, std::span<const double> delta_ladder) {
  if (delta_ladder.empty()) throw std::invalid_argument("invert_to_density: empty delta ladder");
  for (std::size_t i = 0; i < delta_ladder.size(); ++i) {
    if (!(delta_ladder[i] > 0.0))
      throw std::invalid_argument("invert_to_density: deltas must be positive");
    if (i > 0 && !(delta_ladder[i] < delta_ladder[i - 1]))
      throw std::invalid_argument("invert_to_density: delta ladder must be strictly decreasing");
  }
  std::vector<DensityProfile> out;
  out.reserve(energy_grid.size());
  for (double e : energy_grid) {
    DensityProfile row;
    row.energy = e;
    row.density_per_delta.reserve(delta_ladder.size());
    for (double delta : delta_ladder) {
      const std::complex<double> s = sampler(HalfPlanePoint(e, delta));
      if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw std::runtime_error("invert_to_density: sampler returned non-finite value at E=" +
                                 std::to_string(e) + ", delta=" + std::to_string(delta));
      row.density_per_delta.push_back(s.imag() / M_PI);
    }
    out.push_back(std::move(row));
  }
  return out;
}

double wasserstein2(const DiscreteMeasure& m1, const DiscreteMeasure& m2) {
  if (!m1.is_probability() || !m2.is_probability())
    throw std::invalid_argument("wasserstein2: both measures must have total mass 1");
  if (m1.size() == 0 || m2.size() == 0)
    throw std::invalid_argument("wasserstein2: empty measure");

  // Quantile coupling: walk both sorted atom lists, pairing mass greedily.
  std::size_t i = 0, j = 0;
  double rem1 = m1.weights()[0], rem2 = m2.weights()[0];
  double acc = 0.0;
  while (i < m1.size() && j < m2.size()) {
    const double mass = std::min(rem1, rem2);
    const double diff = m1.atoms()[i] - m2.atoms()[j];
    acc += mass * diff * diff;
    rem1 -= mass;
    rem2 -= mass;
    if (rem1 <= 0.0) {
      ++i;
      if (i < m1.size()) rem1 = m1.weights()[i];
    }
    if (rem2 <= 0.0) {
      ++j;
      if (j < m2.size()) rem2 = m2.weights()[j];
    }
  }
  return std::sqrt(std::max(acc, 0.0));
}

}  // namespace spectra
