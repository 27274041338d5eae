#include "mmi/eigenbasis.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mmi {

PhaseVector PhaseVector::parse(const std::string& text, int n) {
  if (n < 1) throw std::invalid_argument("PhaseVector: need n >= 1");
  if (text == "0" || text.empty()) return zeros(n);
  std::vector<double> radians;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t pos = 0;
      radians.push_back(std::stod(field, &pos));
      while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
        ++pos;
      if (pos != field.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw std::invalid_argument("PhaseVector: bad entry '" + field + "'");
    }
  }
  if (static_cast<int>(radians.size()) != n)
    throw std::invalid_argument("PhaseVector: expected " + std::to_string(n) +
                                " phases, got " + std::to_string(radians.size()));
  return PhaseVector{std::move(radians)};
}

ComplexMatrix PhaseVector::diagonal() const {
  ComplexMatrix d(modes(), modes());
  for (int j = 0; j < modes(); ++j)
    d(j, j) = Complex(std::cos(radians[static_cast<std::size_t>(j)]),
                      std::sin(radians[static_cast<std::size_t>(j)]));
  return d;
}

ComplexMatrix permutation_matrix(const ModePermutation& p) {
  ComplexMatrix m(p.modes(), p.modes());
  for (int j = 0; j < p.modes(); ++j) m(j, p.apply(j)) = 1.0;
  return m;
}

std::vector<EigenPhase> canonical_column_phases(const ModePermutation& p) {
  std::vector<EigenPhase> phases;
  phases.reserve(static_cast<std::size_t>(p.modes()));
  for (const auto& cycle : p.cycles()) {
    const auto m = static_cast<std::int64_t>(cycle.size());
    for (std::int64_t k = 0; k < m; ++k)
      phases.push_back(EigenPhase::root_of_unity(k, m));
  }
  return phases;
}

EigenbasisRealization canonical_eigenbasis(const ModePermutation& p) {
  const int n = p.modes();
  ComplexMatrix a(n, n);
  int col = 0;
  for (const auto& cycle : p.cycles()) {
    const auto m = static_cast<int>(cycle.size());
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    for (int k = 0; k < m; ++k, ++col) {
      for (int t = 0; t < m; ++t) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) *
                             static_cast<double>(t) / static_cast<double>(m);
        a(cycle[static_cast<std::size_t>(t)], col) =
            Complex(amp * std::cos(angle), amp * std::sin(angle));
      }
    }
  }
  return EigenbasisRealization{UnitaryMatrix(std::move(a)),
                               canonical_column_phases(p), "canonical"};
}

EigenbasisRealization randomized_eigenbasis(const ModePermutation& p, std::uint64_t seed) {
  const EigenbasisRealization canon = canonical_eigenbasis(p);
  const int n = p.modes();

  // Degenerate blocks: columns sharing an exact eigenvalue, across cycles.
  std::map<EigenPhase, std::vector<int>> blocks;
  for (int c = 0; c < n; ++c)
    blocks[canon.column_phases[static_cast<std::size_t>(c)]].push_back(c);

  ComplexMatrix a = canon.basis.mat();
  Rng rng(seed);
  for (const auto& [phase, cols] : blocks) {
    const int q = static_cast<int>(cols.size());
    if (q == 1) continue;
    const UnitaryMatrix mix = haar_unitary(q, rng);
    // a[:, cols] <- a_canon[:, cols] * mix
    for (int j = 0; j < n; ++j) {
      std::vector<Complex> row(static_cast<std::size_t>(q));
      for (int b = 0; b < q; ++b)
        row[static_cast<std::size_t>(b)] = canon.basis(j, cols[static_cast<std::size_t>(b)]);
      for (int b = 0; b < q; ++b) {
        Complex v(0.0, 0.0);
        for (int k = 0; k < q; ++k) v += row[static_cast<std::size_t>(k)] * mix(k, b);
        a(j, cols[static_cast<std::size_t>(b)]) = v;
      }
    }
  }

  std::ostringstream label;
  label << "randomized:seed=" << seed;
  return EigenbasisRealization{UnitaryMatrix(std::move(a)), canon.column_phases,
                               label.str()};
}

double eigenbasis_residual(const ModePermutation& p, const EigenbasisRealization& e) {
  if (e.basis.dim() != p.modes())
    throw std::invalid_argument("eigenbasis_residual: dimension mismatch");
  const int n = p.modes();
  double worst = 0.0;
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) {
      // (P A)_{j,c} = A_{pi(j),c}; (A D)_{j,c} = A_{j,c} lambda_c.
      const Complex lhs = e.basis(p.apply(j), c);
      const Complex rhs = e.basis(j, c) * e.column_phases[static_cast<std::size_t>(c)].value();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  return worst;
}

UnitaryMatrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("haar_unitary: need n >= 1");
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_normal();

  // Modified Gram–Schmidt, two passes per column for orthogonality headroom.
  ComplexMatrix q(n, n);
  for (int col = 0; col < n; ++col) {
    std::vector<Complex> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = g(i, col);
    for (int pass = 0; pass < 2; ++pass) {
      for (int prev = 0; prev < col; ++prev) {
        Complex overlap(0.0, 0.0);
        for (int i = 0; i < n; ++i)
          overlap += std::conj(q(i, prev)) * v[static_cast<std::size_t>(i)];
        for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] -= overlap * q(i, prev);
      }
    }
    double norm_sq = 0.0;
    for (const Complex& z : v) norm_sq += std::norm(z);
    const double norm = std::sqrt(norm_sq);
    if (norm < 1e-12)
      throw std::runtime_error("haar_unitary: degenerate Gaussian draw");
    // Positive-real normalization of the implicit R diagonal keeps the
    // distribution exactly Haar.
    for (int i = 0; i < n; ++i) q(i, col) = v[static_cast<std::size_t>(i)] / norm;
  }
  return UnitaryMatrix(std::move(q));
}

}  // namespace mmi
