#include "mmi/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mmi/tolerances.hpp"

namespace mmi {

UnitaryMatrix fourier_unitary(int n) {
  if (n < 1) throw std::invalid_argument("fourier_unitary: need n >= 1");
  ComplexMatrix u(n, n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) *
                           static_cast<double>(k) / static_cast<double>(n);
      u(j, k) = Complex(amp * std::cos(angle), amp * std::sin(angle));
    }
  return UnitaryMatrix(std::move(u));
}

ModePermutation fourier_cyclic_shift(int n, int chi) {
  if (n < 1 || chi < 1 || n % chi != 0)
    throw std::invalid_argument("fourier_cyclic_shift: chi must divide n");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) images[static_cast<std::size_t>(j)] = (j + chi) % n;
  return ModePermutation(std::move(images));
}

namespace {

UnitaryMatrix tensor_power_2x2(const Complex k00, const Complex k01, const Complex k10,
                               const Complex k11, int d, const char* who) {
  if (d < 1) throw std::invalid_argument(std::string(who) + ": need d >= 1");
  if (d > 5) throw std::invalid_argument(std::string(who) + ": d > 5 exceeds desk scale");
  const int n = 1 << d;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix u(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      // Most significant tensor factor first: bit d-1 of the index addresses
      // the first 2x2 kernel.
      Complex v(1.0, 0.0);
      for (int bit = d - 1; bit >= 0; --bit) {
        const int jb = (j >> bit) & 1;
        const int kb = (k >> bit) & 1;
        v *= jb == 0 ? (kb == 0 ? k00 : k01) : (kb == 0 ? k10 : k11);
      }
      u(j, k) = amp * v;
    }
  return UnitaryMatrix(std::move(u));
}

}  // namespace

UnitaryMatrix sylvester_unitary(int d) {
  return tensor_power_2x2(Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(-1, 0), d,
                          "sylvester_unitary");
}

UnitaryMatrix hypercube_unitary(int d) {
  return tensor_power_2x2(Complex(1, 0), Complex(0, 1), Complex(0, 1), Complex(1, 0), d,
                          "hypercube_unitary");
}

int rademacher(int j, int p, int n) {
  if (n < 2 || p < 2 || p > n || p % 2 != 0 || n % p != 0)
    throw std::invalid_argument("rademacher: p must be an even divisor of n");
  if (j < 1 || j > n) throw std::invalid_argument("rademacher: mode out of range");
  const long long floor_term =
      static_cast<long long>(p) * static_cast<long long>(j - 1) / static_cast<long long>(n);
  return floor_term % 2 == 0 ? 1 : -1;
}

int walsh(int j, const std::vector<int>& ps, int n) {
  std::set<int> seen;
  int product = 1;
  for (const int p : ps) {
    if (!seen.insert(p).second)
      throw std::invalid_argument("walsh: p entries must be distinct");
    product *= rademacher(j, p, n);
  }
  return product;
}

ModePermutation hypercube_permutation(const std::vector<int>& ps, int n) {
  if (ps.empty())
    throw std::invalid_argument("hypercube_permutation: need at least one p");
  std::set<int> seen;
  for (const int p : ps)
    if (!seen.insert(p).second)
      throw std::invalid_argument("hypercube_permutation: p entries must be distinct");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    int image = j;
    for (const int p : ps) image += rademacher(j, p, n) * (n / p);
    if (image < 1 || image > n)
      throw std::invalid_argument("hypercube_permutation: image out of range (invalid p set)");
    images[static_cast<std::size_t>(j - 1)] = image - 1;
  }
  return ModePermutation(std::move(images));
}

PhaseVector hypercube_local_phases(int d) {
  if (d < 1) throw std::invalid_argument("hypercube_local_phases: need d >= 1");
  const int n = 1 << d;
  PhaseVector theta = PhaseVector::zeros(n);
  for (int j = 1; j <= n; ++j) {
    double sum = 0.0;
    for (int l = 1; l <= d; ++l) sum += 1.0 - static_cast<double>(rademacher(j, 1 << l, n));
    theta.radians[static_cast<std::size_t>(j - 1)] = std::numbers::pi / 4.0 * sum;
  }
  return theta;
}

namespace {

// Cyclic Jacobi eigensolver for a real symmetric matrix; returns eigenvalues
// and an orthogonal matrix of eigenvectors (columns). Plenty for n <= 32.
void jacobi_eigensolve(std::vector<double>& a, int n, std::vector<double>& eigenvalues,
                       std::vector<double>& vectors) {
  const auto at = [&](int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  };
  vectors.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  const auto vec = [&](int i, int j) -> double& {
    return vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(j)];
  };
  for (int i = 0; i < n; ++i) vec(i, i) = 1.0;

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(at(i, j)));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(at(i, j)));
    if (off <= 1e-15 * scale) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) <= 1e-18 * scale) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int i = 0; i < n; ++i) {
          const double aip = at(i, p);
          const double aiq = at(i, q);
          at(i, p) = c * aip - s * aiq;
          at(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = at(p, i);
          const double aqi = at(q, i);
          at(p, i) = c * api - s * aqi;
          at(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = vec(i, p);
          const double viq = vec(i, q);
          vec(i, p) = c * vip - s * viq;
          vec(i, q) = s * vip + c * viq;
        }
      }
  }

  eigenvalues.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eigenvalues[static_cast<std::size_t>(i)] = at(i, i);
}

}  // namespace

UnitaryMatrix jx_unitary(int n) {
  if (n < 2) throw std::invalid_argument("jx_unitary: need n >= 2");
  if (n > 32) throw std::invalid_argument("jx_unitary: n > 32 exceeds desk scale");

  // The spin-(n-1)/2 x-angular-momentum matrix (hbar = 1), real symmetric
  // tridiagonal: [Jx]_{j,j+1} = [Jx]_{j+1,j} = (1/2) sqrt(j(n-j)), 1-based j.
  std::vector<double> jx(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int j = 1; j < n; ++j) {
    const double v = 0.5 * std::sqrt(static_cast<double>(j) * static_cast<double>(n - j));
    jx[static_cast<std::size_t>(j - 1) * static_cast<std::size_t>(n) +
       static_cast<std::size_t>(j)] = v;
    jx[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
       static_cast<std::size_t>(j - 1)] = v;
  }

  std::vector<double> eigenvalues;
  std::vector<double> vectors;
  jacobi_eigensolve(jx, n, eigenvalues, vectors);
  const auto vec = [&](int i, int j) -> double {
    return vectors[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(j)];
  };

  // U = V diag(e^{i pi mu/2}) V^T — exactly unitary up to the orthogonality
  // of the Jacobi eigenvectors.
  ComplexMatrix u(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex v(0.0, 0.0);
      for (int k = 0; k < n; ++k) {
        const double angle = std::numbers::pi / 2.0 * eigenvalues[static_cast<std::size_t>(k)];
        v += vec(i, k) * vec(j, k) * Complex(std::cos(angle), std::sin(angle));
      }
      u(i, j) = v;
    }
  return UnitaryMatrix(std::move(u));
}

ModePermutation mirror_permutation(int n) {
  if (n < 2) throw std::invalid_argument("mirror_permutation: need n >= 2");
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) images[static_cast<std::size_t>(j)] = n - 1 - j;
  return ModePermutation(std::move(images));
}

PhaseVector jx_local_phases(int n) {
  PhaseVector theta = PhaseVector::zeros(n);
  for (int j = 1; j <= n; ++j)
    theta.radians[static_cast<std::size_t>(j - 1)] =
        std::numbers::pi * static_cast<double>(j) / 2.0;
  return theta;
}

UnitaryMatrix compose(const PhaseVector& theta, const EigenbasisRealization& a,
                      const PhaseVector& sigma) {
  const int n = a.basis.dim();
  if (theta.modes() != n || sigma.modes() != n)
    throw std::invalid_argument("compose: phase vector dimension mismatch");
  ComplexMatrix u(n, n);
  for (int j = 0; j < n; ++j) {
    const Complex tj(std::cos(theta.radians[static_cast<std::size_t>(j)]),
                     std::sin(theta.radians[static_cast<std::size_t>(j)]));
    for (int k = 0; k < n; ++k) {
      const Complex sk(std::cos(sigma.radians[static_cast<std::size_t>(k)]),
                       std::sin(sigma.radians[static_cast<std::size_t>(k)]));
      u(j, k) = tj * a.basis(j, k) * sk;
    }
  }
  return UnitaryMatrix(std::move(u));
}

namespace {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;
  const std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

std::optional<SymmetricPhaseWitness> verify_symmetric_phase_relation(
    const UnitaryMatrix& u, const ModePermutation& p) {
  const int n = u.dim();
  if (p.modes() != n)
    throw std::invalid_argument("verify_symmetric_phase_relation: dimension mismatch");

  // Necessary condition, checked first: the relation forces |U_{pi(j),k}| =
  // |U_{j,k}| everywhere. This also makes the support graph well defined.
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      if (std::abs(std::abs(u(p.apply(j), k)) - std::abs(u(j, k))) > 1e-6)
        return std::nullopt;

  // Factor the measured ratios rho_{j,k} = U_{pi(j),k}/U_{j,k} = z_j lambda_k
  // over the bipartite support graph (modes ~ columns where |U_{j,k}| is
  // comfortably nonzero). Unitarity guarantees the graph covers every node.
  constexpr double kEdgeThreshold = 1e-4;
  const auto has_edge = [&](int j, int k) { return std::abs(u(j, k)) > kEdgeThreshold; };
  const auto rho = [&](int j, int k) { return u(p.apply(j), k) / u(j, k); };

  std::vector<Complex> lambda_hat(static_cast<std::size_t>(n));
  std::vector<Complex> z_hat(static_cast<std::size_t>(n));
  std::vector<int> comp_of_col(static_cast<std::size_t>(n), -1);
  std::vector<int> comp_of_mode(static_cast<std::size_t>(n), -1);
  int components = 0;

  for (int root = 0; root < n; ++root) {
    if (comp_of_col[static_cast<std::size_t>(root)] != -1) continue;
    const int comp = components++;
    comp_of_col[static_cast<std::size_t>(root)] = comp;
    lambda_hat[static_cast<std::size_t>(root)] = Complex(1.0, 0.0);
    std::deque<std::pair<bool, int>> queue;  // (is_column, index)
    queue.emplace_back(true, root);
    while (!queue.empty()) {
      const auto [is_column, idx] = queue.front();
      queue.pop_front();
      if (is_column) {
        for (int j = 0; j < n; ++j)
          if (has_edge(j, idx) && comp_of_mode[static_cast<std::size_t>(j)] == -1) {
            comp_of_mode[static_cast<std::size_t>(j)] = comp;
            z_hat[static_cast<std::size_t>(j)] =
                rho(j, idx) / lambda_hat[static_cast<std::size_t>(idx)];
            queue.emplace_back(false, j);
          }
      } else {
        for (int k = 0; k < n; ++k)
          if (has_edge(idx, k) && comp_of_col[static_cast<std::size_t>(k)] == -1) {
            comp_of_col[static_cast<std::size_t>(k)] = comp;
            lambda_hat[static_cast<std::size_t>(k)] =
                rho(idx, k) / z_hat[static_cast<std::size_t>(idx)];
            queue.emplace_back(true, k);
          }
      }
    }
  }
  for (int j = 0; j < n; ++j)
    if (comp_of_mode[static_cast<std::size_t>(j)] == -1) return std::nullopt;

  // The factorization fixes (z, lambda) only up to one unit phase omega per
  // component: lambda -> lambda*omega, z -> z/omega. The true omega obeys
  // omega^{m_c} = prod_{j in c} z_hat_j for every cycle c of the component,
  // which pins it modulo the gcd g of the component's cycle lengths.
  std::vector<double> twist_angle(static_cast<std::size_t>(components), 0.0);
  std::vector<EigenPhase> lambda(static_cast<std::size_t>(n));
  for (int comp = 0; comp < components; ++comp) {
    double w_angle = 0.0;
    std::int64_t g = 0;
    for (const auto& cycle : p.cycles()) {
      if (comp_of_mode[static_cast<std::size_t>(cycle.front())] != comp) continue;
      Complex cycle_product(1.0, 0.0);
      for (const int j : cycle) cycle_product *= z_hat[static_cast<std::size_t>(j)];
      const double pc_angle = std::arg(cycle_product);
      std::int64_t a = 0;
      std::int64_t b = 0;
      const std::int64_t g_next = ext_gcd(g, static_cast<std::int64_t>(cycle.size()), a, b);
      w_angle = static_cast<double>(a) * w_angle + static_cast<double>(b) * pc_angle;
      g = g_next;
    }
    const double omega_angle = w_angle / static_cast<double>(g);

    // Residual gauge: any further g-th root of unity. Fix it by giving the
    // component's lowest-index column the smallest rational phase on offer.
    int k0 = -1;
    for (int k = 0; k < n && k0 == -1; ++k)
      if (comp_of_col[static_cast<std::size_t>(k)] == comp) k0 = k;
    std::optional<EigenPhase> best;
    double best_angle = 0.0;
    for (std::int64_t l = 0; l < g; ++l) {
      const double candidate_angle =
          omega_angle + 2.0 * std::numbers::pi * static_cast<double>(l) / static_cast<double>(g);
      const double phase_turns =
          (std::arg(lambda_hat[static_cast<std::size_t>(k0)]) + candidate_angle) /
          (2.0 * std::numbers::pi);
      const auto rational = round_phase_to_rational(phase_turns, n, 1e-6);
      if (!rational) continue;
      if (!best || *rational < *best) {
        best = rational;
        best_angle = candidate_angle;
      }
    }
    if (!best) return std::nullopt;
    twist_angle[static_cast<std::size_t>(comp)] = best_angle;

    for (int k = 0; k < n; ++k) {
      if (comp_of_col[static_cast<std::size_t>(k)] != comp) continue;
      const double turns =
          (std::arg(lambda_hat[static_cast<std::size_t>(k)]) + best_angle) /
          (2.0 * std::numbers::pi);
      const auto rational = round_phase_to_rational(turns, n, 1e-6);
      if (!rational) return std::nullopt;
      lambda[static_cast<std::size_t>(k)] = *rational;
    }
  }

  // theta per mode from z_j = e^{i[theta(pi(j)) - theta(j)]}, gauge-pinned to
  // theta = 0 at each cycle's smallest mode.
  PhaseVector theta = PhaseVector::zeros(n);
  for (const auto& cycle : p.cycles()) {
    double acc = 0.0;
    int j = cycle.front();
    for (std::size_t step = 0; step + 1 < cycle.size(); ++step) {
      const double z_angle =
          std::arg(z_hat[static_cast<std::size_t>(j)]) -
          twist_angle[static_cast<std::size_t>(comp_of_mode[static_cast<std::size_t>(j)])];
      acc += z_angle;
      j = p.apply(j);
      theta.radians[static_cast<std::size_t>(j)] = acc;
    }
  }

  // The rationalized assignment must reproduce U exactly (to tolerance) on
  // every entry; this is the only arbiter — everything above just proposes.
  double residual = 0.0;
  for (int j = 0; j < n; ++j) {
    const int pj = p.apply(j);
    const double dtheta = theta.radians[static_cast<std::size_t>(pj)] -
                          theta.radians[static_cast<std::size_t>(j)];
    const Complex z(std::cos(dtheta), std::sin(dtheta));
    for (int k = 0; k < n; ++k) {
      const Complex expected = z * u(j, k) * lambda[static_cast<std::size_t>(k)].value();
      residual = std::max(residual, std::abs(u(pj, k) - expected));
    }
  }
  if (residual > kMatrixTol) return std::nullopt;
  return SymmetricPhaseWitness{p, std::move(lambda), std::move(theta), residual};
}

namespace {

// Splits "a=1,b=(2 3)(4 5),c=0.1" on commas that sit outside parentheses.
std::vector<std::string> split_params(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (const char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) out.push_back(current);
  return out;
}

int require_int(const std::string& value, const std::string& spec) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog spec '" + spec + "': bad integer '" + value + "'");
  }
}

std::uint64_t require_u64(const std::string& value, const std::string& spec) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("catalog spec '" + spec + "': bad seed '" + value + "'");
  }
}

}  // namespace

CatalogEntry parse_unitary_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::map<std::string, std::string> params;
  if (colon != std::string::npos) {
    for (const std::string& item : split_params(spec.substr(colon + 1))) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("catalog spec '" + spec + "': expected key=value, got '" +
                                    item + "'");
      params[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  const auto require = [&](const char* key) -> const std::string& {
    const auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument("catalog spec '" + spec + "': missing parameter '" +
                                  std::string(key) + "'");
    return it->second;
  };

  if (name == "fourier") {
    const int n = require_int(require("n"), spec);
    return CatalogEntry{spec, fourier_unitary(n), fourier_cyclic_shift(n, 1)};
  }
  if (name == "sylvester") {
    const int d = require_int(require("d"), spec);
    return CatalogEntry{spec, sylvester_unitary(d), std::nullopt};
  }
  if (name == "hypercube") {
    const int d = require_int(require("d"), spec);
    const int n = 1 << d;
    std::vector<int> ps;
    for (int l = 1; l <= d; ++l) ps.push_back(1 << l);
    return CatalogEntry{spec, hypercube_unitary(d), hypercube_permutation(ps, n)};
  }
  if (name == "jx") {
    const int n = require_int(require("n"), spec);
    return CatalogEntry{spec, jx_unitary(n), mirror_permutation(n)};
  }
  if (name == "eigenbasis") {
    const std::string& perm_text = require("perm");
    int n = 0;
    if (params.count("n")) {
      n = require_int(params.at("n"), spec);
    } else {
      // Infer the mode count from the largest label mentioned in the cycles.
      for (std::size_t i = 0; i < perm_text.size(); ++i)
        if (std::isdigit(static_cast<unsigned char>(perm_text[i]))) {
          std::size_t end = i;
          while (end < perm_text.size() &&
                 std::isdigit(static_cast<unsigned char>(perm_text[end])))
            ++end;
          n = std::max(n, std::stoi(perm_text.substr(i, end - i)));
          i = end;
        }
      if (n == 0)
        throw std::invalid_argument("catalog spec '" + spec + "': cannot infer n from perm");
    }
    const ModePermutation p = ModePermutation::parse(perm_text, n);
    const PhaseVector theta =
        PhaseVector::parse(params.count("theta") ? params.at("theta") : "0", n);
    const PhaseVector sigma =
        PhaseVector::parse(params.count("sigma") ? params.at("sigma") : "0", n);
    const EigenbasisRealization a = params.count("seed")
                                        ? randomized_eigenbasis(p, require_u64(params.at("seed"), spec))
                                        : canonical_eigenbasis(p);
    return CatalogEntry{spec, compose(theta, a, sigma), p};
  }
  throw std::invalid_argument("unknown catalog entry '" + name +
                              "' (expected fourier, sylvester, hypercube, jx, eigenbasis)");
}

}  // namespace mmi
