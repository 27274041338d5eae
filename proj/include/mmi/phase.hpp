#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mmi {

/// An exact point on the unit circle, e^{2 pi i p/q}, stored as the reduced
/// rational p/q with 0 <= p < q. All eigenvalue bookkeeping in the library
/// uses this type so that "is a root of unity", "products of eigenvalues"
/// and "multisets are equal" are integer decisions, never float comparisons.
class EigenPhase {
 public:
  /// The phase 0, i.e. the eigenvalue +1.
  constexpr EigenPhase() : num_(0), den_(1) {}

  /// e^{2 pi i num/den}; reduced and wrapped into [0, 1). den must be nonzero.
  EigenPhase(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("EigenPhase: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  /// The m-th root of unity e^{2 pi i k/m}.
  static EigenPhase root_of_unity(std::int64_t k, std::int64_t m) {
    return EigenPhase(k, m);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// True for the eigenvalue +1.
  bool is_one() const { return num_ == 0; }

  /// True iff (e^{2 pi i p/q})^m == 1, decided in integers.
  bool power_is_one(std::int64_t m) const { return (num_ * m) % den_ == 0; }

  /// Phase sum modulo a full turn (i.e. the product of the eigenvalues).
  EigenPhase operator+(const EigenPhase& o) const {
    return EigenPhase(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }

  EigenPhase operator-() const { return EigenPhase(-num_, den_); }

  EigenPhase operator-(const EigenPhase& o) const { return *this + (-o); }

  /// Phase scaled by an integer k (i.e. the eigenvalue raised to the k-th power).
  EigenPhase times(std::int64_t k) const { return EigenPhase(num_ * k, den_); }

  /// The eigenvalue as a complex number.
  std::complex<double> value() const {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(num_) /
                     static_cast<double>(den_);
    return {std::cos(a), std::sin(a)};
  }

  /// The phase as a fraction of a full turn, in [0, 1).
  double turns() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// The phase in radians, in [0, 2 pi).
  double radians() const { return 2.0 * std::numbers::pi * turns(); }

  bool operator==(const EigenPhase& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  /// Exact order by phase angle.
  bool operator<(const EigenPhase& o) const {
    return num_ * o.den_ < o.num_ * den_;
  }

  /// "0", "1/2", "3/4", ... (turns).
  std::string str() const {
    if (num_ == 0) return "0";
    std::ostringstream out;
    out << num_ << '/' << den_;
    return out.str();
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Nearest rational phase p/q with q <= max_den to a measured angle given in
/// turns; empty if no candidate lands within tol (also in turns).
inline std::optional<EigenPhase> round_phase_to_rational(double turns,
                                                         std::int64_t max_den,
                                                         double tol) {
  turns -= std::floor(turns);
  std::optional<EigenPhase> best;
  double best_err = tol;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const auto p = static_cast<std::int64_t>(std::llround(turns * static_cast<double>(q)));
    const double err = std::abs(turns - static_cast<double>(p) / static_cast<double>(q));
    if (err < best_err) {
      best_err = err;
      best = EigenPhase(p, q);
    }
  }
  return best;
}

/// A multiset of unit-circle eigenvalues with exact-arithmetic queries.
class EigenvalueMultiset {
 public:
  EigenvalueMultiset() = default;

  void insert(const EigenPhase& phase, int multiplicity = 1) {
    if (multiplicity <= 0)
      throw std::invalid_argument("EigenvalueMultiset: multiplicity must be positive");
    counts_[phase] += multiplicity;
    size_ += multiplicity;
  }

  /// Total number of eigenvalues, counted with multiplicity.
  int size() const { return size_; }

  int multiplicity(const EigenPhase& phase) const {
    const auto it = counts_.find(phase);
    return it == counts_.end() ? 0 : it->second;
  }

  /// |{lambda in the multiset : lambda^m == 1}|, with multiplicity.
  int count_power_one(std::int64_t m) const {
    int c = 0;
    for (const auto& [phase, mult] : counts_)
      if (phase.power_is_one(m)) c += mult;
    return c;
  }

  /// Phase of the product of all eigenvalues in the multiset.
  EigenPhase product_phase() const {
    EigenPhase acc;
    for (const auto& [phase, mult] : counts_) acc = acc + phase.times(mult);
    return acc;
  }

  /// Exact multiset equality.
  bool operator==(const EigenvalueMultiset& o) const {
    return counts_ == o.counts_;
  }

  const std::map<EigenPhase, int>& counts() const { return counts_; }

  /// "{0 x2, 1/4, 1/2}" — phases in turns with multiplicities.
  std::string str() const {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [phase, mult] : counts_) {
      if (!first) out << ", ";
      first = false;
      out << phase.str();
      if (mult > 1) out << " x" << mult;
    }
    out << '}';
    return out.str();
  }

 private:
  std::map<EigenPhase, int> counts_;
  int size_ = 0;
};

}  // namespace mmi
