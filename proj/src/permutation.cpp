#include "mmi/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mmi {

ModePermutation::ModePermutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  if (n < 1) throw std::invalid_argument("ModePermutation: need at least one mode");
  inverse_.assign(static_cast<std::size_t>(n), -1);
  for (int j = 0; j < n; ++j) {
    const int k = images_[static_cast<std::size_t>(j)];
    if (k < 0 || k >= n)
      throw std::invalid_argument("ModePermutation: image out of range");
    if (inverse_[static_cast<std::size_t>(k)] != -1)
      throw std::invalid_argument("ModePermutation: not a bijection");
    inverse_[static_cast<std::size_t>(k)] = j;
  }

  cycle_index_.assign(static_cast<std::size_t>(n), -1);
  for (int start = 0; start < n; ++start) {
    if (cycle_index_[static_cast<std::size_t>(start)] != -1) continue;
    std::vector<int> cycle;
    int j = start;
    do {
      cycle_index_[static_cast<std::size_t>(j)] = static_cast<int>(cycles_.size());
      cycle.push_back(j);
      j = images_[static_cast<std::size_t>(j)];
    } while (j != start);
    order_ = std::lcm(order_, static_cast<std::int64_t>(cycle.size()));
    cycles_.push_back(std::move(cycle));
  }
}

ModePermutation ModePermutation::identity(int n) {
  if (n < 1) throw std::invalid_argument("ModePermutation: need at least one mode");
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return ModePermutation(std::move(images));
}

namespace {

ModePermutation parse_cycles(const std::string& text, int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);

  std::size_t i = 0;
  const auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    if (text[i] != '(')
      throw std::invalid_argument("ModePermutation: expected '(' in '" + text + "'");
    ++i;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t end = i;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end == i)
        throw std::invalid_argument("ModePermutation: expected mode label in '" + text + "'");
      const int label = std::stoi(text.substr(i, end - i));
      if (label < 1 || label > n)
        throw std::invalid_argument("ModePermutation: mode label out of range in '" + text + "'");
      if (seen[static_cast<std::size_t>(label - 1)])
        throw std::invalid_argument("ModePermutation: repeated mode label in '" + text + "'");
      seen[static_cast<std::size_t>(label - 1)] = true;
      cycle.push_back(label - 1);
      i = end;
      skip_space();
      if (i < text.size() && (text[i] == ',' || text[i] == ';')) ++i;
    }
    for (std::size_t t = 0; t < cycle.size(); ++t)
      images[static_cast<std::size_t>(cycle[t])] = cycle[(t + 1) % cycle.size()];
    skip_space();
  }
  return ModePermutation(std::move(images));
}

ModePermutation parse_one_line(const std::string& text, int n) {
  std::vector<int> images;
  std::istringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    const int label = std::stoi(field);
    if (label < 1 || label > n)
      throw std::invalid_argument("ModePermutation: image out of range in '" + text + "'");
    images.push_back(label - 1);
  }
  if (static_cast<int>(images.size()) != n)
    throw std::invalid_argument("ModePermutation: expected " + std::to_string(n) +
                                " images in '" + text + "'");
  return ModePermutation(std::move(images));
}

}  // namespace

ModePermutation ModePermutation::parse(const std::string& text, int n) {
  if (n < 1) throw std::invalid_argument("ModePermutation: need at least one mode");
  const auto first = text.find_first_not_of(" \t");
  if (first == std::string::npos)
    throw std::invalid_argument("ModePermutation: empty permutation text");
  if (text[first] == '(') return parse_cycles(text, n);
  return parse_one_line(text, n);
}

ModePermutation ModePermutation::power(std::int64_t k) const {
  const int n = modes();
  k %= order_;
  if (k < 0) k += order_;
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int t = j;
    for (std::int64_t step = 0; step < k; ++step) t = apply(t);
    images[static_cast<std::size_t>(j)] = t;
  }
  return ModePermutation(std::move(images));
}

bool ModePermutation::is_identity() const {
  for (int j = 0; j < modes(); ++j)
    if (apply(j) != j) return false;
  return true;
}

std::string ModePermutation::cycle_str() const {
  std::ostringstream out;
  for (const auto& cycle : cycles_) {
    out << '(';
    for (std::size_t t = 0; t < cycle.size(); ++t) {
      if (t) out << ' ';
      out << cycle[t] + 1;
    }
    out << ')';
  }
  return out.str();
}

std::string ModePermutation::one_line_str() const {
  std::ostringstream out;
  for (int j = 0; j < modes(); ++j) {
    if (j) out << ',';
    out << apply(j) + 1;
  }
  return out.str();
}

bool is_invariant(const OccupationList& r, const ModePermutation& p) {
  if (r.modes() != p.modes())
    throw std::invalid_argument("is_invariant: mode count mismatch");
  for (int j = 0; j < p.modes(); ++j)
    if (r[p.apply(j)] != r[j]) return false;
  return true;
}

OccupationList apply_to_occupation(const ModePermutation& p, const OccupationList& r) {
  if (r.modes() != p.modes())
    throw std::invalid_argument("apply_to_occupation: mode count mismatch");
  std::vector<int> out(static_cast<std::size_t>(r.modes()), 0);
  for (int j = 0; j < r.modes(); ++j) out[static_cast<std::size_t>(p.apply(j))] = r[j];
  return OccupationList(std::move(out));
}

EigenvalueMultiset permutation_eigenvalues(const ModePermutation& p) {
  EigenvalueMultiset out;
  for (const auto& cycle : p.cycles()) {
    const auto m = static_cast<std::int64_t>(cycle.size());
    for (std::int64_t k = 0; k < m; ++k) out.insert(EigenPhase::root_of_unity(k, m));
  }
  return out;
}

int induced_transposition_parity(const OccupationList& r, const ModePermutation& p) {
  if (!r.single_occupancy())
    throw std::invalid_argument("induced_transposition_parity: input must be single-occupancy");
  if (!is_invariant(r, p))
    throw std::invalid_argument("induced_transposition_parity: input must be invariant");
  const AssignmentList d = occupation_to_assignment(r);
  std::vector<int> image;
  image.reserve(static_cast<std::size_t>(d.particles()));
  for (const int mode : d) image.push_back(p.apply(mode));
  // Parity of the sort permutation = (-1)^{#inversions}. Values are distinct
  // (single occupancy), so inversions are unambiguous.
  int inversions = 0;
  for (std::size_t a = 0; a < image.size(); ++a)
    for (std::size_t b = a + 1; b < image.size(); ++b)
      if (image[a] > image[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace mmi
