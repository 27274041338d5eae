#include "mmi/occupations.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mmi {

namespace {

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::string body = text;
  // Tolerate a single enclosing pair of parentheses.
  if (!body.empty() && body.front() == '(' && body.back() == ')')
    body = body.substr(1, body.size() - 2);
  std::istringstream in(body);
  std::string field;
  while (std::getline(in, field, ',')) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(field, &pos);
      while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
        ++pos;
      if (pos != field.size()) throw std::invalid_argument("trailing junk");
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad entry '" + field + "' in '" + text + "'");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string(what) + ": empty list '" + text + "'");
  return out;
}

}  // namespace

OccupationList::OccupationList(std::vector<int> occupations) : occ_(std::move(occupations)) {
  if (occ_.empty())
    throw std::invalid_argument("OccupationList: need at least one mode");
  for (const int r : occ_) {
    if (r < 0) throw std::invalid_argument("OccupationList: negative occupation");
    total_ += r;
  }
}

OccupationList OccupationList::parse(const std::string& text) {
  return OccupationList(parse_int_list(text, "OccupationList"));
}

bool OccupationList::single_occupancy() const {
  for (const int r : occ_)
    if (r > 1) return false;
  return true;
}

std::string OccupationList::str() const {
  std::ostringstream out;
  for (std::size_t j = 0; j < occ_.size(); ++j) {
    if (j) out << ',';
    out << occ_[j];
  }
  return out.str();
}

AssignmentList::AssignmentList(std::vector<int> modes) : modes_(std::move(modes)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (modes_[i] < 0)
      throw std::invalid_argument("AssignmentList: negative mode index");
    if (i > 0 && modes_[i] < modes_[i - 1])
      throw std::invalid_argument("AssignmentList: modes must be non-decreasing");
  }
}

AssignmentList AssignmentList::parse(const std::string& text) {
  std::vector<int> modes = parse_int_list(text, "AssignmentList");
  for (int& m : modes) {
    if (m < 1)
      throw std::invalid_argument("AssignmentList: mode labels are 1-based in '" + text + "'");
    --m;
  }
  return AssignmentList(std::move(modes));
}

std::string AssignmentList::str() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i) out << ',';
    out << modes_[i] + 1;
  }
  out << ')';
  return out.str();
}

AssignmentList occupation_to_assignment(const OccupationList& r) {
  std::vector<int> modes;
  modes.reserve(static_cast<std::size_t>(r.total()));
  for (int j = 0; j < r.modes(); ++j)
    for (int c = 0; c < r[j]; ++c) modes.push_back(j);
  return AssignmentList(std::move(modes));
}

OccupationList assignment_to_occupation(const AssignmentList& d, int n) {
  if (n < 1) throw std::invalid_argument("assignment_to_occupation: need n >= 1");
  std::vector<int> occ(static_cast<std::size_t>(n), 0);
  for (const int mode : d) {
    if (mode >= n)
      throw std::invalid_argument("assignment_to_occupation: mode index out of range");
    ++occ[static_cast<std::size_t>(mode)];
  }
  return OccupationList(std::move(occ));
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // Multiply then divide, keeping the intermediate exactly divisible.
    result = result / i * (n - k + i) + result % i * (n - k + i) / i;
  }
  return result;
}

}  // namespace

std::uint64_t count_bosonic_outputs(int n, int particles) {
  if (n < 1 || particles < 0)
    throw std::invalid_argument("count_bosonic_outputs: bad arguments");
  return binomial(static_cast<std::uint64_t>(n + particles - 1),
                  static_cast<std::uint64_t>(particles));
}

std::uint64_t count_fermionic_outputs(int n, int particles) {
  if (n < 1 || particles < 0)
    throw std::invalid_argument("count_fermionic_outputs: bad arguments");
  return binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(particles));
}

BosonicOutputs::BosonicOutputs(int n, int particles) : n_(n), particles_(particles) {
  if (n < 1 || particles < 0)
    throw std::invalid_argument("BosonicOutputs: bad arguments");
  assignment_.assign(static_cast<std::size_t>(particles), 0);
}

std::optional<OccupationList> BosonicOutputs::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
  } else {
    // Next non-decreasing tuple over {0, ..., n-1} in lexicographic order.
    int i = particles_ - 1;
    while (i >= 0 && assignment_[static_cast<std::size_t>(i)] == n_ - 1) --i;
    if (i < 0) {
      done_ = true;
      return std::nullopt;
    }
    const int v = assignment_[static_cast<std::size_t>(i)] + 1;
    for (int j = i; j < particles_; ++j) assignment_[static_cast<std::size_t>(j)] = v;
  }
  if (particles_ == 0) done_ = true;  // single empty event
  return assignment_to_occupation(AssignmentList(assignment_), n_);
}

FermionicOutputs::FermionicOutputs(int n, int particles) : n_(n), particles_(particles) {
  if (n < 1 || particles < 0)
    throw std::invalid_argument("FermionicOutputs: need n >= 1 and N >= 0");
  // More particles than modes: no single-occupancy event exists, so the
  // stream is immediately exhausted (matching count_fermionic_outputs = 0).
  if (particles > n) done_ = true;
  assignment_.resize(static_cast<std::size_t>(particles));
  std::iota(assignment_.begin(), assignment_.end(), 0);
}

std::optional<OccupationList> FermionicOutputs::next() {
  if (done_) return std::nullopt;
  if (first_) {
    first_ = false;
  } else {
    // Next combination of {0, ..., n-1} in lexicographic order.
    int i = particles_ - 1;
    while (i >= 0 && assignment_[static_cast<std::size_t>(i)] == n_ - particles_ + i) --i;
    if (i < 0) {
      done_ = true;
      return std::nullopt;
    }
    ++assignment_[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < particles_; ++j)
      assignment_[static_cast<std::size_t>(j)] = assignment_[static_cast<std::size_t>(j - 1)] + 1;
  }
  if (particles_ == 0) done_ = true;
  return assignment_to_occupation(AssignmentList(assignment_), n_);
}

}  // namespace mmi
