#include "qap/core.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "qap/error.hpp"
#include "qap/rng.hpp"

namespace qap {

SquareMatrix::SquareMatrix(std::size_t n, std::vector<std::int64_t> values)
    : n_(n), values_(std::move(values)) {
  if (values_.size() != n * n) {
    throw UsageError(fmt::format("matrix of order {} needs {} entries, got {}", n, n * n,
                                 values_.size()));
  }
}

std::int64_t SquareMatrix::max_entry() const noexcept {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

std::int64_t SquareMatrix::min_entry() const noexcept {
  return values_.empty() ? 0 : *std::min_element(values_.begin(), values_.end());
}

bool SquareMatrix::is_symmetric() const noexcept {
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = r + 1; c < n_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) {
        return false;
      }
    }
  }
  return true;
}

QapInstance::QapInstance(std::string name, SquareMatrix flow, SquareMatrix distance)
    : name_(std::move(name)), flow_(std::move(flow)), distance_(std::move(distance)) {
  const std::size_t n = flow_.size();
  if (n == 0) {
    throw ValidationError("instance size must be at least 1");
  }
  if (distance_.size() != n) {
    throw ValidationError(fmt::format("flow is {0}x{0} but distance is {1}x{1}", n,
                                      distance_.size()));
  }
  if (flow_.min_entry() < 0 || distance_.min_entry() < 0) {
    throw ValidationError(fmt::format("instance '{}' has negative entries", name_));
  }
  // 4 * n^2 * max(f) * max(d) must fit: covers the objective and every delta term.
  __extension__ typedef unsigned __int128 Wide;
  const Wide bound = Wide{4} * n * n * static_cast<Wide>(flow_.max_entry()) *
                     static_cast<Wide>(distance_.max_entry());
  if (bound > static_cast<Wide>(std::numeric_limits<Cost>::max())) {
    throw ValidationError(
        fmt::format("instance '{}' can overflow 64-bit cost arithmetic", name_));
  }
}

Assignment::Assignment(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
  if (perm_.empty()) {
    throw ValidationError("assignment must cover at least one facility");
  }
  if (!is_permutation(perm_)) {
    throw ValidationError("assignment is not a permutation (a location is repeated or out of range)");
  }
}

Assignment Assignment::identity(std::size_t n) {
  if (n == 0) {
    throw UsageError("assignment size must be at least 1");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return Assignment(Unchecked{}, std::move(perm));
}

Assignment Assignment::inverse() const {
  std::vector<std::size_t> inv(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) {
    inv[perm_[i]] = i;
  }
  return Assignment(Unchecked{}, std::move(inv));
}

bool is_permutation(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t v : perm) {
    if (v >= perm.size() || seen[v]) {
      return false;
    }
    seen[v] = true;
  }
  return true;
}

namespace {

void check_size(const QapInstance& inst, const Assignment& a) {
  if (a.size() != inst.size()) {
    throw UsageError(fmt::format("assignment has {} facilities, instance '{}' has {}", a.size(),
                                 inst.name(), inst.size()));
  }
}

void check_move(std::size_t n, SwapMove m) {
  if (m.i >= n || m.j >= n) {
    throw UsageError(fmt::format("swap ({}, {}) out of range for size {}", m.i, m.j, n));
  }
}

}  // namespace

Cost evaluate(const QapInstance& inst, const Assignment& a) {
  check_size(inst, a);
  const std::size_t n = inst.size();
  const SquareMatrix& d = inst.distance();
  Cost total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto flow_row = inst.flow().row(i);
    const auto dist_row = d.row(a[i]);
    for (std::size_t k = 0; k < n; ++k) {
      total += flow_row[k] * dist_row[a[k]];
    }
  }
  return total;
}

Cost swap_delta(const QapInstance& inst, const Assignment& a, SwapMove m) {
  check_size(inst, a);
  check_move(inst.size(), m);
  return detail::swap_delta_unchecked(inst, a.perm(), m.i, m.j);
}

Assignment apply_swap(Assignment a, SwapMove m) {
  check_move(a.size(), m);
  a.swap_facilities(m.i, m.j);
  return a;
}

Assignment random_assignment(std::size_t n, Rng& rng) {
  Assignment a = Assignment::identity(n);
  for (std::size_t k = n; k > 1; --k) {
    a.swap_facilities(k - 1, rng.below(k));
  }
  return a;
}

}  // namespace qap
