#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qap {

class Rng;

/// Objective value. 64-bit signed so swap deltas share the type.
using Cost = std::int64_t;

/// Dense row-major n x n matrix of non-negative integers.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, std::int64_t fill = 0) : n_(n), values_(n * n, fill) {}

  /// Builds from a row-major buffer; throws UsageError unless values.size() == n*n.
  SquareMatrix(std::size_t n, std::vector<std::int64_t> values);

  std::size_t size() const noexcept { return n_; }

  std::int64_t operator()(std::size_t row, std::size_t col) const noexcept {
    return values_[row * n_ + col];
  }
  std::int64_t& operator()(std::size_t row, std::size_t col) noexcept {
    return values_[row * n_ + col];
  }

  std::span<const std::int64_t> row(std::size_t r) const noexcept {
    return {values_.data() + r * n_, n_};
  }
  std::span<const std::int64_t> values() const noexcept { return values_; }

  std::int64_t max_entry() const noexcept;
  std::int64_t min_entry() const noexcept;
  bool is_symmetric() const noexcept;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> values_;
};

/// A QAP instance: n facilities, n locations, flow between facilities and
/// distance between locations. Immutable once constructed.
///
/// The constructor rejects instances whose worst-case objective
/// (4 * n^2 * max(flow) * max(distance)) would not fit in Cost, so evaluate and
/// swap_delta never overflow.
class QapInstance {
 public:
  /// Throws ValidationError on n == 0, mismatched matrix sizes, negative entries
  /// or a cost bound exceeding the Cost range.
  QapInstance(std::string name, SquareMatrix flow, SquareMatrix distance);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return flow_.size(); }
  const SquareMatrix& flow() const noexcept { return flow_; }
  const SquareMatrix& distance() const noexcept { return distance_; }

  friend bool operator==(const QapInstance&, const QapInstance&) = default;

 private:
  std::string name_;
  SquareMatrix flow_;
  SquareMatrix distance_;
};

/// perm[i] = j means facility i sits at location j. Always a bijection on {0..n-1}.
class Assignment {
 public:
  /// Throws ValidationError if perm is empty or not a permutation of {0..n-1}.
  explicit Assignment(std::vector<std::size_t> perm);

  static Assignment identity(std::size_t n);

  std::size_t size() const noexcept { return perm_.size(); }
  std::size_t operator[](std::size_t facility) const noexcept { return perm_[facility]; }
  std::span<const std::size_t> perm() const noexcept { return perm_; }

  /// Exchanges the locations of two facilities. Indices must be < size().
  void swap_facilities(std::size_t i, std::size_t j) noexcept { std::swap(perm_[i], perm_[j]); }

  /// The location -> facility view of the same assignment.
  Assignment inverse() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  struct Unchecked {};
  Assignment(Unchecked, std::vector<std::size_t> perm) : perm_(std::move(perm)) {}

  std::vector<std::size_t> perm_;
};

/// Exchange of the locations of facilities i and j.
struct SwapMove {
  std::size_t i = 0;
  std::size_t j = 0;

  friend bool operator==(const SwapMove&, const SwapMove&) = default;
};

/// True iff perm is a permutation of {0..perm.size()-1}.
bool is_permutation(std::span<const std::size_t> perm);

/// sum_i sum_k flow(i,k) * distance(perm[i], perm[k]), diagonal terms included.
/// Throws UsageError when the assignment size differs from the instance size.
Cost evaluate(const QapInstance& inst, const Assignment& a);

/// evaluate(inst, apply_swap(a, m)) - evaluate(inst, a) in O(n), valid for
/// asymmetric matrices and non-zero diagonals. Throws UsageError on bad sizes or indices.
Cost swap_delta(const QapInstance& inst, const Assignment& a, SwapMove m);

/// Returns a copy of `a` with the locations of m.i and m.j exchanged.
/// Throws UsageError on out-of-range indices.
Assignment apply_swap(Assignment a, SwapMove m);

/// Uniformly random permutation of {0..n-1} (Fisher-Yates). Throws UsageError on n == 0.
Assignment random_assignment(std::size_t n, Rng& rng);

namespace detail {

// Unchecked delta used in solver inner loops; callers guarantee sizes and indices.
inline Cost swap_delta_unchecked(const QapInstance& inst, std::span<const std::size_t> p,
                                 std::size_t r, std::size_t s) noexcept {
  if (r == s) {
    return 0;
  }
  const SquareMatrix& f = inst.flow();
  const SquareMatrix& d = inst.distance();
  const std::size_t pr = p[r];
  const std::size_t ps = p[s];
  Cost delta = (f(r, r) - f(s, s)) * (d(ps, ps) - d(pr, pr)) +
               (f(r, s) - f(s, r)) * (d(ps, pr) - d(pr, ps));
  const std::size_t n = p.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == r || k == s) {
      continue;
    }
    const std::size_t pk = p[k];
    delta += (f(k, r) - f(k, s)) * (d(pk, ps) - d(pk, pr)) +
             (f(r, k) - f(s, k)) * (d(ps, pk) - d(pr, pk));
  }
  return delta;
}

}  // namespace detail

}  // namespace qap
