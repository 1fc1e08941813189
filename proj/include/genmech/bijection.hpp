#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace genmech {

/// Index of a state in a finite tabulated system.
using StateId = std::size_t;

/// A map on state indices, stored by image: `image()[k]` is where state `k` goes.
///
/// Construction does not enforce bijectivity, so that systems read from disk can
/// be reported on by `validate`. Operations that need an inverse (`inverse`,
/// `then`) throw `std::invalid_argument` when the image is not a permutation.
class Bijection {
public:
  Bijection() = default;
  explicit Bijection(std::vector<StateId> image) : image_(std::move(image)) {}
  Bijection(std::initializer_list<StateId> image) : image_(image) {}

  static Bijection identity(std::size_t n);

  std::size_t size() const noexcept { return image_.size(); }
  const std::vector<StateId>& image() const noexcept { return image_; }

  StateId operator()(StateId k) const { return image_.at(k); }

  /// True iff every index in [0, size()) appears exactly once.
  bool is_permutation() const;
  bool is_identity() const;
  /// A∘A = identity.
  bool is_involution() const;

  Bijection inverse() const;

  /// Composition `*this ∘ inner` (apply `inner` first).
  Bijection after(const Bijection& inner) const;

  friend bool operator==(const Bijection&, const Bijection&) = default;

private:
  std::vector<StateId> image_;
};

/// Composition `outer ∘ inner`.
inline Bijection compose(const Bijection& outer, const Bijection& inner) {
  return outer.after(inner);
}

} // namespace genmech
