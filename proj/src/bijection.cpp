#include "genmech/bijection.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace genmech {

Bijection Bijection::identity(std::size_t n) {
  std::vector<StateId> image(n);
  std::iota(image.begin(), image.end(), StateId{0});
  return Bijection(std::move(image));
}

bool Bijection::is_permutation() const {
  std::vector<bool> seen(image_.size(), false);
  for (StateId k : image_) {
    if (k >= image_.size() || seen[k]) return false;
    seen[k] = true;
  }
  return true;
}

bool Bijection::is_identity() const {
  for (std::size_t k = 0; k < image_.size(); ++k)
    if (image_[k] != k) return false;
  return true;
}

bool Bijection::is_involution() const {
  if (!is_permutation()) return false;
  for (std::size_t k = 0; k < image_.size(); ++k)
    if (image_[image_[k]] != k) return false;
  return true;
}

Bijection Bijection::inverse() const {
  if (!is_permutation())
    throw std::invalid_argument("Bijection::inverse: image is not a permutation");
  std::vector<StateId> inv(image_.size());
  for (std::size_t k = 0; k < image_.size(); ++k) inv[image_[k]] = k;
  return Bijection(std::move(inv));
}

Bijection Bijection::after(const Bijection& inner) const {
  if (inner.size() != size())
    throw std::invalid_argument("Bijection::after: size mismatch (" + std::to_string(size()) +
                                " vs " + std::to_string(inner.size()) + ")");
  if (!is_permutation() || !inner.is_permutation())
    throw std::invalid_argument("Bijection::after: operands must be permutations");
  std::vector<StateId> out(size());
  for (std::size_t k = 0; k < size(); ++k) out[k] = image_[inner.image_[k]];
  return Bijection(std::move(out));
}

} // namespace genmech
