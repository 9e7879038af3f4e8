#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "tsg/errors.hpp"

namespace tsg {

/// A total map on the points {0, ..., n-1}, acting on the right.
///
/// `t[x]` is the image of `x`. Composition follows the right action,
/// so `(s * t)[x] == t[s[x]]`: apply `s` first, then `t`.
class Transformation {
 public:
  Transformation() = default;

  explicit Transformation(std::vector<index_t> images) : images_(std::move(images)) {
    for (auto y : images_) {
      if (y >= images_.size()) {
        throw PreconditionError("transformation image " + std::to_string(y) +
                                " out of range for degree " + std::to_string(images_.size()));
      }
    }
  }

  Transformation(std::initializer_list<index_t> images)
      : Transformation(std::vector<index_t>(images)) {}

  static Transformation identity(std::size_t n) {
    std::vector<index_t> im(n);
    for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<index_t>(i);
    return Transformation(std::move(im));
  }

  static Transformation constant(std::size_t n, index_t c) {
    return Transformation(std::vector<index_t>(n, c));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  index_t operator[](index_t x) const { return images_[x]; }
  std::span<const index_t> images() const noexcept { return images_; }

  Transformation operator*(Transformation const& t) const {
    if (t.degree() != degree()) throw PreconditionError("degree mismatch in composition");
    Transformation r;
    r.images_.resize(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) r.images_[x] = t.images_[images_[x]];
    return r;
  }

  bool is_identity() const noexcept {
    for (std::size_t x = 0; x < images_.size(); ++x)
      if (images_[x] != x) return false;
    return true;
  }

  bool is_permutation() const {
    std::vector<bool> seen(images_.size(), false);
    for (auto y : images_) {
      if (seen[y]) return false;
      seen[y] = true;
    }
    return true;
  }

  bool is_constant() const noexcept {
    return !images_.empty() &&
           std::all_of(images_.begin(), images_.end(), [&](index_t y) { return y == images_[0]; });
  }

  /// Sorted image set.
  std::vector<index_t> image_set() const {
    std::vector<index_t> im = images_;
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return im;
  }

  std::size_t rank() const { return image_set().size(); }

  /// Image of a sorted subset of points, returned sorted.
  std::vector<index_t> apply(std::span<const index_t> subset) const {
    std::vector<index_t> out;
    out.reserve(subset.size());
    for (auto x : subset) out.push_back(images_[x]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Transformation inverse_permutation() const {
    if (!is_permutation()) throw PreconditionError("not a permutation");
    std::vector<index_t> inv(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) inv[images_[x]] = static_cast<index_t>(x);
    return Transformation(std::move(inv));
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(images_[i]);
    }
    return s + "]";
  }

  friend bool operator==(Transformation const&, Transformation const&) = default;
  friend auto operator<=>(Transformation const&, Transformation const&) = default;

 private:
  std::vector<index_t> images_;
};

struct TransformationHash {
  std::size_t operator()(Transformation const& t) const noexcept {
    std::size_t h = t.degree();
    for (auto y : t.images()) h = h * 1000003u ^ (y + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }
};

}  // namespace tsg
