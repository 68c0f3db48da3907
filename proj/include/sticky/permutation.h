#ifndef STICKY_PERMUTATION_H_
#define STICKY_PERMUTATION_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace sticky {

// A bijection of {0, ..., n-1} stored in one-line notation: image(i) is the
// label sphere i is sent to.  Applied to a cluster, sphere i ends up at label
// image(i).
class Permutation {
 public:
  Permutation() = default;
  // Throws Error(kInvalidArgument) if `images` is not a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation Identity(int n);
  // Builds a permutation of size n from 0-based disjoint cycles.
  static Permutation FromCycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator[](int i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  bool IsIdentity() const;
  Permutation Inverse() const;
  // (*this ∘ other)(i) = (*this)[other[i]]: apply `other` first.
  Permutation Compose(const Permutation& other) const;
  // Nontrivial cycles, each starting at its smallest element, sorted by
  // first element.
  std::vector<std::vector<int>> Cycles() const;

  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

// A permutation-inversion operation (P, δ): relabel the spheres by P and, when
// sign == -1, send every coordinate x to -x.
struct PiOperation {
  Permutation perm;
  int sign = 1;

  static PiOperation Identity(int n) { return {Permutation::Identity(n), 1}; }

  int size() const { return perm.size(); }
  bool IsIdentity() const { return sign == 1 && perm.IsIdentity(); }
  PiOperation Inverse() const { return {perm.Inverse(), sign}; }
  // (P, δ)(Q, μ) = (PQ, δμ).
  PiOperation Compose(const PiOperation& other) const {
    return {perm.Compose(other.perm), sign * other.sign};
  }

  // Canonical order: one-line notation lexicographically, then δ = +1 before
  // δ = -1.
  std::strong_ordering operator<=>(const PiOperation& other) const {
    if (auto c = perm <=> other.perm; c != 0) return c;
    return other.sign <=> sign;
  }
  bool operator==(const PiOperation&) const = default;
};

// Cycle notation with 1-based labels, e.g. "(12)(34)*" or "E".  Labels are
// juxtaposed when n <= 9 and space separated otherwise ("(9 10)").
std::string ToCycleString(const Permutation& perm);
std::string ToCycleString(const PiOperation& op);

// Parses the output of ToCycleString (and a few lenient variants: spaces or
// commas between labels, "e"/"()" for the identity).  Throws
// Error(kInvalidArgument) on malformed text or labels outside 1..n.
PiOperation ParsePiOperation(std::string_view text, int n);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const;
};
struct PiOperationHash {
  std::size_t operator()(const PiOperation& op) const {
    return PermutationHash()(op.perm) * 2 + (op.sign < 0 ? 1 : 0);
  }
};

}  // namespace sticky

#endif  // STICKY_PERMUTATION_H_
