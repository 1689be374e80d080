#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace luinv {

/// An integer partition, stored as its weakly decreasing list of positive parts.
///
/// Partitions are totally ordered by weight first and then reverse
/// lexicographically, so (4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1). This is
/// the order used by partitions_of() and by every sorted container keyed on
/// partitions.
class Partition {
 public:
  Partition() = default;
  /// Throws ArgumentError unless parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);
  Partition(std::initializer_list<int> parts);

  static Partition row(int l);     // (l)
  static Partition column(int l);  // (1^l)

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;
  int length() const { return static_cast<int>(parts_.size()); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  int multiplicity(int part) const;

  bool is_row() const { return parts_.size() <= 1; }
  bool is_column() const;

  /// Every part multiplied by r.
  Partition scaled(int r) const;
  /// Multiset union of the parts.
  Partition merged(const Partition& other) const;

  std::string str() const;  // "(2,1)"; "()" for the empty partition

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b);

 private:
  std::vector<int> parts_;
};

/// A permutation of {0,...,N-1} in one-line notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int n);  // identity
  /// Throws ArgumentError unless images is a bijection of {0..N-1}.
  explicit Permutation(std::vector<int> images);

  /// Builds a permutation of {1..n} from 1-based cycles, e.g. {{1,2,3,5,6,4}}.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  std::span<const int> images() const { return images_; }

  Permutation inverse() const;
  /// Composition: (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  Partition cycle_type() const;
  int sign() const;
  bool is_identity() const;
  std::string cycle_str() const;  // 1-based, fixed points omitted; "()" for identity

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// All permutations of {0..n-1} in lexicographic order of their images.
std::vector<Permutation> all_permutations(int n);

/// Every partition of m exactly once, in the order defined on Partition.
std::vector<Partition> partitions_of(int m);

mpz_class factorial(int n);

/// Centralizer order of a permutation of cycle type mu: prod_i i^{a_i} a_i!.
mpz_class z_of(const Partition& mu);

/// Irreducible character chi_lambda evaluated on the class mu
/// (Murnaghan-Nakayama rule). Throws ArgumentError on weight mismatch.
///
/// Values are memoized in a process-wide cache guarded by a shared mutex, so
/// concurrent callers always observe consistent results.
mpz_class character_value(const Partition& lambda, const Partition& mu);

struct CharacterTable {
  std::vector<Partition> labels;  // rows (lambda) and columns (mu), same order
  std::vector<std::vector<mpz_class>> values;  // values[row][col]
};

CharacterTable character_table(int m);

/// Forward Euler transform: the first M coefficients d_1..d_M of
/// prod_{m>=1} (1 - t^m)^{-a_m}.
std::vector<mpz_class> euler_transform(std::span<const mpz_class> a);

/// Inverse of euler_transform. Throws NotFreeProfileError if some a_m would
/// be negative or non-integral.
std::vector<mpz_class> inverse_euler(std::span<const mpz_class> d);

}  // namespace luinv
