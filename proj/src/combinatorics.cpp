#include "luinv/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <utility>

#include "luinv/errors.hpp"

namespace luinv {

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw ArgumentError("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw ArgumentError("partition parts must be weakly decreasing");
  }
}

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts)) {}

Partition Partition::row(int l) {
  if (l < 0) throw ArgumentError("negative partition size");
  return l == 0 ? Partition{} : Partition(std::vector<int>{l});
}

Partition Partition::column(int l) {
  if (l < 0) throw ArgumentError("negative partition size");
  return Partition(std::vector<int>(static_cast<std::size_t>(l), 1));
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::multiplicity(int part) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), part));
}

bool Partition::is_column() const {
  return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p == 1; });
}

Partition Partition::scaled(int r) const {
  Partition out;
  out.parts_ = parts_;
  for (int& p : out.parts_) p *= r;
  return out;
}

Partition Partition::merged(const Partition& other) const {
  Partition out;
  out.parts_.resize(parts_.size() + other.parts_.size());
  std::merge(parts_.begin(), parts_.end(), other.parts_.begin(), other.parts_.end(),
             out.parts_.begin(), std::greater<>());
  return out;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  os << ')';
  return os.str();
}

std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
  if (auto c = a.weight() <=> b.weight(); c != 0) return c;
  // reverse lexicographic within a fixed weight
  return b.parts_ <=> a.parts_;
}

// -------------------------------------------------------------- Permutation

Permutation::Permutation(int n) : images_(static_cast<std::size_t>(n)) {
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)])
      throw ArgumentError("not a permutation");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i] - 1;
      int to = cyc[(i + 1) % cyc.size()] - 1;
      if (from < 0 || from >= n || to < 0 || to >= n || used[static_cast<std::size_t>(from)])
        throw ArgumentError("invalid cycle notation");
      used[static_cast<std::size_t>(from)] = 1;
      img[static_cast<std::size_t>(from)] = to;
    }
  }
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  Permutation p;
  p.images_ = std::move(inv);
  return p;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ArgumentError("permutation size mismatch");
  Permutation p;
  p.images_.resize(b.images_.size());
  for (std::size_t i = 0; i < b.images_.size(); ++i)
    p.images_[i] = a.images_[static_cast<std::size_t>(b.images_[i])];
  return p;
}

Partition Permutation::cycle_type() const {
  std::vector<char> seen(images_.size(), 0);
  std::vector<int> lens;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = 1;
      ++len;
    }
    lens.push_back(len);
  }
  std::sort(lens.begin(), lens.end(), std::greater<>());
  return Partition(std::move(lens));
}

int Permutation::sign() const {
  const Partition ct = cycle_type();
  int even_cycles = 0;
  for (int p : ct.parts()) even_cycles += (p % 2 == 0);
  return even_cycles % 2 ? -1 : 1;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i)) return false;
  return true;
}

std::string Permutation::cycle_str() const {
  std::ostringstream os;
  std::vector<char> seen(images_.size(), 0);
  bool any = false;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == static_cast<int>(i)) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = 1;
      os << (first ? "" : " ") << j + 1;
      first = false;
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// ------------------------------------------------------------- partitions

std::vector<Partition> partitions_of(int m) {
  if (m < 0) throw ArgumentError("partitions_of: negative weight");
  std::vector<Partition> out;
  std::vector<int> cur;
  // Depth-first with parts tried largest first yields reverse-lex order.
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(m, m);
  return out;
}

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

mpz_class z_of(const Partition& mu) {
  mpz_class z = 1;
  const auto& p = mu.parts();
  for (std::size_t i = 0; i < p.size();) {
    std::size_t j = i;
    while (j < p.size() && p[j] == p[i]) ++j;
    const auto a = static_cast<int>(j - i);
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p[i]), static_cast<unsigned long>(a));
    z *= pw * factorial(a);
    i = j;
  }
  return z;
}

// ------------------------------------------------- Murnaghan-Nakayama rule

namespace {

using MnKey = std::pair<std::vector<int>, std::vector<int>>;

struct MnCache {
  std::shared_mutex mutex;
  std::map<MnKey, mpz_class> values;
};

MnCache& mn_cache() {
  static MnCache cache;
  return cache;
}

// lambda given by parts, mu by the remaining cycle lengths (any fixed order).
mpz_class mn_rec(const std::vector<int>& lambda, const std::vector<int>& mu) {
  if (mu.empty()) return lambda.empty() ? 1 : 0;
  MnKey key{lambda, mu};
  {
    std::shared_lock lock(mn_cache().mutex);
    auto it = mn_cache().values.find(key);
    if (it != mn_cache().values.end()) return it->second;
  }

  const int r = mu.front();
  const std::vector<int> rest(mu.begin() + 1, mu.end());
  const auto len = static_cast<int>(lambda.size());

  // beta numbers, strictly decreasing
  std::vector<int> beta(lambda.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + len - 1 - i;

  mpz_class total = 0;
  for (int i = 0; i < len; ++i) {
    const int b = beta[static_cast<std::size_t>(i)];
    const int target = b - r;
    if (target < 0) continue;
    if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int c : beta) between += (c > target && c < b);
    std::vector<int> nb = beta;
    nb[static_cast<std::size_t>(i)] = target;
    std::sort(nb.begin(), nb.end(), std::greater<>());
    std::vector<int> shape;
    for (int t = 0; t < len; ++t) {
      const int part = nb[static_cast<std::size_t>(t)] - (len - 1 - t);
      if (part > 0) shape.push_back(part);
    }
    mpz_class sub = mn_rec(shape, rest);
    if (between % 2) total -= sub;
    else total += sub;
  }

  std::unique_lock lock(mn_cache().mutex);
  mn_cache().values.emplace(std::move(key), total);
  return total;
}

}  // namespace

mpz_class character_value(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight())
    throw ArgumentError("character_value: weight mismatch " + lambda.str() + " vs " + mu.str());
  return mn_rec(lambda.parts(), mu.parts());
}

CharacterTable character_table(int m) {
  CharacterTable t;
  t.labels = partitions_of(m);
  t.values.resize(t.labels.size());
  for (std::size_t i = 0; i < t.labels.size(); ++i) {
    t.values[i].reserve(t.labels.size());
    for (const auto& mu : t.labels) t.values[i].push_back(character_value(t.labels[i], mu));
  }
  return t;
}

// --------------------------------------------------------- Euler transform

std::vector<mpz_class> euler_transform(std::span<const mpz_class> a) {
  const std::size_t M = a.size();
  // b_n = sum_{d | n} d a_d ; n d_n = sum_{k=1}^n b_k d_{n-k}
  std::vector<mpz_class> b(M + 1, 0), d(M + 1, 0);
  d[0] = 1;
  for (std::size_t n = 1; n <= M; ++n)
    for (std::size_t dv = 1; dv <= n; ++dv)
      if (n % dv == 0) b[n] += static_cast<unsigned long>(dv) * a[dv - 1];
  for (std::size_t n = 1; n <= M; ++n) {
    mpz_class s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += b[k] * d[n - k];
    d[n] = s / static_cast<unsigned long>(n);
  }
  return {d.begin() + 1, d.end()};
}

std::vector<mpz_class> inverse_euler(std::span<const mpz_class> d_in) {
  const std::size_t M = d_in.size();
  std::vector<mpz_class> d(M + 1), b(M + 1, 0), a(M + 1, 0);
  d[0] = 1;
  for (std::size_t n = 1; n <= M; ++n) d[n] = d_in[n - 1];
  for (std::size_t n = 1; n <= M; ++n) {
    mpz_class bn = static_cast<unsigned long>(n) * d[n];
    for (std::size_t k = 1; k < n; ++k) bn -= b[k] * d[n - k];
    b[n] = bn;
    mpz_class na = bn;
    for (std::size_t dv = 1; dv < n; ++dv)
      if (n % dv == 0) na -= static_cast<unsigned long>(dv) * a[dv];
    if (!mpz_divisible_ui_p(na.get_mpz_t(), static_cast<unsigned long>(n)))
      throw NotFreeProfileError("inverse_euler: non-integral generator count at degree " +
                                std::to_string(n));
    a[n] = na / static_cast<unsigned long>(n);
    if (a[n] < 0)
      throw NotFreeProfileError("not a free algebra profile: negative generator count at degree " +
                                std::to_string(n));
  }
  return {a.begin() + 1, a.end()};
}

}  // namespace luinv
