#pragma once

#include <map>
#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "luinv/combinatorics.hpp"

namespace luinv {

/// A symmetric function with exact rational coefficients in the power-sum
/// basis: sum_mu c_mu p_mu. Zero coefficients are never stored, and terms
/// iterate in Partition order (by degree, then reverse lexicographic).
class SymFunc {
 public:
  using Terms = std::map<Partition, mpq_class>;

  SymFunc() = default;
  static SymFunc constant(const mpq_class& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  mpq_class coeff(const Partition& mu) const;

  /// The homogeneous component of degree d.
  SymFunc degree_part(int d) const;

  /// Adds c * p_mu.
  void add_term(const Partition& mu, const mpq_class& c);

  SymFunc& operator+=(const SymFunc& o);
  SymFunc& operator-=(const SymFunc& o);
  SymFunc& operator*=(const mpq_class& c);
  friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
  friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
  friend SymFunc operator*(SymFunc a, const mpq_class& c) { return a *= c; }
  friend SymFunc operator*(const SymFunc& a, const SymFunc& b);
  friend bool operator==(const SymFunc& a, const SymFunc& b) { return a.terms_ == b.terms_; }

  std::string str() const;

 private:
  Terms terms_;
};

SymFunc p_basis(const Partition& mu);

/// s_lambda = sum_{mu |- |lambda|} z_mu^{-1} chi_lambda(mu) p_mu. Cached.
SymFunc schur(const Partition& lambda);
SymFunc complete_h(int l);    // s_(l)
SymFunc elementary_e(int l);  // s_(1^l)

/// A class function on S_m, given by its value on each cycle type.
using ClassFunction = std::map<Partition, mpq_class>;

/// ch f = sum_mu z_mu^{-1} f(mu) p_mu. Throws ArgumentError if f is missing
/// a class of S_m or has a key of the wrong weight.
SymFunc ch_map(int m, const ClassFunction& f);

/// Hall inner product, <p_lambda, p_mu> = delta z_lambda.
mpq_class hall_inner(const SymFunc& f, const SymFunc& g);

/// Adams operation p_k -> p_{rk}. Throws ArgumentError if r < 1.
SymFunc adams(int r, const SymFunc& f);

SymFunc power(const SymFunc& f, int e);

/// outer[inner]: linear in outer, multiplicative in the outer variable, and
/// p_r[inner] = adams(r, inner).
SymFunc plethysm(const SymFunc& outer, const SymFunc& inner);

/// Debug serialization: [{partition: [...], num: "...", den: "..."}, ...].
nlohmann::json to_json(const SymFunc& f);
SymFunc symfunc_from_json(const nlohmann::json& j);

}  // namespace luinv
