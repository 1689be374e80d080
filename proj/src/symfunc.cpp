#include "luinv/symfunc.hpp"

#include <mutex>
#include <sstream>
#include <vector>

#include "luinv/errors.hpp"

namespace luinv {

SymFunc SymFunc::constant(const mpq_class& c) {
  SymFunc f;
  f.add_term(Partition{}, c);
  return f;
}

mpq_class SymFunc::coeff(const Partition& mu) const {
  auto it = terms_.find(mu);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

SymFunc SymFunc::degree_part(int d) const {
  SymFunc out;
  for (const auto& [mu, c] : terms_)
    if (mu.weight() == d) out.terms_.emplace(mu, c);
  return out;
}

void SymFunc::add_term(const Partition& mu, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(mu, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SymFunc& SymFunc::operator+=(const SymFunc& o) {
  for (const auto& [mu, c] : o.terms_) add_term(mu, c);
  return *this;
}

SymFunc& SymFunc::operator-=(const SymFunc& o) {
  for (const auto& [mu, c] : o.terms_) add_term(mu, -c);
  return *this;
}

SymFunc& SymFunc::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mu, v] : terms_) v *= c;
  return *this;
}

SymFunc operator*(const SymFunc& a, const SymFunc& b) {
  SymFunc out;
  mpq_class prod;
  for (const auto& [mu, c] : a.terms_)
    for (const auto& [nu, d] : b.terms_) {
      prod = c * d;
      out.add_term(mu.merged(nu), prod);
    }
  return out;
}

std::string SymFunc::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mu, c] : terms_) {
    os << (first ? "" : " + ") << c.get_str() << "*p" << mu.str();
    first = false;
  }
  return os.str();
}

SymFunc p_basis(const Partition& mu) {
  SymFunc f;
  f.add_term(mu, 1);
  return f;
}

namespace {

struct SchurCache {
  std::mutex mutex;
  std::map<Partition, SymFunc> values;
};

SchurCache& schur_cache() {
  static SchurCache c;
  return c;
}

}  // namespace

SymFunc schur(const Partition& lambda) {
  {
    std::lock_guard lock(schur_cache().mutex);
    auto it = schur_cache().values.find(lambda);
    if (it != schur_cache().values.end()) return it->second;
  }
  SymFunc s;
  for (const auto& mu : partitions_of(lambda.weight())) {
    mpz_class chi = character_value(lambda, mu);
    if (chi == 0) continue;
    mpq_class c(chi, z_of(mu));
    c.canonicalize();
    s.add_term(mu, c);
  }
  std::lock_guard lock(schur_cache().mutex);
  schur_cache().values.emplace(lambda, s);
  return s;
}

SymFunc complete_h(int l) { return schur(Partition::row(l)); }
SymFunc elementary_e(int l) { return schur(Partition::column(l)); }

SymFunc ch_map(int m, const ClassFunction& f) {
  for (const auto& [mu, v] : f)
    if (mu.weight() != m) throw ArgumentError("ch_map: class " + mu.str() + " is not of S_" + std::to_string(m));
  SymFunc out;
  for (const auto& mu : partitions_of(m)) {
    auto it = f.find(mu);
    if (it == f.end()) throw ArgumentError("ch_map: class function undefined on " + mu.str());
    out.add_term(mu, it->second / mpq_class(z_of(mu)));
  }
  return out;
}

mpq_class hall_inner(const SymFunc& f, const SymFunc& g) {
  const auto& small = f.size() <= g.size() ? f.terms() : g.terms();
  const auto& large = f.size() <= g.size() ? g.terms() : f.terms();
  mpq_class acc = 0;
  for (const auto& [mu, c] : small) {
    auto it = large.find(mu);
    if (it != large.end()) acc += c * it->second * mpq_class(z_of(mu));
  }
  return acc;
}

SymFunc adams(int r, const SymFunc& f) {
  if (r < 1) throw ArgumentError("adams: r must be positive");
  SymFunc out;
  for (const auto& [mu, c] : f.terms()) out.add_term(mu.scaled(r), c);
  return out;
}

SymFunc power(const SymFunc& f, int e) {
  SymFunc acc = SymFunc::constant(1);
  for (int i = 0; i < e; ++i) acc = acc * f;
  return acc;
}

SymFunc plethysm(const SymFunc& outer, const SymFunc& inner) {
  std::map<int, SymFunc> adams_cache;
  auto adams_of = [&](int r) -> const SymFunc& {
    auto it = adams_cache.find(r);
    if (it == adams_cache.end()) it = adams_cache.emplace(r, adams(r, inner)).first;
    return it->second;
  };
  SymFunc out;
  for (const auto& [rho, c] : outer.terms()) {
    SymFunc term = SymFunc::constant(c);
    for (int part : rho.parts()) term = term * adams_of(part);
    out += term;
  }
  return out;
}

nlohmann::json to_json(const SymFunc& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [mu, c] : f.terms())
    arr.push_back({{"partition", mu.parts()},
                   {"num", c.get_num().get_str()},
                   {"den", c.get_den().get_str()}});
  return arr;
}

SymFunc symfunc_from_json(const nlohmann::json& j) {
  SymFunc f;
  for (const auto& rec : j) {
    mpq_class c(mpz_class(rec.at("num").get<std::string>()), mpz_class(rec.at("den").get<std::string>()));
    c.canonicalize();
    f.add_term(Partition(rec.at("partition").get<std::vector<int>>()), c);
  }
  return f;
}

}  // namespace luinv
