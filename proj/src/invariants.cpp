#include "luinv/invariants.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include "luinv/cosets.hpp"
#include "luinv/errors.hpp"

namespace luinv {

namespace {

std::vector<std::size_t> strides_of(const std::vector<int>& shape) {
  std::vector<std::size_t> s(shape.size());
  std::size_t acc = 1;
  for (std::size_t p = shape.size(); p-- > 0;) {
    s[p] = acc;
    acc *= static_cast<std::size_t>(shape[p]);
  }
  return s;
}

std::vector<int> shape_of(const ParticleSpec& spec, const std::vector<int>& dims) {
  std::vector<int> shape;
  for (int j = 0; j < spec.k(); ++j)
    for (int t = 0; t < spec.l(j); ++t) shape.push_back(dims[static_cast<std::size_t>(j)]);
  return shape;
}

void check_dims(const ParticleSpec& spec, const std::vector<int>& dims) {
  spec.require_bose_fermi("state tensors");
  if (static_cast<int>(dims.size()) != spec.k())
    throw ArgumentError("state: need one local dimension per particle type");
  for (int n : dims)
    if (n < 1) throw ArgumentError("state: local dimensions must be positive");
}

// In-place projection onto the bose/fermi symmetry type of every colour.
void project(std::vector<Complex>& v, const ParticleSpec& spec, const std::vector<int>& dims) {
  const auto shape = shape_of(spec, dims);
  const auto stride = strides_of(shape);
  int offset = 0;
  for (int j = 0; j < spec.k(); ++j) {
    const int l = spec.l(j);
    if (l < 2) {
      offset += l;
      continue;
    }
    const bool fermion = spec.statistics(j) == Statistics::fermion;
    const auto perms = all_permutations(l);
    std::vector<bool> odd;
    for (const auto& p : perms) odd.push_back(fermion && p.sign() < 0);
    const double scale = 1.0 / factorial(l).get_d();
    std::vector<Complex> out(v.size(), 0.0);
    std::vector<int> idx(shape.size(), 0);
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
      Complex acc = 0;
      for (std::size_t q = 0; q < perms.size(); ++q) {
        const auto& p = perms[q];
        std::size_t src = flat;
        for (int t = 0; t < l; ++t) {
          const auto pos = static_cast<std::size_t>(offset + t);
          const auto from = static_cast<std::size_t>(offset + p(t));
          src -= static_cast<std::size_t>(idx[pos]) * stride[pos];
          src += static_cast<std::size_t>(idx[from]) * stride[pos];
        }
        acc += odd[q] ? -v[src] : v[src];
      }
      out[flat] = acc * scale;
      for (std::size_t p = shape.size(); p-- > 0;) {
        if (++idx[p] < shape[p]) break;
        idx[p] = 0;
      }
    }
    v = std::move(out);
    offset += l;
  }
}

double vec_norm(const std::vector<Complex>& v) {
  double s = 0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

std::string cache_key(const GraphClass& g, const ParticleSpec& spec) { return spec.str() + "#" + g.id(); }

struct NormCache {
  std::mutex mutex;
  std::map<std::string, double> values;
};

NormCache& norm_cache() {
  static NormCache c;
  return c;
}

void check_graph(const GraphClass& g, const ParticleSpec& spec) {
  if (g.line_sums() != spec.line_sums())
    throw ArgumentError("graph " + g.id() + " does not match the particle spec " + spec.str());
}

// Representative of g as the direct sum of its components' representatives.
std::vector<Permutation> component_sum_rep(const std::vector<GraphClass>& comps, const std::vector<int>& ls) {
  std::vector<std::vector<int>> img(ls.size());
  for (const auto& c : comps) {
    const auto rep = graph_to_perm_tuple(c);
    for (std::size_t j = 0; j < ls.size(); ++j) {
      const int base = static_cast<int>(img[j].size());
      for (int x = 0; x < rep[j].size(); ++x) img[j].push_back(base + rep[j](x));
    }
  }
  std::vector<Permutation> out;
  for (auto& v : img) out.emplace_back(std::move(v));
  return out;
}

TensorNetwork network_from_rep(const std::vector<Permutation>& sigmas, int m, const StateTensor& psi) {
  TensorNetwork net;
  const auto& spec = psi.spec;
  std::vector<int> offset;
  for (int j = 0; j < spec.k(); ++j) {
    offset.push_back(static_cast<int>(net.label_dims.size()));
    for (int x = 0; x < m * spec.l(j); ++x) net.label_dims.push_back(psi.dims[static_cast<std::size_t>(j)]);
  }
  for (int b = 0; b < m; ++b) {
    TensorNetwork::Node ket{&psi.coeffs, false, {}};
    TensorNetwork::Node bra{&psi.coeffs, true, {}};
    for (int j = 0; j < spec.k(); ++j) {
      const int l = spec.l(j);
      for (int t = 0; t < l; ++t) {
        ket.labels.push_back(offset[static_cast<std::size_t>(j)] + b * l + t);
        bra.labels.push_back(offset[static_cast<std::size_t>(j)] + sigmas[static_cast<std::size_t>(j)](b * l + t));
      }
    }
    net.nodes.push_back(std::move(ket));
    net.nodes.push_back(std::move(bra));
  }
  return net;
}

Complex raw_from_rep(const std::vector<Permutation>& sigmas, int m, const StateTensor& psi, double budget) {
  return contract(network_from_rep(sigmas, m, psi), budget);
}

std::vector<int> stable_dims_for(const ParticleSpec& spec, int m) {
  std::vector<int> d;
  for (int j = 0; j < spec.k(); ++j) d.push_back(std::max(1, m * spec.l(j)));
  return d;
}

}  // namespace

StateTensor StateTensor::zeros(const ParticleSpec& spec, const std::vector<int>& dims) {
  check_dims(spec, dims);
  StateTensor s;
  s.spec = spec;
  s.dims = dims;
  s.coeffs.assign(state_size(spec, dims), 0.0);
  return s;
}

std::vector<int> StateTensor::shape() const { return shape_of(spec, dims); }

std::size_t StateTensor::flat_index(std::span<const int> index) const {
  const auto sh = shape();
  if (index.size() != sh.size()) throw ArgumentError("state: index has the wrong length");
  std::size_t f = 0;
  for (std::size_t p = 0; p < sh.size(); ++p) {
    if (index[p] < 0 || index[p] >= sh[p]) throw ArgumentError("state: index out of range");
    f = f * static_cast<std::size_t>(sh[p]) + static_cast<std::size_t>(index[p]);
  }
  return f;
}

double StateTensor::norm() const { return vec_norm(coeffs); }

std::size_t state_size(const ParticleSpec& spec, const std::vector<int>& dims) {
  std::size_t n = 1;
  for (int s : shape_of(spec, dims)) n *= static_cast<std::size_t>(s);
  return n;
}

StateTensor symmetrize(std::vector<Complex> raw, const ParticleSpec& spec, const std::vector<int>& dims) {
  check_dims(spec, dims);
  if (raw.size() != state_size(spec, dims)) throw ArgumentError("symmetrize: array has the wrong size");
  project(raw, spec, dims);
  StateTensor s;
  s.spec = spec;
  s.dims = dims;
  s.coeffs = std::move(raw);
  return s;
}

StateTensor embed_state(const StateTensor& psi, const std::vector<int>& dims) {
  check_dims(psi.spec, dims);
  for (std::size_t j = 0; j < dims.size(); ++j)
    if (dims[j] < psi.dims[j]) throw ArgumentError("embed_state: new dimensions must not be smaller");
  StateTensor out = StateTensor::zeros(psi.spec, dims);
  const auto old_shape = psi.shape();
  const auto new_stride = strides_of(out.shape());
  std::vector<int> idx(old_shape.size(), 0);
  for (std::size_t flat = 0; flat < psi.coeffs.size(); ++flat) {
    std::size_t dst = 0;
    for (std::size_t p = 0; p < idx.size(); ++p) dst += static_cast<std::size_t>(idx[p]) * new_stride[p];
    out.coeffs[dst] = psi.coeffs[flat];
    for (std::size_t p = old_shape.size(); p-- > 0;) {
      if (++idx[p] < old_shape[p]) break;
      idx[p] = 0;
    }
  }
  return out;
}

StateTensor reference_separable(const ParticleSpec& spec, const std::vector<int>& dims) {
  check_dims(spec, dims);
  for (int j = 0; j < spec.k(); ++j)
    if (spec.statistics(j) == Statistics::fermion && dims[static_cast<std::size_t>(j)] < spec.l(j))
      throw ArgumentError("reference_separable: fermionic type " + spec.type(j).str() + " needs n >= " +
                          std::to_string(spec.l(j)));
  std::vector<int> index;
  for (int j = 0; j < spec.k(); ++j)
    for (int t = 0; t < spec.l(j); ++t)
      index.push_back(spec.statistics(j) == Statistics::fermion ? t : 0);
  StateTensor s = StateTensor::zeros(spec, dims);
  s.at(index) = 1.0;
  project(s.coeffs, spec, dims);
  const double n = s.norm();
  for (auto& x : s.coeffs) x /= n;
  return s;
}

StateTensor random_state(const ParticleSpec& spec, const std::vector<int>& dims, std::uint64_t seed) {
  check_dims(spec, dims);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> raw(state_size(spec, dims));
  for (auto& x : raw) {
    const double re = normal(gen);
    const double im = normal(gen);
    x = Complex(re, im);
  }
  StateTensor s = symmetrize(std::move(raw), spec, dims);
  const double n = s.norm();
  if (n == 0) throw ArgumentError("random_state: the state space is zero (fermionic type with n < l)");
  for (auto& x : s.coeffs) x /= n;
  return s;
}

Eigen::MatrixXcd random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      a(r, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

StateTensor apply_local_unitaries(const StateTensor& psi, const std::vector<Eigen::MatrixXcd>& us) {
  if (static_cast<int>(us.size()) != psi.spec.k())
    throw ArgumentError("apply_local_unitaries: need one matrix per particle type");
  const auto shape = psi.shape();
  StateTensor out = psi;
  std::size_t pos = 0;
  for (int j = 0; j < psi.spec.k(); ++j) {
    const auto& u = us[static_cast<std::size_t>(j)];
    const int n = psi.dims[static_cast<std::size_t>(j)];
    if (u.rows() != n || u.cols() != n) throw ArgumentError("apply_local_unitaries: matrix of wrong size");
    for (int t = 0; t < psi.spec.l(j); ++t, ++pos) {
      std::size_t inner = 1, outer = 1;
      for (std::size_t p = pos + 1; p < shape.size(); ++p) inner *= static_cast<std::size_t>(shape[p]);
      for (std::size_t p = 0; p < pos; ++p) outer *= static_cast<std::size_t>(shape[p]);
      std::vector<Complex> next(out.coeffs.size(), 0.0);
      const auto nn = static_cast<std::size_t>(n);
      for (std::size_t o = 0; o < outer; ++o)
        for (std::size_t a = 0; a < nn; ++a)
          for (std::size_t b = 0; b < nn; ++b) {
            const Complex uab = u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (uab == Complex(0)) continue;
            const Complex* src = &out.coeffs[(o * nn + b) * inner];
            Complex* dst = &next[(o * nn + a) * inner];
            for (std::size_t i = 0; i < inner; ++i) dst[i] += uab * src[i];
          }
      out.coeffs = std::move(next);
    }
  }
  return out;
}

TensorNetwork build_network(const GraphClass& g, const StateTensor& psi) {
  check_graph(g, psi.spec);
  return network_from_rep(graph_to_perm_tuple(g), g.m(), psi);
}

Complex evaluate_raw(const GraphClass& g, const StateTensor& psi, const EvalOptions& opts) {
  check_graph(g, psi.spec);
  if (g.m() == 0) return 1.0;
  return raw_from_rep(graph_to_perm_tuple(g), g.m(), psi, opts.budget);
}

Complex evaluate_naive(const GraphClass& g, const StateTensor& psi, double max_terms) {
  if (g.m() == 0) return 1.0;
  return naive_contract(build_network(g, psi), max_terms);
}

double normalization_constant(const GraphClass& connected, const ParticleSpec& spec, const EvalOptions& opts) {
  check_graph(connected, spec);
  const auto key = cache_key(connected, spec);
  {
    std::lock_guard lock(norm_cache().mutex);
    auto it = norm_cache().values.find(key);
    if (it != norm_cache().values.end()) return it->second;
  }
  std::vector<int> small;
  for (int j = 0; j < spec.k(); ++j) small.push_back(spec.statistics(j) == Statistics::fermion ? spec.l(j) : 1);
  double n = evaluate_raw(connected, reference_separable(spec, small), opts).real();
  if (std::abs(n) < 1e-9) {
    const auto psi = random_state(spec, stable_dims_for(spec, connected.m()), 0x9e3779b97f4a7c15ULL);
    n = std::abs(evaluate_raw(connected, psi, opts));
    if (n < 1e-9) n = 1;
  }
  std::lock_guard lock(norm_cache().mutex);
  norm_cache().values.emplace(key, n);
  return n;
}

Complex evaluate(const GraphClass& g, const StateTensor& psi, const EvalOptions& opts) {
  check_graph(g, psi.spec);
  if (g.m() == 0) return 1.0;
  Complex v = 1.0;
  for (const auto& c : components(g)) v *= evaluate_raw(c, psi, opts) / normalization_constant(c, psi.spec, opts);
  return v;
}

Complex evaluate_direct(const GraphClass& g, const StateTensor& psi, const EvalOptions& opts) {
  check_graph(g, psi.spec);
  if (g.m() == 0) return 1.0;
  const auto comps = components(g);
  const auto ls = psi.spec.line_sums();
  const auto rep = graph_to_perm_tuple(g);
  const auto sign = relative_sign(psi.spec, g.m(), component_sum_rep(comps, ls), rep);
  if (!sign) throw std::logic_error("evaluate_direct: components do not reassemble the graph");
  double n = 1;
  for (const auto& c : comps) n *= normalization_constant(c, psi.spec, opts);
  return raw_from_rep(rep, g.m(), psi, opts.budget) * static_cast<double>(*sign) / n;
}

bool numerically_vanishing(const GraphClass& g, const ParticleSpec& spec, int samples, std::uint64_t seed,
                           double tol, const EvalOptions& opts) {
  check_graph(g, spec);
  const auto dims = stable_dims_for(spec, g.m());
  for (int s = 0; s < samples; ++s) {
    const auto psi = random_state(spec, dims, seed + static_cast<std::uint64_t>(s));
    if (std::abs(evaluate_raw(g, psi, opts)) >= tol) return false;
  }
  return true;
}

int rank_probe(const ParticleSpec& spec, int m, const std::vector<int>& dims, int samples, std::uint64_t seed,
               const EvalOptions& opts) {
  check_dims(spec, dims);
  const auto graphs = enumerate_graphs(spec.line_sums(), m);
  if (samples < 1) throw ArgumentError("rank_probe: need at least one sample");
  Eigen::MatrixXcd a(samples, static_cast<Eigen::Index>(graphs.size()));
  for (int s = 0; s < samples; ++s) {
    const auto psi = random_state(spec, dims, seed + static_cast<std::uint64_t>(s));
    for (std::size_t c = 0; c < graphs.size(); ++c)
      a(s, static_cast<Eigen::Index>(c)) = evaluate_raw(graphs[c], psi, opts);
  }
  // Columns at roundoff level are vanishing invariants; the rest are scaled to unit norm.
  double max_col = 0;
  for (Eigen::Index c = 0; c < a.cols(); ++c) max_col = std::max(max_col, a.col(c).norm());
  if (max_col == 0) return 0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (a.col(c).norm() > 1e-10 * max_col) keep.push_back(c);
  Eigen::MatrixXcd b(a.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    b.col(static_cast<Eigen::Index>(i)) = a.col(keep[i]) / a.col(keep[i]).norm();
  if (b.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(b);
  const auto& sv = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++r;
  return r;
}

double product_check(const GraphClass& g, const GraphClass& h, const StateTensor& psi, const EvalOptions& opts) {
  const auto u = disjoint_union(g, h);
  return std::abs(evaluate(g, psi, opts) * evaluate(h, psi, opts) - evaluate_direct(u, psi, opts));
}

DensityTensor DensityTensor::from_matrix(const ParticleSpec& spec, const std::vector<int>& dims, Eigen::MatrixXcd m) {
  check_dims(spec, dims);
  const auto n = static_cast<Eigen::Index>(state_size(spec, dims));
  if (m.rows() != n || m.cols() != n) throw ArgumentError("density: matrix has the wrong size");
  if ((m - m.adjoint()).norm() > 1e-9 * std::max(1.0, m.norm())) throw ArgumentError("density: matrix is not Hermitian");
  auto project_cols = [&](Eigen::MatrixXcd& x) {
    std::vector<Complex> col(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) {
      for (Eigen::Index r = 0; r < n; ++r) col[static_cast<std::size_t>(r)] = x(r, c);
      project(col, spec, dims);
      for (Eigen::Index r = 0; r < n; ++r) x(r, c) = col[static_cast<std::size_t>(r)];
    }
  };
  project_cols(m);
  m.adjointInPlace();
  project_cols(m);
  m.adjointInPlace();
  Eigen::MatrixXcd h = (m + m.adjoint()) * 0.5;
  const double tr = h.trace().real();
  if (tr <= 1e-12) throw ArgumentError("density: zero trace on the symmetric subspace");
  h /= tr;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) throw ArgumentError("density: matrix is not positive semidefinite");
  DensityTensor d;
  d.spec = spec;
  d.dims = dims;
  d.matrix = std::move(h);
  return d;
}

DensityTensor DensityTensor::pure(const StateTensor& psi) {
  const auto n = static_cast<Eigen::Index>(psi.coeffs.size());
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = psi.coeffs[static_cast<std::size_t>(i)];
  return from_matrix(psi.spec, psi.dims, v * v.adjoint());
}

int DensityTensor::rank() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
  int r = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-12) ++r;
  return r;
}

StateTensor purify(const DensityTensor& rho, int n_env) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix);
  const auto& ev = es.eigenvalues();
  const Eigen::Index n = ev.size();
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (ev(i) > 1e-12) ++rank;
  if (n_env < std::max(rank, 1))
    throw ArgumentError("purify: environment dimension " + std::to_string(n_env) + " is below the rank " +
                        std::to_string(rank));
  auto types = rho.spec.types();
  types.push_back(Partition{1});
  auto dims = rho.dims;
  dims.push_back(n_env);
  StateTensor psi = StateTensor::zeros(ParticleSpec(std::move(types)), dims);
  const auto ne = static_cast<std::size_t>(n_env);
  // Eigenvalues are ascending; environment vector a carries the a-th largest.
  for (int a = 0; a < rank; ++a) {
    const Eigen::Index col = n - 1 - a;
    const double w = std::sqrt(std::max(0.0, ev(col)));
    for (Eigen::Index x = 0; x < n; ++x)
      psi.coeffs[static_cast<std::size_t>(x) * ne + static_cast<std::size_t>(a)] = w * es.eigenvectors()(x, col);
  }
  return psi;
}

DensityTensor trace_out_last(const StateTensor& psi) {
  if (psi.spec.k() < 2) throw ArgumentError("trace_out_last: need at least two particle types");
  auto types = psi.spec.types();
  types.pop_back();
  auto dims = psi.dims;
  dims.pop_back();
  const ParticleSpec rest(std::move(types));
  const auto d = static_cast<Eigen::Index>(state_size(rest, dims));
  const auto e = static_cast<Eigen::Index>(psi.coeffs.size()) / d;
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(psi.coeffs.data(), d, e);
  DensityTensor out;
  out.spec = rest;
  out.dims = std::move(dims);
  out.matrix = a * a.adjoint();
  return out;
}

Complex evaluate_mixed(const GraphClass& g, const DensityTensor& rho, const EvalOptions& opts) {
  const auto psi = purify(rho, std::max(1, rho.rank()));
  if (g.line_sums() != psi.spec.line_sums())
    throw ArgumentError("evaluate_mixed: graph " + g.id() + " does not match the purified spec " + psi.spec.str());
  return evaluate(g, psi, opts);
}

}  // namespace luinv
