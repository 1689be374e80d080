#include "luinv/contraction.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>

#include <Eigen/Dense>

#include "luinv/errors.hpp"

namespace luinv {

namespace {

struct Work {
  std::vector<int> labels;
  std::vector<Complex> data;
};

double label_product(const std::vector<int>& labels, const std::vector<int>& dims) {
  double p = 1;
  for (int l : labels) p *= dims[static_cast<std::size_t>(l)];
  return p;
}

// Reorders data from labels `from` to labels `to` (same set).
std::vector<Complex> permute(const std::vector<Complex>& data, const std::vector<int>& from,
                             const std::vector<int>& to, const std::vector<int>& dims) {
  const std::size_t r = from.size();
  if (r == 0 || from == to) return data;
  std::vector<std::size_t> stride_from(r);
  std::size_t s = 1;
  for (std::size_t i = r; i-- > 0;) {
    stride_from[i] = s;
    s *= static_cast<std::size_t>(dims[static_cast<std::size_t>(from[i])]);
  }
  std::vector<std::size_t> stride(r), extent(r);
  for (std::size_t i = 0; i < r; ++i) {
    const auto pos = static_cast<std::size_t>(std::find(from.begin(), from.end(), to[i]) - from.begin());
    stride[i] = stride_from[pos];
    extent[i] = static_cast<std::size_t>(dims[static_cast<std::size_t>(to[i])]);
  }
  std::vector<Complex> out(data.size());
  std::vector<std::size_t> idx(r, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < out.size(); ++dst) {
    out[dst] = data[src];
    for (std::size_t i = r; i-- > 0;) {
      src += stride[i];
      if (++idx[i] < extent[i]) break;
      src -= stride[i] * extent[i];
      idx[i] = 0;
    }
  }
  return out;
}

Work contract_pair(const Work& a, const Work& b, const std::vector<int>& dims) {
  std::vector<int> shared, free_a, free_b;
  for (int l : a.labels)
    (std::find(b.labels.begin(), b.labels.end(), l) != b.labels.end() ? shared : free_a).push_back(l);
  for (int l : b.labels)
    if (std::find(shared.begin(), shared.end(), l) == shared.end()) free_b.push_back(l);

  std::vector<int> order_a = free_a;
  order_a.insert(order_a.end(), shared.begin(), shared.end());
  std::vector<int> order_b = shared;
  order_b.insert(order_b.end(), free_b.begin(), free_b.end());
  const auto pa = permute(a.data, a.labels, order_a, dims);
  const auto pb = permute(b.data, b.labels, order_b, dims);

  const auto rows = static_cast<Eigen::Index>(label_product(free_a, dims));
  const auto inner = static_cast<Eigen::Index>(label_product(shared, dims));
  const auto cols = static_cast<Eigen::Index>(label_product(free_b, dims));
  using Mat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const Mat> ma(pa.data(), rows, inner);
  Eigen::Map<const Mat> mb(pb.data(), inner, cols);

  Work c;
  c.labels = free_a;
  c.labels.insert(c.labels.end(), free_b.begin(), free_b.end());
  c.data.resize(static_cast<std::size_t>(rows * cols));
  Eigen::Map<Mat> mc(c.data.data(), rows, cols);
  mc.noalias() = ma * mb;
  return c;
}

std::vector<int> merged_labels(const std::vector<int>& a, const std::vector<int>& b, bool& shares) {
  std::vector<int> out;
  shares = false;
  for (int l : a) {
    if (std::find(b.begin(), b.end(), l) != b.end()) {
      shares = true;
    } else {
      out.push_back(l);
    }
  }
  for (int l : b)
    if (std::find(a.begin(), a.end(), l) == a.end()) out.push_back(l);
  return out;
}

}  // namespace

void TensorNetwork::validate() const {
  std::map<int, int> count;
  for (const auto& n : nodes) {
    if (!n.data) throw ArgumentError("tensor network: node without data");
    std::vector<int> seen;
    double size = 1;
    for (int l : n.labels) {
      if (l < 0 || l >= static_cast<int>(label_dims.size()))
        throw ArgumentError("tensor network: label out of range");
      if (std::find(seen.begin(), seen.end(), l) != seen.end())
        throw ArgumentError("tensor network: label repeated on one node");
      seen.push_back(l);
      ++count[l];
      size *= label_dims[static_cast<std::size_t>(l)];
    }
    if (static_cast<double>(n.data->size()) != size)
      throw ArgumentError("tensor network: node data has the wrong size");
  }
  for (const auto& [l, c] : count)
    if (c != 2) throw ArgumentError("tensor network: label " + std::to_string(l) + " is not paired");
}

ContractionPlan plan_contraction(const TensorNetwork& net) {
  std::vector<std::vector<int>> live;
  for (const auto& n : net.nodes) live.push_back(n.labels);
  ContractionPlan plan;
  for (const auto& l : live) plan.peak_size = std::max(plan.peak_size, label_product(l, net.label_dims));
  while (live.size() > 1) {
    int best_i = -1, best_j = -1;
    bool best_shares = false;
    double best_size = std::numeric_limits<double>::infinity();
    double best_cost = best_size;
    std::vector<int> best_labels;
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        bool shares = false;
        auto labels = merged_labels(live[i], live[j], shares);
        const double size = label_product(labels, net.label_dims);
        // multiply-adds = product over the union of labels
        std::vector<int> uni = live[i];
        for (int l : live[j])
          if (std::find(uni.begin(), uni.end(), l) == uni.end()) uni.push_back(l);
        const double madds = label_product(uni, net.label_dims);
        const bool better =
            (shares && !best_shares) ||
            (shares == best_shares && (size < best_size || (size == best_size && madds < best_cost)));
        if (better) {
          best_i = static_cast<int>(i);
          best_j = static_cast<int>(j);
          best_shares = shares;
          best_size = size;
          best_cost = madds;
          best_labels = std::move(labels);
        }
      }
    }
    plan.steps.emplace_back(best_i, best_j);
    plan.cost += best_cost;
    plan.peak_size = std::max(plan.peak_size, best_size);
    live.erase(live.begin() + best_j);
    live[static_cast<std::size_t>(best_i)] = std::move(best_labels);
  }
  return plan;
}

Complex contract(const TensorNetwork& net, double budget) {
  net.validate();
  if (net.nodes.empty()) return 1.0;
  const auto plan = plan_contraction(net);
  if (plan.cost > budget)
    throw BudgetError("contraction needs about " + std::to_string(static_cast<long long>(plan.cost)) +
                      " multiply-adds, budget is " + std::to_string(static_cast<long long>(budget)));
  std::vector<Work> live;
  for (const auto& n : net.nodes) {
    Work w{n.labels, *n.data};
    if (n.conjugate)
      for (auto& x : w.data) x = std::conj(x);
    live.push_back(std::move(w));
  }
  for (const auto& [i, j] : plan.steps) {
    Work c = contract_pair(live[static_cast<std::size_t>(i)], live[static_cast<std::size_t>(j)], net.label_dims);
    live.erase(live.begin() + j);
    live[static_cast<std::size_t>(i)] = std::move(c);
  }
  return live.front().data.front();
}

Complex naive_contract(const TensorNetwork& net, double max_terms) {
  net.validate();
  const std::size_t L = net.label_dims.size();
  double terms = 1;
  for (int d : net.label_dims) terms *= d;
  if (terms > max_terms)
    throw BudgetError("naive contraction needs " + std::to_string(static_cast<long long>(terms)) + " terms");
  std::vector<int> assign(L, 0);
  Complex total = 0;
  for (double t = 0; t < terms; ++t) {
    Complex prod = 1;
    for (const auto& n : net.nodes) {
      std::size_t off = 0;
      for (int l : n.labels)
        off = off * static_cast<std::size_t>(net.label_dims[static_cast<std::size_t>(l)]) +
              static_cast<std::size_t>(assign[static_cast<std::size_t>(l)]);
      const Complex v = (*n.data)[off];
      prod *= n.conjugate ? std::conj(v) : v;
    }
    total += prod;
    for (std::size_t l = L; l-- > 0;) {
      if (++assign[l] < net.label_dims[l]) break;
      assign[l] = 0;
    }
  }
  return total;
}

}  // namespace luinv
