#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace luinv {

using Complex = std::complex<double>;

/// A closed tensor network: every label occurs on exactly two nodes.
/// Node data is row-major over the node's labels in the given order.
struct TensorNetwork {
  struct Node {
    const std::vector<Complex>* data = nullptr;
    bool conjugate = false;
    std::vector<int> labels;
  };
  std::vector<int> label_dims;
  std::vector<Node> nodes;

  /// Throws ArgumentError on dangling or repeated labels or data of the wrong size.
  void validate() const;
};

struct ContractionPlan {
  std::vector<std::pair<int, int>> steps;  // positions in the shrinking working list
  double cost = 0;                         // multiply-adds
  double peak_size = 0;                    // largest intermediate
};

/// Greedy order: at each step contract the pair (sharing a label if any such
/// pair exists) whose result is smallest, ties broken by cost, then position.
ContractionPlan plan_contraction(const TensorNetwork& net);

/// Contracts the network to a scalar. Throws BudgetError if the planned cost
/// exceeds budget multiply-adds.
Complex contract(const TensorNetwork& net, double budget = 1e8);

/// Direct summation over every label assignment. Throws BudgetError if the
/// number of assignments exceeds max_terms.
Complex naive_contract(const TensorNetwork& net, double max_terms = 1e7);

}  // namespace luinv
