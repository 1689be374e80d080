#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "luinv/combinatorics.hpp"

namespace luinv {

/// Dense square matrix of nonnegative integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<int>> rows);

  int size() const { return n_; }
  int& operator()(int r, int c) { return a_[idx(r, c)]; }
  int operator()(int r, int c) const { return a_[idx(r, c)]; }
  const std::vector<int>& data() const { return a_; }

  int row_sum(int r) const;
  int col_sum(int c) const;
  IntMatrix transposed() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
  }
  int n_ = 0;
  std::vector<int> a_;
};

/// An isomorphism class of k-coloured bipartite multigraphs on m + m
/// vertices whose colour-j subgraph is l_j-regular, stored as its canonical
/// k-tuple of biadjacency matrices (rows = first vertex class).
///
/// The canonical representative is the minimum over all row permutations of
/// the tuple whose columns (each read as the concatenation over colours of
/// its entries) are then sorted ascending. Only canonicalize() and the
/// operations built on it produce GraphClass values.
class GraphClass {
 public:
  int k() const { return static_cast<int>(mats_.size()); }
  int m() const { return m_; }
  const std::vector<int>& line_sums() const { return line_sums_; }
  const std::vector<IntMatrix>& mats() const { return mats_; }
  const IntMatrix& mat(int j) const { return mats_[static_cast<std::size_t>(j)]; }

  /// Text form of the canonical tuple, e.g. "2,1;1,2|1,0;0,1". Matrices are
  /// separated by '|', rows by ';', entries by ','.
  std::string id() const;

  friend bool operator==(const GraphClass&, const GraphClass&) = default;
  friend auto operator<=>(const GraphClass& a, const GraphClass& b) {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    return a.key_ <=> b.key_;
  }

 private:
  friend GraphClass canonicalize(const std::vector<IntMatrix>& raw, const std::vector<int>& line_sums);
  int m_ = 0;
  std::vector<int> line_sums_;
  std::vector<IntMatrix> mats_;
  std::vector<int> key_;  // column-major flattening used for ordering
};

/// Canonical representative of the class of a raw tuple, with the line sums
/// read off the matrices. Throws InvalidGraphError on inconsistent sizes or
/// violated line sums, and for m = 0 (use the overload below).
GraphClass canonicalize(const std::vector<IntMatrix>& raw);
GraphClass canonicalize(const std::vector<IntMatrix>& raw, const std::vector<int>& line_sums);

/// Parses GraphClass::id() output (any representative) and canonicalizes it.
GraphClass graph_from_id(const std::string& id);

struct EnumerateOptions {
  /// Hard cap on sum_j l_j * m.
  int budget = 28;
};

/// Every class with k colours, the given line sums and m vertices per side,
/// sorted ascending. Throws BudgetError if sum_j l_j * m exceeds the budget.
std::vector<GraphClass> enumerate_graphs(const std::vector<int>& line_sums, int m,
                                         const EnumerateOptions& opts = {});

bool is_connected(const GraphClass& g);

/// Connected components, each canonicalized, in ascending order.
std::vector<GraphClass> components(const GraphClass& g);

/// Throws ArgumentError if the colour counts or line sums differ.
GraphClass disjoint_union(const GraphClass& g, const GraphClass& h);

/// Swaps the two vertex classes (transposes every matrix).
GraphClass transpose(const GraphClass& g);

/// Raw (not canonicalized) matrix tuple: entry (r, c) of colour j counts the
/// x in block r (blocks of size l_j) with sigma_j(x) in block c.
std::vector<IntMatrix> perm_tuple_to_matrices(const std::vector<Permutation>& sigmas,
                                              const std::vector<int>& line_sums, int m);

GraphClass perm_tuple_to_graph(const std::vector<Permutation>& sigmas,
                               const std::vector<int>& line_sums, int m);

/// A representative tuple of the double coset labelled by g, built by filling
/// blocks greedily. perm_tuple_to_matrices of the result equals g's matrices.
std::vector<Permutation> graph_to_perm_tuple(const GraphClass& g);

/// Directed multigraph on m vertices with k colours; colour j has in- and
/// out-degree l_j everywhere. Canonical under simultaneous relabelling of
/// rows and columns (minimal tuple over all vertex permutations).
class DirectedGraphClass {
 public:
  int k() const { return static_cast<int>(adj_.size()); }
  int m() const { return m_; }
  const std::vector<int>& line_sums() const { return line_sums_; }
  const std::vector<IntMatrix>& adjacency() const { return adj_; }

  friend bool operator==(const DirectedGraphClass&, const DirectedGraphClass&) = default;
  friend auto operator<=>(const DirectedGraphClass&, const DirectedGraphClass&) = default;

 private:
  friend DirectedGraphClass canonicalize_directed(const std::vector<IntMatrix>& raw, int m);
  int m_ = 0;
  std::vector<int> line_sums_;
  std::vector<IntMatrix> adj_;
};

/// m is explicit so that colour-free graphs (k = 0) keep their vertex count.
DirectedGraphClass canonicalize_directed(const std::vector<IntMatrix>& raw, int m);

/// Contracts the last colour, which must be a perfect matching (l_k = 1).
/// Throws ArgumentError otherwise.
DirectedGraphClass to_directed(const GraphClass& g);

/// Inverse of to_directed: appends the identity matching as the last colour.
GraphClass from_directed(const DirectedGraphClass& d);

std::string export_dot(const GraphClass& g);
std::string export_dot(const DirectedGraphClass& d);

/// {k, m, line_sums, mats} with mats as row-major integer arrays.
nlohmann::json to_json(const GraphClass& g);

}  // namespace luinv
