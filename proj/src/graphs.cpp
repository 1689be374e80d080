#include "luinv/graphs.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "luinv/errors.hpp"

namespace luinv {

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : IntMatrix(static_cast<int>(rows.size())) {
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) throw ArgumentError("IntMatrix: rows must be square");
    int c = 0;
    for (int v : row) (*this)(r, c++) = v;
    ++r;
  }
}

int IntMatrix::row_sum(int r) const {
  int s = 0;
  for (int c = 0; c < n_; ++c) s += (*this)(r, c);
  return s;
}

int IntMatrix::col_sum(int c) const {
  int s = 0;
  for (int r = 0; r < n_; ++r) s += (*this)(r, c);
  return s;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(n_);
  for (int r = 0; r < n_; ++r)
    for (int c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

// ----------------------------------------------------------- canonical form

namespace {

void validate(const std::vector<IntMatrix>& raw, const std::vector<int>& line_sums) {
  if (raw.size() != line_sums.size()) throw InvalidGraphError("one line sum per colour required");
  if (raw.empty()) throw InvalidGraphError("graph needs at least one colour");
  const int m = raw.front().size();
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const auto& a = raw[j];
    if (a.size() != m) throw InvalidGraphError("all colour matrices must have the same size");
    for (int v : a.data())
      if (v < 0) throw InvalidGraphError("negative multiplicity");
    for (int i = 0; i < m; ++i)
      if (a.row_sum(i) != line_sums[j] || a.col_sum(i) != line_sums[j])
        throw InvalidGraphError("colour " + std::to_string(j + 1) + " is not " +
                                std::to_string(line_sums[j]) + "-regular");
  }
}

}  // namespace

GraphClass canonicalize(const std::vector<IntMatrix>& raw) {
  if (raw.empty()) throw InvalidGraphError("graph needs at least one colour");
  if (raw.front().size() == 0) throw InvalidGraphError("line sums of an empty graph must be given");
  std::vector<int> ls;
  for (const auto& a : raw) ls.push_back(a.row_sum(0));
  return canonicalize(raw, ls);
}

GraphClass canonicalize(const std::vector<IntMatrix>& raw, const std::vector<int>& line_sums) {
  validate(raw, line_sums);
  const int m = raw.front().size();
  const auto k = raw.size();
  const auto colen = k * static_cast<std::size_t>(m);

  std::vector<int> q(static_cast<std::size_t>(m));
  std::iota(q.begin(), q.end(), 0);
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(m), std::vector<int>(colen));
  std::vector<int> best_key, key(colen * static_cast<std::size_t>(m));
  std::vector<int> best_q, order(static_cast<std::size_t>(m)), best_order;

  do {
    for (int c = 0; c < m; ++c) {
      auto& col = cols[static_cast<std::size_t>(c)];
      std::size_t t = 0;
      for (std::size_t j = 0; j < k; ++j)
        for (int r = 0; r < m; ++r) col[t++] = raw[j](q[static_cast<std::size_t>(r)], c);
    }
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return cols[static_cast<std::size_t>(a)] < cols[static_cast<std::size_t>(b)]; });
    std::size_t t = 0;
    for (int c : order)
      for (int v : cols[static_cast<std::size_t>(c)]) key[t++] = v;
    if (best_key.empty() || key < best_key) {
      best_key = key;
      best_q = q;
      best_order = order;
    }
  } while (std::next_permutation(q.begin(), q.end()));

  GraphClass g;
  g.m_ = m;
  g.line_sums_ = line_sums;
  g.key_ = std::move(best_key);
  g.mats_.assign(k, IntMatrix(m));
  for (std::size_t j = 0; j < k; ++j)
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        g.mats_[j](r, c) = raw[j](best_q[static_cast<std::size_t>(r)], best_order[static_cast<std::size_t>(c)]);
  return g;
}

std::string GraphClass::id() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < mats_.size(); ++j) {
    if (j) os << '|';
    for (int r = 0; r < m_; ++r) {
      if (r) os << ';';
      for (int c = 0; c < m_; ++c) os << (c ? "," : "") << mats_[j](r, c);
    }
  }
  return os.str();
}

GraphClass graph_from_id(const std::string& id) {
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
  };
  std::vector<IntMatrix> mats;
  for (const auto& mtxt : split(id, '|')) {
    const auto rows = split(mtxt, ';');
    IntMatrix a(static_cast<int>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto entries = split(rows[r], ',');
      if (entries.size() != rows.size()) throw InvalidGraphError("graph id: matrix is not square: " + id);
      for (std::size_t c = 0; c < entries.size(); ++c) {
        try {
          std::size_t used = 0;
          a(static_cast<int>(r), static_cast<int>(c)) = std::stoi(entries[c], &used);
          if (used != entries[c].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw InvalidGraphError("graph id: bad entry '" + entries[c] + "'");
        }
      }
    }
    mats.push_back(std::move(a));
  }
  return canonicalize(mats);
}

// -------------------------------------------------------------- enumeration

std::vector<GraphClass> enumerate_graphs(const std::vector<int>& line_sums, int m,
                                         const EnumerateOptions& opts) {
  if (line_sums.empty()) throw ArgumentError("enumerate: need at least one colour");
  if (m < 0) throw ArgumentError("enumerate: negative degree");
  int cost = 0;
  for (int l : line_sums) {
    if (l < 1) throw ArgumentError("enumerate: line sums must be positive");
    cost += l * m;
  }
  if (cost > opts.budget)
    throw BudgetError("graph enumeration: sum of l_j*m = " + std::to_string(cost) +
                      " exceeds the budget " + std::to_string(opts.budget));
  const auto k = line_sums.size();
  if (m == 0) return {canonicalize(std::vector<IntMatrix>(k, IntMatrix(0)), line_sums)};

  const auto um = static_cast<std::size_t>(m);
  std::vector<std::vector<int>> cap(k, std::vector<int>(um));
  for (std::size_t j = 0; j < k; ++j) std::fill(cap[j].begin(), cap[j].end(), line_sums[j]);
  std::vector<IntMatrix> cur(k, IntMatrix(m));
  std::vector<std::vector<int>> rowvec(um, std::vector<int>(k * um));
  std::set<GraphClass> found;

  // Rows are generated in weakly decreasing order of their concatenated
  // colour vectors; every class has such a representative.
  std::function<void(int)> fill_row;
  std::function<void(int, std::size_t, int, int)> fill_cell;

  fill_row = [&](int r) {
    if (r == m) {
      found.insert(canonicalize(cur, line_sums));
      return;
    }
    fill_cell(r, 0, 0, line_sums[0]);
  };

  // Assign cur[j](r, c) with `left` units of colour j still to place in row r.
  fill_cell = [&](int r, std::size_t j, int c, int left) {
    if (c == m) {
      if (left != 0) return;
      if (j + 1 < k) {
        fill_cell(r, j + 1, 0, line_sums[j + 1]);
        return;
      }
      auto& rv = rowvec[static_cast<std::size_t>(r)];
      for (std::size_t jj = 0; jj < k; ++jj)
        for (int cc = 0; cc < m; ++cc) rv[jj * um + static_cast<std::size_t>(cc)] = cur[jj](r, cc);
      if (r > 0 && rv > rowvec[static_cast<std::size_t>(r - 1)]) return;
      fill_row(r + 1);
      return;
    }
    auto& cp = cap[j][static_cast<std::size_t>(c)];
    const int hi = std::min(left, cp);
    // Remaining columns must be able to absorb what is left.
    int room = 0;
    for (int cc = c + 1; cc < m; ++cc) room += cap[j][static_cast<std::size_t>(cc)];
    for (int v = hi; v >= 0; --v) {
      if (left - v > room) break;
      cur[j](r, c) = v;
      cp -= v;
      fill_cell(r, j, c + 1, left - v);
      cp += v;
    }
    cur[j](r, c) = 0;
  };

  fill_row(0);
  return {found.begin(), found.end()};
}

// ------------------------------------------------------------- structure

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Component label per vertex; rows are 0..m-1, columns m..2m-1.
std::vector<int> component_labels(const GraphClass& g) {
  const int m = g.m();
  UnionFind uf(2 * m);
  for (const auto& a : g.mats())
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (a(r, c) > 0) uf.unite(r, m + c);
  std::vector<int> lab(static_cast<std::size_t>(2 * m));
  for (int v = 0; v < 2 * m; ++v) lab[static_cast<std::size_t>(v)] = uf.find(v);
  return lab;
}

}  // namespace

bool is_connected(const GraphClass& g) {
  if (g.m() <= 1) return true;
  const auto lab = component_labels(g);
  return std::all_of(lab.begin(), lab.end(), [&](int x) { return x == lab.front(); });
}

std::vector<GraphClass> components(const GraphClass& g) {
  const int m = g.m();
  if (m == 0) return {};
  const auto lab = component_labels(g);
  std::vector<int> roots(lab.begin(), lab.begin() + m);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<GraphClass> out;
  for (int root : roots) {
    std::vector<int> rows, cols;
    for (int v = 0; v < m; ++v) {
      if (lab[static_cast<std::size_t>(v)] == root) rows.push_back(v);
      if (lab[static_cast<std::size_t>(m + v)] == root) cols.push_back(v);
    }
    const int n = static_cast<int>(rows.size());
    std::vector<IntMatrix> sub(static_cast<std::size_t>(g.k()), IntMatrix(n));
    for (int j = 0; j < g.k(); ++j)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          sub[static_cast<std::size_t>(j)](r, c) = g.mat(j)(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
    out.push_back(canonicalize(sub, g.line_sums()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphClass disjoint_union(const GraphClass& g, const GraphClass& h) {
  if (g.line_sums() != h.line_sums()) throw ArgumentError("disjoint_union: colour line sums differ");
  const int m = g.m() + h.m();
  std::vector<IntMatrix> mats(static_cast<std::size_t>(g.k()), IntMatrix(m));
  for (int j = 0; j < g.k(); ++j) {
    auto& a = mats[static_cast<std::size_t>(j)];
    for (int r = 0; r < g.m(); ++r)
      for (int c = 0; c < g.m(); ++c) a(r, c) = g.mat(j)(r, c);
    for (int r = 0; r < h.m(); ++r)
      for (int c = 0; c < h.m(); ++c) a(g.m() + r, g.m() + c) = h.mat(j)(r, c);
  }
  return canonicalize(mats, g.line_sums());
}

GraphClass transpose(const GraphClass& g) {
  std::vector<IntMatrix> mats;
  for (const auto& a : g.mats()) mats.push_back(a.transposed());
  return canonicalize(mats, g.line_sums());
}

// ------------------------------------------------- permutation encodings

std::vector<IntMatrix> perm_tuple_to_matrices(const std::vector<Permutation>& sigmas,
                                              const std::vector<int>& line_sums, int m) {
  if (sigmas.size() != line_sums.size()) throw ArgumentError("one permutation per colour required");
  std::vector<IntMatrix> mats;
  for (std::size_t j = 0; j < sigmas.size(); ++j) {
    const int l = line_sums[j];
    if (sigmas[j].size() != l * m)
      throw ArgumentError("permutation " + std::to_string(j + 1) + " must act on m*l_j points");
    IntMatrix a(m);
    for (int x = 0; x < l * m; ++x) a(x / l, sigmas[j](x) / l) += 1;
    mats.push_back(std::move(a));
  }
  return mats;
}

GraphClass perm_tuple_to_graph(const std::vector<Permutation>& sigmas,
                               const std::vector<int>& line_sums, int m) {
  return canonicalize(perm_tuple_to_matrices(sigmas, line_sums, m), line_sums);
}

std::vector<Permutation> graph_to_perm_tuple(const GraphClass& g) {
  const int m = g.m();
  std::vector<Permutation> out;
  for (int j = 0; j < g.k(); ++j) {
    const int l = g.line_sums()[static_cast<std::size_t>(j)];
    std::vector<int> img(static_cast<std::size_t>(l * m));
    std::vector<int> colfill(static_cast<std::size_t>(m), 0);
    for (int r = 0; r < m; ++r) {
      int rowfill = 0;
      for (int c = 0; c < m; ++c)
        for (int e = 0; e < g.mat(j)(r, c); ++e)
          img[static_cast<std::size_t>(r * l + rowfill++)] = c * l + colfill[static_cast<std::size_t>(c)]++;
    }
    out.emplace_back(std::move(img));
  }
  return out;
}

// --------------------------------------------------------- directed view

DirectedGraphClass canonicalize_directed(const std::vector<IntMatrix>& raw, int m) {
  for (const auto& a : raw) {
    if (a.size() != m) throw InvalidGraphError("directed graph: matrix size mismatch");
    for (int i = 0; i < m; ++i)
      if (a.row_sum(i) != a.row_sum(0) || a.col_sum(i) != a.row_sum(0))
        throw InvalidGraphError("directed graph: in/out degrees must be constant per colour");
  }
  std::vector<int> q(static_cast<std::size_t>(m));
  std::iota(q.begin(), q.end(), 0);
  std::vector<IntMatrix> best, cand(raw.size(), IntMatrix(m));
  do {
    for (std::size_t j = 0; j < raw.size(); ++j)
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          cand[j](r, c) = raw[j](q[static_cast<std::size_t>(r)], q[static_cast<std::size_t>(c)]);
    if (best.empty() || cand < best) best = cand;
  } while (std::next_permutation(q.begin(), q.end()));
  DirectedGraphClass d;
  d.m_ = m;
  for (const auto& a : raw) d.line_sums_.push_back(m ? a.row_sum(0) : 0);
  d.adj_ = raw.empty() ? raw : std::move(best);
  return d;
}

DirectedGraphClass to_directed(const GraphClass& g) {
  const auto k = static_cast<std::size_t>(g.k());
  if (g.line_sums().back() != 1) throw ArgumentError("to_directed: last colour must have line sum 1");
  const int m = g.m();
  const IntMatrix& match = g.mats().back();
  std::vector<int> pi(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c)
      if (match(r, c) == 1) pi[static_cast<std::size_t>(r)] = c;
  std::vector<IntMatrix> adj(k - 1, IntMatrix(m));
  for (std::size_t j = 0; j + 1 < k; ++j)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) adj[j](a, b) = g.mats()[j](a, pi[static_cast<std::size_t>(b)]);
  return canonicalize_directed(adj, m);
}

GraphClass from_directed(const DirectedGraphClass& d) {
  std::vector<IntMatrix> mats = d.adjacency();
  IntMatrix id(d.m());
  for (int i = 0; i < d.m(); ++i) id(i, i) = 1;
  mats.push_back(id);
  auto ls = d.line_sums();
  ls.push_back(1);
  return canonicalize(mats, ls);
}

// ------------------------------------------------------------- exporting

namespace {

const char* palette(int j) {
  static const char* colors[] = {"red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta"};
  return colors[j % 8];
}

}  // namespace

std::string export_dot(const GraphClass& g) {
  std::ostringstream os;
  os << "graph G {\n";
  for (int i = 1; i <= g.m(); ++i) os << "  r" << i << " [shape=circle];\n";
  for (int i = 1; i <= g.m(); ++i) os << "  c" << i << " [shape=box];\n";
  for (int j = 0; j < g.k(); ++j)
    for (int r = 0; r < g.m(); ++r)
      for (int c = 0; c < g.m(); ++c)
        for (int e = 0; e < g.mat(j)(r, c); ++e)
          os << "  r" << r + 1 << " -- c" << c + 1 << " [color=" << palette(j) << "];\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const DirectedGraphClass& d) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (int i = 1; i <= d.m(); ++i) os << "  v" << i << " [shape=circle];\n";
  for (int j = 0; j < d.k(); ++j)
    for (int a = 0; a < d.m(); ++a)
      for (int b = 0; b < d.m(); ++b)
        for (int e = 0; e < d.adjacency()[static_cast<std::size_t>(j)](a, b); ++e)
          os << "  v" << a + 1 << " -> v" << b + 1 << " [color=" << palette(j) << "];\n";
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const GraphClass& g) {
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& a : g.mats()) mats.push_back(a.data());
  return {{"k", g.k()}, {"m", g.m()}, {"line_sums", g.line_sums()}, {"mats", mats}, {"id", g.id()}};
}

}  // namespace luinv
