#include "flowhom/complex.hpp"

#include "flowhom/error.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace flowhom {

void SparseMatrix::add(std::size_t row, std::size_t col, std::int64_t value) {
  if (value == 0)
    return;
  auto &column = columns_.at(col);
  auto [it, inserted] = column.emplace(row, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0)
      column.erase(it);
  }
}

std::int64_t SparseMatrix::at(std::size_t row, std::size_t col) const {
  const auto &column = columns_.at(col);
  auto it = column.find(row);
  return it == column.end() ? 0 : it->second;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t total = 0;
  for (const auto &c : columns_)
    total += c.size();
  return total;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix &rhs) const {
  if (cols() != rhs.rows())
    throw InvalidComplex("matrix shapes do not compose");
  SparseMatrix out(rows(), rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j)
    for (const auto &[k, b] : rhs.column(j))
      for (const auto &[i, a] : column(k))
        out.add(i, j, a * b);
  return out;
}

namespace {

Integer iabs(const Integer &x) { return x < 0 ? Integer(-x) : x; }

} // namespace

std::vector<Integer> smith_invariants(DenseMatrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pr == rows || iabs(m[i][j]) < best)) {
            best = iabs(m[i][j]);
            pr = i;
            pc = j;
          }
      if (pr == rows) {
        std::sort(diag.begin(), diag.end());
        return diag;
      }
      std::swap(m[t], m[pr]);
      for (auto &row : m)
        std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0)
          continue;
        Integer q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j)
          m[i][j] -= q * m[t][j];
        if (m[i][t] != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0)
          continue;
        Integer q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i)
          m[i][j] -= q * m[i][t];
        if (m[t][j] != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // Pivot must divide the whole trailing block.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k)
              m[t][k] += m[i][k];
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    diag.push_back(iabs(m[t][t]));
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

namespace {

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Overflow{};
  return r;
}
Integer checked_mul(const Integer &a, const Integer &b) { return a * b; }
Integer checked_sub(const Integer &a, const Integer &b) { return a - b; }

bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
bool is_unit(const Integer &v) { return v == 1 || v == -1; }

// Eliminates unit pivots with sparse row operations, then hands the residual
// block to the dense Smith form.
template <class T> MatrixInvariants sparse_invariants(const SparseMatrix &m) {
  const std::size_t nrows = m.rows(), ncols = m.cols();
  std::vector<std::map<std::size_t, T>> row(nrows);
  std::vector<std::set<std::size_t>> col(ncols);
  for (std::size_t c = 0; c < ncols; ++c)
    for (const auto &[r, v] : m.column(c)) {
      row[r].emplace(c, T(v));
      col[c].insert(r);
    }

  MatrixInvariants out;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < ncols; ++c) {
      if (col[c].empty())
        continue;
      std::size_t pivot = nrows;
      for (std::size_t r : col[c])
        if (is_unit(row[r].at(c)) &&
            (pivot == nrows || row[r].size() < row[pivot].size()))
          pivot = r;
      if (pivot == nrows)
        continue;
      const T pv = row[pivot].at(c);
      std::vector<std::size_t> others(col[c].begin(), col[c].end());
      for (std::size_t r : others) {
        if (r == pivot)
          continue;
        const T factor = checked_mul(row[r].at(c), pv);
        for (const auto &[cc, v] : row[pivot]) {
          auto it = row[r].find(cc);
          T updated = checked_sub(it == row[r].end() ? T(0) : it->second,
                                  checked_mul(factor, v));
          if (updated == 0) {
            if (it != row[r].end())
              row[r].erase(it);
            col[cc].erase(r);
          } else if (it == row[r].end()) {
            row[r].emplace(cc, updated);
            col[cc].insert(r);
          } else {
            it->second = updated;
          }
        }
      }
      for (const auto &[cc, v] : row[pivot])
        col[cc].erase(pivot);
      row[pivot].clear();
      ++out.rank;
      progress = true;
    }
  }

  std::vector<std::size_t> live_rows, live_cols;
  for (std::size_t r = 0; r < nrows; ++r)
    if (!row[r].empty())
      live_rows.push_back(r);
  for (std::size_t c = 0; c < ncols; ++c)
    if (!col[c].empty())
      live_cols.push_back(c);
  if (live_rows.empty())
    return out;
  DenseMatrix dense(live_rows.size(),
                    std::vector<Integer>(live_cols.size(), Integer(0)));
  for (std::size_t i = 0; i < live_rows.size(); ++i)
    for (const auto &[c, v] : row[live_rows[i]]) {
      auto j = std::lower_bound(live_cols.begin(), live_cols.end(), c) -
               live_cols.begin();
      dense[i][static_cast<std::size_t>(j)] = Integer(v);
    }
  for (const Integer &d : smith_invariants(std::move(dense))) {
    ++out.rank;
    if (d > 1)
      out.torsion.push_back(d);
  }
  return out;
}

} // namespace

MatrixInvariants matrix_invariants(const SparseMatrix &m) {
  try {
    return sparse_invariants<std::int64_t>(m);
  } catch (const Overflow &) {
    return sparse_invariants<Integer>(m);
  }
}

HomologyGroup direct_sum(const std::vector<HomologyGroup> &groups) {
  HomologyGroup out;
  std::vector<Integer> cyclic;
  for (const auto &g : groups) {
    out.betti += g.betti;
    cyclic.insert(cyclic.end(), g.torsion.begin(), g.torsion.end());
  }
  if (cyclic.empty())
    return out;
  DenseMatrix diag(cyclic.size(), std::vector<Integer>(cyclic.size(), 0));
  for (std::size_t i = 0; i < cyclic.size(); ++i)
    diag[i][i] = cyclic[i];
  for (const Integer &d : smith_invariants(std::move(diag)))
    if (d > 1)
      out.torsion.push_back(d);
  return out;
}

std::string to_string(const HomologyGroup &g) {
  std::vector<std::string> parts;
  if (g.betti == 1)
    parts.push_back("Z");
  else if (g.betti > 1)
    parts.push_back("Z^" + std::to_string(g.betti));
  for (const auto &t : g.torsion)
    parts.push_back("Z/" + t.str());
  if (parts.empty())
    return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    out += " (+) " + parts[i];
  return out;
}

std::string to_record(const HomologyGroup &g) {
  std::string out = std::to_string(g.betti) + ";";
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    if (i)
      out += ",";
    out += g.torsion[i].str();
  }
  return out;
}

ChainComplex::ChainComplex(std::vector<std::size_t> dims,
                           std::vector<SparseMatrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries)) {
  if (boundaries_.size() + 1 != std::max<std::size_t>(dims_.size(), 1))
    throw InvalidComplex("need one boundary matrix per positive degree");
  for (std::size_t n = 1; n < dims_.size(); ++n) {
    const auto &d = boundaries_[n - 1];
    if (d.rows() != dims_[n - 1] || d.cols() != dims_[n])
      throw InvalidComplex("boundary " + std::to_string(n) +
                           " has the wrong shape");
  }
  for (std::size_t n = 2; n < dims_.size(); ++n)
    if (!boundaries_[n - 2].multiply(boundaries_[n - 1]).is_zero())
      throw InvalidComplex("boundary " + std::to_string(n - 1) + " o " +
                           std::to_string(n) + " is not zero");
}

const SparseMatrix &ChainComplex::boundary(std::size_t n) const {
  if (n == 0 || n >= dims_.size())
    throw DegreeOutOfRange("no boundary in degree " + std::to_string(n));
  return boundaries_[n - 1];
}

namespace {

HomologyGroup homology_from(const ChainComplex &c, std::size_t n,
                            const std::vector<MatrixInvariants> &inv) {
  // inv[k] describes d_k; inv[0] is the augmentation (or zero).
  HomologyGroup g;
  const std::size_t dim = c.rank(n);
  const std::size_t out_rank = inv[n].rank;
  const std::size_t in_rank = n + 1 < inv.size() ? inv[n + 1].rank : 0;
  g.betti = dim - out_rank - in_rank;
  if (n + 1 < inv.size())
    g.torsion = inv[n + 1].torsion;
  return g;
}

std::vector<MatrixInvariants> invariants_of(const ChainComplex &c,
                                            bool reduced) {
  std::vector<MatrixInvariants> inv(std::max<std::size_t>(c.length(), 1));
  inv[0].rank = reduced && c.rank(0) > 0 ? 1 : 0;
  for (std::size_t n = 1; n < c.length(); ++n)
    inv[n] = matrix_invariants(c.boundary(n));
  return inv;
}

} // namespace

HomologyGroup homology(const ChainComplex &c, int n, bool reduced) {
  if (n < 0)
    throw DegreeOutOfRange("negative homology degree");
  const auto deg = static_cast<std::size_t>(n);
  if (deg >= c.length())
    return {};
  std::vector<MatrixInvariants> inv(std::min(c.length(), deg + 2));
  inv[0].rank = reduced && c.rank(0) > 0 ? 1 : 0;
  for (std::size_t k = std::max<std::size_t>(deg, 1); k < inv.size(); ++k)
    inv[k] = matrix_invariants(c.boundary(k));
  return homology_from(c, deg, inv);
}

std::vector<HomologyGroup> all_homology(const ChainComplex &c, bool reduced) {
  auto inv = invariants_of(c, reduced);
  std::vector<HomologyGroup> out;
  for (std::size_t n = 0; n < c.length(); ++n)
    out.push_back(homology_from(c, n, inv));
  return out;
}

LoopFreeCategory::LoopFreeCategory(
    std::vector<std::string> objects, std::vector<Arrow> arrows,
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> composites)
    : objects_(std::move(objects)), arrows_(std::move(arrows)),
      composites_(std::move(composites)), outgoing_(objects_.size()) {
  const std::size_t n = objects_.size();
  for (std::size_t f = 0; f < arrows_.size(); ++f) {
    const auto &a = arrows_[f];
    if (a.source >= n || a.target >= n)
      throw InvalidComplex("arrow endpoint out of range");
    if (a.source == a.target)
      throw CyclicCategory("arrow " + std::to_string(f) + " is a loop at '" +
                           objects_[a.source] + "'");
    outgoing_[a.source].push_back(f);
  }
  // Kahn's algorithm on the arrow graph.
  std::vector<std::size_t> indeg(n, 0);
  for (const auto &a : arrows_)
    ++indeg[a.target];
  std::vector<std::size_t> ready;
  for (std::size_t x = 0; x < n; ++x)
    if (indeg[x] == 0)
      ready.push_back(x);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t x = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t f : outgoing_[x])
      if (--indeg[arrows_[f].target] == 0)
        ready.push_back(arrows_[f].target);
  }
  if (seen != n)
    throw CyclicCategory("arrow graph has a cycle");

  for (std::size_t f = 0; f < arrows_.size(); ++f)
    for (std::size_t g : outgoing_[arrows_[f].target]) {
      auto it = composites_.find({f, g});
      if (it == composites_.end())
        throw InvalidComplex("composite of arrows " + std::to_string(f) +
                             " and " + std::to_string(g) + " is missing");
      const auto &h = arrows_.at(it->second);
      if (h.source != arrows_[f].source || h.target != arrows_[g].target)
        throw InvalidComplex("composite has the wrong endpoints");
    }
  for (std::size_t f = 0; f < arrows_.size(); ++f)
    for (std::size_t g : outgoing_[arrows_[f].target])
      for (std::size_t h : outgoing_[arrows_[g].target])
        if (compose(compose(f, g), h) != compose(f, compose(g, h)))
          throw InvalidComplex("composition is not associative");
}

LoopFreeCategory LoopFreeCategory::from_poset(const Poset &p) {
  std::vector<Arrow> arrows;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (const auto &[a, b] : p.strict_pairs()) {
    index[{a, b}] = arrows.size();
    arrows.push_back({a, b});
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> composites;
  for (std::size_t f = 0; f < arrows.size(); ++f)
    for (std::size_t g = 0; g < arrows.size(); ++g)
      if (arrows[f].target == arrows[g].source)
        composites[{f, g}] = index.at({arrows[f].source, arrows[g].target});
  return LoopFreeCategory(p.labels(), std::move(arrows),
                          std::move(composites));
}

std::size_t LoopFreeCategory::compose(std::size_t f, std::size_t g) const {
  return composites_.at({f, g});
}

ChainComplex nerve(const LoopFreeCategory &k) {
  // chains[n] lists composable strings of n arrows; chains[0] are objects.
  std::vector<std::vector<std::vector<std::size_t>>> chains(1);
  for (std::size_t x = 0; x < k.num_objects(); ++x)
    chains[0].push_back({x});
  if (k.num_arrows() > 0) {
    chains.emplace_back();
    for (std::size_t f = 0; f < k.num_arrows(); ++f)
      chains[1].push_back({f});
  }
  while (chains.size() > 1 && !chains.back().empty()) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto &c : chains.back())
      for (std::size_t g : k.outgoing(k.arrows()[c.back()].target)) {
        auto d = c;
        d.push_back(g);
        next.push_back(std::move(d));
      }
    if (next.empty())
      break;
    chains.push_back(std::move(next));
  }

  std::vector<std::map<std::vector<std::size_t>, std::size_t>> index(
      chains.size());
  for (std::size_t n = 0; n < chains.size(); ++n)
    for (std::size_t i = 0; i < chains[n].size(); ++i)
      index[n][chains[n][i]] = i;

  std::vector<std::size_t> dims;
  for (const auto &c : chains)
    dims.push_back(c.size());
  std::vector<SparseMatrix> boundaries;
  for (std::size_t n = 1; n < chains.size(); ++n) {
    SparseMatrix d(dims[n - 1], dims[n]);
    for (std::size_t j = 0; j < chains[n].size(); ++j) {
      const auto &c = chains[n][j];
      if (n == 1) {
        const auto &a = k.arrows()[c[0]];
        d.add(a.target, j, 1);
        d.add(a.source, j, -1);
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        std::vector<std::size_t> f;
        if (i == 0) {
          f.assign(c.begin() + 1, c.end());
        } else if (i == n) {
          f.assign(c.begin(), c.end() - 1);
        } else {
          f.assign(c.begin(), c.begin() + static_cast<long>(i) - 1);
          f.push_back(k.compose(c[i - 1], c[i]));
          f.insert(f.end(), c.begin() + static_cast<long>(i) + 1, c.end());
        }
        d.add(index[n - 1].at(f), j, (i % 2 == 0) ? 1 : -1);
      }
    }
    boundaries.push_back(std::move(d));
  }
  return ChainComplex(std::move(dims), std::move(boundaries));
}

ChainComplex complex_of_order_complex(const OrderComplex &k) {
  const auto &simplices = k.simplices();
  const int top = k.dimension();
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> local(simplices.size());
  for (int d = 0; d <= top; ++d) {
    auto ids = k.of_dimension(static_cast<std::size_t>(d));
    dims.push_back(ids.size());
  }
  // Position of each simplex within its dimension.
  std::vector<std::size_t> pos(simplices.size());
  for (int d = 0; d <= top; ++d) {
    auto ids = k.of_dimension(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < ids.size(); ++i)
      pos[ids[i]] = i;
  }
  std::vector<SparseMatrix> boundaries;
  for (int d = 1; d <= top; ++d) {
    const auto dd = static_cast<std::size_t>(d);
    SparseMatrix m(dims[dd - 1], dims[dd]);
    auto ids = k.of_dimension(dd);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      const Simplex &s = simplices[ids[j]];
      for (std::size_t i = 0; i < s.size(); ++i) {
        auto f = k.index_of(face(s, i));
        m.add(pos[*f], j, (i % 2 == 0) ? 1 : -1);
      }
    }
    boundaries.push_back(std::move(m));
  }
  return ChainComplex(std::move(dims), std::move(boundaries));
}

} // namespace flowhom
