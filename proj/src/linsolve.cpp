#include "oqa/linsolve.hpp"

#include <algorithm>
#include <limits>

#include "oqa/error.hpp"

namespace oqa {

SparseVec sparse_add(const SparseVec& a, const SparseVec& b) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() || y != b.end()) {
    if (y == b.end() || (x != a.end() && x->first < y->first)) {
      out.push_back(*x++);
    } else if (x == a.end() || y->first < x->first) {
      out.push_back(*y++);
    } else {
      Scalar s = x->second + y->second;
      if (!s.is_zero()) out.emplace_back(x->first, std::move(s));
      ++x;
      ++y;
    }
  }
  return out;
}

SparseVec sparse_scale(const SparseVec& a, const Scalar& c) {
  if (c.is_zero()) return {};
  SparseVec out;
  out.reserve(a.size());
  for (const auto& [i, v] : a) out.emplace_back(i, v * c);
  return out;
}

Scalar sparse_get(const SparseVec& a, std::uint32_t index) {
  auto it = std::lower_bound(a.begin(), a.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  return it != a.end() && it->first == index ? it->second : Scalar();
}

namespace {

std::size_t symbolic_size(const Scalar& s) {
  return s.num().size() + (s.is_laurent() ? 0 : 4 * s.den().size());
}

}  // namespace

std::optional<std::vector<SparseVec>> solve_linear(std::size_t n, const std::vector<SparseVec>& columns,
                                                   const std::vector<SparseVec>& rhs) {
  if (columns.size() != n) throw Error("ShapeMismatch", "linear system is not square");
  const auto n32 = static_cast<std::uint32_t>(n);
  // Augmented rows [A | B].
  std::vector<SparseVec> rows(n);
  for (std::uint32_t c = 0; c < n32; ++c)
    for (const auto& [r, v] : columns[c]) {
      if (r >= n) throw Error("ShapeMismatch", "row index out of range");
      rows[r].emplace_back(c, v);
    }
  for (std::uint32_t k = 0; k < rhs.size(); ++k)
    for (const auto& [r, v] : rhs[k]) {
      if (r >= n) throw Error("ShapeMismatch", "row index out of range");
      rows[r].emplace_back(n32 + k, v);
    }
  for (auto& row : rows)
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<bool> used(n, false);
  std::vector<std::size_t> pivot_row(n);
  for (std::uint32_t c = 0; c < n32; ++c) {
    // Unused rows have been cleared of all earlier columns, so a candidate
    // has its first entry exactly at c.
    std::size_t best = n;
    std::size_t best_score = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < n; ++r) {
      if (used[r] || rows[r].empty() || rows[r].front().first != c) continue;
      std::size_t score = symbolic_size(rows[r].front().second) * 1024 + rows[r].size();
      if (score < best_score) {
        best_score = score;
        best = r;
      }
    }
    if (best == n) return std::nullopt;
    used[best] = true;
    pivot_row[c] = best;
    rows[best] = sparse_scale(rows[best], rows[best].front().second.inverse());
    const SparseVec& prow = rows[best];
    for (std::size_t r = 0; r < n; ++r) {
      if (r == best) continue;
      Scalar f = sparse_get(rows[r], c);
      if (f.is_zero()) continue;
      rows[r] = sparse_add(rows[r], sparse_scale(prow, -f));
    }
  }

  std::vector<SparseVec> solution(rhs.size());
  for (std::uint32_t c = 0; c < n32; ++c)
    for (const auto& [col, v] : rows[pivot_row[c]])
      if (col >= n32) solution[col - n32].emplace_back(c, v);
  return solution;
}

}  // namespace oqa
