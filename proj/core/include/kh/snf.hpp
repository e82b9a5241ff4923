#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

#include "kh/complex.hpp"
#include "kh/ring.hpp"

namespace kh {

// small dense matrix, row-major
template <class R>
struct Dense {
  int rows = 0, cols = 0;
  std::vector<R> a;
  Dense() = default;
  Dense(int r, int c, R fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), fill) {}
  R& at(int r, int c) { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  const R& at(int r, int c) const { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  static Dense eye(int n, const Ring<R>& ring) {
    Dense m(n, n, ring.zero());
    for (int t = 0; t < n; ++t) m.at(t, t) = ring.one();
    return m;
  }
  static Dense from_sparse(const SparseMat<R>& s, const Ring<R>& ring) {
    Dense m(s.rows(), s.cols(), ring.zero());
    for (int c = 0; c < s.cols(); ++c)
      for (const auto& [r, v] : s.column(c)) m.at(r, c) = v;
    return m;
  }
  Dense mul(const Dense& o, const Ring<R>& ring) const {
    Dense out(rows, o.cols, ring.zero());
    for (int r = 0; r < rows; ++r)
      for (int k = 0; k < cols; ++k) {
        if (ring.is_zero(at(r, k))) continue;
        for (int c = 0; c < o.cols; ++c)
          out.at(r, c) = ring.add(out.at(r, c), ring.mul(at(r, k), o.at(k, c)));
      }
    return out;
  }
  std::vector<R> apply(const std::vector<R>& x, const Ring<R>& ring) const {
    std::vector<R> y(static_cast<std::size_t>(rows), ring.zero());
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (!ring.is_zero(at(r, c)))
          y[static_cast<std::size_t>(r)] = ring.add(y[static_cast<std::size_t>(r)],
                                                    ring.mul(at(r, c), x[static_cast<std::size_t>(c)]));
    return y;
  }
};

// Smith normal form  S = U A V, with U, V invertible over the ring and
// their inverses accumulated alongside. Over a field this degenerates to a
// rank normal form; over the integers the diagonal is the divisibility chain.
template <class R>
struct SnfResult {
  Dense<R> s, u, uinv, v, vinv;
  int rank = 0;
  std::vector<R> diagonal;  // the first `rank` diagonal entries, canonical sign
};

namespace snf_detail {

template <class R>
std::int64_t magnitude(const Ring<R>&, const R&) { return 1; }
inline std::int64_t magnitude(const Ring<Int>&, const Int& x) { return std::llabs(x.v); }

}  // namespace snf_detail

template <class R>
SnfResult<R> smith_normal_form(Dense<R> A, const Ring<R>& ring) {
  const int m = A.rows, n = A.cols;
  SnfResult<R> res;
  res.u = Dense<R>::eye(m, ring);
  res.uinv = Dense<R>::eye(m, ring);
  res.v = Dense<R>::eye(n, ring);
  res.vinv = Dense<R>::eye(n, ring);

  auto row_axpy = [&](R q, int src, int dst) {  // row dst += q * row src  (on A, U); Uinv col src -= q * col dst
    for (int c = 0; c < n; ++c) A.at(dst, c) = ring.add(A.at(dst, c), ring.mul(q, A.at(src, c)));
    for (int c = 0; c < m; ++c) res.u.at(dst, c) = ring.add(res.u.at(dst, c), ring.mul(q, res.u.at(src, c)));
    for (int r = 0; r < m; ++r) res.uinv.at(r, src) = ring.sub(res.uinv.at(r, src), ring.mul(q, res.uinv.at(r, dst)));
  };
  auto col_axpy = [&](R q, int src, int dst) {  // col dst += q * col src; Vinv row src -= q * row dst
    for (int r = 0; r < m; ++r) A.at(r, dst) = ring.add(A.at(r, dst), ring.mul(q, A.at(r, src)));
    for (int r = 0; r < n; ++r) res.v.at(r, dst) = ring.add(res.v.at(r, dst), ring.mul(q, res.v.at(r, src)));
    for (int c = 0; c < n; ++c) res.vinv.at(src, c) = ring.sub(res.vinv.at(src, c), ring.mul(q, res.vinv.at(dst, c)));
  };
  auto row_swap = [&](int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < n; ++c) std::swap(A.at(r1, c), A.at(r2, c));
    for (int c = 0; c < m; ++c) std::swap(res.u.at(r1, c), res.u.at(r2, c));
    for (int r = 0; r < m; ++r) std::swap(res.uinv.at(r, r1), res.uinv.at(r, r2));
  };
  auto col_swap = [&](int c1, int c2) {
    if (c1 == c2) return;
    for (int r = 0; r < m; ++r) std::swap(A.at(r, c1), A.at(r, c2));
    for (int r = 0; r < n; ++r) std::swap(res.v.at(r, c1), res.v.at(r, c2));
    for (int c = 0; c < n; ++c) std::swap(res.vinv.at(c1, c), res.vinv.at(c2, c));
  };
  auto row_negate = [&](int r) {
    for (int c = 0; c < n; ++c) A.at(r, c) = ring.neg(A.at(r, c));
    for (int c = 0; c < m; ++c) res.u.at(r, c) = ring.neg(res.u.at(r, c));
    for (int rr = 0; rr < m; ++rr) res.uinv.at(rr, r) = ring.neg(res.uinv.at(rr, r));
  };
  auto row_scale_unit = [&](R s, int r) {  // row r *= s (s a unit)
    for (int c = 0; c < n; ++c) A.at(r, c) = ring.mul(s, A.at(r, c));
    for (int c = 0; c < m; ++c) res.u.at(r, c) = ring.mul(s, res.u.at(r, c));
    R si = ring.inv_unit(s);
    for (int rr = 0; rr < m; ++rr) res.uinv.at(rr, r) = ring.mul(res.uinv.at(rr, r), si);
  };

  int t = 0;
  while (t < m && t < n) {
    // pick pivot of least magnitude in the remaining submatrix
    int pr = -1, pc = -1;
    std::int64_t best = 0;
    for (int r = t; r < m; ++r)
      for (int c = t; c < n; ++c)
        if (!ring.is_zero(A.at(r, c))) {
          std::int64_t mag = snf_detail::magnitude(ring, A.at(r, c));
          if (pr < 0 || mag < best) { pr = r; pc = c; best = mag; }
        }
    if (pr < 0) break;
    row_swap(t, pr);
    col_swap(t, pc);
    bool clean = true;
    for (int r = t + 1; r < m; ++r) {
      if (ring.is_zero(A.at(r, t))) continue;
      R q = ring.neg(ring.quot_nearest(A.at(r, t), A.at(t, t)));
      if (!ring.is_zero(q)) row_axpy(q, t, r);
      if (!ring.is_zero(A.at(r, t))) clean = false;
    }
    for (int c = t + 1; c < n; ++c) {
      if (ring.is_zero(A.at(t, c))) continue;
      R q = ring.neg(ring.quot_nearest(A.at(t, c), A.at(t, t)));
      if (!ring.is_zero(q)) col_axpy(q, t, c);
      if (!ring.is_zero(A.at(t, c))) clean = false;
    }
    if (!clean) continue;
    // divisibility: pivot must divide the rest of the submatrix
    if (!ring.is_unit(A.at(t, t))) {
      bool redo = false;
      for (int r = t + 1; r < m && !redo; ++r)
        for (int c = t + 1; c < n && !redo; ++c)
          if (!ring.is_zero(A.at(r, c)) && !ring.divides(A.at(t, t), A.at(r, c))) {
            row_axpy(ring.one(), r, t);
            redo = true;
          }
      if (redo) continue;
    }
    ++t;
  }
  res.rank = t;
  // canonical diagonal (positive over Z, 1 over fields)
  for (int k = 0; k < t; ++k) {
    R d = A.at(k, k);
    R cd = ring.canonical(d);
    if (!(cd == d)) {
      if (ring.spec().kind == RingKind::integers)
        row_negate(k);
      else
        row_scale_unit(ring.exact_div(cd, d), k);
    }
    res.diagonal.push_back(A.at(k, k));
  }
  res.s = std::move(A);
  return res;
}

// Sparse rank (and torsion over Z) without transforms: eliminate unit pivots
// with a minimum-fill heuristic, finish densely.
template <class R>
std::pair<int, std::vector<R>> sparse_rank_torsion(const SparseMat<R>& mat,
                                                   const Ring<R>& ring) {
  std::map<int, std::map<int, R>> rows;
  std::map<int, std::set<int>> cols;
  for (int c = 0; c < mat.cols(); ++c)
    for (const auto& [r, v] : mat.column(c)) {
      rows[r][c] = v;
      cols[c].insert(r);
    }
  int rank = 0;
  while (true) {
    int pr = -1, pc = -1;
    std::size_t best = 0;
    for (auto& [r, entries] : rows) {
      for (auto& [c, v] : entries)
        if (ring.is_unit(v)) {
          std::size_t fill = (entries.size() - 1) * (cols[c].size() - 1);
          if (pr < 0 || fill < best) { pr = r; pc = c; best = fill; }
          if (best == 0) break;
        }
      if (pr >= 0 && best == 0) break;
    }
    if (pr < 0) break;
    auto prow = rows[pr];
    R pv = prow[pc];
    rows.erase(pr);
    for (auto& [c, v] : prow) cols[c].erase(pr);
    for (int r : std::vector<int>(cols[pc].begin(), cols[pc].end())) {
      R f = ring.mul(rows[r][pc], ring.inv_unit(pv));
      for (auto& [c, v] : prow) {
        if (c == pc) continue;
        auto it = rows[r].find(c);
        R nv = ring.sub(it == rows[r].end() ? ring.zero() : it->second, ring.mul(f, v));
        if (ring.is_zero(nv)) {
          if (it != rows[r].end()) { rows[r].erase(it); cols[c].erase(r); }
        } else {
          rows[r][c] = nv;
          cols[c].insert(r);
        }
      }
      rows[r].erase(pc);
      if (rows[r].empty()) rows.erase(r);
    }
    cols.erase(pc);
    ++rank;
  }
  // finish the non-unit core densely
  std::vector<int> rl, cl;
  for (auto& [r, e] : rows) if (!e.empty()) rl.push_back(r);
  {
    std::set<int> cs;
    for (auto& [r, e] : rows)
      for (auto& [c, v] : e) cs.insert(c);
    cl.assign(cs.begin(), cs.end());
  }
  std::vector<R> torsion;
  if (!rl.empty()) {
    Dense<R> core(static_cast<int>(rl.size()), static_cast<int>(cl.size()), ring.zero());
    for (std::size_t ri = 0; ri < rl.size(); ++ri)
      for (auto& [c, v] : rows[rl[ri]]) {
        auto pos = std::lower_bound(cl.begin(), cl.end(), c) - cl.begin();
        core.at(static_cast<int>(ri), static_cast<int>(pos)) = v;
      }
    auto snf = smith_normal_form(core, ring);
    rank += snf.rank;
    for (const R& dentry : snf.diagonal)
      if (!ring.is_unit(dentry)) torsion.push_back(dentry);
  }
  return {rank, torsion};
}

}  // namespace kh
