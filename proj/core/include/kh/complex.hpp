#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/ring.hpp"

namespace kh {

struct Bigrading {
  int i = 0, j = 0;
  auto operator<=>(const Bigrading&) const = default;
};

// Generator identity: cube vertex plus circle labeling bits (bit = 1 means
// v_- on that circle, in the smoothing's canonical circle order). Maps are
// defined generator-wise, so generators carry identity, not just an index.
struct GenTag {
  Vertex vertex = 0;
  std::uint32_t label = 0;
  bool operator==(const GenTag&) const = default;
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(vertex) << 32) | label;
  }
};

// column-major sparse matrix; each column sorted by row
template <class R>
class SparseMat {
public:
  SparseMat() = default;
  SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<std::pair<int, R>>& column(int c) const {
    return data_[static_cast<std::size_t>(c)];
  }

  void add(int r, int c, R v, const Ring<R>& ring) {
    auto& col = data_[static_cast<std::size_t>(c)];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
      it->second = ring.add(it->second, v);
      if (ring.is_zero(it->second)) col.erase(it);
    } else if (!ring.is_zero(v)) {
      col.insert(it, {r, v});
    }
  }

  bool is_zero() const {
    for (const auto& col : data_)
      if (!col.empty()) return false;
    return true;
  }

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (const auto& col : data_) n += col.size();
    return n;
  }

  // this * other
  SparseMat compose(const SparseMat& other, const Ring<R>& ring) const {
    SparseMat out(rows_, other.cols_);
    for (int c = 0; c < other.cols_; ++c) {
      std::map<int, R> acc;
      for (const auto& [k, v] : other.column(c))
        for (const auto& [r, w] : column(k)) {
          auto it = acc.find(r);
          if (it == acc.end())
            acc.emplace(r, ring.mul(w, v));
          else
            it->second = ring.add(it->second, ring.mul(w, v));
        }
      auto& col = out.data_[static_cast<std::size_t>(c)];
      for (auto& [r, v] : acc)
        if (!ring.is_zero(v)) col.push_back({r, v});
    }
    return out;
  }

  SparseMat plus(const SparseMat& other, const Ring<R>& ring) const {
    SparseMat out = *this;
    for (int c = 0; c < other.cols_; ++c)
      for (const auto& [r, v] : other.column(c)) out.add(r, c, v, ring);
    return out;
  }

  SparseMat scaled(R s, const Ring<R>& ring) const {
    SparseMat out(rows_, cols_);
    for (int c = 0; c < cols_; ++c)
      for (const auto& [r, v] : column(c)) {
        R w = ring.mul(v, s);
        if (!ring.is_zero(w)) out.data_[static_cast<std::size_t>(c)].push_back({r, w});
      }
    return out;
  }

  bool equals(const SparseMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  std::vector<R> apply(const std::vector<R>& x, const Ring<R>& ring) const {
    std::vector<R> y(static_cast<std::size_t>(rows_), ring.zero());
    for (int c = 0; c < cols_; ++c) {
      if (ring.is_zero(x[static_cast<std::size_t>(c)])) continue;
      for (const auto& [r, v] : column(c))
        y[static_cast<std::size_t>(r)] =
            ring.add(y[static_cast<std::size_t>(r)], ring.mul(v, x[static_cast<std::size_t>(c)]));
    }
    return y;
  }

  // coordinate-list dump, one entry per line: "row col value"
  std::string dump(const Ring<R>& ring) const {
    std::ostringstream os;
    for (int c = 0; c < cols_; ++c)
      for (const auto& [r, v] : column(c))
        os << r << " " << c << " " << ring.to_string(v) << "\n";
    return os.str();
  }

private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::pair<int, R>>> data_;
};

// Free bigraded chain complex with differentials of bidegree (1,0).
template <class R>
class BigradedComplex {
public:
  struct Block {
    std::vector<GenTag> gens;
  };

  explicit BigradedComplex(Ring<R> ring = Ring<R>()) : ring_(ring) {}

  const Ring<R>& ring() const { return ring_; }

  int dim(Bigrading g) const {
    auto it = blocks_.find(g);
    return it == blocks_.end() ? 0 : static_cast<int>(it->second.gens.size());
  }
  const std::map<Bigrading, Block>& blocks() const { return blocks_; }
  const std::vector<GenTag>& gens(Bigrading g) const {
    static const std::vector<GenTag> empty;
    auto it = blocks_.find(g);
    return it == blocks_.end() ? empty : it->second.gens;
  }

  // differential leaving (i,j); empty matrix when absent
  SparseMat<R> diff(Bigrading g) const {
    auto it = diffs_.find(g);
    if (it != diffs_.end()) return it->second;
    return SparseMat<R>(dim({g.i + 1, g.j}), dim(g));
  }
  const std::map<Bigrading, SparseMat<R>>& diffs() const { return diffs_; }

  int add_generator(Bigrading g, GenTag tag) {
    auto& blk = blocks_[g];
    blk.gens.push_back(tag);
    int idx = static_cast<int>(blk.gens.size()) - 1;
    index_[tag.key()] = {g, idx};
    return idx;
  }

  std::optional<std::pair<Bigrading, int>> locate(GenTag tag) const {
    auto it = index_.find(tag.key());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  void set_diff(Bigrading g, SparseMat<R> m) { diffs_[g] = std::move(m); }

  // convenience for builders: add one entry to the differential out of g
  void add_diff_entry(Bigrading g, int row, int col, R v) {
    auto it = diffs_.find(g);
    if (it == diffs_.end()) {
      SparseMat<R> m(dim({g.i + 1, g.j}), dim(g));
      it = diffs_.emplace(g, std::move(m)).first;
    }
    it->second.add(row, col, v, ring_);
  }

  // called by builders after all generators exist so matrices get their dims
  void finalize_diff_dims() {
    for (auto& [g, blk] : blocks_) {
      auto it = diffs_.find(g);
      if (it == diffs_.end())
        diffs_.emplace(g, SparseMat<R>(dim({g.i + 1, g.j}), dim(g)));
    }
  }

  bool same_shape(const BigradedComplex& o) const {
    if (blocks_.size() != o.blocks_.size()) return false;
    for (const auto& [g, blk] : blocks_) {
      auto it = o.blocks_.find(g);
      if (it == o.blocks_.end() || !(it->second.gens == blk.gens)) return false;
    }
    return true;
  }

  std::int64_t total_rank() const {
    std::int64_t n = 0;
    for (const auto& [g, blk] : blocks_) n += static_cast<std::int64_t>(blk.gens.size());
    return n;
  }

private:
  Ring<R> ring_;
  std::map<Bigrading, Block> blocks_;
  std::map<Bigrading, SparseMat<R>> diffs_;
  std::unordered_map<std::uint64_t, std::pair<Bigrading, int>> index_;
};

template <class R>
using ComplexPtr = std::shared_ptr<const BigradedComplex<R>>;

struct ComplexCheck {
  bool ok = true;
  Bigrading first_failure{};
  std::string detail;
};

// d.d = 0 and bidegree (1,0) in every bigrading
template <class R>
ComplexCheck verify_complex(const BigradedComplex<R>& c) {
  const auto& ring = c.ring();
  for (const auto& [g, m] : c.diffs()) {
    if (m.cols() != c.dim(g) || m.rows() != c.dim({g.i + 1, g.j}))
      return {false, g, "differential block has wrong dimensions"};
    auto next = c.diff({g.i + 1, g.j});
    if (!next.compose(m, ring).is_zero())
      return {false, g, "d of d is nonzero"};
  }
  return {};
}

// Bigraded map between complexes with declared bidegree.
template <class R>
class ChainMap {
public:
  ChainMap() = default;
  ChainMap(ComplexPtr<R> src, ComplexPtr<R> dst, int di, int dj)
      : src_(std::move(src)), dst_(std::move(dst)), di_(di), dj_(dj) {}

  const ComplexPtr<R>& source() const { return src_; }
  const ComplexPtr<R>& target() const { return dst_; }
  int di() const { return di_; }
  int dj() const { return dj_; }

  Bigrading shift(Bigrading g) const { return {g.i + di_, g.j + dj_}; }

  SparseMat<R> block(Bigrading g) const {
    auto it = blocks_.find(g);
    if (it != blocks_.end()) return it->second;
    return SparseMat<R>(dst_->dim(shift(g)), src_->dim(g));
  }
  const std::map<Bigrading, SparseMat<R>>& blocks() const { return blocks_; }

  void set_block(Bigrading g, SparseMat<R> m) {
    if (!m.is_zero()) blocks_[g] = std::move(m);
  }
  void add_entry(Bigrading g, int row, int col, R v) {
    auto it = blocks_.find(g);
    if (it == blocks_.end()) {
      SparseMat<R> m(dst_->dim(shift(g)), src_->dim(g));
      it = blocks_.emplace(g, std::move(m)).first;
    }
    it->second.add(row, col, v, src_->ring());
  }

  bool is_zero() const {
    for (const auto& [g, m] : blocks_)
      if (!m.is_zero()) return false;
    return true;
  }

  ChainMap negated() const {
    ChainMap out(src_, dst_, di_, dj_);
    for (const auto& [g, m] : blocks_)
      out.blocks_[g] = m.scaled(src_->ring().from_int(-1), src_->ring());
    return out;
  }

  ChainMap plus(const ChainMap& o) const {
    ChainMap out(src_, dst_, di_, dj_);
    for (const auto& [g, m] : blocks_) out.blocks_[g] = m;
    for (const auto& [g, m] : o.blocks_) {
      auto it = out.blocks_.find(g);
      if (it == out.blocks_.end())
        out.blocks_[g] = m;
      else
        it->second = it->second.plus(m, src_->ring());
    }
    return out;
  }

private:
  ComplexPtr<R> src_, dst_;
  int di_ = 0, dj_ = 0;
  std::map<Bigrading, SparseMat<R>> blocks_;
};

template <class R>
bool same_complex(const ComplexPtr<R>& a, const ComplexPtr<R>& b) {
  return a == b || (a && b && a->same_shape(*b));
}

template <class R>
ChainMap<R> identity_map(const ComplexPtr<R>& c) {
  ChainMap<R> f(c, c, 0, 0);
  const auto& ring = c->ring();
  for (const auto& [g, blk] : c->blocks()) {
    SparseMat<R> m(c->dim(g), c->dim(g));
    for (int t = 0; t < c->dim(g); ++t) m.add(t, t, ring.one(), ring);
    f.set_block(g, std::move(m));
  }
  return f;
}

template <class R>
ChainMap<R> zero_map(const ComplexPtr<R>& src, const ComplexPtr<R>& dst, int di, int dj) {
  return ChainMap<R>(src, dst, di, dj);
}

// g after f
template <class R>
ChainMap<R> compose(const ChainMap<R>& g, const ChainMap<R>& f) {
  if (!same_complex(f.target(), g.source()))
    throw input_error("compose: inner complexes do not match");
  if (!(f.source()->ring().spec() == g.source()->ring().spec()))
    throw input_error("compose: ring mismatch");
  ChainMap<R> out(f.source(), g.target(), f.di() + g.di(), f.dj() + g.dj());
  const auto& ring = f.source()->ring();
  for (const auto& [grad, fm] : f.blocks()) {
    auto gm = g.block(f.shift(grad));
    auto prod = gm.compose(fm, ring);
    if (!prod.is_zero()) out.set_block(grad, std::move(prod));
  }
  return out;
}

// d_target(phi) - phi(d_source) = 0, and block dims consistent
template <class R>
ComplexCheck verify_chain_map(const ChainMap<R>& f) {
  const auto& src = *f.source();
  const auto& dst = *f.target();
  const auto& ring = src.ring();
  for (const auto& [g, blk] : src.blocks()) {
    auto left = dst.diff(f.shift(g)).compose(f.block(g), ring);
    auto right = f.block({g.i + 1, g.j}).compose(src.diff(g), ring);
    if (!left.equals(right))
      return {false, g, "does not commute with the differentials"};
  }
  return {};
}

enum class MapCompare { equal, negatives, distinct };

template <class R>
MapCompare scalar_compare(const ChainMap<R>& f, const ChainMap<R>& g) {
  if (!same_complex(f.source(), g.source()) || !same_complex(f.target(), g.target()) ||
      f.di() != g.di() || f.dj() != g.dj())
    throw input_error("scalar_compare: shape mismatch");
  bool eq = true, neg = true;
  const auto& ring = f.source()->ring();
  for (const auto& [grad, blk] : f.source()->blocks()) {
    auto a = f.block(grad);
    auto b = g.block(grad);
    if (!a.equals(b)) eq = false;
    if (!a.equals(b.scaled(ring.from_int(-1), ring))) neg = false;
    if (!eq && !neg) return MapCompare::distinct;
  }
  if (eq) return MapCompare::equal;
  return neg ? MapCompare::negatives : MapCompare::distinct;
}

}  // namespace kh
