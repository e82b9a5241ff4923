#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kh/complex.hpp"
#include "kh/snf.hpp"

namespace kh {

// Ranks and torsion per bigrading. Torsion coefficients are stored as
// positive integers forming a divisibility chain (Z coefficients only;
// empty over fields).
struct HomologyTable {
  struct Group {
    int free_rank = 0;
    std::vector<std::int64_t> torsion;
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
  };
  RingSpec ring;
  std::map<Bigrading, Group> groups;  // nontrivial entries only

  bool is_zero() const { return groups.empty(); }
  std::string to_json() const;
  static HomologyTable parse_json(const std::string&);
  bool operator==(const HomologyTable&) const = default;
};

// ranks + torsion only (sparse path; no basis data)
template <class R>
HomologyTable homology(const BigradedComplex<R>& c) {
  const auto& ring = c.ring();
  HomologyTable table;
  table.ring = ring.spec();
  for (const auto& [g, blk] : c.blocks()) {
    int dim = static_cast<int>(blk.gens.size());
    auto [rank_out, tors_out] = sparse_rank_torsion(c.diff(g), ring);
    auto [rank_in, tors_in] = sparse_rank_torsion(c.diff({g.i - 1, g.j}), ring);
    (void)tors_out;
    HomologyTable::Group grp;
    grp.free_rank = dim - rank_out - rank_in;
    for (const R& t : tors_in)
      if constexpr (std::is_same_v<R, Int>)
        grp.torsion.push_back(std::llabs(t.v));
    std::sort(grp.torsion.begin(), grp.torsion.end());
    if (!grp.trivial()) table.groups[g] = std::move(grp);
  }
  return table;
}

// Homology of one bigrading with explicit basis representatives and a
// projection map, for induced-map computations.
template <class R>
struct BlockHomology {
  // chain-level data
  int chain_dim = 0;
  int kernel_dim = 0;     // k
  int image_rank = 0;     // rank of incoming differential inside the kernel
  Dense<R> kernel_basis;  // chain_dim x k
  Dense<R> vinv_kernel;   // k x chain_dim  (kernel coordinates of a cycle)
  Dense<R> uprime;        // k x k
  std::vector<R> sdiag;   // invariant factors of the image (size image_rank)

  // homology coordinate slots: t in [0, image_rank) with non-unit sdiag[t]
  // are torsion slots; t in [image_rank, k) are free slots.
  std::vector<int> torsion_slots, free_slots;

  int free_rank() const { return static_cast<int>(free_slots.size()); }
  std::vector<R> torsion() const;

  // homology coordinates (per uprime basis) of a cycle; reduces torsion slots
  // and drops unit slots. Layout: torsion coords then free coords.
  struct Coords {
    std::vector<R> tors;  // reduced mod sdiag of the slot
    std::vector<R> free;
  };
  Coords project(const std::vector<R>& cycle, const Ring<R>& ring) const;
};

template <class R>
std::vector<R> BlockHomology<R>::torsion() const {
  std::vector<R> out;
  for (int t : torsion_slots) out.push_back(sdiag[static_cast<std::size_t>(t)]);
  return out;
}

// full with-basis homology of a complex
template <class R>
class HomologyBasis {
public:
  HomologyBasis() = default;
  explicit HomologyBasis(const BigradedComplex<R>& c) : ring_(c.ring()) {
    for (const auto& [g, blk] : c.blocks()) compute_block(c, g);
  }

  const Ring<R>& ring() const { return ring_; }

  const BlockHomology<R>* block(Bigrading g) const {
    auto it = blocks_.find(g);
    return it == blocks_.end() ? nullptr : &it->second;
  }
  const std::map<Bigrading, BlockHomology<R>>& blocks() const { return blocks_; }

  // chain-coordinate representatives of the homology generators at g,
  // ordered: torsion slots then free slots
  const std::vector<std::vector<R>>& reps(Bigrading g) const {
    static const std::vector<std::vector<R>> empty;
    auto it = reps_.find(g);
    return it == reps_.end() ? empty : it->second;
  }

  HomologyTable table() const {
    HomologyTable t;
    t.ring = ring_.spec();
    for (const auto& [g, b] : blocks_) {
      HomologyTable::Group grp;
      grp.free_rank = b.free_rank();
      for (const R& x : b.torsion())
        if constexpr (std::is_same_v<R, Int>) grp.torsion.push_back(std::llabs(x.v));
      std::sort(grp.torsion.begin(), grp.torsion.end());
      if (!grp.trivial()) t.groups[g] = std::move(grp);
    }
    return t;
  }

private:
  void compute_block(const BigradedComplex<R>& c, Bigrading g) {
    const auto& ring = ring_;
    const int dim = c.dim(g);
    if (dim == 0) return;
    auto dout = Dense<R>::from_sparse(c.diff(g), ring);
    auto snf_out = smith_normal_form(dout, ring);
    const int k = dim - snf_out.rank;
    BlockHomology<R> b;
    b.chain_dim = dim;
    b.kernel_dim = k;
    // kernel basis: columns rank.. of V
    b.kernel_basis = Dense<R>(dim, k, ring.zero());
    for (int r = 0; r < dim; ++r)
      for (int t = 0; t < k; ++t)
        b.kernel_basis.at(r, t) = snf_out.v.at(r, snf_out.rank + t);
    b.vinv_kernel = Dense<R>(k, dim, ring.zero());
    for (int t = 0; t < k; ++t)
      for (int cidx = 0; cidx < dim; ++cidx)
        b.vinv_kernel.at(t, cidx) = snf_out.vinv.at(snf_out.rank + t, cidx);
    // incoming image in kernel coordinates
    auto din = Dense<R>::from_sparse(c.diff({g.i - 1, g.j}), ring);
    Dense<R> x = b.vinv_kernel.mul(din, ring);
    auto snf_x = smith_normal_form(x, ring);
    b.image_rank = snf_x.rank;
    b.uprime = snf_x.u;
    b.sdiag = snf_x.diagonal;
    for (int t = 0; t < snf_x.rank; ++t)
      if (!ring.is_unit(b.sdiag[static_cast<std::size_t>(t)])) b.torsion_slots.push_back(t);
    for (int t = snf_x.rank; t < k; ++t) b.free_slots.push_back(t);
    // representatives: K * (U'^{-1} e_t) = K * column t of U'inv
    std::vector<std::vector<R>> reps;
    auto rep_of = [&](int slot) {
      std::vector<R> uinv_col(static_cast<std::size_t>(k), ring.zero());
      for (int r = 0; r < k; ++r) uinv_col[static_cast<std::size_t>(r)] = snf_x.uinv.at(r, slot);
      return b.kernel_basis.apply(uinv_col, ring);
    };
    for (int t : b.torsion_slots) reps.push_back(rep_of(t));
    for (int t : b.free_slots) reps.push_back(rep_of(t));
    if (b.free_rank() > 0 || !b.torsion_slots.empty()) {
      blocks_[g] = std::move(b);
      reps_[g] = std::move(reps);
    }
  }

  Ring<R> ring_;
  std::map<Bigrading, BlockHomology<R>> blocks_;
  std::map<Bigrading, std::vector<std::vector<R>>> reps_;
};

template <class R>
typename BlockHomology<R>::Coords BlockHomology<R>::project(const std::vector<R>& cycle,
                                                            const Ring<R>& ring) const {
  std::vector<R> c = vinv_kernel.apply(cycle, ring);
  std::vector<R> y = uprime.apply(c, ring);
  Coords out;
  for (int t : torsion_slots) {
    R d = sdiag[static_cast<std::size_t>(t)];
    R val = y[static_cast<std::size_t>(t)];
    // reduce mod d (Z only; fields have no torsion slots)
    R q = ring.quot_nearest(val, d);
    out.tors.push_back(ring.sub(val, ring.mul(q, d)));
  }
  for (int t : free_slots) out.free.push_back(y[static_cast<std::size_t>(t)]);
  return out;
}

// Induced map on homology per bigrading, in the SNF-adapted bases of source
// and target. Columns = images of the source homology generators (torsion
// generators first, then free), each given by its target coordinates.
template <class R>
struct InducedMap {
  struct Block {
    // column-major: coords of image of each source generator
    std::vector<typename BlockHomology<R>::Coords> columns;
  };
  int di = 0, dj = 0;
  std::map<Bigrading, Block> blocks;  // keyed by source bigrading
};

template <class R>
InducedMap<R> induced_map(const ChainMap<R>& f, const HomologyBasis<R>& src_h,
                          const HomologyBasis<R>& dst_h) {
  auto check = verify_chain_map(f);
  if (!check.ok)
    throw input_error("induced_map: not a chain map at (i=" +
                      std::to_string(check.first_failure.i) + ", j=" +
                      std::to_string(check.first_failure.j) + ")");
  const auto& ring = f.source()->ring();
  InducedMap<R> out;
  out.di = f.di();
  out.dj = f.dj();
  for (const auto& [g, bh] : src_h.blocks()) {
    typename InducedMap<R>::Block blk;
    auto fb = f.block(g);
    const auto* tb = dst_h.block(f.shift(g));
    for (const auto& rep : src_h.reps(g)) {
      std::vector<R> img = fb.apply(rep, ring);
      if (tb == nullptr) {
        // target homology trivial there: image class is zero
        typename BlockHomology<R>::Coords z;
        blk.columns.push_back(z);
      } else {
        blk.columns.push_back(tb->project(img, ring));
      }
    }
    out.blocks[g] = std::move(blk);
  }
  return out;
}

enum class EndoClass { identity, negative_identity, other };

// classify an endomorphism's induced map against +-identity (global sign)
template <class R>
EndoClass classify_vs_identity(const InducedMap<R>& m, const HomologyBasis<R>& h) {
  const auto& ring = h.ring();
  bool plus_ok = true, minus_ok = true;
  for (const auto& [g, bh] : h.blocks()) {
    auto it = m.blocks.find(g);
    const int nt = static_cast<int>(bh.torsion_slots.size());
    const int nf = bh.free_rank();
    if (it == m.blocks.end()) {
      if (nt + nf > 0) return EndoClass::other;
      continue;
    }
    const auto& cols = it->second.columns;
    if (static_cast<int>(cols.size()) != nt + nf) return EndoClass::other;
    auto tors_equal = [&](const R& a, const R& b, int slot) {
      R d = bh.sdiag[static_cast<std::size_t>(bh.torsion_slots[static_cast<std::size_t>(slot)])];
      R diffv = ring.sub(a, b);
      R q = ring.quot_nearest(diffv, d);
      return ring.is_zero(ring.sub(diffv, ring.mul(q, d)));
    };
    for (int gen = 0; gen < nt + nf; ++gen) {
      const auto& col = cols[static_cast<std::size_t>(gen)];
      if (static_cast<int>(col.tors.size()) != nt || static_cast<int>(col.free.size()) != nf)
        return EndoClass::other;
      for (int t = 0; t < nt; ++t) {
        R want = (gen == t) ? ring.one() : ring.zero();
        const R& val = col.tors[static_cast<std::size_t>(t)];
        if (!tors_equal(val, want, t)) plus_ok = false;
        if (!tors_equal(val, ring.neg(want), t)) minus_ok = false;
      }
      for (int t = 0; t < nf; ++t) {
        R want = (gen == nt + t) ? ring.one() : ring.zero();
        const R& val = col.free[static_cast<std::size_t>(t)];
        if (!(val == want)) plus_ok = false;
        if (!(val == ring.neg(want))) minus_ok = false;
      }
      if (!plus_ok && !minus_ok) return EndoClass::other;
    }
  }
  if (plus_ok) return EndoClass::identity;
  if (minus_ok) return EndoClass::negative_identity;
  return EndoClass::other;
}

// derived invariants ---------------------------------------------------------

struct InvariantReport {
  bool defined = false;  // false for zero homology
  int q_min = 0, q_max = 0;
  int breadth = 0;           // q_max - q_min
  int delta_min = 0, delta_max = 0;
  int width = 0;             // delta spread, delta = j - 2i
  bool thin = false;         // width == 2
  std::string poincare;      // polynomial in t, q
  std::string to_json() const;
};

InvariantReport invariants(const HomologyTable& h);

struct CorollaryCheck {
  bool qmin_ok = false, qmax_ok = false, breadth_ok = false, width_ok = false;
  bool all() const { return qmin_ok && qmax_ok && breadth_ok && width_ok; }
  std::string to_json() const;
};

// inequalities expected when L0 is ribbon concordant to L1
CorollaryCheck compare_invariants(const InvariantReport& r0, const InvariantReport& r1);

}  // namespace kh
