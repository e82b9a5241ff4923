#pragma once

#include <cassert>
#include <vector>

#include "kh/complex.hpp"
#include "kh/diagram.hpp"
#include "kh/laurent.hpp"

namespace kh {

// All smoothings of a diagram, indexed by vertex.
class ResolutionCube {
public:
  explicit ResolutionCube(const LinkDiagram& d) : d_(&d) {
    check_crossing_limit(d);
    const int n = d.crossing_count();
    smoothings_.reserve(std::size_t{1} << n);
    for (Vertex v = 0; v < (Vertex{1} << n); ++v) smoothings_.push_back(d.resolve(v));
  }
  const LinkDiagram& diagram() const { return *d_; }
  const Smoothing& at(Vertex v) const { return smoothings_[v]; }

private:
  const LinkDiagram* d_;
  std::vector<Smoothing> smoothings_;
};

namespace detail {

inline int popcount_below(Vertex v, int k) {
  return __builtin_popcount(v & ((Vertex{1} << k) - 1));
}

}  // namespace detail

// Khovanov chain complex of a diagram over the given ring. Generators at
// vertex v are labelings of the circles of the smoothing by {v+, v-}
// (bit 1 = v-), with
//   i = |v| - n_-,   j = (#v+ - #v-) + |v| + n_+ - 2 n_-.
// Edge maps are the Frobenius multiplication/comultiplication with the sign
// (-1)^{# of 1s before the flipped coordinate}.
template <class R>
std::shared_ptr<BigradedComplex<R>> build_complex(const ResolutionCube& cube,
                                                  Ring<R> ring = Ring<R>()) {
  const LinkDiagram& d = cube.diagram();
  const int n = d.crossing_count();
  auto cx = std::make_shared<BigradedComplex<R>>(ring);

  auto grading = [&](Vertex v, std::uint32_t label, int circles) {
    int w = __builtin_popcount(v);
    int i = w - d.n_minus();
    int deg = circles - 2 * __builtin_popcount(label);
    int j = deg + w + d.n_plus() - 2 * d.n_minus();
    return Bigrading{i, j};
  };

  for (Vertex v = 0; v < (Vertex{1} << n); ++v) {
    const auto& sm = cube.at(v);
    const int c = sm.circle_count();
    for (std::uint32_t label = 0; label < (1u << c); ++label)
      cx->add_generator(grading(v, label, c), {v, label});
  }
  cx->finalize_diff_dims();

  for (Vertex v = 0; v < (Vertex{1} << n); ++v) {
    const auto& sm = cube.at(v);
    const int c = sm.circle_count();
    for (int k = 0; k < n; ++k) {
      if ((v >> k) & 1u) continue;
      Vertex v2 = v | (Vertex{1} << k);
      const auto& sm2 = cube.at(v2);
      R sign = ring.from_int(detail::popcount_below(v, k) % 2 == 0 ? 1 : -1);
      // circles touching crossing k on both sides
      const auto& t = d.crossings()[static_cast<std::size_t>(k)];
      auto touches = [&](const std::vector<int>& circle) {
        for (int p = 0; p < 4; ++p)
          if (std::binary_search(circle.begin(), circle.end(), t[p])) return true;
        return false;
      };
      std::vector<int> src_touch, dst_touch;
      for (int ci = 0; ci < c; ++ci)
        if (touches(sm.circles[static_cast<std::size_t>(ci)])) src_touch.push_back(ci);
      for (int ci = 0; ci < sm2.circle_count(); ++ci)
        if (touches(sm2.circles[static_cast<std::size_t>(ci)])) dst_touch.push_back(ci);
      // untouched circles map by identical arc sets
      std::vector<int> carry(static_cast<std::size_t>(c), -1);
      for (int ci = 0; ci < c; ++ci) {
        if (touches(sm.circles[static_cast<std::size_t>(ci)])) continue;
        for (int cj = 0; cj < sm2.circle_count(); ++cj)
          if (sm.circles[static_cast<std::size_t>(ci)] == sm2.circles[static_cast<std::size_t>(cj)]) {
            carry[static_cast<std::size_t>(ci)] = cj;
            break;
          }
        assert(carry[static_cast<std::size_t>(ci)] >= 0);
      }
      for (std::uint32_t label = 0; label < (1u << c); ++label) {
        auto g = grading(v, label, c);
        auto loc = cx->locate({v, label});
        int colidx = loc->second;
        auto base_label = [&](std::uint32_t special_bits) {
          std::uint32_t l2 = special_bits;
          for (int ci = 0; ci < c; ++ci)
            if (carry[static_cast<std::size_t>(ci)] >= 0 && ((label >> ci) & 1u))
              l2 |= 1u << carry[static_cast<std::size_t>(ci)];
          return l2;
        };
        auto emit = [&](std::uint32_t l2) {
          auto loc2 = cx->locate({v2, l2});
          assert(loc2 && loc2->first.i == g.i + 1 && loc2->first.j == g.j);
          cx->add_diff_entry(g, loc2->second, colidx, sign);
        };
        if (src_touch.size() == 2) {
          // merge: multiplication  v+v+ -> v+, v+v- -> v-, v-v- -> 0
          int a = src_touch[0], b = src_touch[1];
          int m = dst_touch[0];
          int s = static_cast<int>((label >> a) & 1u) + static_cast<int>((label >> b) & 1u);
          if (s == 0)
            emit(base_label(0));
          else if (s == 1)
            emit(base_label(1u << m));
        } else {
          // split: comultiplication  v+ -> v+v- + v-v+,  v- -> v-v-
          int a = src_touch[0];
          int p = dst_touch[0], q = dst_touch[1];
          if (((label >> a) & 1u) == 0u) {
            emit(base_label(1u << q));
            emit(base_label(1u << p));
          } else {
            emit(base_label((1u << p) | (1u << q)));
          }
        }
      }
    }
  }
  return cx;
}

template <class R>
std::shared_ptr<BigradedComplex<R>> build_complex(const LinkDiagram& d,
                                                  Ring<R> ring = Ring<R>()) {
  ResolutionCube cube(d);
  return build_complex<R>(cube, ring);
}

// graded Euler characteristic: sum over (i,j) of (-1)^i rank q^j
template <class R>
LaurentPolynomial graded_euler_characteristic(const BigradedComplex<R>& c) {
  LaurentPolynomial out;
  for (const auto& [g, blk] : c.blocks())
    out.add_term(g.j, (g.i % 2 == 0 ? 1 : -1) *
                          static_cast<std::int64_t>(blk.gens.size()));
  return out;
}

}  // namespace kh
