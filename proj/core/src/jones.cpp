#include "kh/jones.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace kh {

LaurentPolynomial LaurentPolynomial::monomial(std::int64_t coeff, int exp) {
  LaurentPolynomial p;
  p.add_term(exp, coeff);
  return p;
}

LaurentPolynomial LaurentPolynomial::q_plus_qinv() {
  LaurentPolynomial p;
  p.add_term(1, 1);
  p.add_term(-1, 1);
  return p;
}

void LaurentPolynomial::add_term(int exp, std::int64_t coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_[exp] = coeff;
  } else {
    it->second = checked_add(it->second, coeff);
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
  LaurentPolynomial r = *this;
  for (auto [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const {
  LaurentPolynomial r = *this;
  for (auto [e, c] : o.terms_) r.add_term(e, checked_neg(c));
  return r;
}

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
  LaurentPolynomial r;
  for (auto [e1, c1] : terms_)
    for (auto [e2, c2] : o.terms_) r.add_term(e1 + e2, checked_mul(c1, c2));
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(int k) const {
  LaurentPolynomial r = monomial(1, 0);
  for (int t = 0; t < k; ++t) r = r * *this;
  return r;
}

int LaurentPolynomial::min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentPolynomial::max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

LaurentPolynomial LaurentPolynomial::invert_variable() const {
  LaurentPolynomial r;
  for (auto [e, c] : terms_) r.add_term(-e, c);
  return r;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto [e, c] : terms_) {
    std::int64_t a = c;
    if (first) {
      if (a < 0) { out += "-"; a = -a; }
    } else {
      out += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    if (a != 1 || e == 0) out += std::to_string(a);
    if (e != 0) {
      if (a != 1) out += " ";
      out += "q^" + std::to_string(e);
    }
  }
  return out;
}

namespace {

// Circle counter independent of LinkDiagram::resolve: plain union-find over
// arc endpoints, merged per state.
struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) { p[x] = p[p[x]]; x = p[x]; }
    return x;
  }
  void merge(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

LaurentPolynomial jones(const LinkDiagram& d) {
  check_crossing_limit(d);
  const int n = d.crossing_count();
  // slot ids: for arc list position i, ends 2i and 2i+1
  std::map<int, int> arc_index;
  const auto& arcs = d.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) arc_index[arcs[i]] = static_cast<int>(i);
  const int slots = static_cast<int>(arcs.size()) * 2;

  LaurentPolynomial total;
  const LaurentPolynomial loop_factor = LaurentPolynomial::q_plus_qinv();
  for (Vertex v = 0; v < (Vertex{1} << n); ++v) {
    UF uf(slots);
    std::map<int, int> used;
    auto slot = [&](int a) {
      int i = arc_index.at(a);
      return 2 * i + used[a]++;
    };
    for (int k = 0; k < n; ++k) {
      const auto& t = d.crossings()[static_cast<std::size_t>(k)];
      int s0 = slot(t[0]), s1 = slot(t[1]), s2 = slot(t[2]), s3 = slot(t[3]);
      if (((v >> k) & 1u) == 0u) {
        uf.merge(s0, s1);
        uf.merge(s2, s3);
      } else {
        uf.merge(s0, s3);
        uf.merge(s1, s2);
      }
    }
    for (std::size_t i = 0; i < arcs.size(); ++i)
      if (!d.is_loop_arc(arcs[i])) uf.merge(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
    std::vector<int> roots;
    for (std::size_t i = 0; i < arcs.size(); ++i) roots.push_back(uf.find(static_cast<int>(2 * i)));
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    int circles = static_cast<int>(roots.size());
    int w = __builtin_popcount(v);
    int sign = ((w - d.n_minus()) % 2 + 2) % 2 == 0 ? 1 : -1;
    int shift = w + d.n_plus() - 2 * d.n_minus();
    LaurentPolynomial term = loop_factor.pow(circles);
    for (auto [e, c] : term.terms()) total.add_term(e + shift, sign * c);
  }
  return total;
}

}  // namespace kh
