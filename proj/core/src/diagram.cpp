#include "kh/diagram.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

namespace kh {

namespace {

// Union-find with parity, for the orientation constraints.
struct ParityUF {
  std::vector<int> parent, rank_;
  std::vector<std::uint8_t> parity;
  explicit ParityUF(int n) : parent(n), rank_(n, 0), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    int p = 0;
    int r = x;
    while (parent[r] != r) {
      p ^= parity[r];
      r = parent[r];
    }
    // path compression
    int cur = x, cp = p;
    while (parent[cur] != cur) {
      int nxt = parent[cur];
      int np = cp ^ parity[cur];
      parent[cur] = r;
      parity[cur] = static_cast<std::uint8_t>(cp);
      cur = nxt;
      cp = np;
    }
    return {r, p};
  }
  // enforce value(x) xor value(y) == rel; returns false on contradiction
  bool merge(int x, int y, int rel) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) return (px ^ py) == rel;
    if (rank_[rx] > rank_[ry]) {
      std::swap(rx, ry);
      std::swap(px, py);
    }
    parent[rx] = ry;
    parity[rx] = static_cast<std::uint8_t>(px ^ py ^ rel);
    if (rank_[rx] == rank_[ry]) ++rank_[ry];
    return true;
  }
};

struct PlainUF {
  std::vector<int> parent;
  explicit PlainUF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void merge(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int Smoothing::circle_of(int arc) const {
  for (std::size_t i = 0; i < circles.size(); ++i)
    if (std::binary_search(circles[i].begin(), circles[i].end(), arc))
      return static_cast<int>(i);
  return -1;
}

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, std::vector<int> loops,
                         std::string name)
    : crossings_(std::move(crossings)), loops_(std::move(loops)),
      name_(std::move(name)) {
  std::sort(loops_.begin(), loops_.end());
  validate_and_orient();
}

void LinkDiagram::validate_and_orient() {
  std::map<int, int> count;
  for (std::size_t k = 0; k < crossings_.size(); ++k)
    for (int p = 0; p < 4; ++p) {
      int a = crossings_[k][p];
      if (a <= 0)
        throw input_error("crossing " + std::to_string(k) +
                          ": arc labels must be positive integers");
      ++count[a];
    }
  for (int l : loops_) {
    if (l <= 0) throw input_error("loop labels must be positive integers");
    if (count.count(l))
      throw input_error("loop arc " + std::to_string(l) + " also meets a crossing");
    count[l] += 2;
  }
  {
    std::set<int> seen(loops_.begin(), loops_.end());
    if (seen.size() != loops_.size()) throw input_error("duplicate loop label");
  }
  arcs_.clear();
  for (auto& [a, c] : count) {
    if (c != 2) {
      // tell the user which crossing mentions the arc
      for (std::size_t k = 0; k < crossings_.size(); ++k)
        for (int p = 0; p < 4; ++p)
          if (crossings_[k][p] == a)
            throw input_error("dangling arc " + std::to_string(a) +
                              " (appears " + std::to_string(c) +
                              " times; see crossing " + std::to_string(k) + ")");
      throw input_error("dangling arc " + std::to_string(a));
    }
    arcs_.push_back(a);
  }

  // Orientation: position 0 is under-in, position 2 under-out. For the over
  // strand one boolean per crossing: o_k = 0 means over enters at position 3
  // (positive crossing), o_k = 1 means it enters at position 1 (negative).
  // Each arc must have one head (incoming end) and one tail. Encode as a
  // parity constraint system; node n = ground (value 0).
  const int n = crossing_count();
  ParityUF uf(n + 1);
  const int ground = n;
  // endpoint roles as bits: head=1. pos0: 1; pos2: 0; pos1: o_k; pos3: 1^o_k.
  // For an arc with endpoints (k1,p1),(k2,p2): role1 ^ role2 == 1.
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < 4; ++p) occ[crossings_[static_cast<std::size_t>(k)][p]].push_back({k, p});
  auto rolebit = [](int p) -> std::pair<int, int> {
    // returns (constant, uses_variable)
    switch (p) {
      case 0: return {1, 0};
      case 2: return {0, 0};
      case 1: return {0, 1};
      default: return {1, 1};
    }
  };
  for (auto& [a, pl] : occ) {
    auto [c1, m1] = rolebit(pl[0].second);
    auto [c2, m2] = rolebit(pl[1].second);
    int k1 = pl[0].first, k2 = pl[1].first;
    bool ok;
    if (m1 && m2)
      ok = uf.merge(k1, k2, 1 ^ c1 ^ c2);
    else if (m1)
      ok = uf.merge(k1, ground, 1 ^ c1 ^ c2);
    else if (m2)
      ok = uf.merge(k2, ground, 1 ^ c1 ^ c2);
    else
      ok = ((c1 ^ c2) == 1);
    if (!ok)
      throw input_error("inconsistent orientation at arc " + std::to_string(a) +
                        " (crossing " + std::to_string(k1) + ")");
  }
  signs_.assign(static_cast<std::size_t>(n), 0);
  n_plus_ = n_minus_ = 0;
  for (int k = 0; k < n; ++k) {
    auto [rk, pk] = uf.find(k);
    auto [rg, pg] = uf.find(ground);
    if (rk != rg) uf.merge(k, ground, 0);  // free component: canonical choice
    auto [r2, val] = uf.find(k);
    signs_[static_cast<std::size_t>(k)] = (val == 0) ? +1 : -1;
    (val == 0 ? n_plus_ : n_minus_)++;
  }
}

bool LinkDiagram::has_arc(int a) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), a);
}

bool LinkDiagram::is_loop_arc(int a) const {
  return std::binary_search(loops_.begin(), loops_.end(), a);
}

int LinkDiagram::max_arc() const { return arcs_.empty() ? 0 : arcs_.back(); }

LinkDiagram LinkDiagram::mirror() const {
  std::vector<Crossing> out;
  out.reserve(crossings_.size());
  for (std::size_t k = 0; k < crossings_.size(); ++k) {
    const auto& t = crossings_[k].arc;
    if (signs_[k] > 0)
      out.push_back({{t[3], t[0], t[1], t[2]}});
    else
      out.push_back({{t[1], t[2], t[3], t[0]}});
  }
  return LinkDiagram(std::move(out), loops_, name_.empty() ? "" : name_ + "!");
}

Smoothing LinkDiagram::resolve(Vertex v) const {
  const int n = crossing_count();
  if (n < 32 && (v >> n) != 0)
    throw input_error("vertex has bits beyond the crossing count");
  // slots: 2 ends per arc; slot id = 2*arc_index + {0,1}
  std::map<int, int> arc_index;
  for (std::size_t i = 0; i < arcs_.size(); ++i) arc_index[arcs_[i]] = static_cast<int>(i);
  PlainUF uf(static_cast<int>(arcs_.size()) * 2);
  std::map<int, int> used;  // arc -> how many slots taken
  auto slot = [&](int a) {
    int i = arc_index.at(a);
    int s = 2 * i + used[a];
    ++used[a];
    return s;
  };
  for (int k = 0; k < n; ++k) {
    const auto& t = crossings_[static_cast<std::size_t>(k)];
    int s0 = slot(t[0]), s1 = slot(t[1]), s2 = slot(t[2]), s3 = slot(t[3]);
    if (((v >> k) & 1u) == 0u) {
      uf.merge(s0, s1);
      uf.merge(s2, s3);
    } else {
      uf.merge(s0, s3);
      uf.merge(s1, s2);
    }
  }
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    if (!is_loop_arc(arcs_[i])) uf.merge(static_cast<int>(2 * i), static_cast<int>(2 * i + 1));
  std::map<int, std::vector<int>> comp;
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    comp[uf.find(static_cast<int>(2 * i))].push_back(arcs_[i]);
  Smoothing s;
  s.vertex = v;
  for (auto& [root, circle] : comp) s.circles.push_back(circle);  // already sorted
  std::sort(s.circles.begin(), s.circles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return s;
}

std::vector<std::vector<int>> LinkDiagram::components() const {
  std::map<int, int> arc_index;
  for (std::size_t i = 0; i < arcs_.size(); ++i) arc_index[arcs_[i]] = static_cast<int>(i);
  PlainUF uf(static_cast<int>(arcs_.size()));
  for (const auto& c : crossings_) {
    uf.merge(arc_index.at(c[0]), arc_index.at(c[2]));
    uf.merge(arc_index.at(c[1]), arc_index.at(c[3]));
  }
  std::map<int, std::vector<int>> comp;
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    comp[uf.find(static_cast<int>(i))].push_back(arcs_[i]);
  std::vector<std::vector<int>> out;
  for (auto& [r, c] : comp) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

int LinkDiagram::face_count() const {
  const int n = crossing_count();
  // match slot (k,p) with the other occurrence of the same arc
  std::map<int, std::vector<std::pair<int, int>>> occ;
  for (int k = 0; k < n; ++k)
    for (int p = 0; p < 4; ++p) occ[crossings_[static_cast<std::size_t>(k)][p]].push_back({k, p});
  auto other = [&](int k, int p) {
    const auto& pl = occ.at(crossings_[static_cast<std::size_t>(k)][p]);
    return pl[0] == std::make_pair(k, p) ? pl[1] : pl[0];
  };
  std::set<std::pair<int, int>> seen;
  int faces = 0;
  for (int k0 = 0; k0 < n; ++k0)
    for (int p0 = 0; p0 < 4; ++p0) {
      if (seen.count({k0, p0})) continue;
      ++faces;
      int k = k0, p = p0;
      while (!seen.count({k, p})) {
        seen.insert({k, p});
        auto [k2, p2] = other(k, (p + 1) % 4);
        k = k2;
        p = p2;
      }
    }
  return faces;
}

bool LinkDiagram::is_planar() const {
  if (crossing_count() == 0) return true;
  // crossing-connected components of the 4-valent graph
  PlainUF uf(crossing_count());
  std::map<int, std::vector<int>> by_arc;
  for (int k = 0; k < crossing_count(); ++k)
    for (int p = 0; p < 4; ++p) by_arc[crossings_[static_cast<std::size_t>(k)][p]].push_back(k);
  for (auto& [a, ks] : by_arc)
    if (ks.size() == 2) uf.merge(ks[0], ks[1]);
  std::set<int> roots;
  for (int k = 0; k < crossing_count(); ++k) roots.insert(uf.find(k));
  return face_count() == crossing_count() + 1 + static_cast<int>(roots.size());
}

bool LinkDiagram::is_alternating() const {
  if (crossing_count() == 0 || !loops_.empty()) return false;
  std::map<int, int> unders;
  for (const auto& c : crossings_) {
    unders[c[0]] += 1;
    unders[c[2]] += 1;
  }
  for (int a : arcs_)
    if (unders[a] != 1) return false;
  return true;
}

LinkDiagram LinkDiagram::parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw input_error(std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object()) throw input_error("diagram must be a JSON object");
  for (auto& [key, val] : j.items())
    if (key != "name" && key != "pd" && key != "loops")
      throw input_error("unknown field '" + key + "' in diagram");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw input_error("'name' must be a string");
    name = j["name"].get<std::string>();
  }
  if (!j.contains("pd") || !j["pd"].is_array())
    throw input_error("missing 'pd' array");
  std::vector<Crossing> xs;
  for (std::size_t k = 0; k < j["pd"].size(); ++k) {
    const auto& t = j["pd"][k];
    if (!t.is_array() || t.size() != 4)
      throw input_error("crossing " + std::to_string(k) +
                        ": expected a 4-tuple of arc labels");
    Crossing c{};
    for (int p = 0; p < 4; ++p) {
      if (!t[static_cast<std::size_t>(p)].is_number_integer())
        throw input_error("crossing " + std::to_string(k) + ": arc labels must be integers");
      c.arc[static_cast<std::size_t>(p)] = t[static_cast<std::size_t>(p)].get<int>();
    }
    xs.push_back(c);
  }
  std::vector<int> loops;
  if (j.contains("loops")) {
    if (!j["loops"].is_array()) throw input_error("'loops' must be an array");
    for (const auto& l : j["loops"]) {
      if (!l.is_number_integer()) throw input_error("loop labels must be integers");
      loops.push_back(l.get<int>());
    }
  }
  return LinkDiagram(std::move(xs), std::move(loops), std::move(name));
}

std::string LinkDiagram::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["pd"] = nlohmann::ordered_json::array();
  for (const auto& c : crossings_) j["pd"].push_back({c[0], c[1], c[2], c[3]});
  if (!loops_.empty()) j["loops"] = loops_;
  return j.dump();
}

int max_crossings() {
  if (const char* env = std::getenv("KH_MAX_CROSSINGS")) {
    int v = std::atoi(env);
    if (v > 0) return std::min(v, 30);
  }
  return 16;
}

void check_crossing_limit(const LinkDiagram& d) {
  if (d.crossing_count() > max_crossings())
    throw input_error("diagram '" + d.name() + "' has " +
                      std::to_string(d.crossing_count()) +
                      " crossings; limit is " + std::to_string(max_crossings()) +
                      " (set KH_MAX_CROSSINGS to raise)");
}

}  // namespace kh
