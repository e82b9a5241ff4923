#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kh/ring.hpp"

namespace kh {

using Vertex = std::uint32_t;  // bit k = resolution of crossing k

// A crossing records its four arc labels counterclockwise starting from the
// incoming under-strand, so position 0 is the under-in arc and position 2
// the under-out arc.
struct Crossing {
  std::array<int, 4> arc;
  int operator[](int p) const { return arc[static_cast<std::size_t>(p)]; }
};

// One complete resolution of a diagram: the cube vertex together with the
// circles of the resulting crossingless curve. Circles are sorted by their
// least arc label; this order is part of the contract (generator bases must
// be reproducible).
struct Smoothing {
  Vertex vertex = 0;
  std::vector<std::vector<int>> circles;  // each sorted, sorted by front()
  int circle_count() const { return static_cast<int>(circles.size()); }
  // index of the circle containing an arc, -1 if absent
  int circle_of(int arc) const;
};

// Oriented link diagram given by a PD code plus optional crossing-free
// loop components (arc labels not meeting any crossing).
class LinkDiagram {
public:
  LinkDiagram() = default;
  // Validates arc usage and orientation consistency; computes crossing signs.
  LinkDiagram(std::vector<Crossing> crossings, std::vector<int> loops,
              std::string name = "");

  static LinkDiagram parse_json(const std::string& text);
  std::string to_json() const;

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<int>& loops() const { return loops_; }
  const std::vector<int>& arcs() const { return arcs_; }
  // +1 / -1 per crossing
  const std::vector<int>& signs() const { return signs_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  int writhe() const { return n_plus_ - n_minus_; }

  bool has_arc(int a) const;
  bool is_loop_arc(int a) const;

  LinkDiagram mirror() const;

  // Complete resolution at a cube vertex (bit k = state of crossing k).
  Smoothing resolve(Vertex v) const;

  // Link components as sorted arc sets (strand connectivity through
  // crossings), sorted by least arc label.
  std::vector<std::vector<int>> components() const;

  // Faces of the underlying 4-valent plane graph, from the rotation system
  // implicit in the PD tuples. For a planar (spherical) diagram with c
  // connected crossing-components, face count = crossings + 1 + c.
  int face_count() const;
  bool is_planar() const;

  // Over/under alternate along every strand.
  bool is_alternating() const;

  // Largest arc label in use (0 if empty).
  int max_arc() const;

private:
  void validate_and_orient();

  std::vector<Crossing> crossings_;
  std::vector<int> loops_;
  std::string name_;
  std::vector<int> arcs_;
  std::vector<int> signs_;
  int n_plus_ = 0, n_minus_ = 0;
};

// Crossing limit guard used by the complex builders (env KH_MAX_CROSSINGS
// overrides the default of 16).
int max_crossings();
void check_crossing_limit(const LinkDiagram& d);

}  // namespace kh
