#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace weldkit {

enum class Role : std::uint8_t { tail, head };

struct EndpointRef {
  int arrow = 0;
  Role role = Role::tail;

  friend bool operator==(const EndpointRef&, const EndpointRef&) = default;
};

// Circles are indexed from 0 in the C++ API; text and JSON formats are 1-based.
struct Arrow {
  int id = 0;
  int sign = 1;
  int tail_circle = 0;
  int head_circle = 0;

  bool is_self() const { return tail_circle == head_circle; }
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

struct Location {
  int circle = 0;
  int pos = 0;

  friend bool operator==(const Location&, const Location&) = default;
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// n ordered, oriented circles carrying signed arrows. Position 0 of each
// circle's sequence sits right after the basepoint. Arrow ids are always the
// dense range 1..m; the value is immutable once constructed.
class GaussDiagram {
 public:
  GaussDiagram() = default;
  // signs[k] is the sign of arrow k + 1.
  GaussDiagram(int n, std::vector<int> signs, std::vector<std::vector<EndpointRef>> circles);

  // Accepts arbitrary positive ids; renumbers them 1..m keeping id order.
  static GaussDiagram with_compacted_ids(int n, const std::map<int, int>& signs,
                                         std::vector<std::vector<EndpointRef>> circles);

  int n() const { return static_cast<int>(circles_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const Arrow& arrow(int id) const { return arrows_.at(id - 1); }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<EndpointRef>& circle(int c) const { return circles_.at(c); }
  const std::vector<std::vector<EndpointRef>>& circles() const { return circles_; }
  Location tail(int id) const { return tail_loc_.at(id - 1); }
  Location head(int id) const { return head_loc_.at(id - 1); }
  Location locate(const EndpointRef& e) const { return e.role == Role::tail ? tail(e.arrow) : head(e.arrow); }
  std::vector<int> signs() const;

  // Copy with arrows renumbered in order of first appearance along the circles.
  GaussDiagram renumbered_by_appearance() const;

  // Exact structural fingerprint (ids and basepoints matter).
  std::uint64_t structural_hash() const;

  friend bool operator==(const GaussDiagram& a, const GaussDiagram& b) {
    return a.circles_ == b.circles_ && a.arrows_ == b.arrows_;
  }

 private:
  std::vector<Arrow> arrows_;
  std::vector<std::vector<EndpointRef>> circles_;
  std::vector<Location> tail_loc_;
  std::vector<Location> head_loc_;
};

GaussDiagram parse_gauss_code(std::string_view text);
std::string serialize_gauss_code(const GaussDiagram& d);

// Equal keys iff the diagrams agree up to arrow renumbering and rotation of
// each circle's basepoint. Component order is significant.
std::string canonical_key(const GaussDiagram& d);

// Every circle splits cyclically into a tails-only arc and a heads-only arc.
bool is_sorted(const GaussDiagram& d);
// Sorted and each circle reads tails first, then heads, from its basepoint.
bool is_sorted_normalized(const GaussDiagram& d);

// Uniformly placed endpoints, random signs, arrows numbered by appearance.
GaussDiagram random_diagram(std::mt19937_64& rng, int n, int arrows);

struct BraidLetter {
  int generator = 1;  // 1..strands-1
  int sign = 1;
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;
};

// Letters look like "s1", "s2^-1", "s3^2"; whitespace separated.
BraidWord parse_braid_word(int strands, std::string_view text);
std::string format_braid_word(const BraidWord& w);

// Closure of the braid. Positive letters put strand i over strand i+1;
// negative letters put strand i+1 over strand i. Components follow the
// permutation cycles ordered by their smallest strand; each basepoint sits at
// the bottom of that smallest strand.
GaussDiagram from_braid_closure(const BraidWord& braid);

}  // namespace weldkit
