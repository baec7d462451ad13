#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weldkit/gauss_diagram.hpp"
#include "weldkit/integer.hpp"

namespace weldkit {

// A generator index (0-based) raised to +1 or -1.
struct Letter {
  int gen = 0;
  int exp = 1;

  Letter inverse() const { return Letter{gen, -exp}; }
  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
Word concat(std::initializer_list<Word> parts);
Word power(int gen, int exponent);
Word commutator(const Word& a, const Word& b);  // a b a^-1 b^-1
int exponent_sum(const Word& w, int gen);

// "m2 m1^-1" style; generators are 1-based in text. The empty word is "1".
std::string format_word(const Word& w, std::string_view prefix = "m");
Word parse_word(std::string_view text, std::string_view prefix = "m");

// Integer-letter arrays for JSON: +-(gen + 1).
std::vector<int> word_to_ints(const Word& w);
Word word_from_ints(const std::vector<int>& v);

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  // Stands for the infinite family [g, w^-1 g w] over all generators g and all
  // words w. Equalities in the quotient are decided by the Magnus expansion.
  bool reduced_relators = false;
};

// Longitudes are words over the generator set of the ambient presentation;
// meridians[i] is the generator chosen as the i-th meridian.
struct PeripheralSystem {
  int n = 0;
  std::vector<int> meridians;
  std::vector<Word> longitudes;
  std::vector<int> self_crossings;
};

// Global numbering of the Wirtinger arcs of a diagram. Arc 0 of a circle is
// the arc through its basepoint; arc t starts right after the t-th head.
class ArcLayout {
 public:
  explicit ArcLayout(const GaussDiagram& d);

  int arc_count() const { return total_; }
  int first_arc(int circle) const { return first_[circle]; }
  int arcs_on(int circle) const { return count_[circle]; }
  int component_of(int arc) const { return component_[arc]; }
  // Arc carrying the given position (a head position ends the previous arc).
  int arc_at(const Location& loc) const;
  // Index of the head within its circle, counting from 1 in position order.
  int head_index(const Location& loc) const;

 private:
  std::vector<int> first_;
  std::vector<int> count_;
  std::vector<int> component_;
  std::vector<std::vector<int>> heads_before_;
  int total_ = 0;
};

// One generator per arc; one relator per arrow: gamma^-1 alpha^-e beta alpha^e
// for incoming arc beta, outgoing arc gamma, tail arc alpha, sign e.
GroupPresentation wirtinger(const GaussDiagram& d);

struct ArcPeripheralSystem {
  GroupPresentation presentation;
  PeripheralSystem system;  // over arc generators
  std::vector<int> arc_component;
};

// basing[i] is a global arc index on circle i; defaults to the basepoint arcs.
ArcPeripheralSystem peripheral_system(const GaussDiagram& d,
                                      const std::optional<std::vector<int>>& basing = std::nullopt);

// Longitudes of a sorted diagram read directly over the meridians mu_1..mu_n.
PeripheralSystem sorted_longitudes(const GaussDiagram& d);

// Generators mu_1..mu_n, finite relators [mu_i, lambda_i], plus the symbolic
// reduction family.
GroupPresentation reduced_presentation(const PeripheralSystem& p);

// Sorted diagram (tails first, then heads, on every circle) whose longitudes
// are the given words after free reduction. Each word must have zero exponent
// sum in its own meridian, since the writhe correction forces that.
GaussDiagram build_sorted_from_longitudes(int n, const std::vector<Word>& longitudes);

// Smith normal form invariants of the abelianized presentation.
struct Abelianization {
  int free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1, ascending
  friend bool operator==(const Abelianization&, const Abelianization&) = default;
};

Abelianization abelianization(const GroupPresentation& p);

}  // namespace weldkit
