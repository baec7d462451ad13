#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weldkit/gauss_diagram.hpp"
#include "weldkit/group.hpp"
#include "weldkit/integer.hpp"

namespace weldkit {

// Largest variable count supported by the Magnus expansion. The monomial
// basis of n = 6 has 1957 elements.
inline constexpr int kMaxMagnusVariables = 6;

// Monomials in n noncommuting variables with pairwise distinct indices,
// ordered by length then lexicographically. Index 0 is the unit monomial.
class MonomialBasis {
 public:
  static const MonomialBasis& get(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(monomials_.size()); }
  const std::vector<int>& monomial(int index) const { return monomials_[index]; }
  // -1 when the sequence repeats an index or uses one out of range.
  int index_of(const std::vector<int>& monomial) const;
  // Product of two monomials, -1 when it repeats a variable.
  int product(int a, int b) const { return product_[static_cast<std::size_t>(a) * size() + b]; }
  int append(int a, int var) const { return append_[static_cast<std::size_t>(a) * n_ + var]; }
  int prepend(int var, int a) const { return prepend_[static_cast<std::size_t>(a) * n_ + var]; }
  bool contains(int a, int var) const { return (masks_[a] >> var) & 1u; }

 private:
  explicit MonomialBasis(int n);
  int code_of(const std::vector<int>& monomial) const;

  int n_;
  std::vector<std::vector<int>> monomials_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> code_to_index_;
  std::vector<int> product_;
  std::vector<int> append_;
  std::vector<int> prepend_;
};

// Integer noncommutative polynomial modulo monomials with a repeated variable.
// Dense over the monomial basis of its variable count.
class ReducedPoly {
 public:
  explicit ReducedPoly(int n);
  static ReducedPoly one(int n);
  static ReducedPoly variable(int n, int var);

  int n() const { return n_; }
  const MonomialBasis& basis() const { return *basis_; }
  const Integer& coefficient(int index) const { return coeffs_[index]; }
  Integer coefficient(const std::vector<int>& monomial) const;
  void set_coefficient(int index, Integer value) { coeffs_[index] = std::move(value); }
  const Integer& constant() const { return coeffs_[0]; }
  bool is_one() const;
  int support_size() const;

  ReducedPoly& operator+=(const ReducedPoly& rhs);
  ReducedPoly& operator-=(const ReducedPoly& rhs);
  friend ReducedPoly operator+(ReducedPoly a, const ReducedPoly& b) { return a += b; }
  friend ReducedPoly operator-(ReducedPoly a, const ReducedPoly& b) { return a -= b; }
  friend ReducedPoly operator*(const ReducedPoly& a, const ReducedPoly& b);
  friend bool operator==(const ReducedPoly& a, const ReducedPoly& b);
  friend bool operator!=(const ReducedPoly& a, const ReducedPoly& b) { return !(a == b); }

  // this * (1 + sign * x_var), in O(basis size).
  void multiply_letter(int var, int sign);
  // (1 + sign * x_var) * this.
  void premultiply_letter(int var, int sign);
  // Drops every monomial containing var (the image after killing mu_var).
  ReducedPoly without_variable(int var) const;

  std::uint64_t hash() const;
  // "1 + x1 - x2 x1" style, variables 1-based.
  std::string to_string() const;

 private:
  int n_;
  const MonomialBasis* basis_;
  std::vector<Integer> coeffs_;
};

// Ring inverse of a polynomial with constant term 1.
ReducedPoly inv(const ReducedPoly& p);
ReducedPoly mul(const ReducedPoly& a, const ReducedPoly& b);

// Magnus expansion mu_i -> 1 + x_i of a word over mu_1..mu_n.
ReducedPoly expand(const Word& w, int n);

// A word with the given expansion, when the polynomial is the image of some
// element of RF(n). Built degree by degree from left-normed commutators.
std::optional<Word> word_from_expansion(const ReducedPoly& p);

// Equality in the reduced free group RF(n), decided by the expansion.
bool rf_equal(const Word& u, const Word& v, int n);

// Image of the automorphism mu_i -> mu_j^eps mu_i mu_j^-eps (i != j).
ReducedPoly conjugate_generator(const ReducedPoly& p, int i, int j, int eps);

enum class ResidueMode {
  classical,  // residue modulo the gcd over shorter cyclic sub-indices
  raw,        // no indeterminacy; mubar equals mu
};

struct MilnorEntry {
  std::vector<int> indices;  // I, 0-based, pairwise distinct
  int target = 0;            // j, not in I
  Integer mu;
  Integer delta;
  Integer mubar;

  int length() const { return static_cast<int>(indices.size()) + 1; }
};

// Entries mu(I; j) with |I| + 1 <= max_length, sorted by length, then by j,
// then by I lexicographically.
class MilnorTable {
 public:
  int n = 0;
  int max_length = 0;
  ResidueMode mode = ResidueMode::classical;
  std::vector<MilnorEntry> entries;

  const MilnorEntry* find(const std::vector<int>& indices, int target) const;
};

// Longitude images over mu_1..mu_n.
MilnorTable milnor_table_from_images(const std::vector<ReducedPoly>& longitudes, int max_length,
                                     ResidueMode mode = ResidueMode::classical);
MilnorTable milnor_table(const PeripheralSystem& p, int max_length, ResidueMode mode = ResidueMode::classical);

// Longitude images of an arbitrary diagram, based at the basepoint arcs: the
// Wirtinger arcs are solved to a fixpoint inside the Magnus ring.
std::vector<ReducedPoly> diagram_longitude_images(const GaussDiagram& d);
MilnorTable diagram_milnor_table(const GaussDiagram& d, int max_length, ResidueMode mode = ResidueMode::classical);

// Compares residues only. Throws on dimension mismatch.
bool tables_equal(const MilnorTable& a, const MilnorTable& b);
// Position of the first entry whose residue differs.
std::optional<std::size_t> first_difference(const MilnorTable& a, const MilnorTable& b);

std::string format_multi_index(const std::vector<int>& indices, int target);

}  // namespace weldkit
