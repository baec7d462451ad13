#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weldkit/gauss_diagram.hpp"

namespace weldkit {

enum class MoveKind : std::uint8_t { r1_add, r1_del, r2_add, r2_del, r3, oc, sv_del, sv_add, rebase };

std::string to_string(MoveKind k);
MoveKind move_kind_from_string(const std::string& s);

// Site data per kind. Positions always refer to the diagram in which the
// endpoints exist: the input for deletions, the result for insertions.
// Adjacency is linear (p, p + 1); no site straddles a basepoint.
//
//   R1-add  circle, pos, sign, flag = head first. New arrow m+1 at pos, pos+1.
//   R1-del  arrows {a}: self-arrow with adjacent endpoints.
//   R2-add  circle/pos = tail window, circle2/pos2 = head window, sign = sign of
//           m+1 (the first tail), flag = heads in reversed order. m+2 gets -sign.
//   R2-del  arrows {a, b}: adjacent tails, adjacent heads, opposite signs.
//   R3      arrows {a, b, c}: a runs T->M, b runs T->B, c runs M->B with
//           t_a|t_b, h_a|t_c and h_b|h_c adjacent. Writing o for +1 when the
//           first named end precedes the second, the move is valid iff
//           e_a e_b = o_M o_B and e_b e_c = o_T o_M. All three pairs swap.
//   OC      arrows {a, b}: adjacent tails, swapped.
//   SV-del  arrows {a}: any self-arrow, erased.
//   SV-add  circle, pos = tail, pos2 = head, sign. New arrow m+1.
//   Rebase  circle, pos: the basepoint moves to just before position pos.
// Deletions renumber the remaining arrows densely, keeping their order.
struct MoveInstance {
  MoveKind kind = MoveKind::oc;
  std::vector<int> arrows;
  int circle = -1;
  int pos = -1;
  int circle2 = -1;
  int pos2 = -1;
  int sign = 1;
  bool flag = false;

  friend bool operator==(const MoveInstance&, const MoveInstance&) = default;
};

std::string to_string(const MoveInstance& m);

class MoveError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

// Insertion kinds are enumerated over every position and parameter choice.
std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d, const std::vector<MoveKind>& kinds);

// Throws MoveError with a reason when the instance does not apply.
GaussDiagram apply_move(const GaussDiagram& d, const MoveInstance& m);
// Empty when applicable.
std::optional<std::string> check_move(const GaussDiagram& d, const MoveInstance& m);

// Instance undoing m; `before` is the diagram m applies to.
MoveInstance inverse_move(const GaussDiagram& before, const MoveInstance& m);

enum class StepOrigin : std::uint8_t { primitive, tah, slide };
std::string to_string(StepOrigin o);
StepOrigin step_origin_from_string(const std::string& s);

struct TraceStep {
  MoveInstance move;
  StepOrigin origin = StepOrigin::primitive;
  std::uint64_t result_hash = 0;  // structural_hash of the diagram after the step
};

struct MoveTrace {
  GaussDiagram initial;
  std::vector<TraceStep> steps;
  GaussDiagram result;

  bool empty() const { return steps.empty(); }
  // Appends a step applied to `result`.
  void push(const MoveInstance& m, StepOrigin origin);
  void append(const MoveTrace& tail);
};

struct TraceCheck {
  bool ok = true;
  std::optional<std::size_t> failing_step;
  std::string reason;

  explicit operator bool() const { return ok; }
};

TraceCheck verify_trace(const MoveTrace& t);

// Slide(a, b, c) with a: X->M, b: X->Y, c: M->Y, tails of a and b adjacent,
// h_a|t_c and h_b|h_c adjacent. Moves the ends of c across the heads of a and
// b, keeping the tail order on X. Expands to R3, plus an OC pair when the tail
// order on X needs it. Throws MoveError on a mismatched site.
MoveTrace apply_slide(const GaussDiagram& d, int a, int b, int c);

enum class TahDirection : std::uint8_t { backward, forward };

// Tail across head: the tail of `tail_arrow` crosses the head next to it (the
// one before it for backward). Two companion arrows appear, parallel to the
// arrow of the crossed head and ending next to the head of `tail_arrow`.
MoveTrace apply_tah(const GaussDiagram& d, int tail_arrow, TahDirection dir);

struct SortResult {
  GaussDiagram sorted;
  MoveTrace trace;
};

// Circle by circle in index order: erase its self-arrows, then either move
// the basepoint (already cyclically sorted) or pull tails backward across
// heads until the circle reads tails then heads. After every TaH all
// self-arrows are erased, and two adjacent heads of opposite sign whose tails
// are separated only by tails cancel (OC moves, then R2-del). The result is
// sorted, normalized and has freely reduced longitudes. A normalized input
// with freely reduced longitudes and no self-arrows comes back unchanged with
// an empty trace.
SortResult sort_diagram(const GaussDiagram& d);

}  // namespace weldkit
