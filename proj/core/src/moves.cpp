#include "weldkit/moves.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace weldkit {

namespace {

constexpr const char* kKindNames[] = {"R1-add", "R1-del", "R2-add", "R2-del", "R3", "OC", "SV-del", "SV-add", "Rebase"};
constexpr const char* kOriginNames[] = {"primitive", "TaH", "Slide"};

bool adjacent(const Location& x, const Location& y) { return x.circle == y.circle && std::abs(x.pos - y.pos) == 1; }

int order(const Location& x, const Location& y) { return x.pos < y.pos ? 1 : -1; }

int circle_size(const GaussDiagram& d, int c) { return static_cast<int>(d.circle(c).size()); }

bool valid_circle(const GaussDiagram& d, int c) { return c >= 0 && c < d.n(); }

bool valid_arrow(const GaussDiagram& d, int id) { return id >= 1 && id <= d.arrow_count(); }

bool distinct_arrows(const GaussDiagram& d, const std::vector<int>& ids, std::size_t count) {
  if (ids.size() != count) return false;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!valid_arrow(d, ids[k])) return false;
    for (std::size_t l = 0; l < k; ++l) {
      if (ids[k] == ids[l]) return false;
    }
  }
  return true;
}

std::map<int, int> sign_map(const GaussDiagram& d) {
  std::map<int, int> s;
  for (const Arrow& a : d.arrows()) s[a.id] = a.sign;
  return s;
}

GaussDiagram without_arrows(const GaussDiagram& d, const std::vector<int>& ids) {
  auto signs = sign_map(d);
  auto circles = d.circles();
  for (int id : ids) signs.erase(id);
  for (auto& circle : circles) {
    std::erase_if(circle, [&](const EndpointRef& e) { return std::find(ids.begin(), ids.end(), e.arrow) != ids.end(); });
  }
  return GaussDiagram::with_compacted_ids(d.n(), signs, std::move(circles));
}

struct Placement {
  int circle;
  int pos;  // in the result
  EndpointRef ref;
};

// New endpoints at fixed final positions; the old ones fill the remaining
// slots in their original order.
GaussDiagram with_inserted(const GaussDiagram& d, const std::vector<std::pair<int, int>>& new_signs,
                           const std::vector<Placement>& placements) {
  auto signs = sign_map(d);
  for (const auto& [id, s] : new_signs) signs[id] = s;
  std::vector<std::vector<EndpointRef>> circles;
  for (int c = 0; c < d.n(); ++c) {
    std::vector<const Placement*> here;
    for (const auto& p : placements) {
      if (p.circle == c) here.push_back(&p);
    }
    const std::size_t total = d.circle(c).size() + here.size();
    std::vector<EndpointRef> out(total);
    std::vector<bool> taken(total, false);
    for (const Placement* p : here) {
      out.at(p->pos) = p->ref;
      taken[p->pos] = true;
    }
    std::size_t next = 0;
    for (const EndpointRef& e : d.circle(c)) {
      while (taken[next]) ++next;
      out[next++] = e;
    }
    circles.push_back(std::move(out));
  }
  return GaussDiagram::with_compacted_ids(d.n(), signs, std::move(circles));
}

GaussDiagram with_swaps(const GaussDiagram& d, const std::vector<std::pair<Location, Location>>& swaps) {
  auto circles = d.circles();
  for (const auto& [x, y] : swaps) std::swap(circles[x.circle][x.pos], circles[y.circle][y.pos]);
  return GaussDiagram(d.n(), d.signs(), std::move(circles));
}

std::string sign_text(int s) { return s > 0 ? "+" : "-"; }

bool is_tail_at(const GaussDiagram& d, int c, int p) {
  return p >= 0 && p < circle_size(d, c) && d.circle(c)[p].role == Role::tail;
}

bool is_head_at(const GaussDiagram& d, int c, int p) {
  return p >= 0 && p < circle_size(d, c) && d.circle(c)[p].role == Role::head;
}

std::optional<std::string> r3_problem(const GaussDiagram& d, int a, int b, int c) {
  const Location ta = d.tail(a), tb = d.tail(b), ha = d.head(a), tc = d.tail(c), hb = d.head(b), hc = d.head(c);
  if (!adjacent(ta, tb)) return "tails of the first two arrows are not adjacent";
  if (!adjacent(ha, tc)) return "head of the first arrow is not adjacent to the tail of the third";
  if (!adjacent(hb, hc)) return "heads of the last two arrows are not adjacent";
  const int ea = d.arrow(a).sign, eb = d.arrow(b).sign, ec = d.arrow(c).sign;
  const int oT = order(ta, tb), oM = order(ha, tc), oB = order(hb, hc);
  if (ea * eb != oM * oB || eb * ec != oT * oM) return "sign condition fails";
  return std::nullopt;
}

}  // namespace

std::string to_string(MoveKind k) { return kKindNames[static_cast<int>(k)]; }

MoveKind move_kind_from_string(const std::string& s) {
  for (int k = 0; k < static_cast<int>(std::size(kKindNames)); ++k) {
    if (s == kKindNames[k]) return static_cast<MoveKind>(k);
  }
  throw std::invalid_argument("unknown move kind '" + s + "'");
}

std::string to_string(StepOrigin o) { return kOriginNames[static_cast<int>(o)]; }

StepOrigin step_origin_from_string(const std::string& s) {
  for (int k = 0; k < static_cast<int>(std::size(kOriginNames)); ++k) {
    if (s == kOriginNames[k]) return static_cast<StepOrigin>(k);
  }
  throw std::invalid_argument("unknown step origin '" + s + "'");
}

std::string to_string(const MoveInstance& m) {
  std::ostringstream out;
  out << to_string(m.kind) << "(";
  switch (m.kind) {
    case MoveKind::r1_add:
      out << "c" << m.circle + 1 << "@" << m.pos << "," << sign_text(m.sign) << (m.flag ? ",head-first" : "");
      break;
    case MoveKind::r2_add:
      out << "tails c" << m.circle + 1 << "@" << m.pos << ",heads c" << m.circle2 + 1 << "@" << m.pos2 << ","
          << sign_text(m.sign) << (m.flag ? ",reversed" : "");
      break;
    case MoveKind::sv_add:
      out << "c" << m.circle + 1 << ",tail@" << m.pos << ",head@" << m.pos2 << "," << sign_text(m.sign);
      break;
    case MoveKind::rebase:
      out << "c" << m.circle + 1 << "@" << m.pos;
      break;
    default:
      for (std::size_t k = 0; k < m.arrows.size(); ++k) out << (k ? "," : "") << m.arrows[k];
      break;
  }
  out << ")";
  return out.str();
}

std::optional<std::string> check_move(const GaussDiagram& d, const MoveInstance& m) {
  switch (m.kind) {
    case MoveKind::r1_add: {
      if (!valid_circle(d, m.circle)) return "circle out of range";
      if (m.pos < 0 || m.pos > circle_size(d, m.circle)) return "position out of range";
      if (m.sign != 1 && m.sign != -1) return "sign must be +1 or -1";
      return std::nullopt;
    }
    case MoveKind::r1_del: {
      if (!distinct_arrows(d, m.arrows, 1)) return "R1-del needs one existing arrow";
      const Arrow& a = d.arrow(m.arrows[0]);
      if (!a.is_self()) return "arrow is not a self-arrow";
      if (!adjacent(d.tail(a.id), d.head(a.id))) return "endpoints are not adjacent";
      return std::nullopt;
    }
    case MoveKind::r2_add: {
      if (!valid_circle(d, m.circle) || !valid_circle(d, m.circle2)) return "circle out of range";
      if (m.sign != 1 && m.sign != -1) return "sign must be +1 or -1";
      if (m.circle == m.circle2) {
        const int last = circle_size(d, m.circle) + 2;
        if (m.pos < 0 || m.pos > last || m.pos2 < 0 || m.pos2 > last) return "position out of range";
        if (std::abs(m.pos - m.pos2) < 2) return "tail and head windows overlap";
      } else {
        if (m.pos < 0 || m.pos > circle_size(d, m.circle)) return "tail position out of range";
        if (m.pos2 < 0 || m.pos2 > circle_size(d, m.circle2)) return "head position out of range";
      }
      return std::nullopt;
    }
    case MoveKind::r2_del: {
      if (!distinct_arrows(d, m.arrows, 2)) return "R2-del needs two distinct existing arrows";
      const int a = m.arrows[0], b = m.arrows[1];
      if (!adjacent(d.tail(a), d.tail(b))) return "tails are not adjacent";
      if (!adjacent(d.head(a), d.head(b))) return "heads are not adjacent";
      if (d.arrow(a).sign == d.arrow(b).sign) return "signs are not opposite";
      return std::nullopt;
    }
    case MoveKind::r3: {
      if (!distinct_arrows(d, m.arrows, 3)) return "R3 needs three distinct existing arrows";
      return r3_problem(d, m.arrows[0], m.arrows[1], m.arrows[2]);
    }
    case MoveKind::oc: {
      if (!distinct_arrows(d, m.arrows, 2)) return "OC needs two distinct existing arrows";
      if (!adjacent(d.tail(m.arrows[0]), d.tail(m.arrows[1]))) return "tails are not adjacent";
      return std::nullopt;
    }
    case MoveKind::sv_del: {
      if (!distinct_arrows(d, m.arrows, 1)) return "SV-del needs one existing arrow";
      if (!d.arrow(m.arrows[0]).is_self()) return "arrow is not a self-arrow";
      return std::nullopt;
    }
    case MoveKind::sv_add: {
      if (!valid_circle(d, m.circle)) return "circle out of range";
      if (m.sign != 1 && m.sign != -1) return "sign must be +1 or -1";
      const int last = circle_size(d, m.circle) + 1;
      if (m.pos < 0 || m.pos > last || m.pos2 < 0 || m.pos2 > last) return "position out of range";
      if (m.pos == m.pos2) return "tail and head positions coincide";
      return std::nullopt;
    }
    case MoveKind::rebase: {
      if (!valid_circle(d, m.circle)) return "circle out of range";
      if (m.pos <= 0 || m.pos >= circle_size(d, m.circle)) return "rebase position must be interior";
      return std::nullopt;
    }
  }
  return "unknown move kind";
}

GaussDiagram apply_move(const GaussDiagram& d, const MoveInstance& m) {
  if (auto problem = check_move(d, m)) throw MoveError(to_string(m) + ": " + *problem);
  const int id1 = d.arrow_count() + 1;
  const int id2 = d.arrow_count() + 2;
  switch (m.kind) {
    case MoveKind::r1_add: {
      const EndpointRef t{id1, Role::tail}, h{id1, Role::head};
      return with_inserted(d, {{id1, m.sign}},
                           {{m.circle, m.pos, m.flag ? h : t}, {m.circle, m.pos + 1, m.flag ? t : h}});
    }
    case MoveKind::r2_add: {
      const EndpointRef h1{id1, Role::head}, h2{id2, Role::head};
      return with_inserted(d, {{id1, m.sign}, {id2, -m.sign}},
                           {{m.circle, m.pos, {id1, Role::tail}},
                            {m.circle, m.pos + 1, {id2, Role::tail}},
                            {m.circle2, m.pos2, m.flag ? h2 : h1},
                            {m.circle2, m.pos2 + 1, m.flag ? h1 : h2}});
    }
    case MoveKind::sv_add:
      return with_inserted(d, {{id1, m.sign}}, {{m.circle, m.pos, {id1, Role::tail}}, {m.circle, m.pos2, {id1, Role::head}}});
    case MoveKind::r1_del:
    case MoveKind::r2_del:
    case MoveKind::sv_del:
      return without_arrows(d, m.arrows);
    case MoveKind::r3: {
      const int a = m.arrows[0], b = m.arrows[1], c = m.arrows[2];
      return with_swaps(d, {{d.tail(a), d.tail(b)}, {d.head(a), d.tail(c)}, {d.head(b), d.head(c)}});
    }
    case MoveKind::oc:
      return with_swaps(d, {{d.tail(m.arrows[0]), d.tail(m.arrows[1])}});
    case MoveKind::rebase: {
      auto circles = d.circles();
      auto& seq = circles[m.circle];
      std::rotate(seq.begin(), seq.begin() + m.pos, seq.end());
      return GaussDiagram(d.n(), d.signs(), std::move(circles));
    }
  }
  throw MoveError("unknown move kind");
}

std::vector<MoveInstance> enumerate_moves(const GaussDiagram& d, const std::vector<MoveKind>& kinds) {
  std::vector<MoveInstance> out;
  auto wants = [&](MoveKind k) { return std::find(kinds.begin(), kinds.end(), k) != kinds.end(); };
  const int m = d.arrow_count();

  if (wants(MoveKind::r1_add)) {
    for (int c = 0; c < d.n(); ++c) {
      for (int p = 0; p <= circle_size(d, c); ++p) {
        for (int s : {1, -1}) {
          for (bool head_first : {false, true}) {
            MoveInstance mi{MoveKind::r1_add, {}, c, p, -1, -1, s, head_first};
            out.push_back(mi);
          }
        }
      }
    }
  }
  if (wants(MoveKind::r1_del)) {
    for (const Arrow& a : d.arrows()) {
      if (a.is_self() && adjacent(d.tail(a.id), d.head(a.id))) out.push_back({MoveKind::r1_del, {a.id}});
    }
  }
  if (wants(MoveKind::r2_add)) {
    for (int x = 0; x < d.n(); ++x) {
      for (int y = 0; y < d.n(); ++y) {
        const int tmax = x == y ? circle_size(d, x) + 2 : circle_size(d, x);
        const int hmax = x == y ? circle_size(d, y) + 2 : circle_size(d, y);
        for (int tp = 0; tp <= tmax; ++tp) {
          for (int hp = 0; hp <= hmax; ++hp) {
            if (x == y && std::abs(tp - hp) < 2) continue;
            for (int s : {1, -1}) {
              for (bool reversed : {false, true}) out.push_back({MoveKind::r2_add, {}, x, tp, y, hp, s, reversed});
            }
          }
        }
      }
    }
  }
  if (wants(MoveKind::r2_del)) {
    for (int a = 1; a <= m; ++a) {
      for (int b = a + 1; b <= m; ++b) {
        MoveInstance mi{MoveKind::r2_del, {a, b}};
        if (check_move(d, mi)) continue;
        if (d.tail(b).pos < d.tail(a).pos) mi.arrows = {b, a};
        out.push_back(mi);
      }
    }
  }
  if (wants(MoveKind::r3)) {
    for (int a = 1; a <= m; ++a) {
      const Location ha = d.head(a);
      for (int b = 1; b <= m; ++b) {
        if (b == a || !adjacent(d.tail(a), d.tail(b))) continue;
        for (int p : {ha.pos - 1, ha.pos + 1}) {
          if (!is_tail_at(d, ha.circle, p)) continue;
          const int c = d.circle(ha.circle)[p].arrow;
          if (c == a || c == b) continue;
          if (!r3_problem(d, a, b, c)) out.push_back({MoveKind::r3, {a, b, c}});
        }
      }
    }
  }
  if (wants(MoveKind::oc)) {
    for (int c = 0; c < d.n(); ++c) {
      for (int p = 0; p + 1 < circle_size(d, c); ++p) {
        if (is_tail_at(d, c, p) && is_tail_at(d, c, p + 1)) {
          out.push_back({MoveKind::oc, {d.circle(c)[p].arrow, d.circle(c)[p + 1].arrow}});
        }
      }
    }
  }
  if (wants(MoveKind::sv_del)) {
    for (const Arrow& a : d.arrows()) {
      if (a.is_self()) out.push_back({MoveKind::sv_del, {a.id}});
    }
  }
  if (wants(MoveKind::sv_add)) {
    for (int c = 0; c < d.n(); ++c) {
      const int last = circle_size(d, c) + 1;
      for (int tp = 0; tp <= last; ++tp) {
        for (int hp = 0; hp <= last; ++hp) {
          if (tp == hp) continue;
          for (int s : {1, -1}) out.push_back({MoveKind::sv_add, {}, c, tp, -1, hp, s});
        }
      }
    }
  }
  if (wants(MoveKind::rebase)) {
    for (int c = 0; c < d.n(); ++c) {
      for (int p = 1; p < circle_size(d, c); ++p) out.push_back({MoveKind::rebase, {}, c, p});
    }
  }
  return out;
}

MoveInstance inverse_move(const GaussDiagram& before, const MoveInstance& m) {
  if (auto problem = check_move(before, m)) throw MoveError(to_string(m) + ": " + *problem);
  const int id1 = before.arrow_count() + 1;
  switch (m.kind) {
    case MoveKind::r1_add:
      return {MoveKind::r1_del, {id1}};
    case MoveKind::r2_add:
      return {MoveKind::r2_del, {id1, id1 + 1}};
    case MoveKind::sv_add:
      return {MoveKind::sv_del, {id1}};
    case MoveKind::r1_del: {
      const Arrow& a = before.arrow(m.arrows[0]);
      const Location t = before.tail(a.id), h = before.head(a.id);
      return {MoveKind::r1_add, {}, t.circle, std::min(t.pos, h.pos), -1, -1, a.sign, h.pos < t.pos};
    }
    case MoveKind::r2_del: {
      int first = m.arrows[0], second = m.arrows[1];
      if (before.tail(second).pos < before.tail(first).pos) std::swap(first, second);
      const Location t = before.tail(first), h1 = before.head(first), h2 = before.head(second);
      return {MoveKind::r2_add,
              {},
              t.circle,
              t.pos,
              h1.circle,
              std::min(h1.pos, h2.pos),
              before.arrow(first).sign,
              h1.pos > h2.pos};
    }
    case MoveKind::sv_del: {
      const Arrow& a = before.arrow(m.arrows[0]);
      const Location t = before.tail(a.id), h = before.head(a.id);
      return {MoveKind::sv_add, {}, t.circle, t.pos, -1, h.pos, a.sign};
    }
    case MoveKind::r3:
    case MoveKind::oc:
      return m;
    case MoveKind::rebase:
      return {MoveKind::rebase, {}, m.circle, circle_size(before, m.circle) - m.pos};
  }
  throw MoveError("unknown move kind");
}

void MoveTrace::push(const MoveInstance& m, StepOrigin origin) {
  result = apply_move(result, m);
  steps.push_back({m, origin, result.structural_hash()});
}

void MoveTrace::append(const MoveTrace& tail) {
  if (!(tail.initial == result)) throw std::logic_error("appended trace does not start at the current result");
  steps.insert(steps.end(), tail.steps.begin(), tail.steps.end());
  result = tail.result;
}

TraceCheck verify_trace(const MoveTrace& t) {
  GaussDiagram cur = t.initial;
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const TraceStep& step = t.steps[k];
    if (auto problem = check_move(cur, step.move)) return {false, k, to_string(step.move) + ": " + *problem};
    cur = apply_move(cur, step.move);
    if (cur.structural_hash() != step.result_hash) return {false, k, "result differs from the recorded successor"};
  }
  if (!(cur == t.result)) return {false, t.steps.size(), "final diagram differs from the recorded result"};
  return {};
}

MoveTrace apply_slide(const GaussDiagram& d, int a, int b, int c) {
  if (!distinct_arrows(d, {a, b, c}, 3)) throw MoveError("slide needs three distinct existing arrows");
  const Location ta = d.tail(a), tb = d.tail(b), ha = d.head(a), tc = d.tail(c), hb = d.head(b), hc = d.head(c);
  if (!adjacent(ta, tb)) throw MoveError("slide site mismatch: tails of the first two arrows are not adjacent");
  if (!adjacent(ha, tc)) throw MoveError("slide site mismatch: head of the first arrow is not next to the third tail");
  if (!adjacent(hb, hc)) throw MoveError("slide site mismatch: heads of the last two arrows are not adjacent");
  const int ea = d.arrow(a).sign, eb = d.arrow(b).sign, ec = d.arrow(c).sign;
  if (ea * eb != order(ha, tc) * order(hb, hc)) throw MoveError("slide site fails the R3 sign condition");

  MoveTrace t{d, {}, d};
  const MoveInstance oc{MoveKind::oc, {a, b}};
  const MoveInstance r3{MoveKind::r3, {a, b, c}};
  if (eb * ec == order(ta, tb) * order(ha, tc)) {
    t.push(r3, StepOrigin::slide);
    t.push(oc, StepOrigin::slide);
  } else {
    t.push(oc, StepOrigin::slide);
    t.push(r3, StepOrigin::slide);
  }
  return t;
}

MoveTrace apply_tah(const GaussDiagram& d, int tail_arrow, TahDirection dir) {
  if (!valid_arrow(d, tail_arrow)) throw MoveError("TaH: no such arrow");
  const int b = tail_arrow;
  const Location tb = d.tail(b);
  const int hp = dir == TahDirection::backward ? tb.pos - 1 : tb.pos + 1;
  if (!is_head_at(d, tb.circle, hp)) throw MoveError("TaH: the tail is not adjacent to a head on that side");
  const int a = d.circle(tb.circle)[hp].arrow;
  if (a == b) throw MoveError("TaH: the head belongs to the same arrow (an R1 site)");

  const Location ta = d.tail(a), hb = d.head(b);
  const bool same = ta.circle == hb.circle;
  MoveInstance r2{MoveKind::r2_add, {}, ta.circle, ta.pos + 1 + (same && hb.pos < ta.pos ? 2 : 0),
                  hb.circle, hb.pos + 1 + (same && ta.pos < hb.pos ? 2 : 0), 1, false};
  const int c = d.arrow_count() + 1;
  for (int s : {1, -1}) {
    r2.sign = s;
    const GaussDiagram mid = apply_move(d, r2);
    const int ea = mid.arrow(a).sign;
    if (ea * s != order(mid.head(a), mid.tail(b)) * order(mid.head(c), mid.head(b))) continue;
    MoveTrace t{d, {}, d};
    t.push(r2, StepOrigin::tah);
    MoveTrace slide = apply_slide(mid, a, c, b);
    for (auto& step : slide.steps) step.origin = StepOrigin::tah;
    t.append(slide);
    return t;
  }
  throw std::logic_error("TaH: no companion sign satisfies the slide condition");
}

namespace {

int first_self_arrow(const GaussDiagram& d, std::optional<int> circle) {
  for (const Arrow& a : d.arrows()) {
    if (a.is_self() && (!circle || a.tail_circle == *circle)) return a.id;
  }
  return 0;
}

bool circle_normalized(const GaussDiagram& d, int c) {
  const auto& seq = d.circle(c);
  for (std::size_t p = 1; p < seq.size(); ++p) {
    if (seq[p - 1].role == Role::head && seq[p].role == Role::tail) return false;
  }
  return true;
}

// Start of the tail run of a cyclically sorted circle, or -1.
int tail_run_start(const GaussDiagram& d, int c) {
  const auto& seq = d.circle(c);
  const int len = static_cast<int>(seq.size());
  int changes = 0, start = -1;
  for (int p = 0; p < len; ++p) {
    const Role prev = seq[(p + len - 1) % len].role;
    if (prev != seq[p].role) {
      ++changes;
      if (seq[p].role == Role::tail) start = p;
    }
  }
  return changes <= 2 ? start : -1;
}

// Cancels an adjacent head pair of opposite signs whose tails are separated only by tails:
// OC brings the tails together, then R2-del. Keeps TaH cascades from piling up arrows.
bool cancel_one_pair(MoveTrace& t) {
  const GaussDiagram& d = t.result;
  for (int c = 0; c < d.n(); ++c) {
    const auto& seq = d.circle(c);
    for (std::size_t p = 0; p + 1 < seq.size(); ++p) {
      if (seq[p].role != Role::head || seq[p + 1].role != Role::head) continue;
      const int a = seq[p].arrow, b = seq[p + 1].arrow;
      if (d.arrow(a).sign == d.arrow(b).sign) continue;
      const Location ta = d.tail(a), tb = d.tail(b);
      if (ta.circle != tb.circle) continue;
      const auto& tseq = d.circle(ta.circle);
      const int lo = std::min(ta.pos, tb.pos), hi = std::max(ta.pos, tb.pos);
      bool clear = true;
      for (int q = lo + 1; q < hi && clear; ++q) clear = tseq[q].role == Role::tail;
      if (!clear) continue;
      const int step = ta.pos < tb.pos ? -1 : 1;
      for (int q = tb.pos; std::abs(q - ta.pos) > 1; q += step) {
        t.push({MoveKind::oc, {b, t.result.circle(ta.circle)[q + step].arrow}}, StepOrigin::primitive);
      }
      t.push({MoveKind::r2_del, {a, b}}, StepOrigin::primitive);
      return true;
    }
  }
  return false;
}

}  // namespace

SortResult sort_diagram(const GaussDiagram& d) {
  MoveTrace t{d, {}, d};
  for (int c = 0; c < d.n(); ++c) {
    while (int id = first_self_arrow(t.result, c)) t.push({MoveKind::sv_del, {id}}, StepOrigin::primitive);
    if (circle_normalized(t.result, c)) continue;
    const int start = tail_run_start(t.result, c);
    if (start > 0) {
      t.push({MoveKind::rebase, {}, c, start}, StepOrigin::primitive);
      continue;
    }
    while (!circle_normalized(t.result, c)) {
      const auto& seq = t.result.circle(c);
      std::size_t p = 1;
      while (!(seq[p - 1].role == Role::head && seq[p].role == Role::tail)) ++p;
      t.append(apply_tah(t.result, seq[p].arrow, TahDirection::backward));
      while (int id = first_self_arrow(t.result, std::nullopt)) t.push({MoveKind::sv_del, {id}}, StepOrigin::primitive);
      while (cancel_one_pair(t)) {
      }
    }
  }
  while (int id = first_self_arrow(t.result, std::nullopt)) t.push({MoveKind::sv_del, {id}}, StepOrigin::primitive);
  while (cancel_one_pair(t)) {
  }
  GaussDiagram sorted = t.result;
  return {std::move(sorted), std::move(t)};
}

}  // namespace weldkit
