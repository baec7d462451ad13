#include "weldkit/gauss_diagram.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace weldkit {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + message),
      position_(position) {}

GaussDiagram::GaussDiagram(int n, std::vector<int> signs, std::vector<std::vector<EndpointRef>> circles)
    : circles_(std::move(circles)) {
  if (n < 0 || static_cast<int>(circles_.size()) != n) {
    throw DiagramError("circle count does not match n");
  }
  const int m = static_cast<int>(signs.size());
  arrows_.resize(m);
  tail_loc_.assign(m, Location{-1, -1});
  head_loc_.assign(m, Location{-1, -1});
  for (int k = 0; k < m; ++k) {
    if (signs[k] != 1 && signs[k] != -1) {
      throw DiagramError("arrow " + std::to_string(k + 1) + " has sign other than +1/-1");
    }
    arrows_[k].id = k + 1;
    arrows_[k].sign = signs[k];
  }
  for (int c = 0; c < n; ++c) {
    for (int p = 0; p < static_cast<int>(circles_[c].size()); ++p) {
      const EndpointRef& e = circles_[c][p];
      if (e.arrow < 1 || e.arrow > m) {
        throw DiagramError("endpoint references unknown arrow " + std::to_string(e.arrow));
      }
      auto& loc = e.role == Role::tail ? tail_loc_[e.arrow - 1] : head_loc_[e.arrow - 1];
      if (loc.circle != -1) {
        throw DiagramError(std::string("arrow ") + std::to_string(e.arrow) + " has two " +
                           (e.role == Role::tail ? "tails" : "heads"));
      }
      loc = Location{c, p};
    }
  }
  for (int k = 0; k < m; ++k) {
    if (tail_loc_[k].circle == -1) throw DiagramError("arrow " + std::to_string(k + 1) + " has no tail");
    if (head_loc_[k].circle == -1) throw DiagramError("arrow " + std::to_string(k + 1) + " has no head");
    arrows_[k].tail_circle = tail_loc_[k].circle;
    arrows_[k].head_circle = head_loc_[k].circle;
  }
}

GaussDiagram GaussDiagram::with_compacted_ids(int n, const std::map<int, int>& signs,
                                              std::vector<std::vector<EndpointRef>> circles) {
  const int max_id = signs.empty() ? 0 : signs.rbegin()->first;
  std::vector<int> relabel(static_cast<std::size_t>(std::max(max_id, 0)) + 1, 0);
  std::vector<int> dense;
  dense.reserve(signs.size());
  for (const auto& [id, sign] : signs) {
    if (id < 1) throw DiagramError("arrow ids must be positive");
    dense.push_back(sign);
    relabel[id] = static_cast<int>(dense.size());
  }
  for (auto& circle : circles) {
    for (auto& e : circle) {
      if (e.arrow < 1 || e.arrow > max_id || relabel[e.arrow] == 0) {
        throw DiagramError("endpoint references undeclared arrow " + std::to_string(e.arrow));
      }
      e.arrow = relabel[e.arrow];
    }
  }
  return GaussDiagram(n, std::move(dense), std::move(circles));
}

std::vector<int> GaussDiagram::signs() const {
  std::vector<int> out;
  out.reserve(arrows_.size());
  for (const auto& a : arrows_) out.push_back(a.sign);
  return out;
}

GaussDiagram GaussDiagram::renumbered_by_appearance() const {
  std::vector<int> relabel(arrows_.size() + 1, 0);
  std::vector<int> signs;
  int next = 1;
  for (const auto& circle : circles_) {
    for (const auto& e : circle) {
      if (relabel[e.arrow] == 0) {
        relabel[e.arrow] = next++;
        signs.push_back(arrows_[e.arrow - 1].sign);
      }
    }
  }
  auto circles = circles_;
  for (auto& circle : circles) {
    for (auto& e : circle) e.arrow = relabel[e.arrow];
  }
  return GaussDiagram(n(), std::move(signs), std::move(circles));
}

std::uint64_t GaussDiagram::structural_hash() const {
  // Word-wise multiply-xorshift over (n, signs, circles).
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 32;
  };
  mix(static_cast<std::uint64_t>(circles_.size()));
  for (const auto& a : arrows_) mix(static_cast<std::uint64_t>(a.sign + 2));
  for (const auto& circle : circles_) {
    mix(0xfffffffful);
    for (const auto& e : circle) mix((static_cast<std::uint64_t>(e.arrow) << 1) | (e.role == Role::head ? 1u : 0u));
  }
  return h;
}

// ---------------------------------------------------------------------------
// Gauss code text

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
  }
};

int read_id(Cursor& cur) {
  const std::size_t start = cur.pos;
  long long value = 0;
  while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    value = value * 10 + (cur.peek() - '0');
    if (value > 1'000'000'000) throw ParseError(start, "arrow id too large");
    ++cur.pos;
  }
  if (cur.pos == start) throw ParseError(start, "expected arrow id");
  if (value == 0) throw ParseError(start, "arrow ids are positive");
  return static_cast<int>(value);
}

}  // namespace

GaussDiagram parse_gauss_code(std::string_view text) {
  Cursor cur{text};
  std::vector<std::vector<EndpointRef>> circles(1);
  std::map<int, int> head_sign;
  std::map<int, int> tail_sign;
  std::map<int, std::size_t> first_seen;
  std::set<std::pair<int, Role>> seen;

  for (;;) {
    cur.skip_space();
    if (cur.done()) break;
    const std::size_t start = cur.pos;
    const char c = cur.peek();
    if (c == '/') {
      ++cur.pos;
      circles.emplace_back();
      continue;
    }
    if (c != 't' && c != 'h') throw ParseError(start, std::string("unexpected character '") + c + "'");
    ++cur.pos;
    const Role role = c == 't' ? Role::tail : Role::head;
    const int id = read_id(cur);
    int sign = 0;
    if (!cur.done() && (cur.peek() == '+' || cur.peek() == '-')) {
      sign = cur.peek() == '+' ? 1 : -1;
      ++cur.pos;
    }
    if (!cur.done() && !std::isspace(static_cast<unsigned char>(cur.peek())) && cur.peek() != '/') {
      throw ParseError(cur.pos, "token must be followed by whitespace or '/'");
    }
    if (role == Role::head && sign == 0) throw ParseError(start, "head token needs a sign (+ or -)");
    if (!seen.insert({id, role}).second) {
      throw ParseError(start, std::string("duplicated ") + (role == Role::tail ? "tail" : "head") + " of arrow " +
                                  std::to_string(id));
    }
    first_seen.emplace(id, start);
    if (role == Role::head) head_sign[id] = sign;
    if (role == Role::tail && sign != 0) tail_sign[id] = sign;
    circles.back().push_back(EndpointRef{id, role});
  }

  for (const auto& [id, pos] : first_seen) {
    if (!seen.count({id, Role::tail})) throw ParseError(pos, "arrow " + std::to_string(id) + " has no tail");
    if (!seen.count({id, Role::head})) throw ParseError(pos, "arrow " + std::to_string(id) + " has no head");
    auto t = tail_sign.find(id);
    if (t != tail_sign.end() && t->second != head_sign[id]) {
      throw ParseError(pos, "arrow " + std::to_string(id) + " has inconsistent signs on tail and head");
    }
  }
  const int n = static_cast<int>(circles.size());
  return GaussDiagram::with_compacted_ids(n, head_sign, std::move(circles)).renumbered_by_appearance();
}

std::string serialize_gauss_code(const GaussDiagram& d) {
  const GaussDiagram r = d.renumbered_by_appearance();
  std::string joined;
  for (int c = 0; c < r.n(); ++c) {
    if (c > 0) joined += " / ";
    for (const auto& e : r.circle(c)) {
      joined += ' ';
      if (e.role == Role::tail) {
        joined += 't' + std::to_string(e.arrow);
      } else {
        joined += 'h' + std::to_string(e.arrow) + (r.arrow(e.arrow).sign > 0 ? '+' : '-');
      }
      joined += ' ';
    }
  }
  // Collapse runs of spaces; empty circles leave bare separators ("/").
  std::string out;
  for (char ch : joined) {
    if (ch == ' ' && (out.empty() || out.back() == ' ')) continue;
    out.push_back(ch);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

// ---------------------------------------------------------------------------
// Canonical key

namespace {

using Labeling = std::vector<int>;  // arrow id -> label (0 = unlabeled); last slot holds next label

std::vector<int> encode_rotation(const GaussDiagram& d, const std::vector<EndpointRef>& circle, int rot,
                                 Labeling& labels) {
  const int len = static_cast<int>(circle.size());
  const int next_slot = d.arrow_count() + 1;
  std::vector<int> code;
  code.reserve(len);
  for (int k = 0; k < len; ++k) {
    const EndpointRef& e = circle[(rot + k) % len];
    int& label = labels[e.arrow];
    if (label == 0) label = labels[next_slot]++;
    int token = label * 4;
    if (e.role == Role::head) token += 2 + (d.arrow(e.arrow).sign > 0 ? 1 : 0);
    code.push_back(token);
  }
  return code;
}

}  // namespace

std::string canonical_key(const GaussDiagram& d) {
  const int m = d.arrow_count();
  Labeling start(m + 2, 0);
  start[m + 1] = 1;
  std::vector<Labeling> states{start};
  std::ostringstream key;
  key << "n" << d.n() << ":";
  for (int c = 0; c < d.n(); ++c) {
    const auto& circle = d.circle(c);
    const int len = static_cast<int>(circle.size());
    std::vector<int> best;
    std::set<Labeling> next_states;
    bool have_best = false;
    for (const Labeling& state : states) {
      for (int rot = 0; rot < std::max(len, 1); ++rot) {
        Labeling labels = state;
        std::vector<int> code = encode_rotation(d, circle, rot, labels);
        if (!have_best || code < best) {
          best = std::move(code);
          have_best = true;
          next_states.clear();
          next_states.insert(std::move(labels));
        } else if (code == best) {
          next_states.insert(std::move(labels));
        }
      }
    }
    states.assign(next_states.begin(), next_states.end());
    key << "[" << len;
    for (int token : best) {
      key << "," << (token & 2 ? 'h' : 't') << (token >> 2);
      if (token & 2) key << (token & 1 ? '+' : '-');
    }
    key << "]";
  }
  return key.str();
}

bool is_sorted(const GaussDiagram& d) {
  for (const auto& circle : d.circles()) {
    const std::size_t len = circle.size();
    int changes = 0;
    for (std::size_t p = 0; p < len; ++p) {
      if (circle[p].role != circle[(p + 1) % len].role) ++changes;
    }
    if (changes > 2) return false;
  }
  return true;
}

bool is_sorted_normalized(const GaussDiagram& d) {
  for (const auto& circle : d.circles()) {
    bool seen_head = false;
    for (const auto& e : circle) {
      if (e.role == Role::head) {
        seen_head = true;
      } else if (seen_head) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Braids

GaussDiagram random_diagram(std::mt19937_64& rng, int n, int arrows) {
  if (n < 1) throw DiagramError("a diagram needs at least one circle");
  std::vector<std::vector<EndpointRef>> circles(n);
  std::vector<int> signs;
  std::uniform_int_distribution<int> circle_of(0, n - 1);
  for (int id = 1; id <= arrows; ++id) {
    signs.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
    for (Role r : {Role::tail, Role::head}) {
      auto& seq = circles[circle_of(rng)];
      const auto at = std::uniform_int_distribution<std::size_t>(0, seq.size())(rng);
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(at), EndpointRef{id, r});
    }
  }
  return GaussDiagram(n, std::move(signs), std::move(circles)).renumbered_by_appearance();
}

BraidWord parse_braid_word(int strands, std::string_view text) {
  if (strands < 1) throw ParseError(0, "strand count must be positive");
  BraidWord w;
  w.strands = strands;
  Cursor cur{text};
  for (;;) {
    cur.skip_space();
    if (cur.done()) break;
    const std::size_t start = cur.pos;
    if (cur.peek() != 's' && cur.peek() != 'S') throw ParseError(start, "expected braid generator like s1");
    ++cur.pos;
    const int gen = read_id(cur);
    int power = 1;
    if (!cur.done() && cur.peek() == '^') {
      ++cur.pos;
      int sign = 1;
      if (!cur.done() && (cur.peek() == '-' || cur.peek() == '+')) {
        sign = cur.peek() == '-' ? -1 : 1;
        ++cur.pos;
      }
      power = sign * read_id(cur);
    }
    if (!cur.done() && !std::isspace(static_cast<unsigned char>(cur.peek()))) {
      throw ParseError(cur.pos, "braid letters must be separated by whitespace");
    }
    if (gen >= strands) {
      throw ParseError(start, "generator s" + std::to_string(gen) + " out of range for " + std::to_string(strands) +
                                  " strands");
    }
    for (int k = 0; k < std::abs(power); ++k) w.letters.push_back(BraidLetter{gen, power > 0 ? 1 : -1});
  }
  return w;
}

std::string format_braid_word(const BraidWord& w) {
  std::ostringstream out;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k) out << ' ';
    out << 's' << w.letters[k].generator;
    if (w.letters[k].sign < 0) out << "^-1";
  }
  return out.str();
}

GaussDiagram from_braid_closure(const BraidWord& braid) {
  const int s = braid.strands;
  if (s < 1) throw DiagramError("strand count must be positive");
  std::vector<int> at(s);  // position -> strand
  for (int p = 0; p < s; ++p) at[p] = p;
  std::vector<std::vector<EndpointRef>> strand_seq(s);
  std::vector<int> signs;
  for (const auto& letter : braid.letters) {
    if (letter.generator < 1 || letter.generator >= s) {
      throw DiagramError("braid generator s" + std::to_string(letter.generator) + " out of range");
    }
    if (letter.sign != 1 && letter.sign != -1) throw DiagramError("braid letter sign must be +1/-1");
    const int left = at[letter.generator - 1];
    const int right = at[letter.generator];
    const int over = letter.sign > 0 ? left : right;
    const int under = letter.sign > 0 ? right : left;
    signs.push_back(letter.sign);
    const int id = static_cast<int>(signs.size());
    strand_seq[over].push_back(EndpointRef{id, Role::tail});
    strand_seq[under].push_back(EndpointRef{id, Role::head});
    std::swap(at[letter.generator - 1], at[letter.generator]);
  }
  std::vector<int> end_pos(s);
  for (int p = 0; p < s; ++p) end_pos[at[p]] = p;

  std::vector<bool> used(s, false);
  std::vector<std::vector<EndpointRef>> circles;
  for (int start = 0; start < s; ++start) {
    if (used[start]) continue;
    std::vector<EndpointRef> circle;
    int strand = start;
    while (!used[strand]) {
      used[strand] = true;
      circle.insert(circle.end(), strand_seq[strand].begin(), strand_seq[strand].end());
      strand = end_pos[strand];
    }
    circles.push_back(std::move(circle));
  }
  const int n = static_cast<int>(circles.size());
  return GaussDiagram(n, std::move(signs), std::move(circles)).renumbered_by_appearance();
}

}  // namespace weldkit
