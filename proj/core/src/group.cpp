#include "weldkit/group.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace weldkit {

// ---------------------------------------------------------------------------
// Words

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word power(int gen, int exponent) {
  Word out;
  for (int k = 0; k < std::abs(exponent); ++k) out.push_back(Letter{gen, exponent > 0 ? 1 : -1});
  return out;
}

Word commutator(const Word& a, const Word& b) { return concat({a, b, inverse(a), inverse(b)}); }

int exponent_sum(const Word& w, int gen) {
  int s = 0;
  for (const Letter& l : w) {
    if (l.gen == gen) s += l.exp;
  }
  return s;
}

std::string format_word(const Word& w, std::string_view prefix) {
  if (w.empty()) return "1";
  std::ostringstream out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out << ' ';
    out << prefix << (w[k].gen + 1);
    if (w[k].exp < 0) out << "^-1";
  }
  return out.str();
}

Word parse_word(std::string_view text, std::string_view prefix) {
  Word w;
  std::size_t pos = 0;
  auto space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> int {
    const std::size_t start = pos;
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos++] - '0');
      if (v > 1'000'000) throw ParseError(start, "number too large");
    }
    if (pos == start) throw ParseError(start, "expected a number");
    return static_cast<int>(v);
  };
  for (;;) {
    space();
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    if (text[pos] == '1' && (pos + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[pos + 1])))) {
      ++pos;  // explicit identity
      continue;
    }
    if (text.substr(pos, prefix.size()) != prefix) {
      throw ParseError(start, "expected generator with prefix '" + std::string(prefix) + "'");
    }
    pos += prefix.size();
    const int gen = number();
    if (gen < 1) throw ParseError(start, "generators are numbered from 1");
    int exponent = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      int sign = 1;
      if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
      }
      exponent = sign * number();
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      throw ParseError(pos, "letters must be separated by whitespace");
    }
    const Word p = power(gen - 1, exponent);
    w.insert(w.end(), p.begin(), p.end());
  }
  return w;
}

std::vector<int> word_to_ints(const Word& w) {
  std::vector<int> out;
  out.reserve(w.size());
  for (const Letter& l : w) out.push_back(l.exp * (l.gen + 1));
  return out;
}

Word word_from_ints(const std::vector<int>& v) {
  Word w;
  w.reserve(v.size());
  for (int x : v) {
    if (x == 0) throw std::invalid_argument("letter 0 is not a generator");
    w.push_back(Letter{std::abs(x) - 1, x > 0 ? 1 : -1});
  }
  return w;
}

// ---------------------------------------------------------------------------
// Arcs and Wirtinger presentation

ArcLayout::ArcLayout(const GaussDiagram& d) {
  first_.resize(d.n());
  count_.resize(d.n());
  heads_before_.resize(d.n());
  for (int c = 0; c < d.n(); ++c) {
    const auto& circle = d.circle(c);
    auto& hb = heads_before_[c];
    hb.resize(circle.size() + 1);
    int heads = 0;
    for (std::size_t p = 0; p < circle.size(); ++p) {
      hb[p] = heads;
      if (circle[p].role == Role::head) ++heads;
    }
    hb[circle.size()] = heads;
    first_[c] = total_;
    count_[c] = std::max(heads, 1);
    total_ += count_[c];
    for (int k = 0; k < count_[c]; ++k) component_.push_back(c);
  }
}

int ArcLayout::arc_at(const Location& loc) const {
  const int h = heads_before_[loc.circle][loc.pos];
  return first_[loc.circle] + h % count_[loc.circle];
}

int ArcLayout::head_index(const Location& loc) const { return heads_before_[loc.circle][loc.pos] + 1; }

GroupPresentation wirtinger(const GaussDiagram& d) {
  const ArcLayout arcs(d);
  GroupPresentation g;
  for (int k = 0; k < arcs.arc_count(); ++k) g.generators.push_back("a" + std::to_string(k + 1));
  for (const Arrow& a : d.arrows()) {
    const Location h = d.head(a.id);
    const int r = arcs.arcs_on(h.circle);
    const int base = arcs.first_arc(h.circle);
    const int t = arcs.head_index(h) - 1;
    const int beta = base + t % r;
    const int gamma = base + (t + 1) % r;
    const int alpha = arcs.arc_at(d.tail(a.id));
    g.relators.push_back(Word{Letter{gamma, -1}, Letter{alpha, -a.sign}, Letter{beta, 1}, Letter{alpha, a.sign}});
  }
  return g;
}

namespace {

std::vector<int> self_crossing_counts(const GaussDiagram& d) {
  std::vector<int> k(d.n(), 0);
  for (const Arrow& a : d.arrows()) {
    if (a.is_self()) k[a.tail_circle] += a.sign;
  }
  return k;
}

}  // namespace

ArcPeripheralSystem peripheral_system(const GaussDiagram& d, const std::optional<std::vector<int>>& basing) {
  const ArcLayout arcs(d);
  ArcPeripheralSystem out;
  out.presentation = wirtinger(d);
  out.arc_component.resize(arcs.arc_count());
  for (int k = 0; k < arcs.arc_count(); ++k) out.arc_component[k] = arcs.component_of(k);

  std::vector<int> base(d.n());
  for (int c = 0; c < d.n(); ++c) base[c] = arcs.first_arc(c);
  if (basing) {
    if (static_cast<int>(basing->size()) != d.n()) throw std::invalid_argument("basing needs one arc per component");
    for (int c = 0; c < d.n(); ++c) {
      const int arc = (*basing)[c];
      if (arc < 0 || arc >= arcs.arc_count() || arcs.component_of(arc) != c) {
        throw std::invalid_argument("basing arc " + std::to_string(arc + 1) + " is not on component " +
                                    std::to_string(c + 1));
      }
      base[c] = arc;
    }
  }

  PeripheralSystem& p = out.system;
  p.n = d.n();
  p.self_crossings = self_crossing_counts(d);
  for (int c = 0; c < d.n(); ++c) {
    p.meridians.push_back(base[c]);
    std::vector<int> heads;  // arrow ids in position order
    for (const EndpointRef& e : d.circle(c)) {
      if (e.role == Role::head) heads.push_back(e.arrow);
    }
    Word lambda;
    const int r = static_cast<int>(heads.size());
    const int offset = base[c] - arcs.first_arc(c);
    for (int k = 0; k < r; ++k) {
      const Arrow& a = d.arrow(heads[(offset + k) % r]);
      lambda.push_back(Letter{arcs.arc_at(d.tail(a.id)), a.sign});
    }
    const Word correction = power(base[c], -p.self_crossings[c]);
    p.longitudes.push_back(free_reduce(concat(lambda, correction)));
  }
  return out;
}

PeripheralSystem sorted_longitudes(const GaussDiagram& d) {
  if (!is_sorted(d)) throw DiagramError("sorted_longitudes needs a sorted diagram");
  PeripheralSystem p;
  p.n = d.n();
  p.self_crossings = self_crossing_counts(d);
  for (int c = 0; c < d.n(); ++c) {
    p.meridians.push_back(c);
    const auto& circle = d.circle(c);
    const int len = static_cast<int>(circle.size());
    int start = 0;
    for (int q = 0; q < len; ++q) {
      if (circle[q].role == Role::head && circle[(q + len - 1) % len].role == Role::tail) {
        start = q;
        break;
      }
    }
    Word lambda;
    for (int k = 0; k < len; ++k) {
      const EndpointRef& e = circle[(start + k) % len];
      if (e.role != Role::head) break;
      const Arrow& a = d.arrow(e.arrow);
      lambda.push_back(Letter{a.tail_circle, a.sign});
    }
    p.longitudes.push_back(free_reduce(concat(lambda, power(c, -p.self_crossings[c]))));
  }
  return p;
}

GroupPresentation reduced_presentation(const PeripheralSystem& p) {
  GroupPresentation g;
  for (int i = 0; i < p.n; ++i) g.generators.push_back("m" + std::to_string(i + 1));
  for (int i = 0; i < p.n; ++i) {
    g.relators.push_back(commutator(Word{Letter{p.meridians.at(i), 1}}, p.longitudes.at(i)));
  }
  g.reduced_relators = true;
  return g;
}

GaussDiagram build_sorted_from_longitudes(int n, const std::vector<Word>& longitudes) {
  if (static_cast<int>(longitudes.size()) != n) throw std::invalid_argument("need one longitude per component");
  std::vector<Word> reduced;
  for (int i = 0; i < n; ++i) {
    for (const Letter& l : longitudes[i]) {
      if (l.gen < 0 || l.gen >= n) throw std::invalid_argument("longitude letter outside mu_1..mu_n");
    }
    if (exponent_sum(longitudes[i], i) != 0) {
      throw std::invalid_argument("longitude " + std::to_string(i + 1) +
                                  " has nonzero exponent sum in its own meridian");
    }
    reduced.push_back(free_reduce(longitudes[i]));
  }
  std::vector<int> signs;
  std::vector<std::vector<EndpointRef>> tails(n), heads(n);
  for (int i = 0; i < n; ++i) {
    for (const Letter& l : reduced[i]) {
      signs.push_back(l.exp);
      const int id = static_cast<int>(signs.size());
      tails[l.gen].push_back(EndpointRef{id, Role::tail});
      heads[i].push_back(EndpointRef{id, Role::head});
    }
  }
  std::vector<std::vector<EndpointRef>> circles(n);
  for (int i = 0; i < n; ++i) {
    circles[i] = tails[i];
    circles[i].insert(circles[i].end(), heads[i].begin(), heads[i].end());
  }
  return GaussDiagram(n, std::move(signs), std::move(circles));
}

// ---------------------------------------------------------------------------
// Abelianization

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Diagonalizes in place with the divisibility chain d1 | d2 | ...
std::vector<BigInt> smith_diagonal(Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<BigInt> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest nonzero pivot in the trailing block.
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r) {
        for (std::size_t c = t; c < cols; ++c) {
          if (m[r][c] != 0 && (pr == rows || abs_big(m[r][c]) < abs_big(m[pr][pc]))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr == rows) return diag;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        const BigInt q = m[r][t] / m[t][t];
        if (q != 0) {
          for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
        }
        if (m[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        const BigInt q = m[t][c] / m[t][t];
        if (q != 0) {
          for (std::size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
        }
        if (m[t][c] != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility by folding an offending row into the pivot row.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r) {
        for (std::size_t c = t + 1; c < cols; ++c) {
          if (m[r][c] % m[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] += m[r][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    diag.push_back(abs_big(m[t][t]));
  }
  return diag;
}

}  // namespace

Abelianization abelianization(const GroupPresentation& p) {
  const std::size_t gens = p.generators.size();
  Matrix m;
  for (const Word& r : p.relators) {
    std::vector<BigInt> row(gens, 0);
    for (const Letter& l : r) {
      if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= gens) throw std::invalid_argument("relator uses unknown generator");
      row[l.gen] += l.exp;
    }
    m.push_back(std::move(row));
  }
  const std::vector<BigInt> diag = smith_diagonal(std::move(m));
  Abelianization ab;
  ab.free_rank = static_cast<int>(gens - diag.size());
  for (const BigInt& v : diag) {
    if (v > 1) ab.torsion.push_back(Integer(v));
  }
  return ab;
}

}  // namespace weldkit
