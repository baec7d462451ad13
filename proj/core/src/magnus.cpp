#include "weldkit/magnus.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace weldkit {

// ---------------------------------------------------------------------------
// Monomial basis

namespace {

void extend_monomials(int n, std::vector<int>& prefix, std::uint32_t used, int length,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.push_back(prefix);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if ((used >> v) & 1u) continue;
    prefix.push_back(v);
    extend_monomials(n, prefix, used | (1u << v), length, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int n) : n_(n) {
  for (int length = 0; length <= n; ++length) {
    std::vector<int> prefix;
    extend_monomials(n, prefix, 0, length, monomials_);
  }
  int codes = 1;
  for (int k = 0; k < n; ++k) codes *= (n + 1);
  code_to_index_.assign(codes, -1);
  masks_.resize(monomials_.size());
  for (int idx = 0; idx < size(); ++idx) {
    code_to_index_[code_of(monomials_[idx])] = idx;
    std::uint32_t mask = 0;
    for (int v : monomials_[idx]) mask |= 1u << v;
    masks_[idx] = mask;
  }
  const std::size_t m = monomials_.size();
  product_.assign(m * m, -1);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (masks_[a] & masks_[b]) continue;
      std::vector<int> joined = monomials_[a];
      joined.insert(joined.end(), monomials_[b].begin(), monomials_[b].end());
      product_[a * m + b] = code_to_index_[code_of(joined)];
    }
  }
  append_.assign(m * n, -1);
  prepend_.assign(m * n, -1);
  for (std::size_t a = 0; a < m; ++a) {
    for (int v = 0; v < n; ++v) {
      if ((masks_[a] >> v) & 1u) continue;
      std::vector<int> tail = monomials_[a];
      tail.push_back(v);
      append_[a * n + v] = code_to_index_[code_of(tail)];
      std::vector<int> head{v};
      head.insert(head.end(), monomials_[a].begin(), monomials_[a].end());
      prepend_[a * n + v] = code_to_index_[code_of(head)];
    }
  }
}

int MonomialBasis::code_of(const std::vector<int>& monomial) const {
  int code = 0;
  for (int v : monomial) code = code * (n_ + 1) + (v + 1);
  return code;
}

int MonomialBasis::index_of(const std::vector<int>& monomial) const {
  if (static_cast<int>(monomial.size()) > n_) return -1;
  std::uint32_t used = 0;
  for (int v : monomial) {
    if (v < 0 || v >= n_ || ((used >> v) & 1u)) return -1;
    used |= 1u << v;
  }
  return code_to_index_[code_of(monomial)];
}

const MonomialBasis& MonomialBasis::get(int n) {
  if (n < 0 || n > kMaxMagnusVariables) {
    throw std::invalid_argument("Magnus expansion supports 0.." + std::to_string(kMaxMagnusVariables) +
                                " variables, got " + std::to_string(n));
  }
  static std::array<std::unique_ptr<MonomialBasis>, kMaxMagnusVariables + 1> cache;
  static std::array<std::once_flag, kMaxMagnusVariables + 1> flags;
  std::call_once(flags[n], [n] { cache[n].reset(new MonomialBasis(n)); });
  return *cache[n];
}

// ---------------------------------------------------------------------------
// ReducedPoly

ReducedPoly::ReducedPoly(int n) : n_(n), basis_(&MonomialBasis::get(n)), coeffs_(basis_->size()) {}

ReducedPoly ReducedPoly::one(int n) {
  ReducedPoly p(n);
  p.coeffs_[0] = 1;
  return p;
}

ReducedPoly ReducedPoly::variable(int n, int var) {
  if (var < 0 || var >= n) throw std::out_of_range("variable index out of range");
  ReducedPoly p(n);
  p.coeffs_[p.basis_->append(0, var)] = 1;
  return p;
}

Integer ReducedPoly::coefficient(const std::vector<int>& monomial) const {
  const int idx = basis_->index_of(monomial);
  return idx < 0 ? Integer(0) : coeffs_[idx];
}

bool ReducedPoly::is_one() const {
  if (coeffs_[0] != Integer(1)) return false;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

int ReducedPoly::support_size() const {
  int s = 0;
  for (const auto& c : coeffs_) s += c.is_zero() ? 0 : 1;
  return s;
}

ReducedPoly& ReducedPoly::operator+=(const ReducedPoly& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("variable count mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

ReducedPoly& ReducedPoly::operator-=(const ReducedPoly& rhs) {
  if (rhs.n_ != n_) throw std::invalid_argument("variable count mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

ReducedPoly operator*(const ReducedPoly& a, const ReducedPoly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("variable count mismatch");
  const MonomialBasis& basis = *a.basis_;
  const int m = basis.size();
  ReducedPoly out(a.n_);
  std::vector<int> nz;
  nz.reserve(m);
  for (int y = 0; y < m; ++y) {
    if (!b.coeffs_[y].is_zero()) nz.push_back(y);
  }
  for (int x = 0; x < m; ++x) {
    const Integer& cx = a.coeffs_[x];
    if (cx.is_zero()) continue;
    for (int y : nz) {
      const int z = basis.product(x, y);
      if (z >= 0) out.coeffs_[z].add_product(cx, b.coeffs_[y]);
    }
  }
  return out;
}

bool operator==(const ReducedPoly& a, const ReducedPoly& b) { return a.n_ == b.n_ && a.coeffs_ == b.coeffs_; }

void ReducedPoly::multiply_letter(int var, int sign) {
  // Longer monomials come later in the basis, so walk backwards to read
  // each source coefficient before it can be overwritten.
  for (int a = basis_->size() - 1; a >= 0; --a) {
    if (coeffs_[a].is_zero()) continue;
    const int target = basis_->append(a, var);
    if (target < 0) continue;
    if (sign > 0) {
      coeffs_[target] += coeffs_[a];
    } else {
      coeffs_[target] -= coeffs_[a];
    }
  }
}

void ReducedPoly::premultiply_letter(int var, int sign) {
  for (int a = basis_->size() - 1; a >= 0; --a) {
    if (coeffs_[a].is_zero()) continue;
    const int target = basis_->prepend(var, a);
    if (target < 0) continue;
    if (sign > 0) {
      coeffs_[target] += coeffs_[a];
    } else {
      coeffs_[target] -= coeffs_[a];
    }
  }
}

ReducedPoly ReducedPoly::without_variable(int var) const {
  ReducedPoly out = *this;
  for (int a = 0; a < basis_->size(); ++a) {
    if (basis_->contains(a, var)) out.coeffs_[a] = 0;
  }
  return out;
}

std::uint64_t ReducedPoly::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull ^ static_cast<std::uint64_t>(n_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    h ^= static_cast<std::uint64_t>(k) * 0x9e3779b97f4a7c15ull;
    h = (h << 13) | (h >> 51);
    h ^= coeffs_[k].hash() + 0x632be59bd9b4e019ull;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string ReducedPoly::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int a = 0; a < basis_->size(); ++a) {
    const Integer& c = coeffs_[a];
    if (c.is_zero()) continue;
    const bool negative = c.sign() < 0;
    const Integer mag = c.abs();
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    const auto& mono = basis_->monomial(a);
    if (mono.empty() || mag != Integer(1)) {
      out << mag.to_string();
      if (!mono.empty()) out << " ";
    }
    for (std::size_t k = 0; k < mono.size(); ++k) {
      if (k) out << " ";
      out << "x" << (mono[k] + 1);
    }
    first = false;
  }
  return first ? "0" : out.str();
}

ReducedPoly mul(const ReducedPoly& a, const ReducedPoly& b) { return a * b; }

ReducedPoly inv(const ReducedPoly& p) {
  if (p.constant() != Integer(1)) throw std::invalid_argument("inv: constant term must be 1");
  // (1 + q)^-1 = sum_k (-q)^k; q^(n+1) vanishes.
  ReducedPoly neg_q(p.n());
  neg_q -= p;
  neg_q += ReducedPoly::one(p.n());
  ReducedPoly result = ReducedPoly::one(p.n());
  ReducedPoly term = ReducedPoly::one(p.n());
  for (int k = 1; k <= p.n(); ++k) {
    term = term * neg_q;
    result += term;
  }
  return result;
}

ReducedPoly expand(const Word& w, int n) {
  ReducedPoly p = ReducedPoly::one(n);
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= n) throw std::out_of_range("expand: letter outside mu_1..mu_n");
    p.multiply_letter(l.gen, l.exp);
  }
  return p;
}

std::optional<Word> word_from_expansion(const ReducedPoly& p) {
  const int n = p.n();
  if (p.constant() != Integer(1)) return std::nullopt;
  const MonomialBasis& basis = p.basis();
  ReducedPoly rest = p;
  Word w;
  for (int d = 1; d <= n; ++d) {
    // The lowest nontrivial component of a group element is a Lie element;
    // its coordinate on [x_m, x_s1, ..., x_sk] with m the largest index is the
    // coefficient of x_m x_s1 ... x_sk.
    Word step;
    for (int a = 1; a < basis.size(); ++a) {
      const std::vector<int>& m = basis.monomial(a);
      if (static_cast<int>(m.size()) != d || *std::max_element(m.begin(), m.end()) != m.front()) continue;
      const Integer& k = rest.coefficient(a);
      if (k.is_zero()) continue;
      if (!k.is_small() || k.small_value() > 4096 || k.small_value() < -4096) return std::nullopt;
      Word c = power(m.front(), 1);
      for (std::size_t t = 1; t < m.size(); ++t) c = commutator(c, power(m[t], 1));
      const Word piece = k.small_value() > 0 ? c : inverse(c);
      for (std::int64_t t = 0; t < std::abs(k.small_value()); ++t) step = concat(step, piece);
    }
    if (!step.empty()) {
      rest = inv(expand(step, n)) * rest;
      w = concat(w, step);
    }
    for (int a = 1; a < basis.size() && static_cast<int>(basis.monomial(a).size()) <= d; ++a) {
      if (!rest.coefficient(a).is_zero()) return std::nullopt;
    }
  }
  if (!rest.is_one()) return std::nullopt;
  return free_reduce(w);
}

bool rf_equal(const Word& u, const Word& v, int n) { return expand(u, n) == expand(v, n); }

ReducedPoly conjugate_generator(const ReducedPoly& p, int i, int j, int eps) {
  if (i == j) return p;
  // x_i -> x_i + eps (x_j x_i - x_i x_j); monomials already holding x_j keep
  // only their first term.
  const MonomialBasis& basis = p.basis();
  ReducedPoly out = p;
  for (int a = 0; a < basis.size(); ++a) {
    const Integer& c = p.coefficient(a);
    if (c.is_zero() || !basis.contains(a, i) || basis.contains(a, j)) continue;
    const auto& mono = basis.monomial(a);
    const auto at = std::find(mono.begin(), mono.end(), i) - mono.begin();
    std::vector<int> before = mono;
    before.insert(before.begin() + at, j);
    std::vector<int> after = mono;
    after.insert(after.begin() + at + 1, j);
    const int ib = basis.index_of(before);
    const int ia = basis.index_of(after);
    Integer cb = out.coefficient(ib);
    Integer ca = out.coefficient(ia);
    if (eps > 0) {
      cb += c;
      ca -= c;
    } else {
      cb -= c;
      ca += c;
    }
    out.set_coefficient(ib, std::move(cb));
    out.set_coefficient(ia, std::move(ca));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Milnor tables

namespace {

void sequences_avoiding(int n, int target, int length, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == length) {
    out.push_back(prefix);
    return;
  }
  for (int v = 0; v < n; ++v) {
    if (v == target || std::find(prefix.begin(), prefix.end(), v) != prefix.end()) continue;
    prefix.push_back(v);
    sequences_avoiding(n, target, length, prefix, out);
    prefix.pop_back();
  }
}

// mu of a full index sequence (i_1 .. i_k j): coefficient of x_{i_1}..x_{i_k} in lambda_j.
Integer mu_of_sequence(const std::vector<ReducedPoly>& longitudes, const std::vector<int>& seq) {
  const std::vector<int> mono(seq.begin(), seq.end() - 1);
  return longitudes[seq.back()].coefficient(mono);
}

Integer classical_delta(const std::vector<ReducedPoly>& longitudes, const std::vector<int>& seq) {
  // gcd of mu over every sequence obtained by deleting at least one index and
  // permuting the rest cyclically (length >= 2).
  const int len = static_cast<int>(seq.size());
  Integer g = 0;
  for (std::uint32_t mask = 1; mask + 1 < (1u << len); ++mask) {
    std::vector<int> sub;
    for (int k = 0; k < len; ++k) {
      if ((mask >> k) & 1u) sub.push_back(seq[k]);
    }
    if (sub.size() < 2) continue;
    for (std::size_t r = 0; r < sub.size(); ++r) {
      std::vector<int> rot(sub.begin() + r, sub.end());
      rot.insert(rot.end(), sub.begin(), sub.begin() + r);
      g = gcd(g, mu_of_sequence(longitudes, rot));
    }
  }
  return g;
}

}  // namespace

const MilnorEntry* MilnorTable::find(const std::vector<int>& indices, int target) const {
  for (const auto& e : entries) {
    if (e.target == target && e.indices == indices) return &e;
  }
  return nullptr;
}

MilnorTable milnor_table_from_images(const std::vector<ReducedPoly>& longitudes, int max_length, ResidueMode mode) {
  const int n = static_cast<int>(longitudes.size());
  if (max_length < 1 || max_length > std::max(n, 1)) {
    throw std::out_of_range("max_length must lie in 1.." + std::to_string(std::max(n, 1)) + ", got " +
                            std::to_string(max_length));
  }
  MilnorTable t;
  t.n = n;
  t.max_length = max_length;
  t.mode = mode;
  for (int length = 2; length <= max_length; ++length) {
    std::vector<std::pair<std::vector<int>, int>> keys;
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<int>> seqs;
      std::vector<int> prefix;
      sequences_avoiding(n, j, length - 1, prefix, seqs);
      for (auto& s : seqs) keys.emplace_back(std::move(s), j);
    }
    std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    for (auto& [indices, j] : keys) {
      MilnorEntry e;
      e.indices = indices;
      e.target = j;
      std::vector<int> seq = indices;
      seq.push_back(j);
      e.mu = mu_of_sequence(longitudes, seq);
      e.delta = mode == ResidueMode::classical ? classical_delta(longitudes, seq) : Integer(0);
      e.mubar = e.delta.is_zero() ? e.mu : floor_mod(e.mu, e.delta);
      t.entries.push_back(std::move(e));
    }
  }
  return t;
}

MilnorTable milnor_table(const PeripheralSystem& p, int max_length, ResidueMode mode) {
  std::vector<ReducedPoly> images;
  for (int i = 0; i < p.n; ++i) {
    if (p.meridians.at(i) != i) throw std::invalid_argument("milnor_table needs longitudes over mu_1..mu_n");
    images.push_back(expand(p.longitudes.at(i), p.n));
  }
  return milnor_table_from_images(images, max_length, mode);
}

std::vector<ReducedPoly> diagram_longitude_images(const GaussDiagram& d) {
  const int n = d.n();
  const ArcLayout arcs(d);
  std::vector<ReducedPoly> value;
  value.reserve(arcs.arc_count());
  for (int a = 0; a < arcs.arc_count(); ++a) {
    ReducedPoly p = ReducedPoly::one(n);
    p.multiply_letter(arcs.component_of(a), 1);
    value.push_back(std::move(p));
  }
  std::vector<std::vector<int>> heads(n);
  for (int c = 0; c < n; ++c) {
    for (const EndpointRef& e : d.circle(c)) {
      if (e.role == Role::head) heads[c].push_back(e.arrow);
    }
  }
  // Each sweep fixes one more degree of every arc value; degrees stop at n.
  bool settled = false;
  for (int sweep = 0; sweep <= n + 2 && !settled; ++sweep) {
    settled = true;
    for (int c = 0; c < n; ++c) {
      const int base = arcs.first_arc(c);
      for (int t = 1; t < static_cast<int>(heads[c].size()); ++t) {
        const Arrow& a = d.arrow(heads[c][t - 1]);
        const ReducedPoly& over = value[arcs.arc_at(d.tail(a.id))];
        const ReducedPoly over_inv = inv(over);
        ReducedPoly next = a.sign > 0 ? over_inv * value[base + t - 1] * over : over * value[base + t - 1] * over_inv;
        if (next != value[base + t]) {
          value[base + t] = std::move(next);
          settled = false;
        }
      }
    }
  }
  if (!settled) throw std::logic_error("Wirtinger arc values did not stabilize");

  std::vector<ReducedPoly> longitudes;
  for (int c = 0; c < n; ++c) {
    ReducedPoly lambda = ReducedPoly::one(n);
    int writhe = 0;
    for (int id : heads[c]) {
      const Arrow& a = d.arrow(id);
      const ReducedPoly& over = value[arcs.arc_at(d.tail(id))];
      lambda = lambda * (a.sign > 0 ? over : inv(over));
      if (a.is_self()) writhe += a.sign;
    }
    for (int k = 0; k < std::abs(writhe); ++k) lambda.multiply_letter(c, writhe > 0 ? -1 : 1);
    longitudes.push_back(std::move(lambda));
  }
  return longitudes;
}

MilnorTable diagram_milnor_table(const GaussDiagram& d, int max_length, ResidueMode mode) {
  return milnor_table_from_images(diagram_longitude_images(d), max_length, mode);
}

std::optional<std::size_t> first_difference(const MilnorTable& a, const MilnorTable& b) {
  if (a.n != b.n || a.max_length != b.max_length || a.entries.size() != b.entries.size()) {
    throw std::invalid_argument("Milnor tables have different dimensions");
  }
  for (std::size_t k = 0; k < a.entries.size(); ++k) {
    if (a.entries[k].mubar != b.entries[k].mubar) return k;
  }
  return std::nullopt;
}

bool tables_equal(const MilnorTable& a, const MilnorTable& b) { return !first_difference(a, b).has_value(); }

std::string format_multi_index(const std::vector<int>& indices, int target) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < indices.size(); ++k) out << (k ? "," : "") << indices[k] + 1;
  out << ";" << target + 1 << ")";
  return out.str();
}

}  // namespace weldkit
