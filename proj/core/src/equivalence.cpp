#include "weldkit/equivalence.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <unordered_map>

#include "weldkit/moves.hpp"

namespace weldkit {

namespace {

void check_word(const Word& w, int n, const char* what) {
  for (const Letter& l : w) {
    if (l.gen < 0 || l.gen >= n || (l.exp != 1 && l.exp != -1)) {
      throw CertificateError(std::string(what) + " uses a letter outside mu_1..mu_" + std::to_string(n));
    }
  }
}

void check_system(const PeripheralSystem& p) {
  if (static_cast<int>(p.longitudes.size()) != p.n) throw std::invalid_argument("longitude count differs from n");
  for (int i = 0; i < p.n; ++i) {
    if (p.meridians.size() > static_cast<std::size_t>(i) && p.meridians[i] != i) {
      throw std::invalid_argument("peripheral system must be expressed over mu_1..mu_n");
    }
  }
}

Word substitute_conjugate(const Word& w, int i, int j, int s) {
  Word out;
  for (const Letter& l : w) {
    if (l.gen == i) {
      out.push_back({j, s});
      out.push_back(l);
      out.push_back({j, -s});
    } else {
      out.push_back(l);
    }
  }
  return free_reduce(out);
}

Word relator_conjugate(const Word& lambda_j, int j, int s, const Word& h) {
  return concat({h, inverse(lambda_j), power(j, s), lambda_j, power(j, -s), inverse(h)});
}

}  // namespace

void apply_cert_step(std::vector<Word>& longitudes, const CertStep& step) {
  const int n = static_cast<int>(longitudes.size());
  if (step.i < 0 || step.i >= n || step.j < 0 || step.j >= n) throw CertificateError("step index out of range");
  if (step.i == step.j) throw CertificateError("step needs two distinct components");
  if (step.sign != 1 && step.sign != -1) throw CertificateError("step sign must be +1 or -1");
  if (step.kind == CertStep::Kind::conjugation) {
    for (auto& w : longitudes) w = substitute_conjugate(w, step.i, step.j, step.sign);
    auto& li = longitudes[step.i];
    li = free_reduce(concat({power(step.j, -step.sign), li, power(step.j, step.sign)}));
  } else {
    check_word(step.h, n, "relator conjugator");
    auto& li = longitudes[step.i];
    li = free_reduce(concat(li, relator_conjugate(longitudes[step.j], step.j, step.sign, step.h)));
  }
}

CertStep inverse_step(const CertStep& step) {
  CertStep inv = step;
  inv.sign = -step.sign;
  if (step.kind == CertStep::Kind::relator) inv.h = free_reduce(concat(step.h, power(step.j, step.sign)));
  return inv;
}

bool verify_certificate(const PeripheralSystem& a, const PeripheralSystem& b, const Certificate& c) {
  check_system(a);
  check_system(b);
  const int n = a.n;
  if (b.n != n || c.n != n) throw CertificateError("component counts differ");
  if (!c.conjugators.empty() && static_cast<int>(c.conjugators.size()) != n) {
    throw CertificateError("conjugator list must be empty or have one entry per component");
  }
  if (!c.cosets.empty() && static_cast<int>(c.cosets.size()) != n) {
    throw CertificateError("coset list must be empty or have one entry per component");
  }
  std::vector<Word> w = b.longitudes;
  for (const CertStep& step : c.steps) apply_cert_step(w, step);
  for (int i = 0; i < static_cast<int>(c.conjugators.size()); ++i) {
    const Word& omega = c.conjugators[i];
    check_word(omega, n, "conjugator");
    if (omega.empty()) continue;
    if (!rf_equal(concat({inverse(omega), power(i, 1), omega}), power(i, 1), n)) return false;
    w[i] = free_reduce(concat({inverse(omega), w[i], omega}));
  }
  for (int i = 0; i < static_cast<int>(c.cosets.size()); ++i) {
    for (const CosetInsertion& ins : c.cosets[i]) {
      check_word(ins.g, n, "coset conjugator");
      if (ins.sign != 1 && ins.sign != -1) throw CertificateError("coset sign must be +1 or -1");
      w[i] = free_reduce(concat({w[i], ins.g, power(i, ins.sign), inverse(ins.g)}));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!rf_equal(w[i], a.longitudes[i], n)) return false;
  }
  return true;
}

std::optional<Witness> refute(const PeripheralSystem& a, const PeripheralSystem& b, int max_length) {
  if (a.n != b.n) throw std::invalid_argument("component counts differ");
  if (a.n < 2) return std::nullopt;
  const MilnorTable ta = milnor_table(a, max_length);
  const MilnorTable tb = milnor_table(b, max_length);
  if (auto k = first_difference(ta, tb)) return Witness{ta.entries[*k], tb.entries[*k]};
  return std::nullopt;
}

std::string to_string(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::equivalent:
      return "equivalent";
    case Verdict::Kind::distinct:
      return "distinct";
    case Verdict::Kind::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

// Expansions of the longitudes. States are deduplicated exactly; two states
// whose components agree after setting x_k = 0 in component k differ only by
// coset insertions, and that projection is where the two sides meet.
using State = std::vector<ReducedPoly>;

struct Key {
  std::uint64_t h1 = 0;
  std::uint64_t h2 = 0;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const { return static_cast<std::size_t>(k.h1 ^ (k.h2 * 0x9e3779b97f4a7c15ull)); }
};

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Two independent 64-bit fingerprints of one component, already mixed with
// its index so that a state key is the plain sum over components.
Key component_key(const ReducedPoly& p, int k) {
  std::uint64_t h1 = p.hash();
  std::uint64_t h2 = 0x6a09e667f3bcc909ull;
  for (int a = 0; a < p.basis().size(); ++a) {
    const Integer& c = p.coefficient(a);
    if (c.is_zero()) continue;
    h2 = splitmix(h2 ^ (c.hash() + 0x3c6ef372fe94f82bull * static_cast<std::uint64_t>(a + 1)));
  }
  const std::uint64_t salt = 0xa54ff53a5f1d36f1ull * static_cast<std::uint64_t>(k + 1);
  return {splitmix(h1 ^ salt), splitmix(h2 + salt)};
}

Key add(Key a, const Key& b) { return {a.h1 + b.h1, a.h2 + b.h2}; }
Key sub(Key a, const Key& b) { return {a.h1 - b.h1, a.h2 - b.h2}; }

State expand_all(const std::vector<Word>& longitudes, int n) {
  State s;
  for (int k = 0; k < n; ++k) s.push_back(expand(longitudes[k], n));
  return s;
}

struct Keys {
  Key exact;
  Key coset;
};

Keys keys_of_component(const ReducedPoly& p, int k) { return {component_key(p, k), component_key(p.without_variable(k), k)}; }

void premultiply_word(ReducedPoly& p, const Word& w) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) p.premultiply_letter(it->gen, it->exp);
}

void multiply_word(ReducedPoly& p, const Word& w) {
  for (const Letter& l : w) p.multiply_letter(l.gen, l.exp);
}

// h R h^-1 with R = lambda_j^-1 mu_j^s lambda_j mu_j^-s, from the projected
// lambda_j and its inverse.
ReducedPoly relator_image(const ReducedPoly& lambda_j, const ReducedPoly& lambda_j_inv, int j, int s, const Word& h) {
  ReducedPoly r = lambda_j_inv;
  r.multiply_letter(j, s);
  r = r * lambda_j;
  r.multiply_letter(j, -s);
  premultiply_word(r, h);
  multiply_word(r, inverse(h));
  return r;
}

void apply_expanded(State& s, const CertStep& step) {
  if (step.kind == CertStep::Kind::conjugation) {
    for (ReducedPoly& p : s) p = conjugate_generator(p, step.i, step.j, step.sign);
    s[step.i].premultiply_letter(step.j, -step.sign);
    s[step.i].multiply_letter(step.j, step.sign);
    return;
  }
  const ReducedPoly r = relator_image(s[step.j], inv(s[step.j]), step.j, step.sign, step.h);
  s[step.i] = s[step.i] * r;
}

std::vector<Word> reduced_words_up_to(int n, int length) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (int g = 0; g < n; ++g) {
        for (int e : {1, -1}) {
          if (!out[k].empty() && out[k].back() == Letter{g, -e}) continue;
          Word w = out[k];
          w.push_back({g, e});
          out.push_back(std::move(w));
        }
      }
    }
    begin = end;
  }
  return out;
}

// Closed under inverse_step.
std::vector<CertStep> step_alphabet(int n, const SearchBounds& bounds) {
  std::vector<CertStep> steps;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int s : {1, -1}) steps.push_back({CertStep::Kind::conjugation, i, j, s, {}});
    }
  }
  const auto hs = reduced_words_up_to(n, std::max(0, bounds.h_len));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int s : {1, -1}) {
        for (const Word& h : hs) {
          const CertStep step{CertStep::Kind::relator, i, j, s, h};
          for (const CertStep& candidate : {step, inverse_step(step)}) {
            if (std::find(steps.begin(), steps.end(), candidate) == steps.end()) steps.push_back(candidate);
          }
        }
      }
    }
  }
  return steps;
}

struct Node {
  int parent = -1;
  int step = -1;  // index into the alphabet
  int depth = 0;
  int conj = 0;
};

// The backward side starts at A and applies inverse steps, so following its
// recorded steps from a meeting point leads to A.
struct Side {
  bool backward = false;
  State root;
  std::vector<Node> nodes;
  std::unordered_map<Key, int, KeyHash> seen;
  std::unordered_map<Key, std::vector<int>, KeyHash> by_coset;
  std::vector<int> frontier;
};

std::vector<int> path_to_root(const Side& side, int node) {
  std::vector<int> steps;
  for (int v = node; side.nodes[v].parent >= 0; v = side.nodes[v].parent) steps.push_back(side.nodes[v].step);
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Coset insertions turning w into a word RF-equal to target, assuming both lie
// in the same coset of the normal closure N_i of mu_i. In RF(n), N_i is
// abelian and z -> expand(z) - 1 is additive on it, so two decompositions are
// tried and the shorter one that replays is kept.
//
// By prefix: every mu_i letter of w^-1 target becomes one insertion, merged
// with others whose conjugator has the same class.
std::vector<CosetInsertion> insertions_by_prefix(const Word& c, int i, int n) {
  struct Group {
    Word g;
    ReducedPoly cls;
    int total;
  };
  std::vector<Group> groups;
  Word prefix;
  for (const Letter& l : c) {
    if (l.gen != i) {
      prefix = free_reduce(concat(prefix, Word{l}));
      continue;
    }
    ReducedPoly cls = expand(prefix, n).without_variable(i);
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& gr) { return gr.cls == cls; });
    if (it == groups.end()) {
      groups.push_back({prefix, std::move(cls), l.exp});
    } else {
      it->total += l.exp;
    }
  }
  std::vector<CosetInsertion> out;
  for (const Group& gr : groups) {
    for (int k = 0; k < std::abs(gr.total); ++k) out.push_back({gr.g, gr.total > 0 ? 1 : -1});
  }
  return out;
}

// By basis: the conjugates g mu_i g^-1 with g a product of distinct positive
// generators other than mu_i. The coefficient of x_g x_i in their images is
// unitriangular in g, so the decomposition is read off from the longest
// monomials down.
std::optional<std::vector<CosetInsertion>> insertions_by_basis(const Word& c, int i, int n) {
  ReducedPoly rest = expand(c, n);
  rest -= ReducedPoly::one(n);
  const MonomialBasis& basis = rest.basis();
  std::vector<CosetInsertion> out;
  for (int a = basis.size() - 1; a > 0; --a) {
    const std::vector<int>& m = basis.monomial(a);
    if (m.back() != i) continue;
    const Integer k = rest.coefficient(a);
    if (k.is_zero()) continue;
    if (!k.is_small() || std::abs(k.small_value()) > 1000) return std::nullopt;
    const std::int64_t count = k.small_value();
    Word g;
    for (std::size_t t = 0; t + 1 < m.size(); ++t) g.push_back({m[t], 1});
    ReducedPoly image = expand(concat({g, power(i, 1), inverse(g)}), n);
    image -= ReducedPoly::one(n);
    for (std::int64_t t = 0; t < std::abs(count); ++t) {
      out.push_back({g, count > 0 ? 1 : -1});
      if (count > 0) {
        rest -= image;
      } else {
        rest += image;
      }
    }
  }
  if (rest.support_size() != 0) return std::nullopt;
  return out;
}

bool replays(const Word& w, const std::vector<CosetInsertion>& ins, const Word& target, int i, int n) {
  Word x = w;
  for (const CosetInsertion& e : ins) x = concat({x, e.g, power(i, e.sign), inverse(e.g)});
  return rf_equal(x, target, n);
}

// Insertions whose signed sum is a single conjugate g mu_i^+-1 g^-1 are
// merged; the conjugator is recovered from the expansion. Minimum over
// partitions of at most kMergeLimit insertions.
constexpr std::size_t kMergeLimit = 10;

std::optional<std::vector<CosetInsertion>> merge_insertions(const std::vector<CosetInsertion>& items, int i, int n) {
  const std::size_t m = items.size();
  if (m < 2 || m > kMergeLimit) return std::nullopt;
  std::vector<ReducedPoly> classes;
  for (const CosetInsertion& e : items) classes.push_back(expand(e.g, n).without_variable(i));
  const std::size_t full = (std::size_t{1} << m) - 1;
  constexpr int kNone = 1 << 20;
  // cost[S]: 0 when S sums to zero, 1 when it sums to one conjugate.
  std::vector<int> cost(full + 1, kNone);
  std::vector<std::optional<CosetInsertion>> single(full + 1);
  for (std::size_t set = 1; set <= full; ++set) {
    ReducedPoly sum(n);
    for (std::size_t k = 0; k < m; ++k) {
      if (!((set >> k) & 1u)) continue;
      if (items[k].sign > 0) {
        sum += classes[k];
      } else {
        sum -= classes[k];
      }
    }
    if (sum.support_size() == 0) {
      cost[set] = 0;
    } else if (std::has_single_bit(set)) {
      cost[set] = 1;
      single[set] = items[std::countr_zero(set)];
    } else if (sum.constant() == Integer(1) || sum.constant() == Integer(-1)) {
      const int sign = sum.constant() == Integer(1) ? 1 : -1;
      if (sign < 0) sum = ReducedPoly(n) - sum;
      if (auto g = word_from_expansion(sum)) {
        cost[set] = 1;
        single[set] = CosetInsertion{std::move(*g), sign};
      }
    }
  }
  std::vector<int> best(full + 1, kNone);
  std::vector<std::size_t> choice(full + 1, 0);
  best[0] = 0;
  for (std::size_t set = 1; set <= full; ++set) {
    const std::size_t low = set & (~set + 1);
    for (std::size_t part = set; part != 0; part = (part - 1) & set) {
      if (!(part & low) || cost[part] == kNone || best[set ^ part] == kNone) continue;
      if (cost[part] + best[set ^ part] < best[set]) {
        best[set] = cost[part] + best[set ^ part];
        choice[set] = part;
      }
    }
  }
  std::vector<CosetInsertion> out;
  for (std::size_t set = full; set != 0; set ^= choice[set]) {
    if (single[choice[set]] && cost[choice[set]] == 1) out.push_back(*single[choice[set]]);
  }
  return out;
}

std::optional<std::vector<CosetInsertion>> coset_insertions(const Word& w, const Word& target, int i, int n,
                                                            std::size_t wanted) {
  const Word c = free_reduce(concat(inverse(w), target));
  std::optional<std::vector<CosetInsertion>> best;
  auto consider = [&](std::vector<CosetInsertion> ins) {
    if ((!best || ins.size() < best->size()) && replays(w, ins, target, i, n)) best = std::move(ins);
  };
  if (auto ins = insertions_by_basis(c, i, n)) consider(std::move(*ins));
  std::vector<CosetInsertion> by_prefix = insertions_by_prefix(c, i, n);
  if (by_prefix.size() > wanted && (!best || best->size() > wanted)) {
    if (auto merged = merge_insertions(by_prefix, i, n)) consider(std::move(*merged));
  }
  consider(std::move(by_prefix));
  return best;
}

struct Successor {
  int step;
  Keys keys;
};

// Meeting candidates tried per new state.
constexpr std::size_t kMeetingAttempts = 64;

class Searcher {
 public:
  Searcher(const PeripheralSystem& a, const PeripheralSystem& b, const SearchBounds& bounds)
      : a_(a), b_(b), bounds_(bounds), n_(a.n), alphabet_(step_alphabet(a.n, bounds)) {
    fwd_.root = expand_all(b.longitudes, n_);
    bwd_.root = expand_all(a.longitudes, n_);
    bwd_.backward = true;
    for (Side* side : {&fwd_, &bwd_}) {
      const Keys k = keys_of(side->root);
      side->nodes.push_back({});
      side->seen.emplace(k.exact, 0);
      side->by_coset[k.coset].push_back(0);
      side->frontier.push_back(0);
    }
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    threads_ = bounds.threads > 0 ? static_cast<unsigned>(bounds.threads) : hw;
  }

  Verdict run() {
    Verdict v;
    v.stats.states = 2;
    if (auto cert = meet(fwd_, 0, keys_of(fwd_.root).coset)) return found(std::move(v), std::move(*cert));
    while (!fwd_.frontier.empty() || !bwd_.frontier.empty()) {
      const bool forward = bwd_.frontier.empty() || (!fwd_.frontier.empty() && fwd_.frontier.size() <= bwd_.frontier.size());
      Side& side = forward ? fwd_ : bwd_;
      const std::vector<int> frontier = std::move(side.frontier);
      side.frontier.clear();
      const auto produced = expand_level(side, frontier);
      for (std::size_t k = 0; k < frontier.size(); ++k) {
        const Node parent = side.nodes[frontier[k]];
        for (const Successor& succ : produced[k]) {
          if (side.seen.count(succ.keys.exact)) continue;
          const bool conj = alphabet_[succ.step].kind == CertStep::Kind::conjugation;
          const int index = static_cast<int>(side.nodes.size());
          side.nodes.push_back({frontier[k], succ.step, parent.depth + 1, parent.conj + (conj ? 1 : 0)});
          side.seen.emplace(succ.keys.exact, index);
          side.by_coset[succ.keys.coset].push_back(index);
          side.frontier.push_back(index);
          v.stats.states += 1;
          v.stats.depth_reached = std::max(v.stats.depth_reached, parent.depth + 1);
          if (auto cert = meet(side, index, succ.keys.coset)) return found(std::move(v), std::move(*cert));
          if (v.stats.states >= bounds_.max_states) {
            v.kind = Verdict::Kind::unknown;
            v.reason = "state budget of " + std::to_string(bounds_.max_states) + " exhausted";
            return v;
          }
        }
      }
    }
    v.kind = Verdict::Kind::unknown;
    v.reason = coset_blocked_ ? "matching states need more coset insertions than allowed"
                              : "search space exhausted within the bounds";
    return v;
  }

 private:
  Keys keys_of(const State& s) const {
    Keys k;
    for (int c = 0; c < n_; ++c) {
      const Keys part = keys_of_component(s[c], c);
      k.exact = add(k.exact, part.exact);
      k.coset = add(k.coset, part.coset);
    }
    return k;
  }

  std::optional<Certificate> meet(const Side& side, int index, const Key& coset) {
    const Side& other = side.backward ? fwd_ : bwd_;
    const auto it = other.by_coset.find(coset);
    if (it == other.by_coset.end()) return std::nullopt;
    std::size_t attempts = 0;
    for (int partner : it->second) {
      if (attempts++ == kMeetingAttempts) break;
      auto cert = side.backward ? certify(partner, index) : certify(index, partner);
      if (cert) return cert;
    }
    return std::nullopt;
  }

  CertStep oriented(const Side& side, int step) const {
    return side.backward ? inverse_step(alphabet_[step]) : alphabet_[step];
  }

  State state_of(const Side& side, int node) const {
    State s = side.root;
    for (int step : path_to_root(side, node)) apply_expanded(s, oriented(side, step));
    return s;
  }

  std::vector<Successor> successors(const Side& side, int node_index) const {
    const Node& node = side.nodes[node_index];
    std::vector<Successor> out;
    if (node.depth >= bounds_.depth) return out;
    const State s = state_of(side, node_index);
    std::vector<Keys> parts;
    Keys total;
    for (int c = 0; c < n_; ++c) {
      parts.push_back(keys_of_component(s[c], c));
      total.exact = add(total.exact, parts.back().exact);
      total.coset = add(total.coset, parts.back().coset);
    }
    std::vector<ReducedPoly> inverses;
    for (const ReducedPoly& p : s) inverses.push_back(inv(p));
    for (std::size_t k = 0; k < alphabet_.size(); ++k) {
      const CertStep step = oriented(side, static_cast<int>(k));
      if (step.kind == CertStep::Kind::conjugation) {
        if (node.conj >= bounds_.conj_len) continue;
        State next = s;
        apply_expanded(next, step);
        out.push_back({static_cast<int>(k), keys_of(next)});
      } else {
        const ReducedPoly r = relator_image(s[step.j], inverses[step.j], step.j, step.sign, step.h);
        const Keys changed = keys_of_component(s[step.i] * r, step.i);
        out.push_back({static_cast<int>(k),
                       {add(sub(total.exact, parts[step.i].exact), changed.exact),
                        add(sub(total.coset, parts[step.i].coset), changed.coset)}});
      }
    }
    return out;
  }

  // Successor lists are computed in parallel chunks; merging stays in
  // frontier order, so the outcome does not depend on the thread count.
  std::vector<std::vector<Successor>> expand_level(const Side& side, const std::vector<int>& frontier) const {
    std::vector<std::vector<Successor>> produced(frontier.size());
    auto work = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t k = lo; k < hi; ++k) produced[k] = successors(side, frontier[k]);
    };
    const unsigned workers = frontier.size() >= 16 ? std::min<unsigned>(threads_, static_cast<unsigned>(frontier.size())) : 1;
    if (workers <= 1) {
      work(0, frontier.size());
      return produced;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (frontier.size() + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
      const std::size_t lo = t * chunk, hi = std::min(frontier.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
    return produced;
  }

  std::optional<Certificate> certify(int f, int g) {
    const Node& nf = fwd_.nodes[f];
    const Node& ng = bwd_.nodes[g];
    if (nf.depth + ng.depth > bounds_.depth || nf.conj + ng.conj > bounds_.conj_len) return std::nullopt;
    Certificate cert;
    cert.n = n_;
    for (int k : path_to_root(fwd_, f)) cert.steps.push_back(alphabet_[k]);
    const auto back = path_to_root(bwd_, g);
    for (auto it = back.rbegin(); it != back.rend(); ++it) cert.steps.push_back(alphabet_[*it]);
    std::vector<Word> w = b_.longitudes;
    for (const CertStep& step : cert.steps) apply_cert_step(w, step);
    cert.cosets.resize(n_);
    for (int i = 0; i < n_; ++i) {
      auto ins = coset_insertions(w[i], a_.longitudes[i], i, n_, static_cast<std::size_t>(std::max(0, bounds_.coset_max)));
      if (!ins) throw std::logic_error("matching states differ outside the coset");
      cert.cosets[i] = std::move(*ins);
      if (static_cast<int>(cert.cosets[i].size()) > bounds_.coset_max) {
        coset_blocked_ = true;
        return std::nullopt;
      }
    }
    if (!verify_certificate(a_, b_, cert)) throw std::logic_error("search produced a certificate that does not verify");
    return cert;
  }

  static Verdict found(Verdict v, Certificate cert) {
    v.kind = Verdict::Kind::equivalent;
    v.certificate = std::move(cert);
    v.reason = "certificate found";
    return v;
  }

  const PeripheralSystem& a_;
  const PeripheralSystem& b_;
  SearchBounds bounds_;
  int n_;
  std::vector<CertStep> alphabet_;
  Side fwd_;
  Side bwd_;
  unsigned threads_ = 1;
  bool coset_blocked_ = false;
};

}  // namespace

Verdict search_certificate(const PeripheralSystem& a, const PeripheralSystem& b, const SearchBounds& bounds) {
  if (a.n != b.n) throw std::invalid_argument("component counts differ");
  check_system(a);
  check_system(b);
  const int length = bounds.max_length > 0 ? std::min(bounds.max_length, std::max(a.n, 1)) : std::max(a.n, 1);
  if (auto w = refute(a, b, length)) {
    Verdict v;
    v.kind = Verdict::Kind::distinct;
    v.reason = "Milnor residue differs at " + format_multi_index(w->a.indices, w->a.target);
    v.witness = std::move(w);
    return v;
  }
  return Searcher(a, b, bounds).run();
}

Verdict sv_equivalent(const GaussDiagram& a, const GaussDiagram& b, const SearchBounds& bounds) {
  if (a.n() != b.n()) throw std::invalid_argument("component counts differ");
  const SortResult sa = sort_diagram(a);
  const SortResult sb = sort_diagram(b);
  return search_certificate(sorted_longitudes(sa.sorted), sorted_longitudes(sb.sorted), bounds);
}

}  // namespace weldkit
