#include "weldkit/json_io.hpp"

#include <sstream>

namespace weldkit::json {

namespace {

const char* role_name(Role r) { return r == Role::tail ? "tail" : "head"; }

Role role_from(const std::string& s) {
  if (s == "tail") return Role::tail;
  if (s == "head") return Role::head;
  throw std::invalid_argument("role must be \"tail\" or \"head\"");
}

}  // namespace

json to_json(const Integer& v) {
  if (v.is_small()) return v.small_value();
  return v.to_string();
}

Integer integer_from_json(const json& j) {
  if (j.is_string()) return Integer::from_string(j.get<std::string>());
  return Integer(j.get<std::int64_t>());
}

json to_json(const Word& w) { return word_to_ints(w); }

Word word_from_json(const json& j) { return word_from_ints(j.get<std::vector<int>>()); }

json to_json(const GaussDiagram& d) {
  json arrows = json::array();
  for (const Arrow& a : d.arrows()) {
    arrows.push_back({{"id", a.id}, {"sign", a.sign}, {"tail_circle", a.tail_circle + 1}, {"head_circle", a.head_circle + 1}});
  }
  json circles = json::array();
  for (const auto& circle : d.circles()) {
    json seq = json::array();
    for (const EndpointRef& e : circle) seq.push_back({{"arrow", e.arrow}, {"role", role_name(e.role)}});
    circles.push_back(std::move(seq));
  }
  return {{"n", d.n()}, {"arrows", std::move(arrows)}, {"circles", std::move(circles)}};
}

GaussDiagram diagram_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  std::map<int, int> signs;
  for (const json& a : j.at("arrows")) {
    const int id = a.at("id").get<int>();
    if (id <= 0) throw DiagramError("arrow ids must be positive");
    if (!signs.emplace(id, a.at("sign").get<int>()).second) throw DiagramError("duplicate arrow id " + std::to_string(id));
  }
  std::vector<std::vector<EndpointRef>> circles;
  for (const json& c : j.at("circles")) {
    std::vector<EndpointRef> seq;
    for (const json& e : c) seq.push_back({e.at("arrow").get<int>(), role_from(e.at("role").get<std::string>())});
    circles.push_back(std::move(seq));
  }
  if (static_cast<int>(circles.size()) != n) throw DiagramError("circle count differs from n");
  GaussDiagram d = GaussDiagram::with_compacted_ids(n, signs, std::move(circles));
  // Declared circles, when present, must match the endpoints.
  std::map<int, int> rank;
  for (const auto& [id, s] : signs) rank.emplace(id, static_cast<int>(rank.size()) + 1);
  for (const json& a : j.at("arrows")) {
    const Arrow& arrow = d.arrow(rank.at(a.at("id").get<int>()));
    if (a.contains("tail_circle") && a.at("tail_circle").get<int>() != arrow.tail_circle + 1) {
      throw DiagramError("arrow " + std::to_string(a.at("id").get<int>()) + ": tail_circle disagrees with the circles");
    }
    if (a.contains("head_circle") && a.at("head_circle").get<int>() != arrow.head_circle + 1) {
      throw DiagramError("arrow " + std::to_string(a.at("id").get<int>()) + ": head_circle disagrees with the circles");
    }
  }
  return d;
}

json to_json(const GroupPresentation& p) {
  json relators = json::array();
  for (const Word& r : p.relators) relators.push_back(to_json(r));
  return {{"generators", p.generators}, {"relators", std::move(relators)}, {"reduced_relators", p.reduced_relators}};
}

json to_json(const PeripheralSystem& p) {
  json longitudes = json::array(), text = json::array(), meridians = json::array();
  for (const Word& w : p.longitudes) {
    longitudes.push_back(to_json(w));
    text.push_back(format_word(w));
  }
  for (int m : p.meridians) meridians.push_back(m + 1);
  return {{"n", p.n},
          {"meridians", std::move(meridians)},
          {"longitudes", std::move(longitudes)},
          {"longitude_text", std::move(text)},
          {"self_crossings", p.self_crossings}};
}

PeripheralSystem peripheral_from_json(const json& j) {
  PeripheralSystem p;
  p.n = j.at("n").get<int>();
  for (const json& w : j.at("longitudes")) p.longitudes.push_back(word_from_json(w));
  if (static_cast<int>(p.longitudes.size()) != p.n) throw std::invalid_argument("longitude count differs from n");
  for (int i = 0; i < p.n; ++i) p.meridians.push_back(i);
  p.self_crossings = j.value("self_crossings", std::vector<int>(p.n, 0));
  return p;
}

json to_json(const MilnorEntry& e) {
  std::vector<int> indices;
  for (int i : e.indices) indices.push_back(i + 1);
  return {{"I", indices}, {"j", e.target + 1}, {"mu", to_json(e.mu)}, {"delta", to_json(e.delta)}, {"mubar", to_json(e.mubar)}};
}

json to_json(const MilnorTable& t) {
  json entries = json::array();
  for (const auto& e : t.entries) entries.push_back(to_json(e));
  return {{"n", t.n},
          {"max_length", t.max_length},
          {"mode", t.mode == ResidueMode::classical ? "classical" : "raw"},
          {"entries", std::move(entries)}};
}

json to_json(const MoveInstance& m) {
  json j{{"kind", to_string(m.kind)}};
  if (!m.arrows.empty()) j["arrows"] = m.arrows;
  if (m.circle >= 0) j["circle"] = m.circle + 1;
  if (m.pos >= 0) j["pos"] = m.pos;
  if (m.circle2 >= 0) j["circle2"] = m.circle2 + 1;
  if (m.pos2 >= 0) j["pos2"] = m.pos2;
  switch (m.kind) {
    case MoveKind::r1_add:
    case MoveKind::r2_add:
      j["sign"] = m.sign;
      j["flag"] = m.flag;
      break;
    case MoveKind::sv_add:
      j["sign"] = m.sign;
      break;
    default:
      break;
  }
  return j;
}

MoveInstance move_from_json(const json& j) {
  MoveInstance m;
  m.kind = move_kind_from_string(j.at("kind").get<std::string>());
  m.arrows = j.value("arrows", std::vector<int>{});
  m.circle = j.value("circle", 0) - 1;
  m.pos = j.value("pos", -1);
  m.circle2 = j.value("circle2", 0) - 1;
  m.pos2 = j.value("pos2", -1);
  m.sign = j.value("sign", 1);
  m.flag = j.value("flag", false);
  return m;
}

std::string trace_to_jsonl(const MoveTrace& t) {
  std::ostringstream out;
  out << json{{"initial", to_json(t.initial)}}.dump() << "\n";
  for (const TraceStep& s : t.steps) {
    json line = to_json(s.move);
    line["origin"] = to_string(s.origin);
    line["result_hash"] = s.result_hash;
    out << line.dump() << "\n";
  }
  out << json{{"result", to_json(t.result)}}.dump() << "\n";
  return out.str();
}

MoveTrace trace_from_jsonl(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  MoveTrace t;
  bool have_initial = false, have_result = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line);
    if (j.contains("initial")) {
      t.initial = diagram_from_json(j.at("initial"));
      have_initial = true;
    } else if (j.contains("result")) {
      t.result = diagram_from_json(j.at("result"));
      have_result = true;
    } else {
      t.steps.push_back({move_from_json(j), step_origin_from_string(j.value("origin", "primitive")),
                         j.at("result_hash").get<std::uint64_t>()});
    }
  }
  if (!have_initial || !have_result) throw std::invalid_argument("trace needs an initial and a result line");
  return t;
}

json to_json(const CertStep& s) {
  json j{{"kind", s.kind == CertStep::Kind::conjugation ? "conjugation" : "relator"},
         {"i", s.i + 1},
         {"j", s.j + 1},
         {"sign", s.sign}};
  if (s.kind == CertStep::Kind::relator) j["h"] = to_json(s.h);
  return j;
}

CertStep cert_step_from_json(const json& j) {
  CertStep s;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "conjugation") {
    s.kind = CertStep::Kind::conjugation;
  } else if (kind == "relator") {
    s.kind = CertStep::Kind::relator;
  } else {
    throw CertificateError("unknown step kind '" + kind + "'");
  }
  s.i = j.at("i").get<int>() - 1;
  s.j = j.at("j").get<int>() - 1;
  s.sign = j.at("sign").get<int>();
  if (j.contains("h")) s.h = word_from_json(j.at("h"));
  return s;
}

json to_json(const Certificate& c) {
  json steps = json::array(), conjugators = json::array(), cosets = json::array();
  for (const auto& s : c.steps) steps.push_back(to_json(s));
  for (const auto& w : c.conjugators) conjugators.push_back(to_json(w));
  for (const auto& list : c.cosets) {
    json items = json::array();
    for (const auto& ins : list) items.push_back({{"g", to_json(ins.g)}, {"sign", ins.sign}});
    cosets.push_back(std::move(items));
  }
  return {{"n", c.n}, {"steps", std::move(steps)}, {"conjugators", std::move(conjugators)}, {"cosets", std::move(cosets)}};
}

Certificate certificate_from_json(const json& j) {
  Certificate c;
  c.n = j.at("n").get<int>();
  for (const json& s : j.value("steps", json::array())) c.steps.push_back(cert_step_from_json(s));
  for (const json& w : j.value("conjugators", json::array())) c.conjugators.push_back(word_from_json(w));
  for (const json& list : j.value("cosets", json::array())) {
    std::vector<CosetInsertion> items;
    for (const json& ins : list) items.push_back({word_from_json(ins.at("g")), ins.at("sign").get<int>()});
    c.cosets.push_back(std::move(items));
  }
  return c;
}

json certificate_document(const PeripheralSystem& a, const PeripheralSystem& b, const Certificate& c) {
  return {{"schema", std::string("weldkit/certificate/v") + kSchemaVersion},
          {"A", to_json(a)},
          {"B", to_json(b)},
          {"certificate", to_json(c)}};
}

json to_json(const Witness& w) {
  std::vector<int> indices;
  for (int i : w.a.indices) indices.push_back(i + 1);
  return {{"I", indices},
          {"j", w.a.target + 1},
          {"label", format_multi_index(w.a.indices, w.a.target)},
          {"a", to_json(w.a)},
          {"b", to_json(w.b)}};
}

json to_json(const Verdict& v) {
  json j{{"verdict", to_string(v.kind)},
         {"reason", v.reason},
         {"states", v.stats.states},
         {"depth_reached", v.stats.depth_reached}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.certificate) j["certificate"] = to_json(*v.certificate);
  return j;
}

json to_json(const SearchBounds& b) {
  return {{"conj_len", b.conj_len},
          {"coset_max", b.coset_max},
          {"search_depth", b.depth},
          {"h_len", b.h_len},
          {"max_states", b.max_states},
          {"max_length", b.max_length}};
}

}  // namespace weldkit::json
