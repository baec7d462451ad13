#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "weldkit/equivalence.hpp"
#include "weldkit/gauss_diagram.hpp"
#include "weldkit/group.hpp"
#include "weldkit/magnus.hpp"
#include "weldkit/moves.hpp"

// JSON forms use 1-based circle, component and generator indices. Words are
// arrays of +-(generator index). Integers that do not fit in 64 bits are
// written as decimal strings.
namespace weldkit::json {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

json to_json(const Integer& v);
Integer integer_from_json(const json& j);

json to_json(const Word& w);
Word word_from_json(const json& j);

json to_json(const GaussDiagram& d);
GaussDiagram diagram_from_json(const json& j);

json to_json(const GroupPresentation& p);
json to_json(const PeripheralSystem& p);
PeripheralSystem peripheral_from_json(const json& j);

json to_json(const MilnorEntry& e);
json to_json(const MilnorTable& t);

json to_json(const MoveInstance& m);
MoveInstance move_from_json(const json& j);

// First line: {"initial": diagram}; then one step per line; last line:
// {"result": diagram}.
std::string trace_to_jsonl(const MoveTrace& t);
MoveTrace trace_from_jsonl(const std::string& text);

json to_json(const CertStep& s);
CertStep cert_step_from_json(const json& j);
json to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

// Self-contained file for `certify --check`: both systems plus the certificate.
json certificate_document(const PeripheralSystem& a, const PeripheralSystem& b, const Certificate& c);

json to_json(const Witness& w);
json to_json(const Verdict& v);
json to_json(const SearchBounds& b);

}  // namespace weldkit::json
