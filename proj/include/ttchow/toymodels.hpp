#pragma once

// Finite-poset models with tabulated K-data, loaded from a declarative JSON
// schema (schema_version 1). Bundled fixtures: point, chain2, klein4,
// broken_gersten, p1_mock.
//
// Schema sketch:
// {
//   "schema_version": 1,
//   "name": "...",
//   "points": [{"id", "display"?, "dim"}],
//   "specializations": [["from", "to"], ...],        // to ∈ closure{from}
//   "window": {"lo": int, "hi": int},
//   "groups": [{"point", "p", "torsion": [ints], "free_rank": int}],   // absent => 0
//   "boundaries": [{"from", "to", "p", "matrix": [[ints]]}],           // absent => 0
//   "pairing"?: {"id", "note"?, "unit": [{"point", "coords"}],
//                "entries": [{"left", "right", "out", "table": [[[ints]]]}]},
//   "ker_i_generators"?: [{"l", "elements": [[{"point", "coords"}], ...]}]
// }
// Integers may be JSON numbers or decimal strings (strings keep values above
// 2^53 exact).

#include <memory>
#include <string>

#include <json.hpp>

#include "ttchow/klocal.hpp"
#include "ttchow/space.hpp"

namespace ttchow {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& m) : std::runtime_error(m) {}
};
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error(m) {}
};

namespace toy {

struct LoadedModel {
    std::string name;
    std::shared_ptr<space::FinitePosetModel> model;
    std::shared_ptr<klocal::KLocalData> data;
    std::shared_ptr<klocal::PairingData> pairing;  // may be null
};

// Parse + structural validation; ParseError for malformed JSON (with byte
// context), ValidationError for schema violations (with field context).
LoadedModel load(const std::string& path);
LoadedModel load_from_string(const std::string& text, const std::string& origin = "<string>");

// Semantic serialization (points, dims, specializations, groups in invariant
// form, boundaries, pairing); load(serialize(m)) is semantically equal to m.
nlohmann::json serialize(const LoadedModel& m);

}  // namespace toy
}  // namespace ttchow
