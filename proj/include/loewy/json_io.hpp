#pragma once

#include <json.hpp>

#include "loewy/algebra.hpp"
#include "loewy/basis.hpp"
#include "loewy/injectivity.hpp"
#include "loewy/twisted.hpp"

namespace loewy {

using json = nlohmann::json;

// Scalars and ordinals travel as their canonical literals. Elements are
//   {"level": "w", "dev": [{"coord": "0", "value": {...}}], "const": "2"}
// and twisted elements {"dev": [{"coord": 0, "value": "x"}], "nu_param": "x"}.

json to_json(const Element& x);
json to_json(const TupleElement& x);
json to_json(const TwistedElement& x);
json to_json(const DimensionSequence& d);
json to_json(const BasisCoords& c);
json to_json(const CheckReport& r);
json to_json(const MElement& m);
json to_json(const Verdict& v);
json to_json(const MultBasisSearch& s);

/// Throws Error(Parse) on malformed documents.
Element element_from_json(const FieldDescriptor& f, const json& j);
TupleElement tuple_from_json(const FieldDescriptor& f, const json& j);
TwistedElement twisted_from_json(const FieldDescriptor& f, const json& j);

}  // namespace loewy
