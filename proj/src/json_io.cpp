#include "loewy/json_io.hpp"

#include "loewy/error.hpp"

namespace loewy {

json to_json(const Element& x) {
  json devs = json::array();
  for (const auto& d : x.deviations()) devs.push_back({{"coord", d.coord.to_string()}, {"value", to_json(d.value)}});
  return {{"level", x.level().to_string()}, {"dev", devs}, {"const", x.constant().to_string()}};
}

json to_json(const TupleElement& x) {
  json factors = json::array();
  for (const auto& c : x.components()) factors.push_back(to_json(c));
  return {{"width", x.width()}, {"factors", factors}};
}

json to_json(const TwistedElement& x) {
  json devs = json::array();
  for (const auto& [t, d] : x.deviations()) devs.push_back({{"coord", t}, {"value", d.to_string()}});
  return {{"field", x.field().to_string()}, {"dev", devs}, {"nu_param", x.nu_param().to_string()}};
}

json to_json(const DimensionSequence& d) {
  json layers = json::array();
  if (!d.level.is_zero()) {
    layers.push_back({{"layers_below", d.level.to_string()}, {"components", "aleph0"}, {"rank", 1}});
  }
  layers.push_back({{"layer", d.level.to_string()}, {"components", d.top_dim}, {"rank", 1}});
  return {{"loewy_length", (d.level + Ordinal::finite(1)).to_string()},
          {"field", d.field.to_string()},
          {"top_dim", d.top_dim},
          {"layers", layers}};
}

json to_json(const BasisCoords& c) {
  json out = json::object();
  for (const auto& [idx, k] : c) out[idx.to_string()] = k.to_string();
  return out;
}

json to_json(const CheckReport& r) {
  json j = {{"name", r.name},       {"passed", r.passed},     {"checked", r.checked},
            {"skipped", r.skipped}, {"failures", r.failures}};
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  return j;
}

json to_json(const MElement& m) {
  json values = json::object();
  for (const auto& [a, k] : m.values) values[std::to_string(a)] = k.to_string();
  json j = {{"values", values}, {"support", m.support_cardinality().to_string()}};
  if (m.indicator) j["indicator"] = {{"set", m.indicator->tag}, {"cardinality", m.indicator->cardinality.to_string()}};
  return j;
}

json to_json(const Verdict& v) {
  json j = {{"verdict", verdict_name(v)}};
  if (const auto* e = std::get_if<Extends>(&v)) {
    j["witness"] = to_json(e->witness);
    if (!e->note.empty()) j["note"] = e->note;
  } else if (const auto* f = std::get_if<Fails>(&v)) {
    j["required"] = f->required.to_string();
    j["allowed"] = f->allowed.to_string();
    j["reason"] = f->reason;
  } else {
    const auto& h = std::get<InvalidHomVerdict>(v);
    if (h.coordinate) j["coordinate"] = *h.coordinate;
    j["reason"] = h.reason;
  }
  return j;
}

json to_json(const MultBasisSearch& s) {
  return {{"p", s.p},
          {"n", s.n},
          {"modulus", s.modulus},
          {"candidate_bases", s.candidate_bases},
          {"examined", s.examined},
          {"bases", s.bases_text}};
}

namespace {

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON element: ") + e.what());
  }
}

Element element_at(const FieldDescriptor& f, const json& j) {
  Ordinal level = Ordinal::parse(j.at("level").get<std::string>());
  std::vector<Deviation> devs;
  for (const auto& d : j.at("dev")) {
    devs.push_back({Ordinal::parse(d.at("coord").get<std::string>()), element_at(f, d.at("value"))});
  }
  return Element::make(level, std::move(devs), FieldValue::parse(f, j.at("const").get<std::string>()));
}

}  // namespace

Element element_from_json(const FieldDescriptor& f, const json& j) {
  return guarded([&] { return element_at(f, j); });
}

TupleElement tuple_from_json(const FieldDescriptor& f, const json& j) {
  return guarded([&] {
    std::vector<Element> parts;
    for (const auto& c : j.at("factors")) parts.push_back(element_at(f, c));
    if (parts.empty()) throw Error(ErrorKind::Parse, "tuple without factors");
    return TupleElement(std::move(parts));
  });
}

TwistedElement twisted_from_json(const FieldDescriptor& f, const json& j) {
  return guarded([&] {
    std::vector<TwistedElement::Entry> devs;
    for (const auto& d : j.at("dev")) {
      devs.emplace_back(d.at("coord").get<std::uint64_t>(), FieldValue::parse(f, d.at("value").get<std::string>()));
    }
    return TwistedElement::make(std::move(devs), FieldValue::parse(f, j.at("nu_param").get<std::string>()));
  });
}

}  // namespace loewy
