#include "nsdecomp/instance_io.hpp"

#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>

#include "nsdecomp/error.hpp"

namespace nsdecomp {

namespace {

[[noreturn]] void parse_error(std::string_view text, std::size_t pos, const std::string& what) {
  throw Error(Errc::ParseError, what + " at position " + std::to_string(pos + 1) + " in '" + std::string(text) + "'");
}

std::size_t skip_space(std::string_view text, std::size_t pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  return pos;
}

std::vector<Int> parse_list_at(std::string_view text, std::size_t pos) {
  std::vector<Int> out;
  while (true) {
    pos = skip_space(text, pos);
    Int value = 0;
    const char* begin = text.data() + pos;
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range) parse_error(text, pos, "integer out of range");
    if (ec != std::errc()) parse_error(text, pos, "expected an integer");
    out.push_back(value);
    pos = skip_space(text, static_cast<std::size_t>(ptr - text.data()));
    if (pos == text.size()) return out;
    if (text[pos] != ',') parse_error(text, pos, "expected ','");
    ++pos;
  }
}

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw Error(Errc::ParseError, std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(Errc::ParseError, std::string("field \"") + name + "\" has the wrong type");
  }
}

}  // namespace

std::vector<Int> parse_int_list(std::string_view text) {
  if (skip_space(text, 0) == text.size()) throw Error(Errc::ParseError, "empty list");
  return parse_list_at(text, 0);
}

NumericalSemigroup parse_generators(std::string_view text) { return NumericalSemigroup(parse_int_list(text)); }

KunzCoordinates parse_kunz(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) parse_error(text, 0, "expected 'm:x1,...,x_{m-1}'");
  const auto head = parse_list_at(text.substr(0, colon), 0);
  if (head.size() != 1) parse_error(text, 0, "expected a single multiplicity before ':'");
  return KunzCoordinates(head.front(), parse_list_at(text, colon + 1));
}

KunzCoordinates InstanceSpec::load() const {
  if (generators.has_value() == kunz.has_value()) {
    throw Error(Errc::ParseError, "instance " + id + " needs exactly one of \"generators\" and \"kunz\"");
  }
  if (generators) return kunz_from_generators(NumericalSemigroup(*generators));
  if (!m) throw Error(Errc::ParseError, "instance " + id + " has \"kunz\" but no \"m\"");
  return KunzCoordinates(*m, *kunz);
}

Json instance_to_json(const InstanceSpec& spec) {
  Json j;
  j["id"] = spec.id;
  if (!spec.bucket.empty()) j["bucket"] = spec.bucket;
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.generators) j["generators"] = *spec.generators;
  if (spec.m) j["m"] = *spec.m;
  if (spec.kunz) j["kunz"] = *spec.kunz;
  if (!spec.label.empty()) j["label"] = spec.label;
  return j;
}

InstanceSpec instance_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "instance is not a JSON object");
  InstanceSpec spec;
  if (j.contains("id")) spec.id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
  if (j.contains("bucket")) spec.bucket = field<std::string>(j, "bucket");
  if (j.contains("seed")) spec.seed = field<std::uint64_t>(j, "seed");
  if (j.contains("generators")) spec.generators = field<std::vector<Int>>(j, "generators");
  if (j.contains("m")) spec.m = field<Int>(j, "m");
  if (j.contains("kunz")) spec.kunz = field<std::vector<Int>>(j, "kunz");
  if (j.contains("label")) spec.label = field<std::string>(j, "label");
  if (spec.generators.has_value() == spec.kunz.has_value()) {
    throw Error(Errc::ParseError, "instance needs exactly one of \"generators\" and \"kunz\"");
  }
  return spec;
}

std::vector<InstanceSpec> read_instances(std::istream& in) {
  std::vector<InstanceSpec> out;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (skip_space(line, 0) == line.size()) continue;
    try {
      out.push_back(instance_from_json(Json::parse(line)));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": invalid JSON (byte " +
                                        std::to_string(e.byte) + ")");
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void write_instances(std::ostream& out, const std::vector<InstanceSpec>& specs) {
  for (const auto& s : specs) out << instance_to_json(s).dump() << '\n';
}

Json decomposition_to_json(const Decomposition& d, bool verified) {
  auto values = [](const KunzCoordinates& x) { return std::vector<Int>(x.values().begin(), x.values().end()); };
  Json j;
  j["m"] = d.input.multiplicity();
  j["kunz"] = values(d.input);
  j["generators"] = generators_from_kunz(d.input).generators();
  Json parts = Json::array();
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    Json p;
    p["kunz"] = values(d.parts[i]);
    p["generators"] = generators_from_kunz(d.parts[i]).generators();
    p["frobenius"] = frobenius(d.parts[i]);
    parts.push_back(std::move(p));
  }
  j["parts"] = std::move(parts);
  j["method"] = std::string(method_name(d.method));
  j["minimal"] = d.minimal;
  j["verified"] = verified;
  return j;
}

Decomposition decomposition_from_json(const Json& j) {
  if (!j.is_object()) throw Error(Errc::ParseError, "decomposition is not a JSON object");
  const Int m = field<Int>(j, "m");
  const KunzCoordinates input(m, field<std::vector<Int>>(j, "kunz"));
  if (!j.contains("parts") || !j["parts"].is_array()) throw Error(Errc::ParseError, "missing array \"parts\"");
  std::vector<KunzCoordinates> parts;
  for (const auto& p : j["parts"]) {
    if (!p.is_object()) throw Error(Errc::ParseError, "part is not a JSON object");
    const auto kunz = field<std::vector<Int>>(p, "kunz");
    parts.emplace_back(static_cast<Int>(kunz.size()) + 1, kunz);
  }
  const Method method = parse_method(field<std::string>(j, "method"));
  return make_decomposition(input, method, std::move(parts), field<bool>(j, "minimal"));
}

}  // namespace nsdecomp
