#pragma once

// Text and JSON forms of instances and decompositions.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nsdecomp/decompose.hpp"

namespace nsdecomp {

using Json = nlohmann::ordered_json;

/// "5,11,12,18": positive integers separated by commas, whitespace ignored.
std::vector<Int> parse_int_list(std::string_view text);
NumericalSemigroup parse_generators(std::string_view text);
/// "5:2,2,3,4": multiplicity, colon, the m - 1 coordinates.
KunzCoordinates parse_kunz(std::string_view text);

/// One line of an instance file.
struct InstanceSpec {
  std::string id;
  std::string bucket;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<Int>> generators;
  std::optional<Int> m;
  std::optional<std::vector<Int>> kunz;
  std::string label;

  KunzCoordinates load() const;

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

Json instance_to_json(const InstanceSpec& spec);
InstanceSpec instance_from_json(const Json& j);
/// Reads one JSON object per non-blank line; errors name the line number.
std::vector<InstanceSpec> read_instances(std::istream& in);
void write_instances(std::ostream& out, const std::vector<InstanceSpec>& specs);

Json decomposition_to_json(const Decomposition& d, bool verified);
/// Inverse of decomposition_to_json; certificates are recomputed.
Decomposition decomposition_from_json(const Json& j);

}  // namespace nsdecomp
