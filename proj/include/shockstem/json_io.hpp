#ifndef SHOCKSTEM_JSON_IO_HPP
#define SHOCKSTEM_JSON_IO_HPP

#include <json.hpp>

#include "shockstem/machstem.hpp"

namespace shockstem {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// {"type": "ideal" | "mie_gruneisen", parameters...}. Unknown keys are
/// rejected; missing optional keys take the documented defaults.
EosSpec eos_from_json(const Json& j);
Json eos_to_json(const EosSpec& eos);

FluidState state_from_json(const Json& j);
Json state_to_json(const FluidState& state);

PlanarShock shock_from_json(const Json& j);
Json shock_to_json(const PlanarShock& shock);

Json pattern_to_json(const MachStemPattern& pattern);
MachStemPattern pattern_from_json(const Json& j);

Json family_to_json(const PlanarShock& reference, const FamilyResult& family);

Json worksheet_to_json(const WeakStabilityWorksheet& sheet);
Json asymptotics_to_json(const AsymptoticReport& report);

/// Reads a JSON document from disk; throws DomainError with the parse
/// location on malformed input.
Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

}  // namespace shockstem

#endif
