#pragma once

namespace quiversi {

inline constexpr const char* kToolVersion = "0.1.0";
/// Embedded in every JSON document the CLI emits.
inline constexpr const char* kSchemaVersion = "quiversi/1";

}  // namespace quiversi
