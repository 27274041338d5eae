#pragma once

namespace mmi {

/// Tool version stamped into every emitted table and JSON document.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace mmi
