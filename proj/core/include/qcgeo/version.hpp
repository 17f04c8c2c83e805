#pragma once

namespace qcgeo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qcgeo
