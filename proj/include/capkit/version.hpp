#pragma once

namespace capkit {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

} // namespace capkit
