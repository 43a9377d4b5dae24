/*
Copyright 2026 The ocsched Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>

namespace ocsched {

// Decimal SI throughout: 1 MB = 1e6 bytes, 1 Gbps = 1e9 bit/s.
// Internally times are seconds, volumes bytes, bandwidth bit/s.
inline constexpr double kBytesPerMegabyte = 1e6;
inline constexpr double kBitsPerSecondPerGbps = 1e9;
inline constexpr double kSecondsPerMicrosecond = 1e-6;
inline constexpr double kBitsPerByte = 8.0;

/// Absolute tolerance (seconds) used by every schedule validity check.
inline constexpr double kTimeTolerance = 1e-9;

inline constexpr double megabytes_to_bytes(double mb) { return mb * kBytesPerMegabyte; }
inline constexpr double gbps_to_bps(double gbps) { return gbps * kBitsPerSecondPerGbps; }
inline constexpr double us_to_seconds(double us) { return us * kSecondsPerMicrosecond; }
inline constexpr double seconds_to_us(double s) { return s / kSecondsPerMicrosecond; }

/// Seconds needed to push `bytes` through one port of `bandwidth_bps`.
inline constexpr double transfer_seconds(double bytes, double bandwidth_bps) {
    return bytes * kBitsPerByte / bandwidth_bps;
}

inline bool approx_equal(double a, double b, double rel, double abs = 0.0) {
    return std::fabs(a - b) <= abs + rel * std::fmax(std::fabs(a), std::fabs(b));
}

} // namespace ocsched
