#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ptkr {

/// Shortest decimal that round-trips a double is at most 17 significant
/// digits; all CSV output goes through this.
std::string fmt17(double v);

std::uint64_t fnv1a64(std::string_view s);

std::string to_hex(std::uint64_t v);

}  // namespace ptkr
