#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "dfmcw/experiments.hpp"

namespace dfmcw {

/// Provenance written as the first CSV line:
///   # tool=dfmcw version=<v> kind=<k> config_hash=<16 hex> seed=<u64>
struct Provenance {
    std::string tool = "dfmcw";
    std::string version;
    std::string kind;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Shortest round-trip-safe 9-significant-digit rendering ("%.9g").
std::string format_value(double value);

/// Writes only the provenance comment line.
void write_provenance(std::ostream& out, const Provenance& provenance);

/// Writes the provenance comment, a header taken from the first row's labels
/// followed by `metric,value,trials,seed`, and one line per row. All rows must
/// carry the same label names.
void write_csv(std::ostream& out, const Provenance& provenance,
               std::span<const ExperimentRow> rows);

}  // namespace dfmcw
