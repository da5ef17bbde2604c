#include "dfmcw/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace dfmcw {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string format_value(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

void write_provenance(std::ostream& out, const Provenance& provenance) {
    char hash_hex[17];
    std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                  static_cast<unsigned long long>(provenance.config_hash));
    out << "# tool=" << provenance.tool << " version=" << provenance.version
        << " kind=" << provenance.kind << " config_hash=" << hash_hex
        << " seed=" << provenance.seed << '\n';
}

void write_csv(std::ostream& out, const Provenance& provenance,
               std::span<const ExperimentRow> rows) {
    write_provenance(out, provenance);
    if (rows.empty()) return;

    const auto& first = rows.front().labels;
    for (const auto& [name, value] : first) out << name << ',';
    out << "metric,value,trials,seed\n";

    for (const auto& row : rows) {
        if (row.labels.size() != first.size()) {
            throw std::invalid_argument("CSV rows carry different label sets");
        }
        for (std::size_t i = 0; i < row.labels.size(); ++i) {
            if (row.labels[i].first != first[i].first) {
                throw std::invalid_argument("CSV rows carry different label sets");
            }
            out << format_value(row.labels[i].second) << ',';
        }
        out << row.metric << ',' << format_value(row.value) << ',' << row.trials << ','
            << row.seed << '\n';
    }
}

}  // namespace dfmcw
