#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "detequiv/class_d.hpp"
#include "detequiv/cycles.hpp"
#include "detequiv/equivalence.hpp"
#include "detequiv/oracle.hpp"
#include "detequiv/recovery.hpp"

namespace detequiv {

using Json = nlohmann::ordered_json;

Json field_to_json(const FieldSpec& field);
FieldSpec field_from_json(const Json& doc);

/// {"field": ..., "labels": [...], "entries": [[...], ...]}, entries as scalar strings.
Json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const Json& doc);

Json equivalence_report_to_json(const EquivalenceReport& report, const Kernel& k);
Json class_d_report_to_json(const ClassDReport& report, const Kernel& h);
Json case_table_to_json(const CaseTable& table, const Kernel& k);
Json certificate_to_json(const RecoveryResult& result, const Kernel& k);

Json gauge_to_json(const Gauge& g, const Kernel& k);
Gauge gauge_from_json(const Json& doc, const Kernel& k);

Json instance_to_json(const Instance& instance);
Instance instance_from_json(const Json& doc);

/// Parses a JSON file; throws ParseError on unreadable or malformed input.
Json read_json_file(const std::filesystem::path& path);
/// Two-space indentation with a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& doc);

}  // namespace detequiv
