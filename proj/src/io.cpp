#include "detequiv/io.hpp"

#include <fstream>
#include <sstream>

namespace detequiv {

namespace {

Json labels_of(const Kernel& k, const std::vector<std::size_t>& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(k.label(i));
  return out;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw ParseError("kernel entry must be a string or an integer");
}

const Json& member(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(std::string("missing member \"") + key + "\"");
  }
  return doc.at(key);
}

}  // namespace

Json field_to_json(const FieldSpec& field) {
  if (field.is_rational()) return Json{{"kind", "rational"}};
  return Json{{"kind", "prime"}, {"p", field.modulus()}};
}

FieldSpec field_from_json(const Json& doc) {
  const auto kind = member(doc, "kind").get<std::string>();
  if (kind == "rational") return FieldSpec::rationals();
  if (kind == "prime") {
    const auto& p = member(doc, "p");
    if (!p.is_number_unsigned()) throw ParseError("field modulus must be a positive integer");
    return FieldSpec::parse("prime:" + std::to_string(p.get<std::uint64_t>()));
  }
  throw ParseError("unknown field kind \"" + kind + "\"");
}

Json kernel_to_json(const Kernel& k) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < k.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < k.size(); ++j) row.push_back(k(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return Json{{"field", field_to_json(k.field())}, {"labels", k.labels()}, {"entries", rows}};
}

Kernel kernel_from_json(const Json& doc) {
  try {
    const auto field = field_from_json(member(doc, "field"));
    auto labels = member(doc, "labels").get<std::vector<std::string>>();
    const auto& rows = member(doc, "entries");
    if (!rows.is_array() || rows.size() != labels.size()) {
      throw LengthMismatch("entries must have one row per label");
    }
    std::vector<Scalar> entries;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != labels.size()) {
        throw LengthMismatch("every entries row must have one value per label");
      }
      for (const auto& v : row) entries.push_back(field.parse_scalar(scalar_text(v)));
    }
    const auto n = labels.size();
    return Kernel(std::move(labels), Matrix(field, n, std::move(entries)));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed kernel document: ") + e.what());
  }
}

Json equivalence_report_to_json(const EquivalenceReport& report, const Kernel& k) {
  Json doc{{"verdict", report.verdict == Verdict::Equivalent ? "equivalent" : "not_equivalent"},
           {"checked_order_max", report.checked_order_max}};
  if (report.capped) doc["capped"] = true;
  if (report.witness) {
    doc["witness"] = Json{{"subset", labels_of(k, report.witness->subset)},
                          {"minor_k", report.witness->minor_k.to_string()},
                          {"minor_q", report.witness->minor_q.to_string()}};
  }
  Json prechecks = Json::array();
  for (const auto& p : report.prechecks) {
    Json item{{"kind", p.kind == PrecheckFailure::Kind::Diagonal ? "diagonal" : "pair_product"}};
    item["points"] = p.kind == PrecheckFailure::Kind::Diagonal ? labels_of(k, {p.x})
                                                                : labels_of(k, {p.x, p.y});
    item["k"] = p.k_value.to_string();
    item["q"] = p.q_value.to_string();
    prechecks.push_back(std::move(item));
  }
  doc["prechecks"] = std::move(prechecks);
  return doc;
}

Json class_d_report_to_json(const ClassDReport& report, const Kernel& h) {
  Json doc{{"verdict", report.holds ? "class_d" : "not_class_d"},
           {"holds", report.holds},
           {"vacuous", report.vacuous}};
  if (report.witness) {
    const auto& w = *report.witness;
    doc["witness"] = Json{{"x", h.label(w.x)},
                          {"y", h.label(w.y)},
                          {"z", h.label(w.z)},
                          {"w", h.label(w.w)},
                          {"minor", w.minor.to_string()}};
  }
  return doc;
}

Json case_table_to_json(const CaseTable& table, const Kernel& k) {
  Json out = Json::array();
  for (const auto& e : table.entries()) {
    Json edges = Json::array();
    for (const auto& [a, b] : e.zero_edges) edges.push_back(labels_of(k, {a, b}));
    out.push_back(Json{{"cycle", labels_of(k, e.cycle.vertices())},
                       {"label", to_string(e.label)},
                       {"products",
                        {{"K", e.k_forward.to_string()},
                         {"Krev", e.k_reversed.to_string()},
                         {"Q", e.q_forward.to_string()},
                         {"Qrev", e.q_reversed.to_string()}}},
                       {"zero_edges", std::move(edges)}});
  }
  return out;
}

Json gauge_to_json(const Gauge& g, const Kernel& k) {
  if (g.size() != k.size()) throw LengthMismatch("gauge length does not match kernel size");
  Json out = Json::object();
  for (std::size_t i = 0; i < g.size(); ++i) out[k.label(i)] = g[i].to_string();
  return out;
}

Gauge gauge_from_json(const Json& doc, const Kernel& k) {
  if (!doc.is_object() || doc.size() != k.size()) {
    throw LengthMismatch("gauge must assign one value per label");
  }
  std::vector<Scalar> values;
  for (const auto& label : k.labels()) {
    values.push_back(k.field().parse_scalar(scalar_text(member(doc, label.c_str()))));
  }
  return Gauge(std::move(values));
}

Json certificate_to_json(const RecoveryResult& result, const Kernel& k) {
  return Json{{"transposed", result.transposed},
              {"base", result.base_label},
              {"gauge", gauge_to_json(result.gauge, k)},
              {"global_case", to_string(result.global_case)},
              {"verified", result.verification.passed}};
}

Json instance_to_json(const Instance& instance) {
  return Json{{"k", kernel_to_json(instance.k)},
              {"q", kernel_to_json(instance.q)},
              {"truth",
               {{"gauge", gauge_to_json(instance.truth.gauge, instance.k)},
                {"transposed", instance.truth.transposed}}},
              {"seed", instance.seed}};
}

Instance instance_from_json(const Json& doc) {
  try {
    Kernel k = kernel_from_json(member(doc, "k"));
    Kernel q = kernel_from_json(member(doc, "q"));
    const auto& truth = member(doc, "truth");
    Gauge g = gauge_from_json(member(truth, "gauge"), k);
    const bool transposed = member(truth, "transposed").get<bool>();
    const auto seed = doc.contains("seed") ? doc.at("seed").get<std::uint64_t>() : 0;
    return Instance{std::move(k), std::move(q), GroundTruth{std::move(g), transposed}, seed, false};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace detequiv
