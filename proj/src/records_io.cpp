#include "xesd/records_io.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace xesd {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    os << format_number(r.tau) << ',' << format_number(r.fidelity) << ',' << format_number(r.concurrence) << ','
       << format_number(r.a) << ',' << format_number(r.b) << ',' << format_number(r.c) << ',' << format_number(r.d)
       << ',' << format_number(r.abs_z) << ',' << format_number(r.abs_w) << '\n';
  }
}

namespace {
nlohmann::ordered_json range_json(const Range& r) {
  return nlohmann::ordered_json{{"min", r.min}, {"max", r.max}, {"steps", r.steps}};
}
}  // namespace

void write_json(std::ostream& os, const std::vector<RunRecord>& records, const RunMetadata& meta) {
  nlohmann::ordered_json doc;
  auto& m = doc["metadata"];
  m["tool"] = "xesd";
  m["version"] = XESD_VERSION;
  m["command"] = meta.command;
  m["channel"] = std::string(to_string(meta.channel.kind));
  m["rate_a"] = meta.channel.rate_a;
  m["rate_b"] = meta.channel.rate_b;
  m["time_unit"] = "tau = reference_rate * t";
  m["reference_rate"] = meta.channel.reference_rate();
  m["family"] = std::string(to_string(meta.family));
  if (meta.fidelity) m["fidelity_grid"] = range_json(*meta.fidelity);
  m["tau_grid"] = range_json(meta.tau);

  auto rows = nlohmann::ordered_json::array();
  for (const RunRecord& r : records) {
    rows.push_back(nlohmann::ordered_json{{"tau", r.tau},
                                          {"fidelity", r.fidelity},
                                          {"concurrence", r.concurrence},
                                          {"a", r.a},
                                          {"b", r.b},
                                          {"c", r.c},
                                          {"d", r.d},
                                          {"abs_z", r.abs_z},
                                          {"abs_w", r.abs_w}});
  }
  doc["records"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

}  // namespace xesd
