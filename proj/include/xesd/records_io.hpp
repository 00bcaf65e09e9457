#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "xesd/experiments.hpp"

namespace xesd {

inline constexpr const char* kCsvHeader = "tau,fidelity,concurrence,a,b,c,d,abs_z,abs_w";

// Run description carried in JSON output.
struct RunMetadata {
  std::string command;
  ChannelSpec channel;
  StateFamily family = StateFamily::WernerPsi;
  std::optional<Range> fidelity;
  Range tau;
};

// 12 significant digits, "%.12g".
std::string format_number(double v);

void write_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_json(std::ostream& os, const std::vector<RunRecord>& records, const RunMetadata& meta);

}  // namespace xesd
