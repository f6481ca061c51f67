#include <ostream>

#include "tfair/number_format.hpp"
#include "tfair/simulator.hpp"

namespace tfair {

namespace {

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<EpisodeTrace>& traces) {
  out << "t,config,agent,step_utility,cumulative_utility,perceived_Z,welfare,allocation\n";
  for (const auto& trace : traces) {
    const auto label = csv_field(trace.label);
    for (const auto& rec : trace.records) {
      const auto allocation = csv_field(rec.allocation.to_string());
      const auto welfare = format_number(rec.welfare);
      for (std::size_t k = 0; k < trace.agents.size(); ++k) {
        if (!rec.tracked[k]) continue;
        const auto i = static_cast<Eigen::Index>(k);
        out << rec.t << ',' << label << ',' << csv_field(trace.agents[k]) << ','
            << format_number(rec.step[i]) << ',' << format_number(rec.cumulative[i]) << ','
            << format_number(rec.perceived[i]) << ',' << welfare << ',' << allocation << '\n';
      }
    }
  }
}

}  // namespace tfair
