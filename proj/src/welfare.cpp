#include "tfair/welfare.hpp"

#include <charconv>
#include <sstream>

#include "tfair/number_format.hpp"

namespace tfair {

namespace {

std::vector<double> parse_weights(std::string_view text) {
  std::vector<double> weights;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ValidationError("welfare: bad gini weight '" + std::string(token) + "'");
    }
    weights.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return weights;
}

}  // namespace

WelfareSpec WelfareSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  const auto name = text.substr(0, colon);
  const auto args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  WelfareSpec spec;
  if (name == "utilitarian" || name == "sum") {
    spec = utilitarian();
  } else if (name == "egalitarian" || name == "mmf" || name == "maximin") {
    spec = egalitarian();
  } else if (name == "nash") {
    spec = nash();
    if (!args.empty()) {
      const auto w = parse_weights(args);
      if (w.size() != 1) throw ValidationError("welfare: nash takes a single offset");
      spec.nash_offset = w.front();
    }
  } else if (name == "gini" || name == "generalized_gini") {
    if (args.empty()) throw ValidationError("welfare: gini needs weights, e.g. gini:0.7,0.3");
    spec = gini(parse_weights(args));
  } else {
    throw ValidationError("welfare: unknown welfare '" + std::string(name) + "'");
  }
  if (spec.kind != WelfareKind::nash && spec.kind != WelfareKind::generalized_gini && !args.empty()) {
    throw ValidationError("welfare: '" + std::string(name) + "' takes no arguments");
  }
  spec.validate();
  return spec;
}

void WelfareSpec::validate(std::size_t n_agents) const {
  if (kind != WelfareKind::generalized_gini) {
    if (!gini_weights.empty()) throw ValidationError("welfare: gini weights given for non-gini welfare");
  } else {
    if (gini_weights.empty()) throw ValidationError("welfare: generalized_gini requires weights");
    bool any_positive = false;
    for (std::size_t i = 0; i < gini_weights.size(); ++i) {
      if (!(gini_weights[i] >= 0)) throw ValidationError("welfare: negative or NaN gini weight");
      if (i > 0 && gini_weights[i] > gini_weights[i - 1]) {
        throw ValidationError("welfare: gini weights must be nonincreasing");
      }
      any_positive = any_positive || gini_weights[i] > 0;
    }
    if (!any_positive) throw ValidationError("welfare: at least one gini weight must be positive");
    if (n_agents > 0 && gini_weights.size() != n_agents) {
      throw ValidationError("welfare: " + std::to_string(gini_weights.size()) +
                            " gini weights for " + std::to_string(n_agents) + " agents");
    }
  }
  if (!(nash_offset >= 0)) throw ValidationError("welfare: nash offset must be >= 0");
}

std::string WelfareSpec::label() const {
  switch (kind) {
    case WelfareKind::utilitarian:
      return "utilitarian";
    case WelfareKind::egalitarian:
      return "mmf";
    case WelfareKind::nash:
      return nash_offset == 0.0 ? "nash" : "nash:" + format_number(nash_offset);
    case WelfareKind::generalized_gini: {
      std::string out = "gini:";
      for (std::size_t i = 0; i < gini_weights.size(); ++i) {
        if (i > 0) out += ',';
        out += format_number(gini_weights[i]);
      }
      return out;
    }
  }
  return "unknown";
}

}  // namespace tfair
