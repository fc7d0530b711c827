#include "seglab/method.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace seglab {

namespace {

struct FamilyEntry {
  Family family;
  std::string_view name;
};

constexpr std::array<FamilyEntry, 11> kFamilies = {{
    {Family::SgdaUs, "SGDA-US"},
    {Family::SgdaRr, "SGDA-RR"},
    {Family::SegUs, "SEG-US"},
    {Family::SegRr, "SEG-RR"},
    {Family::SegFf, "SEG-FF"},
    {Family::SegFfa, "SEG-FFA"},
    {Family::SegRra, "SEG-RRA"},
    {Family::SegUsa, "SEG-USA"},
    {Family::Dseg, "DSEG"},
    {Family::Eg, "EG"},
    {Family::EgPlus, "EG+"},
}};

bool rule_applies(Family family) {
  switch (family) {
    case Family::SegUs:
    case Family::SegRr:
    case Family::SegFf:
    case Family::SegRra:
    case Family::SegUsa:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string_view family_name(Family family) {
  for (const auto& entry : kFamilies) {
    if (entry.family == family) return entry.name;
  }
  throw std::invalid_argument("family_name: unknown family");
}

std::string method_label(const MethodSpec& spec) {
  std::string label(family_name(spec.family));
  if (rule_applies(spec.family) && spec.alpha_rule == AlphaRule::Half) {
    label += ":half";
  }
  if (spec.family == Family::EgPlus && spec.eg_ratio != 1.0) {
    label += ":" + std::to_string(spec.eg_ratio);
  }
  return label;
}

MethodSpec parse_method(std::string_view text) {
  std::string_view base = text;
  std::string_view suffix;
  if (const auto pos = text.find(':'); pos != std::string_view::npos) {
    base = text.substr(0, pos);
    suffix = text.substr(pos + 1);
  }
  MethodSpec spec;
  bool found = false;
  for (const auto& entry : kFamilies) {
    if (entry.name == base) {
      spec.family = entry.family;
      found = true;
      break;
    }
  }
  if (!found) {
    throw std::invalid_argument("parse_method: unknown method '" +
                                std::string(text) + "'");
  }
  if (!suffix.empty()) {
    if (suffix == "half") {
      spec.alpha_rule = AlphaRule::Half;
    } else if (suffix == "equal") {
      spec.alpha_rule = AlphaRule::Equal;
    } else if (spec.family == Family::EgPlus) {
      double ratio = 0.0;
      const auto* end = suffix.data() + suffix.size();
      const auto result = std::from_chars(suffix.data(), end, ratio);
      if (result.ec != std::errc() || result.ptr != end || !(ratio > 0.0)) {
        throw std::invalid_argument("parse_method: bad EG+ ratio '" +
                                    std::string(suffix) + "'");
      }
      spec.eg_ratio = ratio;
    } else {
      throw std::invalid_argument("parse_method: bad suffix '" +
                                  std::string(suffix) + "'");
    }
  }
  if (spec.family == Family::SegFfa) spec.alpha_rule = AlphaRule::Half;
  return spec;
}

int passes_per_epoch(Family family) {
  return (family == Family::SegFf || family == Family::SegFfa) ? 2 : 1;
}

bool is_stochastic(Family family) {
  return family != Family::Eg && family != Family::EgPlus;
}

double alpha_for(const MethodSpec& spec, double beta) {
  if (spec.family == Family::SegFfa) return beta / 2.0;
  return spec.alpha_rule == AlphaRule::Half ? beta / 2.0 : beta;
}

}  // namespace seglab
