#ifndef SEGLAB_METHOD_HPP
#define SEGLAB_METHOD_HPP

#include <string>
#include <string_view>

namespace seglab {

enum class Family {
  SgdaUs,
  SgdaRr,
  SegUs,
  SegRr,
  SegFf,
  SegFfa,
  SegRra,
  SegUsa,
  Dseg,
  Eg,
  EgPlus,
};

/// Coupling between extrapolation and update stepsizes: alpha = beta (Equal)
/// or alpha = beta / 2 (Half). SEG-FFA always uses Half; DSEG and the
/// deterministic methods ignore it.
enum class AlphaRule { Equal, Half };

struct MethodSpec {
  Family family = Family::SegFfa;
  AlphaRule alpha_rule = AlphaRule::Equal;
  double eg_ratio = 1.0;  // eta2 / eta1, EG+ only
};

std::string_view family_name(Family family);

/// "SEG-RR", "SEG-RR:half", "EG+:2" and so on; stable, parseable back.
std::string method_label(const MethodSpec& spec);

/// Parses family names with an optional ":half" / ":equal" suffix (or a
/// ratio suffix for "EG+"). Throws std::invalid_argument on unknown input.
MethodSpec parse_method(std::string_view text);

/// 2 for the flip-flop methods (two data passes per epoch), 1 otherwise.
int passes_per_epoch(Family family);

bool is_stochastic(Family family);

/// The extrapolation stepsize implied by the update stepsize. SEG-FFA forces
/// the Half rule regardless of the spec.
double alpha_for(const MethodSpec& spec, double beta);

}  // namespace seglab

#endif  // SEGLAB_METHOD_HPP
