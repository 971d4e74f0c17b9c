#include "eqw/core.hpp"

namespace eqw {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ZeroF0: return "ZeroF0";
    case ErrorKind::KernelGap: return "KernelGap";
    case ErrorKind::ZeroG0: return "ZeroG0";
    case ErrorKind::DegenerateInterval: return "DegenerateInterval";
    case ErrorKind::EvenN: return "EvenN";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::RadiusExceeded: return "RadiusExceeded";
    case ErrorKind::ZeroBaseNonpositive: return "ZeroBaseNonpositive";
    case ErrorKind::RealOnlyKernel: return "RealOnlyKernel";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ConditioningError: return "ConditioningError";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::Unsolvable: return "Unsolvable";
  }
  return "Unknown";
}

bool is_numerical(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::ConditioningError:
    case ErrorKind::IllConditioned:
    case ErrorKind::Unsolvable:
      return true;
    default:
      return false;
  }
}

}  // namespace eqw
