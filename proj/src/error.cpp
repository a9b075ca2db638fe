#include "duelbench/error.hpp"

namespace duelbench {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::not_square: return "NotSquare";
    case Errc::bad_diagonal: return "BadDiagonal";
    case Errc::asymmetric_pair: return "AsymmetricPair";
    case Errc::entry_out_of_range: return "EntryOutOfRange";
    case Errc::mean_out_of_range: return "MeanOutOfRange";
    case Errc::arm_out_of_range: return "ArmOutOfRange";
    case Errc::step_out_of_range: return "StepOutOfRange";
    case Errc::too_few_arms: return "TooFewArms";
    case Errc::zero_probability: return "ZeroProbability";
    case Errc::negative_tau: return "NegativeTau";
    case Errc::horizon_too_small: return "HorizonTooSmall";
    case Errc::missing_checkpoint: return "MissingCheckpoint";
    case Errc::grid_mismatch: return "GridMismatch";
    case Errc::config_invalid: return "ConfigInvalid";
    case Errc::arm_count_mismatch: return "ArmCountMismatch";
    case Errc::io_error: return "IoError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace duelbench
