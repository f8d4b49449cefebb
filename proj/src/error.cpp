#include "tbo/error.hpp"

namespace tbo {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::RankMismatch: return "RankMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidDatum: return "InvalidDatum";
    case ErrorKind::NotMinimal: return "NotMinimal";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::SameChamber: return "SameChamber";
    case ErrorKind::NotCrepant: return "NotCrepant";
    case ErrorKind::NonpositiveL: return "NonpositiveL";
    case ErrorKind::BaseNotMonomial: return "BaseNotMonomial";
    case ErrorKind::DenominatorNotDividingL: return "DenominatorNotDividingL";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::DivisionByZeroAtSpecialization: return "DivisionByZeroAtSpecialization";
    case ErrorKind::CharacterMismatch: return "CharacterMismatch";
    case ErrorKind::MissingGlobalExpression: return "MissingGlobalExpression";
    case ErrorKind::SingularAfterResampling: return "SingularAfterResampling";
    case ErrorKind::SaturationFailure: return "SaturationFailure";
    case ErrorKind::EulerClassVanishes: return "EulerClassVanishes";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tbo
