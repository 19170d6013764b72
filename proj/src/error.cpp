#include "equivix/error.hpp"

namespace equivix {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidDimension: return "invalid-dimension";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::Precondition: return "precondition";
    case ErrorCode::IllConditioned: return "ill-conditioned";
    case ErrorCode::WrongMethod: return "wrong-method";
    case ErrorCode::UnsupportedShape: return "unsupported-shape";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::QuadratureFailure: return "quadrature-failure";
    case ErrorCode::NumericFailure: return "numeric-failure";
    case ErrorCode::NotIdempotent: return "not-idempotent";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace equivix
