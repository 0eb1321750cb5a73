#include "qdi/dual_rail.hpp"

namespace qdi {

std::string_view to_string(DualRailValue v) {
  switch (v) {
    case DualRailValue::Data0: return "DATA0";
    case DualRailValue::Data1: return "DATA1";
    case DualRailValue::Spacer: return "SPACER";
    case DualRailValue::Illegal: return "ILLEGAL";
  }
  return "?";
}

}  // namespace qdi
