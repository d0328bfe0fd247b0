#include "cylg/version.hpp"

namespace cylg {

const char* version_string() { return "1.0.0"; }

}  // namespace cylg
