#include "cam/value.hpp"

#include <sstream>

namespace cam {

std::string Value::to_string() const {
    if (is_int()) return std::to_string(as_int());
    if (is_bool()) return as_bool() ? "true" : "false";
    std::ostringstream out;
    out << '[';
    const auto& elems = as_array();
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i > 0) out << ", ";
        out << elems[i];
    }
    out << ']';
    return out.str();
}

} // namespace cam
