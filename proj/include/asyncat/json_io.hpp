#pragma once

#include <string>

#include "asyncat/trace.hpp"

namespace asyncat {

// Array of {"kind":"state","bindings":{...}} and
// {"kind":"event","tag":...,"name":...,"id":...,"file":...} items.
std::string trace_to_json(const Trace& t, int indent = -1);
Trace trace_from_json(const std::string& text);

}  // namespace asyncat
