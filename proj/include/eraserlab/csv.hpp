// csv.hpp
// Fixed CSV schema for scenario traces: header `step,label,e_pf,e_f,e_a`,
// floats with 9 significant digits, `\n` line endings.

#pragma once

#include <string>

#include "eraserlab/scenarios.hpp"

namespace eraserlab {

std::string format_float(double v);  // %.9g
std::string trace_to_csv(const ScenarioTrace& trace);

}  // namespace eraserlab
