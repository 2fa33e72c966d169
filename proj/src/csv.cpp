#include "eraserlab/csv.hpp"

#include <cstdio>
#include <sstream>

namespace eraserlab {

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string trace_to_csv(const ScenarioTrace& trace) {
    std::ostringstream out;
    out << "step,label,e_pf,e_f,e_a\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const ScenarioStep& s = trace.steps[i];
        out << i << "," << s.label << "," << format_float(s.e_pf) << "," << format_float(s.e_f)
            << "," << format_float(s.e_a) << "\n";
    }
    return out.str();
}

}  // namespace eraserlab
