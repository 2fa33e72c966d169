// dsl.hpp
// Line-oriented text format for scripting registers, gates, taggant
// measurements and entanglement queries.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eraserlab/scenarios.hpp"
#include "eraserlab/state.hpp"

namespace eraserlab::dsl {

struct InitBits {
    std::string bits;
};
struct InitBell {
    std::size_t i, j;
};
struct InitStateFile {
    std::string path;
};
struct UGate {
    std::size_t target;
    CMatrix matrix;
};
struct Cnot {
    std::size_t control, target;
};
struct MeasureT {
    double theta, phi;
};
enum class ReportKind { ep, ef, ea, epf };
struct Report {
    ReportKind kind;
    double theta = 0.0, phi = 0.0;  // used by ep only
};

struct Instruction {
    std::variant<InitBits, InitBell, InitStateFile, UGate, Cnot, MeasureT, Report> op;
    int line = 0;  // 1-based source line
};

struct Program {
    std::size_t register_size = 0;
    std::optional<PartitionSpec> partition;
    std::vector<Instruction> instructions;

    bool operator==(const Program& other) const;
};

enum class ErrorKind { syntax, semantic };

struct ParseError {
    int line = 0;
    int column = 0;
    std::string message;
    ErrorKind kind = ErrorKind::syntax;
};

struct ParseResult {
    std::optional<Program> program;
    std::optional<ParseError> error;

    bool ok() const { return program.has_value(); }
};

// First error wins; never throws on malformed text.
ParseResult parse(const std::string& source);

// Canonical text form; parse(render(p)) is structurally equal to p.
std::string render(const Program& p);

// Runtime failure during execution, carrying the instruction's source line.
struct ExecError {
    int line;
    std::string message;
};

// One trace step per instruction; report lines annotate the current step.
// Throws ExecError on runtime failures.
ScenarioTrace execute(const Program& p);

}  // namespace eraserlab::dsl
