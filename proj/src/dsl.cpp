#include "eraserlab/dsl.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "eraserlab/measures.hpp"

namespace eraserlab::dsl {

namespace {

struct Token {
    std::string text;
    int column;  // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size() || line[i] == '#') break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

struct Parser {
    ParseError err;
    bool failed = false;

    void fail(int line, int column, std::string msg, ErrorKind kind) {
        if (failed) return;
        failed = true;
        err = {line, column, std::move(msg), kind};
    }

    bool parse_size(const Token& t, int line, std::size_t& out) {
        std::size_t pos = 0;
        try {
            const long long v = std::stoll(t.text, &pos);
            if (pos != t.text.size() || v < 0) throw std::invalid_argument("");
            out = static_cast<std::size_t>(v);
            return true;
        } catch (...) {
            fail(line, t.column, "expected a nonnegative integer, got `" + t.text + "`",
                 ErrorKind::syntax);
            return false;
        }
    }

    bool parse_float(const Token& t, int line, double& out) {
        std::size_t pos = 0;
        try {
            out = std::stod(t.text, &pos);
            if (pos != t.text.size()) throw std::invalid_argument("");
            return true;
        } catch (...) {
            fail(line, t.column, "expected a number, got `" + t.text + "`", ErrorKind::syntax);
            return false;
        }
    }

    // `key=<float>` with a fixed key.
    bool parse_kv_float(const Token& t, int line, const std::string& key, double& out) {
        const std::string prefix = key + "=";
        if (t.text.rfind(prefix, 0) != 0) {
            fail(line, t.column, "expected `" + key + "=<value>`", ErrorKind::syntax);
            return false;
        }
        Token val{t.text.substr(prefix.size()), t.column + static_cast<int>(prefix.size())};
        return parse_float(val, line, out);
    }

    // `key=<idx,idx,...>`; empty list allowed.
    bool parse_kv_indices(const Token& t, int line, const std::string& key,
                          std::vector<std::size_t>& out) {
        const std::string prefix = key + "=";
        if (t.text.rfind(prefix, 0) != 0) {
            fail(line, t.column, "expected `" + key + "=<indices>`", ErrorKind::syntax);
            return false;
        }
        const std::string body = t.text.substr(prefix.size());
        if (body.empty()) return true;
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t idx = 0;
            if (!parse_size({item, t.column}, line, idx)) return false;
            out.push_back(idx);
        }
        return true;
    }
};

}  // namespace

bool Program::operator==(const Program& other) const {
    if (register_size != other.register_size) return false;
    if (partition.has_value() != other.partition.has_value()) return false;
    if (partition &&
        (partition->a_qubits != other.partition->a_qubits ||
         partition->b_qubits != other.partition->b_qubits ||
         partition->t_qubits != other.partition->t_qubits))
        return false;
    if (instructions.size() != other.instructions.size()) return false;
    for (std::size_t i = 0; i < instructions.size(); ++i) {
        const auto& a = instructions[i].op;
        const auto& b = other.instructions[i].op;
        if (a.index() != b.index()) return false;
        bool same = true;
        std::visit(
            [&](const auto& lhs) {
                using T = std::decay_t<decltype(lhs)>;
                const auto& rhs = std::get<T>(b);
                if constexpr (std::is_same_v<T, InitBits>) {
                    same = lhs.bits == rhs.bits;
                } else if constexpr (std::is_same_v<T, InitBell>) {
                    same = lhs.i == rhs.i && lhs.j == rhs.j;
                } else if constexpr (std::is_same_v<T, InitStateFile>) {
                    same = lhs.path == rhs.path;
                } else if constexpr (std::is_same_v<T, UGate>) {
                    same = lhs.target == rhs.target && lhs.matrix.max_abs_diff(rhs.matrix) < 1e-15;
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    same = lhs.control == rhs.control && lhs.target == rhs.target;
                } else if constexpr (std::is_same_v<T, MeasureT>) {
                    same = lhs.theta == rhs.theta && lhs.phi == rhs.phi;
                } else {
                    same = lhs.kind == rhs.kind && lhs.theta == rhs.theta && lhs.phi == rhs.phi;
                }
            },
            a);
        if (!same) return false;
    }
    return true;
}

ParseResult parse(const std::string& source) {
    Parser p;
    Program prog;
    bool saw_qubits = false;

    std::istringstream in(source);
    std::string raw;
    int lineno = 0;
    while (!p.failed && std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> tok = tokenize(raw);
        if (tok.empty()) continue;
        const std::string& kw = tok[0].text;

        auto need = [&](std::size_t count) {
            if (tok.size() == count + 1) return true;
            p.fail(lineno, tok[0].column,
                   "`" + kw + "` takes " + std::to_string(count) + " argument(s)",
                   ErrorKind::syntax);
            return false;
        };
        auto check_index = [&](std::size_t idx, int column) {
            if (idx < prog.register_size) return true;
            p.fail(lineno, column, "qubit index " + std::to_string(idx) + " out of range",
                   ErrorKind::semantic);
            return false;
        };

        if (!saw_qubits) {
            if (kw != "qubits") {
                p.fail(lineno, tok[0].column, "missing qubits declaration", ErrorKind::syntax);
                break;
            }
            if (!need(1)) break;
            std::size_t n = 0;
            if (!p.parse_size(tok[1], lineno, n)) break;
            if (n == 0 || n > kMaxQubits) {
                p.fail(lineno, tok[1].column, "register size must be in [1, 8]",
                       ErrorKind::semantic);
                break;
            }
            prog.register_size = n;
            saw_qubits = true;
            continue;
        }

        if (kw == "qubits") {
            p.fail(lineno, tok[0].column, "duplicate qubits declaration", ErrorKind::semantic);
        } else if (kw == "partition") {
            if (!need(3)) break;
            PartitionSpec spec;
            if (!p.parse_kv_indices(tok[1], lineno, "A", spec.a_qubits)) break;
            if (!p.parse_kv_indices(tok[2], lineno, "B", spec.b_qubits)) break;
            if (!p.parse_kv_indices(tok[3], lineno, "T", spec.t_qubits)) break;
            if (spec.n_qubits() != prog.register_size) {
                p.fail(lineno, tok[1].column, "partition must cover the register exactly",
                       ErrorKind::semantic);
                break;
            }
            try {
                spec.validate();
            } catch (const std::exception& e) {
                p.fail(lineno, tok[1].column, e.what(), ErrorKind::semantic);
                break;
            }
            prog.partition = std::move(spec);
        } else if (kw == "init") {
            if (tok.size() >= 2 && tok[1].text == "bell") {
                if (!need(3)) break;
                std::size_t i = 0, j = 0;
                if (!p.parse_size(tok[2], lineno, i) || !p.parse_size(tok[3], lineno, j)) break;
                if (!check_index(i, tok[2].column) || !check_index(j, tok[3].column)) break;
                if (i == j) {
                    p.fail(lineno, tok[3].column, "bell qubits must differ", ErrorKind::semantic);
                    break;
                }
                prog.instructions.push_back({InitBell{i, j}, lineno});
            } else if (tok.size() >= 2 && tok[1].text == "state") {
                if (!need(2)) break;
                prog.instructions.push_back({InitStateFile{tok[2].text}, lineno});
            } else {
                if (!need(1)) break;
                const std::string& bits = tok[1].text;
                if (bits.size() != prog.register_size ||
                    bits.find_first_not_of("01") != std::string::npos) {
                    p.fail(lineno, tok[1].column,
                           "expected a bitstring of length " + std::to_string(prog.register_size),
                           ErrorKind::semantic);
                    break;
                }
                prog.instructions.push_back({InitBits{bits}, lineno});
            }
        } else if (kw == "u") {
            if (!need(9)) break;
            std::size_t target = 0;
            if (!p.parse_size(tok[1], lineno, target)) break;
            if (!check_index(target, tok[1].column)) break;
            double v[8];
            bool ok = true;
            for (int k = 0; k < 8 && ok; ++k) ok = p.parse_float(tok[2 + k], lineno, v[k]);
            if (!ok) break;
            CMatrix m(2, 2);
            m(0, 0) = {v[0], v[1]};
            m(0, 1) = {v[2], v[3]};
            m(1, 0) = {v[4], v[5]};
            m(1, 1) = {v[6], v[7]};
            if (!m.is_unitary(1e-9)) {
                p.fail(lineno, tok[2].column, "matrix is not unitary", ErrorKind::semantic);
                break;
            }
            prog.instructions.push_back({UGate{target, std::move(m)}, lineno});
        } else if (kw == "cnot") {
            if (!need(2)) break;
            std::size_t control = 0, target = 0;
            if (!p.parse_size(tok[1], lineno, control) || !p.parse_size(tok[2], lineno, target))
                break;
            if (!check_index(control, tok[1].column) || !check_index(target, tok[2].column)) break;
            if (control == target) {
                p.fail(lineno, tok[2].column, "cnot control and target must differ",
                       ErrorKind::semantic);
                break;
            }
            prog.instructions.push_back({Cnot{control, target}, lineno});
        } else if (kw == "measure") {
            if (!need(4)) break;
            if (tok[1].text != "T" || tok[2].text != "basis") {
                p.fail(lineno, tok[1].column, "expected `measure T basis theta=<f> phi=<f>`",
                       ErrorKind::syntax);
                break;
            }
            double theta = 0.0, phi = 0.0;
            if (!p.parse_kv_float(tok[3], lineno, "theta", theta)) break;
            if (!p.parse_kv_float(tok[4], lineno, "phi", phi)) break;
            if (!prog.partition) {
                p.fail(lineno, tok[0].column, "measure requires a partition declaration",
                       ErrorKind::semantic);
                break;
            }
            if (prog.partition->t_qubits.size() != 1) {
                p.fail(lineno, tok[0].column, "measure T needs a single-qubit taggant",
                       ErrorKind::semantic);
                break;
            }
            prog.instructions.push_back({MeasureT{theta, phi}, lineno});
        } else if (kw == "report") {
            if (tok.size() < 2) {
                p.fail(lineno, tok[0].column, "expected `report ep|ef|ea|epf`", ErrorKind::syntax);
                break;
            }
            Report rep{};
            if (tok[1].text == "ep") {
                if (!need(3)) break;
                rep.kind = ReportKind::ep;
                if (!p.parse_kv_float(tok[2], lineno, "theta", rep.theta)) break;
                if (!p.parse_kv_float(tok[3], lineno, "phi", rep.phi)) break;
            } else if (tok[1].text == "ef" || tok[1].text == "ea" || tok[1].text == "epf") {
                if (!need(1)) break;
                rep.kind = tok[1].text == "ef"   ? ReportKind::ef
                           : tok[1].text == "ea" ? ReportKind::ea
                                                 : ReportKind::epf;
            } else {
                p.fail(lineno, tok[1].column, "unknown report kind `" + tok[1].text + "`",
                       ErrorKind::syntax);
                break;
            }
            if (!prog.partition) {
                p.fail(lineno, tok[0].column, "report requires a partition declaration",
                       ErrorKind::semantic);
                break;
            }
            prog.instructions.push_back({rep, lineno});
        } else {
            p.fail(lineno, tok[0].column, "unknown instruction `" + kw + "`", ErrorKind::syntax);
        }
    }

    if (!p.failed && !saw_qubits) p.fail(1, 1, "missing qubits declaration", ErrorKind::syntax);
    if (p.failed) return {std::nullopt, p.err};
    return {std::move(prog), std::nullopt};
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_indices(const std::vector<std::size_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string render(const Program& p) {
    std::ostringstream out;
    out << "# eraserlab-dsl v1\n";
    out << "qubits " << p.register_size << "\n";
    if (p.partition)
        out << "partition A=" << join_indices(p.partition->a_qubits)
            << " B=" << join_indices(p.partition->b_qubits)
            << " T=" << join_indices(p.partition->t_qubits) << "\n";
    for (const Instruction& ins : p.instructions) {
        std::visit(
            [&](const auto& op) {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_same_v<T, InitBits>) {
                    out << "init " << op.bits << "\n";
                } else if constexpr (std::is_same_v<T, InitBell>) {
                    out << "init bell " << op.i << " " << op.j << "\n";
                } else if constexpr (std::is_same_v<T, InitStateFile>) {
                    out << "init state " << op.path << "\n";
                } else if constexpr (std::is_same_v<T, UGate>) {
                    out << "u " << op.target;
                    for (std::size_t r = 0; r < 2; ++r)
                        for (std::size_t c = 0; c < 2; ++c)
                            out << " " << fmt(op.matrix(r, c).real()) << " "
                                << fmt(op.matrix(r, c).imag());
                    out << "\n";
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    out << "cnot " << op.control << " " << op.target << "\n";
                } else if constexpr (std::is_same_v<T, MeasureT>) {
                    out << "measure T basis theta=" << fmt(op.theta) << " phi=" << fmt(op.phi)
                        << "\n";
                } else {
                    switch (op.kind) {
                        case ReportKind::ep:
                            out << "report ep theta=" << fmt(op.theta) << " phi=" << fmt(op.phi)
                                << "\n";
                            break;
                        case ReportKind::ef: out << "report ef\n"; break;
                        case ReportKind::ea: out << "report ea\n"; break;
                        case ReportKind::epf: out << "report epf\n"; break;
                    }
                }
            },
            ins.op);
    }
    return out.str();
}

ScenarioTrace execute(const Program& p) {
    struct Branch {
        double weight;
        StateVector state;
    };
    std::vector<Branch> ensemble = {{1.0, StateVector::basis(p.register_size, 0)}};
    const PartitionSpec cut = p.partition.value_or(PartitionSpec{});

    ScenarioTrace trace;
    trace.partition = cut;

    auto averaged = [&](auto&& f) {
        double total = 0.0;
        for (const Branch& br : ensemble) total += br.weight * f(br.state);
        return total;
    };

    for (const Instruction& ins : p.instructions) {
        try {
            std::visit(
                [&](const auto& op) {
                    using T = std::decay_t<decltype(op)>;
                    if constexpr (std::is_same_v<T, InitBits>) {
                        std::size_t idx = 0;
                        for (char c : op.bits) idx = (idx << 1) | std::size_t(c == '1');
                        ensemble = {{1.0, StateVector::basis(p.register_size, idx)}};
                        trace.steps.push_back({"init", ensemble[0].state});
                    } else if constexpr (std::is_same_v<T, InitBell>) {
                        const std::size_t n = p.register_size;
                        std::vector<cdouble> amps(std::size_t{1} << n);
                        const double r = 1.0 / std::sqrt(2.0);
                        amps[0] = r;
                        amps[(std::size_t{1} << (n - 1 - op.i)) |
                             (std::size_t{1} << (n - 1 - op.j))] = r;
                        ensemble = {{1.0, StateVector(n, std::move(amps))}};
                        trace.steps.push_back({"init bell", ensemble[0].state});
                    } else if constexpr (std::is_same_v<T, InitStateFile>) {
                        StateVector s = load_state(op.path);
                        if (s.n_qubits() != p.register_size)
                            throw std::runtime_error("state file register size mismatch");
                        ensemble = {{1.0, std::move(s)}};
                        trace.steps.push_back({"init state", ensemble[0].state});
                    } else if constexpr (std::is_same_v<T, UGate>) {
                        for (Branch& br : ensemble)
                            br.state = apply_gate(br.state, Gate::single(op.matrix, op.target));
                        trace.steps.push_back({"u", ensemble[0].state});
                    } else if constexpr (std::is_same_v<T, Cnot>) {
                        for (Branch& br : ensemble)
                            br.state = apply_gate(br.state, Gate::cnot(op.control, op.target));
                        trace.steps.push_back({"cnot", ensemble[0].state});
                    } else if constexpr (std::is_same_v<T, MeasureT>) {
                        MeasurementSpec spec{cut.t_qubits,
                                             taggant_basis({op.theta, op.phi})};
                        std::vector<Branch> next;
                        for (const Branch& br : ensemble) {
                            const MeasurementResult mr = measure(br.state, spec);
                            for (const MeasurementOutcome& out : mr.outcomes)
                                if (out.post_state && out.probability > 0.0)
                                    next.push_back({br.weight * out.probability, *out.post_state});
                        }
                        trace.steps.push_back({"measure T", ensemble[0].state});
                        ensemble = std::move(next);
                    } else {
                        if (trace.steps.empty())
                            trace.steps.push_back({"report", ensemble[0].state});
                        ScenarioStep& step = trace.steps.back();
                        switch (op.kind) {
                            case ReportKind::ep: {
                                const TaggantBasis basis = taggant_basis({op.theta, op.phi});
                                step.e_pf = averaged([&](const StateVector& s) {
                                    return entanglement_of_projection(s, cut, basis).value;
                                });
                                break;
                            }
                            case ReportKind::ef:
                                step.e_f = averaged([&](const StateVector& s) {
                                    return entanglement_of_formation(s, cut).value;
                                });
                                break;
                            case ReportKind::ea:
                                step.e_a = averaged([&](const StateVector& s) {
                                    return entanglement_of_assistance(s, cut).value;
                                });
                                break;
                            case ReportKind::epf:
                                step.e_pf = averaged([&](const StateVector& s) {
                                    return entanglement_of_formation(s, cut).value;
                                });
                                break;
                        }
                    }
                },
                ins.op);
        } catch (const ExecError&) {
            throw;
        } catch (const std::exception& e) {
            throw ExecError{ins.line, e.what()};
        }
    }
    return trace;
}

}  // namespace eraserlab::dsl
