// Copyright 2026 The hexroute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hexroute/qasm.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

namespace hexroute {

QasmError::QasmError(const std::string &message, size_t line, size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line(line),
      column(column) {
}

namespace {

enum class Tok { Ident, Number, String, Symbol, Arrow, End };

struct Token {
    Tok type;
    std::string text;
    size_t line;
    size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    size_t line = 1;
    size_t column = 1;
    size_t k = 0;
    auto advance = [&](size_t count) {
        for (size_t i = 0; i < count; i++) {
            if (text[k] == '\n') {
                line++;
                column = 1;
            } else {
                column++;
            }
            k++;
        }
    };
    while (k < text.size()) {
        char c = text[k];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && k + 1 < text.size() && text[k + 1] == '/') {
            while (k < text.size() && text[k] != '\n') {
                advance(1);
            }
            continue;
        }
        size_t start_line = line;
        size_t start_column = column;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t e = k;
            while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) || text[e] == '_')) {
                e++;
            }
            out.push_back({Tok::Ident, std::string(text.substr(k, e - k)), start_line, start_column});
            advance(e - k);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && k + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[k + 1])))) {
            size_t e = k;
            while (e < text.size() && (std::isdigit(static_cast<unsigned char>(text[e])) || text[e] == '.')) {
                e++;
            }
            if (e < text.size() && (text[e] == 'e' || text[e] == 'E')) {
                size_t f = e + 1;
                if (f < text.size() && (text[f] == '+' || text[f] == '-')) {
                    f++;
                }
                if (f < text.size() && std::isdigit(static_cast<unsigned char>(text[f]))) {
                    while (f < text.size() && std::isdigit(static_cast<unsigned char>(text[f]))) {
                        f++;
                    }
                    e = f;
                }
            }
            out.push_back({Tok::Number, std::string(text.substr(k, e - k)), start_line, start_column});
            advance(e - k);
            continue;
        }
        if (c == '"') {
            size_t e = k + 1;
            while (e < text.size() && text[e] != '"' && text[e] != '\n') {
                e++;
            }
            if (e >= text.size() || text[e] != '"') {
                throw QasmError("unterminated string literal", start_line, start_column);
            }
            out.push_back({Tok::String, std::string(text.substr(k + 1, e - k - 1)), start_line, start_column});
            advance(e + 1 - k);
            continue;
        }
        if (c == '-' && k + 1 < text.size() && text[k + 1] == '>') {
            out.push_back({Tok::Arrow, "->", start_line, start_column});
            advance(2);
            continue;
        }
        if (std::string_view("[](){};,+-*/").find(c) != std::string_view::npos) {
            out.push_back({Tok::Symbol, std::string(1, c), start_line, start_column});
            advance(1);
            continue;
        }
        throw QasmError(std::string("unexpected character '") + c + "'", start_line, start_column);
    }
    out.push_back({Tok::End, "", line, column});
    return out;
}

const std::map<std::string, GateKind, std::less<>> &gate_table() {
    static const std::map<std::string, GateKind, std::less<>> table{
        {"h", GateKind::H},     {"x", GateKind::X},     {"y", GateKind::Y},       {"z", GateKind::Z},
        {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},       {"tdg", GateKind::Tdg},
        {"rx", GateKind::RX},   {"ry", GateKind::RY},   {"rz", GateKind::RZ},     {"u3", GateKind::U3},
        {"cx", GateKind::CNOT}, {"CX", GateKind::CNOT}, {"cz", GateKind::CZ},     {"swap", GateKind::SWAP},
    };
    return table;
}

struct Register {
    std::string name;
    size_t size = 0;
};

/// Operand reference: a whole register or one element of it.
struct Operand {
    bool is_quantum;
    std::optional<size_t> index;
    const Token *where;
};

class Parser {
   public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    }

    QuantumCircuit parse() {
        parse_header();
        std::vector<Gate> gates;
        while (peek().type != Tok::End) {
            parse_statement(gates);
        }
        if (!qreg_) {
            throw error_at(peek(), "program declares no quantum register");
        }
        return QuantumCircuit(qreg_->size, std::move(gates), creg_ ? creg_->size : 0);
    }

   private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    std::optional<Register> qreg_;
    std::optional<Register> creg_;

    const Token &peek() const {
        return tokens_[pos_];
    }
    const Token &next() {
        const Token &t = tokens_[pos_];
        if (t.type != Tok::End) {
            pos_++;
        }
        return t;
    }
    static QasmError error_at(const Token &t, const std::string &message) {
        return QasmError(message, t.line, t.column);
    }
    bool at_symbol(char c) const {
        return peek().type == Tok::Symbol && peek().text[0] == c;
    }
    const Token &expect_symbol(char c) {
        if (!at_symbol(c)) {
            throw error_at(peek(), std::string("expected '") + c + "'" + describe(peek()));
        }
        return next();
    }
    const Token &expect(Tok type, const char *what) {
        if (peek().type != type) {
            throw error_at(peek(), std::string("expected ") + what + describe(peek()));
        }
        return next();
    }
    static std::string describe(const Token &t) {
        if (t.type == Tok::End) {
            return " but reached end of input";
        }
        return " but found '" + t.text + "'";
    }

    size_t parse_size(const char *what) {
        const Token &t = expect(Tok::Number, what);
        size_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
            throw error_at(t, std::string("expected non-negative integer for ") + what);
        }
        return value;
    }

    void parse_header() {
        const Token &kw = peek();
        if (kw.type != Tok::Ident || kw.text != "OPENQASM") {
            throw error_at(kw, "program must start with 'OPENQASM 2.0;'");
        }
        next();
        const Token &version = expect(Tok::Number, "version number");
        if (version.text != "2.0") {
            throw error_at(version, "unsupported OpenQASM version '" + version.text + "'");
        }
        expect_symbol(';');
    }

    void parse_statement(std::vector<Gate> &gates) {
        const Token &head = peek();
        if (head.type != Tok::Ident) {
            throw error_at(head, "expected a statement" + describe(head));
        }
        if (head.text == "include") {
            next();
            expect(Tok::String, "include file name");
            expect_symbol(';');
            return;
        }
        if (head.text == "qreg" || head.text == "creg") {
            parse_register(head.text == "qreg");
            return;
        }
        if (head.text == "gate" || head.text == "opaque" || head.text == "if" || head.text == "reset") {
            throw error_at(head, "'" + head.text + "' is not supported");
        }
        if (head.text == "measure") {
            next();
            parse_measure(gates);
            return;
        }
        if (head.text == "barrier") {
            next();
            parse_barrier(gates);
            return;
        }
        auto it = gate_table().find(head.text);
        if (it == gate_table().end()) {
            throw error_at(head, "unknown gate '" + head.text + "'");
        }
        next();
        parse_gate(it->second, head, gates);
    }

    void parse_register(bool quantum) {
        const Token &kw = next();
        const Token &name = expect(Tok::Ident, "register name");
        expect_symbol('[');
        size_t size = parse_size("register size");
        expect_symbol(']');
        expect_symbol(';');
        auto &slot = quantum ? qreg_ : creg_;
        if (slot) {
            throw error_at(kw, std::string("only one ") + (quantum ? "quantum" : "classical") + " register is supported");
        }
        if (size == 0) {
            throw error_at(name, "register '" + name.text + "' must have positive size");
        }
        if ((quantum && creg_ && creg_->name == name.text) || (!quantum && qreg_ && qreg_->name == name.text)) {
            throw error_at(name, "register '" + name.text + "' already declared");
        }
        slot = Register{name.text, size};
    }

    Operand parse_operand() {
        const Token &name = expect(Tok::Ident, "register operand");
        Operand op{false, std::nullopt, &name};
        const Register *reg = nullptr;
        if (qreg_ && qreg_->name == name.text) {
            op.is_quantum = true;
            reg = &*qreg_;
        } else if (creg_ && creg_->name == name.text) {
            reg = &*creg_;
        } else {
            throw error_at(name, "undeclared register '" + name.text + "'");
        }
        if (at_symbol('[')) {
            next();
            const Token &idx_tok = peek();
            size_t idx = parse_size("register index");
            expect_symbol(']');
            if (idx >= reg->size) {
                throw error_at(idx_tok,
                               "index " + std::to_string(idx) + " out of range for register '" + reg->name + "' of size " +
                                   std::to_string(reg->size));
            }
            op.index = idx;
        }
        return op;
    }

    Operand parse_qubit_operand() {
        Operand op = parse_operand();
        if (!op.is_quantum) {
            throw error_at(*op.where, "expected a quantum register operand");
        }
        return op;
    }

    void parse_measure(std::vector<Gate> &gates) {
        Operand q = parse_qubit_operand();
        if (peek().type != Tok::Arrow) {
            throw error_at(peek(), "expected '->'" + describe(peek()));
        }
        next();
        Operand c = parse_operand();
        if (c.is_quantum) {
            throw error_at(*c.where, "measure target must be a classical register");
        }
        expect_symbol(';');
        if (q.index.has_value() != c.index.has_value()) {
            throw error_at(*q.where, "measure operands must both be indexed or both be whole registers");
        }
        if (q.index) {
            gates.push_back(Gate::measure(*q.index, *c.index));
            return;
        }
        if (qreg_->size != creg_->size) {
            throw error_at(*q.where, "register sizes differ in whole-register measure");
        }
        for (size_t k = 0; k < qreg_->size; k++) {
            gates.push_back(Gate::measure(k, k));
        }
    }

    void parse_barrier(std::vector<Gate> &gates) {
        std::vector<Qubit> qubits;
        while (true) {
            Operand q = parse_qubit_operand();
            if (q.index) {
                qubits.push_back(*q.index);
            } else {
                for (size_t k = 0; k < qreg_->size; k++) {
                    qubits.push_back(k);
                }
            }
            if (!at_symbol(',')) {
                break;
            }
            next();
        }
        const Token &end = expect_symbol(';');
        try {
            gates.push_back(Gate::barrier(std::move(qubits)));
        } catch (const std::invalid_argument &ex) {
            throw error_at(end, ex.what());
        }
    }

    void parse_gate(GateKind kind, const Token &head, std::vector<Gate> &gates) {
        std::vector<double> params;
        if (at_symbol('(')) {
            next();
            if (!at_symbol(')')) {
                params.push_back(parse_expression());
                while (at_symbol(',')) {
                    next();
                    params.push_back(parse_expression());
                }
            }
            expect_symbol(')');
        }
        if (params.size() != gate_param_count(kind)) {
            throw error_at(head,
                           "gate '" + head.text + "' takes " + std::to_string(gate_param_count(kind)) + " parameter(s), got " +
                               std::to_string(params.size()));
        }
        std::vector<Operand> operands{parse_qubit_operand()};
        while (at_symbol(',')) {
            next();
            operands.push_back(parse_qubit_operand());
        }
        expect_symbol(';');
        size_t arity = gate_qubit_count(kind);
        if (operands.size() != arity) {
            throw error_at(head,
                           "gate '" + head.text + "' takes " + std::to_string(arity) + " qubit(s), got " +
                               std::to_string(operands.size()));
        }
        if (arity == 1 && !operands[0].index) {
            for (size_t k = 0; k < qreg_->size; k++) {
                gates.emplace_back(kind, std::vector<Qubit>{static_cast<Qubit>(k)}, params);
            }
            return;
        }
        std::vector<Qubit> qubits;
        for (const auto &op : operands) {
            if (!op.index) {
                throw error_at(*op.where, "whole-register operands are only supported for single-qubit gates");
            }
            qubits.push_back(static_cast<Qubit>(*op.index));
        }
        try {
            gates.emplace_back(kind, std::move(qubits), std::move(params));
        } catch (const std::invalid_argument &ex) {
            throw error_at(head, ex.what());
        }
    }

    // expression := term (('+'|'-') term)*
    double parse_expression() {
        double value = parse_term();
        while (at_symbol('+') || at_symbol('-')) {
            char op = next().text[0];
            double rhs = parse_term();
            value = op == '+' ? value + rhs : value - rhs;
        }
        return value;
    }

    // term := unary (('*'|'/') unary)*
    double parse_term() {
        double value = parse_unary();
        while (at_symbol('*') || at_symbol('/')) {
            char op = next().text[0];
            double rhs = parse_unary();
            value = op == '*' ? value * rhs : value / rhs;
        }
        return value;
    }

    double parse_unary() {
        if (at_symbol('-')) {
            next();
            return -parse_unary();
        }
        if (at_symbol('+')) {
            next();
            return parse_unary();
        }
        return parse_primary();
    }

    double parse_primary() {
        const Token &t = peek();
        if (t.type == Tok::Number) {
            next();
            double value = 0;
            auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
                throw error_at(t, "malformed number '" + t.text + "'");
            }
            return value;
        }
        if (t.type == Tok::Ident && t.text == "pi") {
            next();
            return std::numbers::pi;
        }
        if (at_symbol('(')) {
            next();
            double value = parse_expression();
            expect_symbol(')');
            return value;
        }
        throw error_at(t, "malformed parameter expression" + describe(t));
    }
};

}  // namespace

QuantumCircuit parse_qasm(std::string_view text) {
    return Parser(tokenize(text)).parse();
}

std::string emit_qasm(const QuantumCircuit &circuit) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    out += "qreg q[" + std::to_string(circuit.num_qubits()) + "];\n";
    if (circuit.num_clbits() > 0) {
        out += "creg c[" + std::to_string(circuit.num_clbits()) + "];\n";
    }
    char buf[64];
    for (const auto &g : circuit) {
        if (g.kind == GateKind::MEASURE) {
            out += "measure q[" + std::to_string(g.qubits[0]) + "] -> c[" + std::to_string(*g.clbit) + "];\n";
            continue;
        }
        out += gate_name(g.kind);
        if (!g.params.empty()) {
            out += '(';
            for (size_t k = 0; k < g.params.size(); k++) {
                std::snprintf(buf, sizeof(buf), "%.17g", g.params[k]);
                if (k) {
                    out += ',';
                }
                out += buf;
            }
            out += ')';
        }
        for (size_t k = 0; k < g.qubits.size(); k++) {
            out += k ? "," : " ";
            out += "q[" + std::to_string(g.qubits[k]) + "]";
        }
        out += ";\n";
    }
    return out;
}

}  // namespace hexroute
