#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fracdom/expr.hpp"

namespace fracdom::vm {

enum class OpCode : std::uint8_t {
    PushConst,
    LoadZ,
    LoadC,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    PowInt,
    PowReal,
    PowGeneral,
    Sin,
    Cos,
    Tan,
    Cotan,
    Exp,
    Log,
    Sqrt,
};

struct Instruction {
    OpCode op;
    Complex constant{};     // PushConst
    int int_exponent = 0;   // PowInt
    double real_exponent = 0.0;  // PowReal

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

// Linear stack bytecode. Immutable once built; share freely across threads.
class Program {
public:
    Program(std::vector<Instruction> code, expr::Expr source);

    std::span<const Instruction> instructions() const noexcept { return code_; }
    std::size_t max_stack_depth() const noexcept { return max_depth_; }
    const expr::Expr& source() const noexcept { return source_; }

private:
    std::vector<Instruction> code_;
    std::size_t max_depth_ = 0;
    expr::Expr source_;
};

struct CompileOptions {
    // Collapse variable-free subtrees into PushConst.
    bool fold_constants = true;
};

Program compile(const expr::Expr& e, CompileOptions options = {});

// Runs a program using `stack` as scratch; it must hold max_stack_depth() values.
Complex execute(const Program& program, Complex z, Complex c, std::span<Complex> stack) noexcept;

// Convenience overload with its own scratch space.
Complex execute(const Program& program, Complex z, Complex c);

// Per-thread evaluator that owns a stack sized for the program.
class Executor {
public:
    explicit Executor(const Program& program)
        : program_(&program), stack_(program.max_stack_depth())
    {
    }

    Complex operator()(Complex z, Complex c) noexcept { return execute(*program_, z, c, stack_); }

private:
    const Program* program_;
    std::vector<Complex> stack_;
};

// One instruction per line: "PUSH 3+0i", "LOADZ", "POWI 2", ...
std::string disassemble(const Program& program);
std::string to_string(const Instruction& ins);

}  // namespace fracdom::vm
