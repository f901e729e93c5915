#include <charconv>
#include <stdexcept>

#include "fracdom/vm.hpp"

namespace fracdom::vm {

using expr::Expr;
using expr::Function;
using expr::Kind;

namespace {

OpCode opcode_for(Function f)
{
    switch (f) {
    case Function::Sin: return OpCode::Sin;
    case Function::Cos: return OpCode::Cos;
    case Function::Tan: return OpCode::Tan;
    case Function::Cotan: return OpCode::Cotan;
    case Function::Exp: return OpCode::Exp;
    case Function::Log: return OpCode::Log;
    case Function::Sqrt: return OpCode::Sqrt;
    }
    throw std::logic_error("unknown function");
}

int stack_effect(OpCode op)
{
    switch (op) {
    case OpCode::PushConst:
    case OpCode::LoadZ:
    case OpCode::LoadC:
        return 1;
    case OpCode::Add:
    case OpCode::Sub:
    case OpCode::Mul:
    case OpCode::Div:
    case OpCode::PowGeneral:
        return -1;
    default:
        return 0;
    }
}

class Lowering {
public:
    explicit Lowering(CompileOptions options) : options_(options) {}

    void lower(const Expr& e)
    {
        if (options_.fold_constants && e.kind() != Kind::Const && !e.depends_on_variables()) {
            push_const(expr::eval(e, 0.0, 0.0));
            return;
        }
        switch (e.kind()) {
        case Kind::Const:
            push_const(e.value());
            return;
        case Kind::VarZ:
            code.push_back({OpCode::LoadZ});
            return;
        case Kind::VarC:
            code.push_back({OpCode::LoadC});
            return;
        case Kind::Neg:
            lower(e.lhs());
            code.push_back({OpCode::Neg});
            return;
        case Kind::Call:
            lower(e.lhs());
            code.push_back({opcode_for(e.function())});
            return;
        case Kind::Pow:
            lower_pow(e);
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
            lower(e.lhs());
            lower(e.rhs());
            code.push_back({e.kind() == Kind::Add   ? OpCode::Add
                            : e.kind() == Kind::Sub ? OpCode::Sub
                            : e.kind() == Kind::Mul ? OpCode::Mul
                                                    : OpCode::Div});
            return;
        }
    }

    std::vector<Instruction> code;

private:
    void push_const(Complex v)
    {
        Instruction ins{OpCode::PushConst};
        ins.constant = v;
        code.push_back(ins);
    }

    void lower_pow(const Expr& e)
    {
        const Expr& exponent = e.rhs();
        const bool constant_exponent = options_.fold_constants ? !exponent.depends_on_variables()
                                                               : exponent.kind() == Kind::Const;
        lower(e.lhs());
        if (constant_exponent) {
            const Complex w = expr::eval(exponent, 0.0, 0.0);
            int n = 0;
            if (as_small_integer(w, n)) {
                Instruction ins{OpCode::PowInt};
                ins.int_exponent = n;
                code.push_back(ins);
                return;
            }
            if (w.imag() == 0.0) {
                Instruction ins{OpCode::PowReal};
                ins.real_exponent = w.real();
                code.push_back(ins);
                return;
            }
        }
        lower(exponent);
        code.push_back({OpCode::PowGeneral});
    }

    CompileOptions options_;
};

std::string number_text(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace

Program::Program(std::vector<Instruction> code, expr::Expr source)
    : code_(std::move(code)), source_(std::move(source))
{
    long depth = 0;
    long max_depth = 0;
    for (const auto& ins : code_) {
        if (ins.op == OpCode::Add || ins.op == OpCode::Sub || ins.op == OpCode::Mul ||
            ins.op == OpCode::Div || ins.op == OpCode::PowGeneral) {
            if (depth < 2) {
                throw std::invalid_argument("Program: binary instruction on a short stack");
            }
        } else if (stack_effect(ins.op) == 0 && depth < 1) {
            throw std::invalid_argument("Program: unary instruction on an empty stack");
        }
        depth += stack_effect(ins.op);
        max_depth = std::max(max_depth, depth);
    }
    if (depth != 1) {
        throw std::invalid_argument("Program: stack does not end at depth 1");
    }
    max_depth_ = static_cast<std::size_t>(max_depth);
}

Program compile(const Expr& e, CompileOptions options)
{
    Lowering lowering(options);
    lowering.lower(e);
    return Program(std::move(lowering.code), e);
}

std::string to_string(const Instruction& ins)
{
    switch (ins.op) {
    case OpCode::PushConst: {
        const Complex v = ins.constant;
        std::string s = "PUSH " + number_text(v.real());
        s += (v.imag() < 0.0 || std::signbit(v.imag())) ? "-" : "+";
        s += number_text(std::abs(v.imag()));
        s += 'i';
        return s;
    }
    case OpCode::LoadZ: return "LOADZ";
    case OpCode::LoadC: return "LOADC";
    case OpCode::Add: return "ADD";
    case OpCode::Sub: return "SUB";
    case OpCode::Mul: return "MUL";
    case OpCode::Div: return "DIV";
    case OpCode::Neg: return "NEG";
    case OpCode::PowInt: return "POWI " + std::to_string(ins.int_exponent);
    case OpCode::PowReal: return "POWR " + number_text(ins.real_exponent);
    case OpCode::PowGeneral: return "POW";
    case OpCode::Sin: return "SIN";
    case OpCode::Cos: return "COS";
    case OpCode::Tan: return "TAN";
    case OpCode::Cotan: return "COTAN";
    case OpCode::Exp: return "EXP";
    case OpCode::Log: return "LOG";
    case OpCode::Sqrt: return "SQRT";
    }
    return "?";
}

std::string disassemble(const Program& program)
{
    std::string out;
    for (const auto& ins : program.instructions()) {
        out += to_string(ins);
        out += '\n';
    }
    return out;
}

}  // namespace fracdom::vm
