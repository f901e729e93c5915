#include <array>

#include "fracdom/vm.hpp"

namespace fracdom::vm {

Complex execute(const Program& program, Complex z, Complex c, std::span<Complex> stack) noexcept
{
    Complex* top = stack.data() - 1;
    for (const Instruction& ins : program.instructions()) {
        switch (ins.op) {
        case OpCode::PushConst: *++top = ins.constant; break;
        case OpCode::LoadZ: *++top = z; break;
        case OpCode::LoadC: *++top = c; break;
        case OpCode::Add: top[-1] += top[0]; --top; break;
        case OpCode::Sub: top[-1] -= top[0]; --top; break;
        case OpCode::Mul: top[-1] *= top[0]; --top; break;
        case OpCode::Div: top[-1] /= top[0]; --top; break;
        case OpCode::Neg: *top = -*top; break;
        case OpCode::PowInt: *top = integer_power(*top, ins.int_exponent); break;
        case OpCode::PowReal: *top = principal_power(*top, Complex(ins.real_exponent, 0.0)); break;
        case OpCode::PowGeneral: top[-1] = power(top[-1], top[0]); --top; break;
        case OpCode::Sin: *top = std::sin(*top); break;
        case OpCode::Cos: *top = std::cos(*top); break;
        case OpCode::Tan: *top = std::tan(*top); break;
        case OpCode::Cotan: *top = cotan(*top); break;
        case OpCode::Exp: *top = std::exp(*top); break;
        case OpCode::Log: *top = principal_log(*top); break;
        case OpCode::Sqrt: *top = std::sqrt(*top); break;
        }
    }
    return *top;
}

Complex execute(const Program& program, Complex z, Complex c)
{
    constexpr std::size_t kInline = 32;
    if (program.max_stack_depth() <= kInline) {
        std::array<Complex, kInline> stack;
        return execute(program, z, c, stack);
    }
    std::vector<Complex> stack(program.max_stack_depth());
    return execute(program, z, c, stack);
}

}  // namespace fracdom::vm
