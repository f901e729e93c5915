#include "fracdom/error.hpp"

namespace fracdom {

namespace {

std::string describe_syntax(std::size_t offset, const std::string& found,
                            const std::vector<std::string>& expected)
{
    std::string msg = "syntax error at offset " + std::to_string(offset) + ": unexpected " + found;
    if (!expected.empty()) {
        msg += ", expected one of:";
        for (const auto& e : expected) {
            msg += ' ';
            msg += e;
        }
    }
    return msg;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::string found, std::vector<std::string> expected)
    : ParseError(describe_syntax(offset, found, expected), offset),
      found_(std::move(found)),
      expected_(std::move(expected))
{
}

UnknownFunction::UnknownFunction(std::size_t offset, std::string name)
    : ParseError("unknown function '" + name + "' at offset " + std::to_string(offset), offset),
      name_(std::move(name))
{
}

NotExpandable::NotExpandable(std::string construct)
    : Error("not series-expandable: " + construct), construct_(std::move(construct))
{
}

}  // namespace fracdom
