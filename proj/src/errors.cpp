#include "livelab/errors.hpp"

namespace livelab {

namespace {

std::string syntax_message(const SourceSpan& s, const std::vector<std::string>& expected, const std::string& found) {
    std::string msg = "syntax error at " + std::to_string(s.line) + ":" + std::to_string(s.column) + ": found " + found;
    if (!expected.empty()) {
        msg += ", expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) msg += i + 1 == expected.size() ? " or " : ", ";
            msg += expected[i];
        }
    }
    return msg;
}

} // namespace

SyntaxError::SyntaxError(SourceSpan span, std::vector<std::string> expected, const std::string& found)
    : Error(syntax_message(span, expected, found)), span_(span), expected_(std::move(expected)) {}

} // namespace livelab
