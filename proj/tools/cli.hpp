#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "descents/exactnum.hpp"

namespace descents::cli {

/// Runs one command line (arguments after the program name).  Exit codes:
/// 0 all verdicts pass, 1 a verdict failed, 2 usage or resource error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rational expression in n: integers, n, + - * /, parentheses.
/// Throws std::invalid_argument on a syntax error.
std::function<Rational(long)> parse_expression(const std::string& text);

}  // namespace descents::cli
