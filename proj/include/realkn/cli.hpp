#pragma once

// Command dispatch for the realkn tool.
//
//   realkn validate    <scenario>
//   realkn classify    <scenario> [--fiber +1|-1] [--theta file|zero|nonzero|<k>]
//   realkn h1          <scenario> [--cap N]
//   realkn local-model <scenario> [--bound N]
//   realkn example     <name>     [--theta ...]
//
// Every command takes --format json|text. A scenario is a JSON file path or
// "example:<name>". Exit codes: 0 success, 1 validation or domain failure,
// 2 input error (bad flags, unreadable or malformed scenario).

#include <iosfwd>
#include <string>
#include <vector>

namespace realkn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace realkn::cli
