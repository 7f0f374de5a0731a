#pragma once

// Command-line front end. Exit codes: 0 all checks pass, 1 a check is
// violated, 2 usage, parse or I/O error.
//
//   maxspec spectrum    --input FILE [--eigenvectors]
//   maxspec asymptotics --input FILE --which schur|maxpow|classpow|bapat
//                       [--index I] [--t-max E] [--k-max K] [--tolerance TOL]
//   maxspec calculus    --input FILE --series SPEC
//   maxspec verify      [--config FILE] [--seed S] [--trials T]
//                       [--t-max E] [--k-max K] [--dump-dir DIR]
//
// Every subcommand accepts --format text|json (--json is short for
// --format json). Indices on the command line and in output are 1-based.

#include <iosfwd>

namespace maxspec::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace maxspec::cli
