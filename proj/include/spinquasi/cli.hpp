#pragma once

// Command-line front end. Exit codes:
//   0 success, 1 malformed input or bad arguments, 2 invalid state,
//   3 criterion not applicable, 4 numerical or internal failure.

#include <ostream>

#include "spinquasi/error.hpp"

namespace spinquasi::cli {

int exit_code(ErrorKind kind);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinquasi::cli
