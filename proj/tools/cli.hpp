#pragma once

// Command-line front end. Exit codes: 0 success, 1 input errors,
// 2 lexicon errors.

#include <iosfwd>

namespace anusaaraka {

int cli_main(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace anusaaraka
