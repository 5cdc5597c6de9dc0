#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptune {

// Exit codes: 0 success, 1 usage error, 2 data or validation error, 3 numeric failure.
int cli_main(int argc, char** argv);

// Same, with the arguments after the program name and explicit streams.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ptune
