#ifndef MCI_CLI_HPP
#define MCI_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mci::cli {

// Runs one metrics-ci invocation. `args` holds the arguments without the
// program name. Returns the process exit code: 0 on success, 1 on data or
// domain errors, 2 on usage errors. Output is a pure function of the
// argument vector and the referenced input files.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace mci::cli

#endif // MCI_CLI_HPP
