#ifndef SEGLAB_CLI_HPP
#define SEGLAB_CLI_HPP

namespace seglab {

/// Entry point behind the seglab binary; exposed so tests can drive the
/// subcommands in-process. Exit codes: 0 success / all hard checks pass,
/// 1 verification failure, 2 usage or I/O error.
int cli_main(int argc, const char* const* argv);

}  // namespace seglab

#endif  // SEGLAB_CLI_HPP
