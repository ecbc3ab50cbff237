#ifndef CISOID_HARNESS_CLI_HPP
#define CISOID_HARNESS_CLI_HPP

namespace cisoid::harness {

/// Entry point of the `cisoid` executable. Returns 0, 1 (validation) or 2 (computation).
int run_cli(int argc, char** argv);

} // namespace cisoid::harness

#endif // CISOID_HARNESS_CLI_HPP
