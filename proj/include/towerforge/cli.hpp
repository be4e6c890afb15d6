#ifndef TOWERFORGE_CLI_HPP
#define TOWERFORGE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tf {

// Exit codes: 0 pass, 1 discrepancy, 2 invalid input, 64 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tf

#endif
