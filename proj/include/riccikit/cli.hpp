#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace riccikit {
namespace cli {

// exit codes: 0 checks passed / classification definite, 1 checks failed or
// non-definite, 2 usage or input error
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace cli
}  // namespace riccikit
