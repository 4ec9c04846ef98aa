#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ecpq::cli {

/// Entry point shared by the ecpq binary and the tests. args[0] is the
/// program name. Returns 0 on success, 2 for invalid arguments (usage on
/// err), 1 for runtime failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ecpq::cli
