#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nacf::cli {

enum ExitCode : int {
    kOk = 0,
    kParse = 1,
    kDomain = 2,
    kCertifiedNegative = 3,
    kInvariant = 4,
};

/// Runs one command line (without the program name). Reads the config file
/// from --config, or from $NACF_CONFIG when that is set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nacf::cli
