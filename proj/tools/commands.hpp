#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pwm_spectra::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kConfigError = 2,
    kIoError = 3,
};

/// Entry point shared by the executable and the tests. args excludes the
/// program name. Diagnostics go to err, reports to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pwm_spectra::cli
