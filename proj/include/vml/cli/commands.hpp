#pragma once

namespace vml {

// Process exit codes of the vml tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,      // a verification or fit verdict failed, or an unexpected error
    kExitUsage = 2,        // bad arguments or config
    kExitNonFinite = 3,    // NaN/Inf abort; last good state written
    kExitIo = 4,
    kExitConvergence = 5,  // collision solve did not converge
};

int cli_main(int argc, char** argv);

}  // namespace vml
