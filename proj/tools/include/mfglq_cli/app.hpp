// Copyright 2026 The mfglq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MFGLQ_CLI_APP_HPP_
#define MFGLQ_CLI_APP_HPP_

#include <iosfwd>

namespace mfglq::cli {

// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kThresholdFailed = 1,  // repro finished but a target was missed
  kUsage = 2,            // bad arguments, config, input files
  kNumerical = 3,        // non-convergence or divergence
  kRank = 4,             // data fail the rank condition
  kInternal = 5,         // unexpected failure
};

// Points the default logger at stderr with the level named by MFG_LOG
// (error, info or debug; info when unset). Throws PreconditionError for other
// values.
void configure_logging();

// Entry point of the mfglq tool; reads MFG_LOG for the log level.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfglq::cli

#endif  // MFGLQ_CLI_APP_HPP_
