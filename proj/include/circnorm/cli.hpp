/*
   Copyright 2026 The circnorm Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file cli.hpp
 * @brief The circnorm command-line front end as a callable function.
 */

#ifndef CIRCNORM_CLI_HPP
#define CIRCNORM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace circnorm::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kResourceError = 3, kConsistencyError = 4 };

/// Runs one command. `args` excludes the program name. The JSON document goes
/// to `out` (or the --output file); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circnorm::cli

#endif
