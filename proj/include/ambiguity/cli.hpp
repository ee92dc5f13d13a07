//  Copyright 2026 The Ambiguity Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef AMBIGUITY_CLI_HPP_
#define AMBIGUITY_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace ambiguity {

// Runs one command. Exit codes: 0 success, 1 usage error, 2 input validation
// failure, 3 semantic verdict failure (a check that ran fine and came out
// negative), so scripts can branch on the reason.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace ambiguity

#endif  // AMBIGUITY_CLI_HPP_
