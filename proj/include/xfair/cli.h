// Copyright 2026 The xfair Authors
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


// The xfair command line. Every command writes one JSON document (or JSON
// lines, or CSV for scaling runs) to `out`; --verbose adds a human summary on
// `err`. Exit codes: 0 success, 1 domain error, 2 usage or input error.

#ifndef XFAIR_CLI_H_
#define XFAIR_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace xfair {

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace xfair

#endif  // XFAIR_CLI_H_
