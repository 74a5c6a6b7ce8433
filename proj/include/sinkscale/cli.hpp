// Copyright 2026 the sinkscale authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SINKSCALE_CLI_HPP_
#define SINKSCALE_CLI_HPP_

namespace sinkscale {
namespace cli {

// Full command-line surface. Exit codes: 0 success (scale converged, match
// found a likely perfect matching, verify found no violations), 1 input or
// usage error, 2 iteration budget exhausted, 3 negative result (matching
// below bound, or inequality violations).
int run(int argc, const char* const* argv);

}  // namespace cli
}  // namespace sinkscale

#endif  // SINKSCALE_CLI_HPP_
